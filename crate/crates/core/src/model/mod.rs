//! The generated conceptual data model: entity types with attributes, binary
//! relationships with target multiplicities, and generalization links.

mod multiplicity;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::diagnostic::{codes, Diagnostic};
use crate::dl::DatatypeName;
use crate::name::Name;

pub(crate) use multiplicity::Constraint;
pub use multiplicity::{EmptyInterval, Multiplicity, Upper};

/// Why an entity is in the model. When sub-models meet, the higher variant
/// wins: seed over subconcept over relationship-target.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Origin {
    /// Referenced from an expanded concept (relationship target, superclass
    /// or partition member) but not expanded itself.
    RelationshipTarget,
    Subconcept,
    Seed,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Uni,
    Bi,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Attribute {
    pub name: Name,
    pub datatype: DatatypeName,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EntityType {
    pub name: Name,
    pub origin: Origin,
    attributes: BTreeMap<Name, Attribute>,
}

impl EntityType {
    pub fn new(name: Name, origin: Origin) -> Self {
        EntityType {
            name,
            origin,
            attributes: BTreeMap::new(),
        }
    }

    /// Attributes in name order.
    pub fn attributes(&self) -> impl ExactSizeIterator<Item = &Attribute> {
        self.attributes.values()
    }

    pub fn attribute(&self, name: &Name) -> Option<&Attribute> {
        self.attributes.get(name)
    }

    /// Adds an attribute. A second attribute with the same name keeps the
    /// smaller datatype and reports `ATTR_CONFLICT` if the datatypes differ.
    pub fn add_attribute(&mut self, attr: Attribute) -> Option<Diagnostic> {
        match self.attributes.get_mut(&attr.name) {
            None => {
                self.attributes.insert(attr.name.clone(), attr);
                None
            }
            Some(existing) => {
                existing.name = existing.name.preferred(&attr.name).clone();
                if existing.datatype == attr.datatype {
                    return None;
                }
                let d = Diagnostic::warning(
                    codes::ATTR_CONFLICT,
                    format!(
                        "attribute `{}` of `{}` has datatypes {} and {}; keeping {}",
                        existing.name,
                        self.name,
                        existing.datatype,
                        attr.datatype,
                        existing.datatype.min(attr.datatype)
                    ),
                );
                existing.datatype = existing.datatype.min(attr.datatype);
                Some(d)
            }
        }
    }

    fn absorb(&mut self, other: &EntityType, diags: &mut Vec<Diagnostic>) {
        self.name = self.name.preferred(&other.name).clone();
        self.origin = self.origin.max(other.origin);
        for attr in other.attributes() {
            diags.extend(self.add_attribute(attr.clone()));
        }
    }
}

/// A binary association from `source` to `target`, constrained at the target
/// end by a multiplicity.
///
/// Besides its visible multiplicity a relationship remembers the running
/// intersection of every sighting folded into it, so that folding groups of
/// sightings is order-independent even when they conflict.
#[derive(Debug, Clone)]
pub struct Relationship {
    pub name: Name,
    pub source: Name,
    pub target: Name,
    pub direction: Direction,
    constraint: Constraint,
}

impl Relationship {
    pub fn new(
        name: Name,
        source: Name,
        target: Name,
        direction: Direction,
        multiplicity: Multiplicity,
    ) -> Self {
        Relationship {
            name,
            source,
            target,
            direction,
            constraint: Constraint::of(multiplicity),
        }
    }

    pub fn multiplicity(&self) -> Multiplicity {
        self.constraint.resolve()
    }

    pub fn key(&self) -> RelationshipKey {
        RelationshipKey {
            name: self.name.clone(),
            source: self.source.clone(),
            target: self.target.clone(),
        }
    }

    /// True when the sightings folded into this relationship have no common
    /// multiplicity.
    pub fn is_conflicted(&self) -> bool {
        self.constraint.is_empty()
    }

    /// Folds another sighting of the same key into this one: bi wins over uni,
    /// multiplicities intersect.
    pub(crate) fn absorb(&mut self, other: &Relationship) {
        debug_assert_eq!(self.key(), other.key());
        self.name = self.name.preferred(&other.name).clone();
        self.source = self.source.preferred(&other.source).clone();
        self.target = self.target.preferred(&other.target).clone();
        self.direction = self.direction.max(other.direction);
        self.constraint = self.constraint.meet(other.constraint);
    }

    fn sort_key(&self) -> (RelationshipKey, Multiplicity, Direction) {
        (self.key(), self.multiplicity(), self.direction)
    }
}

impl PartialEq for Relationship {
    fn eq(&self, other: &Self) -> bool {
        self.name == other.name
            && self.source == other.source
            && self.target == other.target
            && self.direction == other.direction
            && self.multiplicity() == other.multiplicity()
    }
}

impl Eq for Relationship {}

/// Relationship identity: property name, source entity, target entity.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RelationshipKey {
    pub name: Name,
    pub source: Name,
    pub target: Name,
}

impl fmt::Display for RelationshipKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}->{}", self.name, self.source, self.target)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Generalization {
    pub sub: Name,
    pub sup: Name,
}

impl Generalization {
    pub fn new(sub: Name, sup: Name) -> Self {
        Generalization { sub, sup }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
pub struct ModelStats {
    pub entity_count: usize,
    pub relationship_count: usize,
    pub attribute_count: usize,
    pub generalization_count: usize,
}

impl fmt::Display for ModelStats {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "entities: {}, relationships: {}, attributes: {}, generalizations: {}",
            self.entity_count,
            self.relationship_count,
            self.attribute_count,
            self.generalization_count
        )
    }
}

/// Folds every group of relationships sharing a key into one (multiplicities
/// intersected, bi winning over uni). Output is in key order; a group with no
/// common multiplicity yields `MULT_CONFLICT`.
pub fn fold_relationships(
    rels: impl IntoIterator<Item = Relationship>,
) -> (Vec<Relationship>, Vec<Diagnostic>) {
    let mut groups: BTreeMap<RelationshipKey, Relationship> = BTreeMap::new();
    for r in rels {
        match groups.get_mut(&r.key()) {
            Some(acc) => acc.absorb(&r),
            None => {
                groups.insert(r.key(), r);
            }
        }
    }
    let mut diags = Vec::new();
    for r in groups.values() {
        if r.is_conflicted() {
            diags.push(Diagnostic::warning(
                codes::MULT_CONFLICT,
                format!(
                    "relationship {} has no common multiplicity; keeping {}",
                    r.key(),
                    r.multiplicity()
                ),
            ));
        }
    }
    (groups.into_values().collect(), diags)
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ConceptualModel {
    entities: BTreeMap<Name, EntityType>,
    relationships: Vec<Relationship>,
    generalizations: BTreeSet<Generalization>,
}

impl ConceptualModel {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn is_empty(&self) -> bool {
        self.entities.is_empty() && self.relationships.is_empty() && self.generalizations.is_empty()
    }

    /// Entities in name order.
    pub fn entities(&self) -> impl ExactSizeIterator<Item = &EntityType> {
        self.entities.values()
    }

    pub fn entity(&self, name: &Name) -> Option<&EntityType> {
        self.entities.get(name)
    }

    pub fn entity_mut(&mut self, name: &Name) -> Option<&mut EntityType> {
        self.entities.get_mut(name)
    }

    pub fn contains_entity(&self, name: &Name) -> bool {
        self.entities.contains_key(name)
    }

    pub fn relationships(&self) -> &[Relationship] {
        &self.relationships
    }

    /// Generalizations in `(sub, super)` order.
    pub fn generalizations(&self) -> impl ExactSizeIterator<Item = &Generalization> {
        self.generalizations.iter()
    }

    /// Adds an entity, or raises the origin of an existing one.
    pub fn add_entity(&mut self, name: Name, origin: Origin) -> &mut EntityType {
        let entity = self
            .entities
            .entry(name.clone())
            .or_insert_with(|| EntityType::new(name.clone(), origin));
        entity.name = entity.name.preferred(&name).clone();
        entity.origin = entity.origin.max(origin);
        entity
    }

    /// Inserts an entity as a whole, merging with an existing one.
    pub fn insert_entity(&mut self, entity: EntityType) -> Vec<Diagnostic> {
        let mut diags = Vec::new();
        match self.entities.get_mut(&entity.name) {
            Some(existing) => existing.absorb(&entity, &mut diags),
            None => {
                self.entities.insert(entity.name.clone(), entity);
            }
        }
        diags
    }

    pub(crate) fn remove_entity(&mut self, name: &Name) -> Option<EntityType> {
        self.entities.remove(name)
    }

    /// Appends a relationship. Duplicate keys are kept until refinement.
    pub fn add_relationship(&mut self, rel: Relationship) {
        self.relationships.push(rel);
    }

    pub(crate) fn set_relationships(&mut self, rels: Vec<Relationship>) {
        self.relationships = rels;
    }

    pub fn add_generalization(&mut self, g: Generalization) {
        if let Some(existing) = self.generalizations.get(&g) {
            let preferred = Generalization::new(
                existing.sub.preferred(&g.sub).clone(),
                existing.sup.preferred(&g.sup).clone(),
            );
            self.generalizations.replace(preferred);
        } else {
            self.generalizations.insert(g);
        }
    }

    pub(crate) fn remove_generalization(&mut self, g: &Generalization) -> bool {
        self.generalizations.remove(g)
    }

    pub fn stats(&self) -> ModelStats {
        ModelStats {
            entity_count: self.entities.len(),
            relationship_count: self.relationships.len(),
            attribute_count: self.entities.values().map(|e| e.attributes.len()).sum(),
            generalization_count: self.generalizations.len(),
        }
    }

    /// Endpoints that do not name an entity of this model, plus
    /// self-generalizations.
    pub fn integrity_problems(&self) -> Vec<String> {
        let mut out = Vec::new();
        for r in &self.relationships {
            for end in [&r.source, &r.target] {
                if !self.entities.contains_key(end) {
                    out.push(format!(
                        "relationship {} refers to unknown entity `{end}`",
                        r.key()
                    ));
                }
            }
        }
        for g in &self.generalizations {
            if g.sub == g.sup {
                out.push(format!("`{}` generalizes itself", g.sub));
            }
            for end in [&g.sub, &g.sup] {
                if !self.entities.contains_key(end) {
                    out.push(format!(
                        "generalization {} ⊑ {} refers to unknown entity `{end}`",
                        g.sub, g.sup
                    ));
                }
            }
        }
        out
    }

    /// Union of two models. Entities merge by name, generalizations union,
    /// relationships sharing a key fold into one.
    pub fn merge(&self, other: &ConceptualModel) -> ConceptualModel {
        self.merge_with_diagnostics(other).0
    }

    pub fn merge_with_diagnostics(
        &self,
        other: &ConceptualModel,
    ) -> (ConceptualModel, Vec<Diagnostic>) {
        let mut out = self.clone();
        let mut diags = Vec::new();
        for e in other.entities.values() {
            diags.extend(out.insert_entity(e.clone()));
        }
        for g in &other.generalizations {
            out.add_generalization(g.clone());
        }
        let all = out
            .relationships
            .drain(..)
            .chain(other.relationships.iter().cloned())
            .collect::<Vec<_>>();
        let (rels, conflicts) = fold_relationships(all);
        out.relationships = rels;
        diags.extend(conflicts);
        (out, diags)
    }

    /// Sorted, with every relationship and generalization endpoint spelled as
    /// its entity. Idempotent.
    pub fn canonicalize(&self) -> ConceptualModel {
        let mut out = self.clone();
        let respell = |n: &Name| out_spelling(&self.entities, n);
        for r in &mut out.relationships {
            r.source = respell(&r.source);
            r.target = respell(&r.target);
        }
        out.relationships.sort_by_key(Relationship::sort_key);
        out.generalizations = self
            .generalizations
            .iter()
            .map(|g| Generalization::new(respell(&g.sub), respell(&g.sup)))
            .collect();
        out
    }
}

fn out_spelling(entities: &BTreeMap<Name, EntityType>, n: &Name) -> Name {
    entities
        .get(n)
        .map(|e| e.name.clone())
        .unwrap_or_else(|| n.clone())
}
