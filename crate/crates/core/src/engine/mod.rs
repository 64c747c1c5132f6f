//! Ontology-to-model transformation.
//!
//! Each expanded concept is turned into a sub-model by the mapping rules:
//!
//! | rule | ontology construct                         | model element                                   |
//! |------|--------------------------------------------|-------------------------------------------------|
//! | 1    | named class                                | entity type                                     |
//! | 2    | `C ⊑ A` between named classes              | generalization `C → A`                          |
//! | 3    | `And(...)` / `Or(...)` in a definition     | multiple inheritance / partition into subtypes  |
//! | 4    | object-property restriction                | relationship with target multiplicity           |
//! | 5    | datatype-property restriction              | attribute                                       |
//! | 6    | object property with domain and range      | relationship `domain → range`, `0..*`           |
//! | 7    | datatype property with domain              | attribute on the domain                         |
//! | 8    | inverse object property                    | relationship marked bi-directional              |
//! | 9    | functional object property                 | target multiplicity capped at `0..1`            |
//! | 10   | same relationship seen repeatedly          | one relationship, intersected multiplicity      |
//! | 11   | relationship into a datatype class         | attribute on the source                         |
//!
//! Rules 10 and 11 run in [`refine`] once all sub-models are merged.
//!
//! Only seeds (and, optionally, their sub-concepts) are expanded. Classes that
//! an expanded concept merely points at become entities but contribute no
//! axioms of their own.

mod refine;

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::str::FromStr;

use thiserror::Error;

use crate::diagnostic::{codes, Diagnostic};
use crate::dl::{ClassExpression, DatatypeName};
use crate::model::{
    Attribute, ConceptualModel, Direction, Generalization, Multiplicity, Origin, Relationship,
};
use crate::name::{Name, NameError};
use crate::ontology::{Ontology, UnknownConcept};

pub use refine::refine;

/// Classes that stand for datatypes, with the datatype each denotes.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct DatatypeClasses(BTreeMap<Name, DatatypeName>);

impl DatatypeClasses {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, class: Name, datatype: DatatypeName) {
        self.0.insert(class, datatype);
    }

    pub fn get(&self, class: &Name) -> Option<DatatypeName> {
        self.0.get(class).copied()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DatatypeClassError {
    #[error(transparent)]
    Name(#[from] NameError),
    #[error(transparent)]
    Datatype(#[from] crate::dl::UnknownDatatype),
}

/// Parses `Name` or `Name=xsd:type` entries separated by commas. A bare name
/// maps to `xsd:string`.
impl FromStr for DatatypeClasses {
    type Err = DatatypeClassError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut out = DatatypeClasses::new();
        for item in s.split(',').map(str::trim).filter(|i| !i.is_empty()) {
            let (class, datatype) = match item.split_once('=') {
                Some((c, d)) => (Name::new(c)?, d.trim().parse()?),
                None => (Name::new(item)?, DatatypeName::String),
            };
            out.insert(class, datatype);
        }
        Ok(out)
    }
}

#[derive(Debug, Clone)]
pub struct TransformOptions {
    pub seeds: Vec<Name>,
    pub expand_subconcepts: bool,
    /// Upper bound on concepts expanded; defaults to the ontology's class count.
    pub max_iterations: Option<usize>,
    pub datatype_classes: DatatypeClasses,
}

impl TransformOptions {
    pub fn new(seeds: Vec<Name>) -> Self {
        TransformOptions {
            seeds,
            expand_subconcepts: true,
            max_iterations: None,
            datatype_classes: DatatypeClasses::new(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TransformError {
    #[error("no seed concepts given")]
    NoSeeds,
    #[error("unknown seed concept(s): {}", .0.iter().map(|n| n.to_string()).collect::<Vec<_>>().join(", "))]
    UnknownSeeds(Vec<Name>),
}

impl TransformError {
    pub fn diagnostic(&self) -> Diagnostic {
        Diagnostic::error(codes::UNKNOWN_SEED, self.to_string())
    }
}

#[derive(Debug, Clone)]
pub struct Transformed {
    pub model: ConceptualModel,
    pub diagnostics: Vec<Diagnostic>,
}

/// The model fragment produced from a single concept.
#[derive(Debug, Clone, Default)]
pub struct SubModel {
    pub model: ConceptualModel,
    /// Every named class met while transforming the concept.
    pub discovered: BTreeSet<Name>,
    pub diagnostics: Vec<Diagnostic>,
}

/// Target multiplicity implied by an object-property restriction; `None` for
/// anything else.
pub fn multiplicity_of(r: &ClassExpression) -> Option<Multiplicity> {
    match r {
        ClassExpression::Exists { .. } => Some(Multiplicity::ONE_OR_MORE),
        ClassExpression::ForAll { .. } => Some(Multiplicity::ZERO_OR_MORE),
        ClassExpression::MinCard { n, .. } => Some(Multiplicity::at_least(*n)),
        ClassExpression::MaxCard { n, .. } => Some(Multiplicity::at_most(*n)),
        ClassExpression::ExactCard { n, .. } => Some(Multiplicity::exactly(*n)),
        _ => None,
    }
}

/// Rule 10 on a pair of intervals; `None` when they are disjoint.
pub fn intersect_multiplicity(a: Multiplicity, b: Multiplicity) -> Option<Multiplicity> {
    a.intersect(b)
}

struct Builder<'o> {
    o: &'o Ontology,
    out: SubModel,
}

impl<'o> Builder<'o> {
    fn new(o: &'o Ontology) -> Self {
        Builder {
            o,
            out: SubModel::default(),
        }
    }

    fn spelled(&self, n: &Name) -> Name {
        self.o.class(n).cloned().unwrap_or_else(|| n.clone())
    }

    fn entity(&mut self, n: &Name, origin: Origin) -> Name {
        let n = self.spelled(n);
        self.out.discovered.insert(n.clone());
        self.out.model.add_entity(n.clone(), origin);
        n
    }

    fn referenced(&mut self, n: &Name) -> Name {
        self.entity(n, Origin::RelationshipTarget)
    }

    fn generalize(&mut self, sub: &Name, sup: &Name) {
        if sub == sup {
            return;
        }
        let sub = self.referenced(sub);
        let sup = self.referenced(sup);
        self.out
            .model
            .add_generalization(Generalization::new(sub, sup));
    }

    fn relate(
        &mut self,
        property: &Name,
        source: &Name,
        target: &Name,
        multiplicity: Multiplicity,
    ) {
        let direction = if self.o.has_inverse(property) {
            Direction::Bi
        } else {
            Direction::Uni
        };
        let source = self.referenced(source);
        let target = self.referenced(target);
        self.out.model.add_relationship(Relationship::new(
            property.clone(),
            source,
            target,
            direction,
            multiplicity,
        ));
    }

    fn attribute(&mut self, entity: &Name, property: &Name, datatype: DatatypeName) {
        let entity = self.referenced(entity);
        let attr = Attribute {
            name: property.clone(),
            datatype,
        };
        if let Some(d) = self
            .out
            .model
            .add_entity(entity, Origin::RelationshipTarget)
            .add_attribute(attr)
        {
            self.out.diagnostics.push(d);
        }
    }

    fn warn(&mut self, code: &'static str, message: String) {
        self.out
            .diagnostics
            .push(Diagnostic::warning(code, message));
    }

    /// Routes one definition or description concept of `c`.
    fn route(&mut self, c: &Name, expr: &ClassExpression) {
        match expr {
            ClassExpression::Atomic(a) => self.generalize(c, a),
            ClassExpression::Intersection(ops) => {
                for op in ops.iter() {
                    self.route(c, op);
                }
            }
            ClassExpression::Union(ops) => {
                for op in ops.iter() {
                    match op {
                        ClassExpression::Atomic(a) => self.generalize(a, c),
                        r if r.is_restriction() => self.restriction(c, r),
                        other => {
                            self.out.discovered.extend(other.atomic_names());
                            self.warn(
                                codes::UNSUPPORTED_SHAPE,
                                format!("skipping nested connective `{other}` in a union on `{c}`"),
                            );
                        }
                    }
                }
            }
            r => self.restriction(c, r),
        }
    }

    fn restriction(&mut self, source: &Name, r: &ClassExpression) {
        match r {
            ClassExpression::DataExists { property, datatype }
            | ClassExpression::DataForAll { property, datatype } => {
                self.attribute(source, property, *datatype);
            }
            _ => {
                let (Some(property), Some(multiplicity)) = (r.property(), multiplicity_of(r))
                else {
                    self.warn(
                        codes::UNSUPPORTED_SHAPE,
                        format!("`{r}` is not a restriction"),
                    );
                    return;
                };
                let emitted = match r.filler() {
                    Some(filler) => self.fan_out(source, property, multiplicity, filler),
                    None => {
                        let range = self
                            .o
                            .object_properties
                            .get(property)
                            .and_then(|i| i.range.clone());
                        match range {
                            Some(range) => {
                                self.relate(property, source, &range, multiplicity);
                                true
                            }
                            None => false,
                        }
                    }
                };
                if !emitted {
                    self.warn(
                        codes::EMPTY_FILLER,
                        format!("restriction `{r}` on `{source}` names no target class"),
                    );
                }
            }
        }
    }

    /// Emits one relationship per named class in the filler; restrictions
    /// nested in the filler become further relationships of the same source.
    fn fan_out(
        &mut self,
        source: &Name,
        property: &Name,
        m: Multiplicity,
        filler: &ClassExpression,
    ) -> bool {
        match filler {
            ClassExpression::Atomic(t) => {
                self.relate(property, source, t, m);
                true
            }
            ClassExpression::Union(ops) | ClassExpression::Intersection(ops) => {
                let mut any = false;
                for op in ops.iter() {
                    any |= self.fan_out(source, property, m, op);
                }
                any
            }
            nested => {
                self.restriction(source, nested);
                true
            }
        }
    }

    fn property_axioms(&mut self, c: &Name) {
        let o = self.o;
        for (p, info) in &o.object_properties {
            if info.domain.as_ref() != Some(c) {
                continue;
            }
            match &info.range {
                Some(range) => {
                    let m = if info.functional {
                        Multiplicity::ZERO_OR_MORE
                            .intersect(Multiplicity::OPTIONAL)
                            .expect("non-empty")
                    } else {
                        Multiplicity::ZERO_OR_MORE
                    };
                    self.relate(p, c, range, m);
                }
                None => self.warn(
                    codes::RANGELESS_PROPERTY,
                    format!("object property `{p}` has domain `{c}` but no range"),
                ),
            }
        }
        for (p, info) in &o.datatype_properties {
            if info.domain.as_ref() != Some(c) {
                continue;
            }
            match info.range {
                Some(dt) => self.attribute(c, p, dt),
                None => self.warn(
                    codes::RANGELESS_PROPERTY,
                    format!("datatype property `{p}` has domain `{c}` but no range"),
                ),
            }
        }
    }
}

/// Transforms one concept: the entity itself, its named superclasses, every
/// definition and description concept, and the properties whose domain it is.
pub fn transform_concept(
    o: &Ontology,
    c: &Name,
    origin: Origin,
) -> Result<SubModel, UnknownConcept> {
    if !o.contains_class(c) {
        return Err(UnknownConcept(c.clone()));
    }
    let mut b = Builder::new(o);
    let c = b.entity(c, origin);
    for sup in o.atomic_superclasses(&c) {
        b.generalize(&c, sup);
    }
    for def in o.definitions(&c).chain(o.description_superclasses(&c)) {
        b.out.discovered.extend(def.atomic_names());
        b.route(&c, def);
    }
    b.property_axioms(&c);
    Ok(b.out)
}

/// Elements contributed by a single restriction on `source`.
pub fn apply_restriction(o: &Ontology, source: &Name, r: &ClassExpression) -> SubModel {
    let mut b = Builder::new(o);
    b.referenced(source);
    b.restriction(source, r);
    b.out
}

/// Elements contributed by the property declarations whose domain is `c`.
pub fn apply_property_axioms(o: &Ontology, c: &Name) -> SubModel {
    let mut b = Builder::new(o);
    b.referenced(c);
    b.property_axioms(c);
    b.out
}

/// Runs the seed-driven worklist over a validated ontology and returns the
/// refined, canonical model.
pub fn transform(o: &Ontology, opts: &TransformOptions) -> Result<Transformed, TransformError> {
    if opts.seeds.is_empty() {
        return Err(TransformError::NoSeeds);
    }
    let unknown: Vec<Name> = opts
        .seeds
        .iter()
        .filter(|s| !o.contains_class(s))
        .cloned()
        .collect();
    if !unknown.is_empty() {
        return Err(TransformError::UnknownSeeds(unknown));
    }

    let cap = opts.max_iterations.unwrap_or(o.classes.len());
    let mut queued: BTreeSet<Name> = BTreeSet::new();
    let mut worklist: VecDeque<(Name, Origin)> = VecDeque::new();
    for s in &opts.seeds {
        if queued.insert(s.clone()) {
            worklist.push_back((s.clone(), Origin::Seed));
        }
    }

    let mut model = ConceptualModel::new();
    let mut diagnostics = Vec::new();
    let mut expanded = 0;
    while let Some((c, origin)) = worklist.pop_front() {
        if expanded == cap {
            diagnostics.push(Diagnostic::warning(
                codes::ITERATION_CAP,
                format!(
                    "stopped after {cap} concepts with {} still queued",
                    worklist.len() + 1
                ),
            ));
            break;
        }
        expanded += 1;
        let sub = transform_concept(o, &c, origin).expect("worklist holds declared classes");
        if opts.expand_subconcepts {
            for s in o.direct_subconcepts(&c) {
                if queued.insert(s.clone()) {
                    worklist.push_back((s.clone(), Origin::Subconcept));
                }
            }
        }
        diagnostics.extend(sub.diagnostics);
        let (merged, merge_diags) = model.merge_with_diagnostics(&sub.model);
        model = merged;
        // Conflicts are reported once, after refinement.
        diagnostics.extend(
            merge_diags
                .into_iter()
                .filter(|d| d.code != codes::MULT_CONFLICT),
        );
    }

    let (refined, refine_diags) = refine(&model, &opts.datatype_classes);
    diagnostics.extend(refine_diags);
    diagnostics.extend(defined_only(o, &refined));
    Ok(Transformed {
        model: refined.canonicalize(),
        diagnostics,
    })
}

/// Defined concepts without attributes whose only outgoing relationships use
/// properties that have an inverse (part-whole style). Candidates for removal
/// by a modeler.
fn defined_only(o: &Ontology, m: &ConceptualModel) -> Vec<Diagnostic> {
    let mut out = Vec::new();
    for e in m.entities() {
        if !o.is_defined(&e.name) || e.attributes().len() > 0 {
            continue;
        }
        let outgoing: Vec<&Relationship> = m
            .relationships()
            .iter()
            .filter(|r| r.source == e.name)
            .collect();
        if !outgoing.is_empty() && outgoing.iter().all(|r| o.has_inverse(&r.name)) {
            out.push(Diagnostic::info(
                codes::DEFINED_ONLY,
                format!(
                    "`{}` is a defined concept without attributes that participates only through {}",
                    e.name,
                    outgoing.iter().map(|r| r.name.to_string()).collect::<BTreeSet<_>>().into_iter().collect::<Vec<_>>().join(", ")
                ),
            ));
        }
    }
    out
}
