//! Random ontologies and models shared by the integration tests.
#![allow(dead_code)]

use std::collections::BTreeSet;

use proptest::prelude::*;
use proptest::sample::Index;

use ontocdm::dl::ClassExpression;
use ontocdm::model::{Attribute, EntityType, Generalization, RelationshipKey};
use ontocdm::ontology::{
    DatatypePropertyInfo, EquivalenceAxiom, ObjectPropertyInfo, SubClassAxiom,
};
use ontocdm::{
    ConceptualModel, DatatypeName, Direction, Multiplicity, Name, Ontology, Origin, Relationship,
    Upper,
};

pub const CLASS_POOL: [&str; 8] = [
    "Protein", "Species", "Dna", "Mrna", "Gene", "Cell", "Tissue", "Organ",
];
pub const ENTITY_POOL: [&str; 10] = [
    "Protein", "Species", "Dna", "Mrna", "Gene", "Cell", "Tissue", "Organ", "Enzyme", "Motif",
];
pub const RELATIONSHIP_POOL: [&str; 4] = ["part-of", "has-part", "polymer-of", "encodes"];
pub const ATTRIBUTE_POOL: [&str; 3] = ["mass", "label", "length"];

pub fn n(s: &str) -> Name {
    Name::new(s).unwrap()
}

/// `base` with the letters whose bit is set in `variant` upper-cased, the
/// others lower-cased.
pub fn spell(base: &str, variant: u8) -> Name {
    let s: String = base
        .chars()
        .enumerate()
        .map(|(i, ch)| {
            if variant >> (i % 8) & 1 == 1 {
                ch.to_ascii_uppercase()
            } else {
                ch.to_ascii_lowercase()
            }
        })
        .collect();
    n(&s)
}

pub fn datatype() -> impl Strategy<Value = DatatypeName> {
    proptest::sample::select(DatatypeName::ALL.to_vec())
}

pub fn multiplicity() -> impl Strategy<Value = Multiplicity> {
    (0u32..4, prop::option::of(0u32..4)).prop_map(|(lower, extra)| {
        let upper = extra.map_or(Upper::Unbounded, |e| Upper::Bounded(lower + e));
        Multiplicity::new(lower, upper).unwrap()
    })
}

fn origin() -> impl Strategy<Value = Origin> {
    prop_oneof![
        Just(Origin::Seed),
        Just(Origin::Subconcept),
        Just(Origin::RelationshipTarget)
    ]
}

fn direction() -> impl Strategy<Value = Direction> {
    prop_oneof![Just(Direction::Uni), Just(Direction::Bi)]
}

// ---------------------------------------------------------------- models

/// Models with at most ten entities drawn from a shared pool under random
/// capitalization, so independently generated models overlap and disagree on
/// spelling, attribute datatypes, directions and multiplicities. Relationship
/// keys are unique and every endpoint is an entity.
pub fn model() -> impl Strategy<Value = ConceptualModel> {
    let entities = proptest::sample::subsequence(ENTITY_POOL.to_vec(), 0..=ENTITY_POOL.len())
        .prop_flat_map(|names| {
            let k = names.len();
            (
                Just(names),
                prop::collection::vec(
                    (
                        any::<u8>(),
                        origin(),
                        prop::collection::vec((0..ATTRIBUTE_POOL.len(), datatype()), 0..3),
                    ),
                    k,
                ),
            )
        });
    let relationships = prop::collection::vec(
        (
            0..RELATIONSHIP_POOL.len(),
            any::<u8>(),
            any::<Index>(),
            any::<Index>(),
            direction(),
            multiplicity(),
        ),
        0..8,
    );
    let generalizations = prop::collection::vec((any::<Index>(), any::<Index>()), 0..5);
    (entities, relationships, generalizations).prop_map(|((names, details), rels, gens)| {
        let mut m = ConceptualModel::new();
        let mut spelled = Vec::new();
        for (base, (variant, origin, attrs)) in names.iter().zip(details) {
            let name = spell(base, variant);
            let mut e = EntityType::new(name.clone(), origin);
            for (a, dt) in attrs {
                if e.attribute(&n(ATTRIBUTE_POOL[a])).is_none() {
                    e.add_attribute(Attribute {
                        name: n(ATTRIBUTE_POOL[a]),
                        datatype: dt,
                    });
                }
            }
            m.insert_entity(e);
            spelled.push(name);
        }
        if spelled.is_empty() {
            return m;
        }
        let mut keys: BTreeSet<RelationshipKey> = BTreeSet::new();
        for (r, variant, s, t, dir, mult) in rels {
            let rel = Relationship::new(
                spell(RELATIONSHIP_POOL[r], variant),
                s.get(&spelled).clone(),
                t.get(&spelled).clone(),
                dir,
                mult,
            );
            if keys.insert(rel.key()) {
                m.add_relationship(rel);
            }
        }
        for (s, t) in gens {
            let (sub, sup) = (s.get(&spelled), t.get(&spelled));
            if sub != sup {
                m.add_generalization(Generalization::new(sub.clone(), sup.clone()));
            }
        }
        m
    })
}

// ------------------------------------------------------------ ontologies

/// Class and property references held as raw indices; resolved against the
/// generated ontology's declarations when it is built.
#[derive(Debug, Clone)]
pub enum Shape {
    Atomic(Index, u8),
    And(Vec<Shape>),
    Or(Vec<Shape>),
    Some(Index, Box<Shape>),
    Only(Index, Box<Shape>),
    Min(Index, u32, Option<Box<Shape>>),
    Max(Index, u32, Option<Box<Shape>>),
    Exact(Index, u32, Option<Box<Shape>>),
    DataSome(Index, DatatypeName),
    DataOnly(Index, DatatypeName),
}

fn atomic() -> impl Strategy<Value = Shape> {
    (any::<Index>(), any::<u8>()).prop_map(|(i, v)| Shape::Atomic(i, v))
}

fn data_restriction() -> BoxedStrategy<Shape> {
    prop_oneof![
        (any::<Index>(), datatype()).prop_map(|(p, d)| Shape::DataSome(p, d)),
        (any::<Index>(), datatype()).prop_map(|(p, d)| Shape::DataOnly(p, d)),
    ]
    .boxed()
}

fn object_restriction(filler: BoxedStrategy<Shape>) -> BoxedStrategy<Shape> {
    let opt = prop::option::of(filler.clone().prop_map(Box::new));
    prop_oneof![
        (any::<Index>(), filler.clone()).prop_map(|(p, f)| Shape::Some(p, Box::new(f))),
        (any::<Index>(), filler).prop_map(|(p, f)| Shape::Only(p, Box::new(f))),
        (any::<Index>(), 0u32..4, opt.clone()).prop_map(|(p, k, f)| Shape::Min(p, k, f)),
        (any::<Index>(), 0u32..4, opt.clone()).prop_map(|(p, k, f)| Shape::Max(p, k, f)),
        (any::<Index>(), 0u32..4, opt).prop_map(|(p, k, f)| Shape::Exact(p, k, f)),
    ]
    .boxed()
}

/// Shapes every part of which the transformer turns into model elements:
/// fillers are named classes or unions/intersections of them, connectives
/// hold named classes and restrictions only.
pub fn supported_shape() -> BoxedStrategy<Shape> {
    let filler = prop_oneof![
        3 => atomic(),
        1 => prop::collection::vec(atomic(), 2..4).prop_map(Shape::Or),
        1 => prop::collection::vec(atomic(), 2..4).prop_map(Shape::And),
    ]
    .boxed();
    let restriction = prop_oneof![3 => object_restriction(filler), 1 => data_restriction()].boxed();
    let operand = prop_oneof![atomic().boxed(), restriction.clone()].boxed();
    prop_oneof![
        1 => atomic().boxed(),
        2 => restriction,
        2 => prop::collection::vec(operand.clone(), 2..4).prop_map(Shape::And).boxed(),
        1 => prop::collection::vec(operand, 2..4).prop_map(Shape::Or).boxed(),
    ]
    .boxed()
}

/// Any expression the file syntax can hold, nested arbitrarily.
pub fn any_shape() -> BoxedStrategy<Shape> {
    let leaf = prop_oneof![atomic().boxed(), data_restriction()];
    leaf.prop_recursive(4, 24, 3, |inner| {
        prop_oneof![
            prop::collection::vec(inner.clone(), 2..4)
                .prop_map(Shape::And)
                .boxed(),
            prop::collection::vec(inner.clone(), 2..4)
                .prop_map(Shape::Or)
                .boxed(),
            object_restriction(inner),
        ]
    })
    .boxed()
}

#[derive(Debug, Clone)]
pub struct OntologyPlan {
    class_variants: Vec<u8>,
    /// (domain, range, functional) per object property.
    object_properties: Vec<(Option<Index>, Option<Index>, bool)>,
    inverse_pair: bool,
    datatype_properties: Vec<(Option<Index>, Option<DatatypeName>)>,
    /// (sub, super) pairs; kept only when sub has the larger index, so the
    /// atomic hierarchy is acyclic.
    subclass_edges: Vec<(Index, Index)>,
    descriptions: Vec<(Index, Shape)>,
    definitions: Vec<(Index, Shape)>,
}

pub fn ontology_plan(shape: BoxedStrategy<Shape>) -> impl Strategy<Value = OntologyPlan> {
    (
        prop::collection::vec(any::<u8>(), 1..=CLASS_POOL.len()),
        prop::collection::vec(
            (
                prop::option::of(any::<Index>()),
                prop::option::weighted(0.8, any::<Index>()),
                prop::bool::weighted(0.2),
            ),
            1..4,
        ),
        any::<bool>(),
        prop::collection::vec(
            (
                prop::option::of(any::<Index>()),
                prop::option::of(datatype()),
            ),
            1..3,
        ),
        prop::collection::vec((any::<Index>(), any::<Index>()), 0..8),
        prop::collection::vec((any::<Index>(), shape.clone()), 0..5),
        prop::collection::vec((any::<Index>(), shape), 0..3),
    )
        .prop_map(
            |(
                class_variants,
                object_properties,
                inverse_pair,
                datatype_properties,
                subclass_edges,
                descriptions,
                definitions,
            )| OntologyPlan {
                class_variants,
                object_properties,
                inverse_pair,
                datatype_properties,
                subclass_edges,
                descriptions,
                definitions,
            },
        )
}

struct Resolver {
    classes: Vec<&'static str>,
    object_properties: Vec<Name>,
    datatype_properties: Vec<Name>,
}

impl Resolver {
    fn class(&self, i: &Index, variant: u8) -> Name {
        spell(i.get(&self.classes), variant)
    }

    fn expr(&self, s: &Shape) -> ClassExpression {
        let op = |p: &Index| p.get(&self.object_properties).clone();
        let dp = |p: &Index| p.get(&self.datatype_properties).clone();
        let fill = |f: &Option<Box<Shape>>| f.as_ref().map(|f| self.expr(f));
        match s {
            Shape::Atomic(i, v) => ClassExpression::atomic(self.class(i, *v)),
            Shape::And(xs) => {
                ClassExpression::intersection(xs.iter().map(|x| self.expr(x)).collect()).unwrap()
            }
            Shape::Or(xs) => {
                ClassExpression::union(xs.iter().map(|x| self.expr(x)).collect()).unwrap()
            }
            Shape::Some(p, f) => ClassExpression::exists(op(p), self.expr(f)),
            Shape::Only(p, f) => ClassExpression::for_all(op(p), self.expr(f)),
            Shape::Min(p, k, f) => ClassExpression::min_card(op(p), *k, fill(f)),
            Shape::Max(p, k, f) => ClassExpression::max_card(op(p), *k, fill(f)),
            Shape::Exact(p, k, f) => ClassExpression::exact_card(op(p), *k, fill(f)),
            Shape::DataSome(p, d) => ClassExpression::DataExists {
                property: dp(p),
                datatype: *d,
            },
            Shape::DataOnly(p, d) => ClassExpression::DataForAll {
                property: dp(p),
                datatype: *d,
            },
        }
    }
}

/// Builds an ontology that passes validation without errors.
pub fn build_ontology(plan: &OntologyPlan) -> Ontology {
    let k = plan.class_variants.len();
    let r = Resolver {
        classes: CLASS_POOL[..k].to_vec(),
        object_properties: (0..plan.object_properties.len())
            .map(|i| n(&format!("p{i}")))
            .collect(),
        datatype_properties: (0..plan.datatype_properties.len())
            .map(|i| n(&format!("d{i}")))
            .collect(),
    };
    let mut o = Ontology::new();
    for (base, v) in r.classes.iter().zip(&plan.class_variants) {
        o.classes.insert(spell(base, *v));
    }
    for (name, (domain, range, functional)) in
        r.object_properties.iter().zip(&plan.object_properties)
    {
        o.object_properties.insert(
            name.clone(),
            ObjectPropertyInfo {
                domain: domain.as_ref().map(|i| r.class(i, 0)),
                range: range.as_ref().map(|i| r.class(i, 0xff)),
                inverse_of: None,
                functional: *functional,
            },
        );
    }
    if plan.inverse_pair && r.object_properties.len() >= 2 {
        let (a, b) = (&r.object_properties[0], &r.object_properties[1]);
        o.object_properties.get_mut(a).unwrap().inverse_of = Some(b.clone());
        o.object_properties.get_mut(b).unwrap().inverse_of = Some(a.clone());
    }
    for (name, (domain, range)) in r.datatype_properties.iter().zip(&plan.datatype_properties) {
        o.datatype_properties.insert(
            name.clone(),
            DatatypePropertyInfo {
                domain: domain.as_ref().map(|i| r.class(i, 0)),
                range: *range,
            },
        );
    }
    for (sub, sup) in &plan.subclass_edges {
        let (i, j) = (sub.index(k), sup.index(k));
        if i > j {
            o.subclass_axioms.push(SubClassAxiom {
                subject: spell(r.classes[i], 0),
                superclass: ClassExpression::atomic(spell(r.classes[j], 0)),
            });
        }
    }
    for (subject, shape) in &plan.descriptions {
        let superclass = r.expr(shape);
        // Atomic superclasses belong to the acyclic hierarchy above.
        if matches!(superclass, ClassExpression::Atomic(_)) {
            continue;
        }
        o.subclass_axioms.push(SubClassAxiom {
            subject: r.class(subject, 0),
            superclass,
        });
    }
    for (subject, shape) in &plan.definitions {
        o.equivalence_axioms.push(EquivalenceAxiom {
            subject: r.class(subject, 0),
            definition: r.expr(shape),
        });
    }
    o
}

pub fn ontology(shape: BoxedStrategy<Shape>) -> impl Strategy<Value = Ontology> {
    ontology_plan(shape).prop_map(|p| build_ontology(&p))
}

/// A validated random ontology together with a non-empty seed subset.
pub fn seeded_ontology(
    shape: BoxedStrategy<Shape>,
) -> impl Strategy<Value = (Ontology, Vec<Name>)> {
    ontology(shape).prop_flat_map(|o| {
        let classes: Vec<Name> = o.classes.iter().cloned().collect();
        let k = classes.len();
        (Just(o), proptest::sample::subsequence(classes, 1..=k))
    })
}
