//! Recall, precision and intervention of a generated model against a gold
//! model.
//!
//! Elements are compared as sets per category. Intervention counts the
//! additions and deletions needed to turn the generated model into the gold
//! one, relative to the gold size.

use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;

use crate::dl::DatatypeName;
use crate::model::{ConceptualModel, Generalization, Multiplicity, RelationshipKey};
use crate::name::Name;

/// Correct, missing and spurious elements of one category.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CategoryDiff<T> {
    pub correct: BTreeSet<T>,
    /// In the gold model only.
    pub missing: BTreeSet<T>,
    /// In the generated model only.
    pub spurious: BTreeSet<T>,
}

impl<T: Ord + Clone> CategoryDiff<T> {
    fn of(generated: BTreeSet<T>, gold: BTreeSet<T>) -> Self {
        CategoryDiff {
            correct: generated.intersection(&gold).cloned().collect(),
            missing: gold.difference(&generated).cloned().collect(),
            spurious: generated.difference(&gold).cloned().collect(),
        }
    }
}

/// A relationship as compared; `multiplicity` is set only in strict mode.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct RelationshipItem {
    pub key: RelationshipKey,
    pub multiplicity: Option<Multiplicity>,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct AttributeItem {
    pub entity: Name,
    pub name: Name,
    pub datatype: DatatypeName,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModelDiff {
    pub entities: CategoryDiff<Name>,
    pub relationships: CategoryDiff<RelationshipItem>,
    pub attributes: CategoryDiff<AttributeItem>,
    pub generalizations: CategoryDiff<Generalization>,
}

fn entity_set(m: &ConceptualModel) -> BTreeSet<Name> {
    m.entities().map(|e| e.name.clone()).collect()
}

fn relationship_set(m: &ConceptualModel, strict: bool) -> BTreeSet<RelationshipItem> {
    m.relationships()
        .iter()
        .map(|r| RelationshipItem {
            key: r.key(),
            multiplicity: strict.then(|| r.multiplicity()),
        })
        .collect()
}

fn attribute_set(m: &ConceptualModel) -> BTreeSet<AttributeItem> {
    m.entities()
        .flat_map(|e| {
            e.attributes().map(|a| AttributeItem {
                entity: e.name.clone(),
                name: a.name.clone(),
                datatype: a.datatype,
            })
        })
        .collect()
}

/// Compares `generated` against `gold`, category by category. Names match
/// case-insensitively. With `strict_multiplicity`, relationships must also
/// agree on their multiplicity.
pub fn diff(
    generated: &ConceptualModel,
    gold: &ConceptualModel,
    strict_multiplicity: bool,
) -> ModelDiff {
    ModelDiff {
        entities: CategoryDiff::of(entity_set(generated), entity_set(gold)),
        relationships: CategoryDiff::of(
            relationship_set(generated, strict_multiplicity),
            relationship_set(gold, strict_multiplicity),
        ),
        attributes: CategoryDiff::of(attribute_set(generated), attribute_set(gold)),
        generalizations: CategoryDiff::of(
            generated.generalizations().cloned().collect(),
            gold.generalizations().cloned().collect(),
        ),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CategoryMetrics {
    pub n_correct: usize,
    pub n_gold: usize,
    pub n_generated: usize,
    pub n_missing: usize,
    pub n_spurious: usize,
    pub recall: f64,
    pub precision: f64,
    pub intervention: f64,
}

impl CategoryMetrics {
    /// Recall is 1 when the gold set is empty, precision is 1 when nothing
    /// was generated, intervention is 0 when the gold set is empty.
    pub fn from_counts(n_correct: usize, n_missing: usize, n_spurious: usize) -> Self {
        let n_gold = n_correct + n_missing;
        let n_generated = n_correct + n_spurious;
        let ratio = |num: usize, den: usize, empty: f64| {
            if den == 0 {
                empty
            } else {
                num as f64 / den as f64
            }
        };
        CategoryMetrics {
            n_correct,
            n_gold,
            n_generated,
            n_missing,
            n_spurious,
            recall: ratio(n_correct, n_gold, 1.0),
            precision: ratio(n_correct, n_generated, 1.0),
            intervention: ratio(n_missing + n_spurious, n_gold, 0.0),
        }
    }

    fn of<T>(d: &CategoryDiff<T>) -> Self {
        CategoryMetrics::from_counts(d.correct.len(), d.missing.len(), d.spurious.len())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Averages {
    pub recall: f64,
    pub precision: f64,
    pub intervention: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EvalReport {
    pub entities: CategoryMetrics,
    pub relationships: CategoryMetrics,
    pub attributes: CategoryMetrics,
    pub generalizations: CategoryMetrics,
    /// Counts summed over all categories.
    pub micro: CategoryMetrics,
    /// Unweighted mean of the four categories.
    pub macro_average: Averages,
}

impl EvalReport {
    pub fn categories(&self) -> [(&'static str, &CategoryMetrics); 4] {
        [
            ("entities", &self.entities),
            ("relationships", &self.relationships),
            ("attributes", &self.attributes),
            ("generalizations", &self.generalizations),
        ]
    }

    pub fn to_json(&self) -> String {
        let mut out = serde_json::to_string_pretty(self).expect("report serialization cannot fail");
        out.push('\n');
        out
    }
}

pub fn metrics(d: &ModelDiff) -> EvalReport {
    let entities = CategoryMetrics::of(&d.entities);
    let relationships = CategoryMetrics::of(&d.relationships);
    let attributes = CategoryMetrics::of(&d.attributes);
    let generalizations = CategoryMetrics::of(&d.generalizations);
    let all = [entities, relationships, attributes, generalizations];
    let micro = CategoryMetrics::from_counts(
        all.iter().map(|c| c.n_correct).sum(),
        all.iter().map(|c| c.n_missing).sum(),
        all.iter().map(|c| c.n_spurious).sum(),
    );
    let mean = |f: fn(&CategoryMetrics) -> f64| all.iter().map(f).sum::<f64>() / all.len() as f64;
    EvalReport {
        entities,
        relationships,
        attributes,
        generalizations,
        micro,
        macro_average: Averages {
            recall: mean(|c| c.recall),
            precision: mean(|c| c.precision),
            intervention: mean(|c| c.intervention),
        },
    }
}

pub fn evaluate(
    generated: &ConceptualModel,
    gold: &ConceptualModel,
    strict_multiplicity: bool,
) -> EvalReport {
    metrics(&diff(generated, gold, strict_multiplicity))
}

impl fmt::Display for EvalReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "{:<16} {:>7} {:>6} {:>9} {:>7} {:>9} {:>12}",
            "category", "correct", "gold", "generated", "recall", "precision", "intervention"
        )?;
        let row = |f: &mut fmt::Formatter<'_>, label: &str, c: &CategoryMetrics| {
            writeln!(
                f,
                "{:<16} {:>7} {:>6} {:>9} {:>7.3} {:>9.3} {:>12.3}",
                label, c.n_correct, c.n_gold, c.n_generated, c.recall, c.precision, c.intervention
            )
        };
        for (label, c) in self.categories() {
            row(f, label, c)?;
        }
        row(f, "total (micro)", &self.micro)?;
        let a = &self.macro_average;
        writeln!(
            f,
            "{:<16} {:>7} {:>6} {:>9} {:>7.3} {:>9.3} {:>12.3}",
            "average (macro)", "", "", "", a.recall, a.precision, a.intervention
        )
    }
}
