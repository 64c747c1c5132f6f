use std::collections::{BTreeMap, BTreeSet};

use crate::diagnostic::{codes, Diagnostic};
use crate::model::{fold_relationships, Attribute, ConceptualModel, Origin};
use crate::name::Name;

use super::DatatypeClasses;

/// Applies the refining rules to a merged model.
///
/// 1. Relationships sharing `(name, source, target)` fold into one whose
///    multiplicity is the intersection of all members; bi wins over uni.
/// 2. Relationships into a datatype class become attributes of their source.
///    A datatype-class entity that was only ever a relationship target and is
///    left unreferenced is dropped.
/// 3. Generalizations that would close a cycle are dropped, in canonical
///    order.
///
/// Idempotent.
pub fn refine(
    m: &ConceptualModel,
    datatype_classes: &DatatypeClasses,
) -> (ConceptualModel, Vec<Diagnostic>) {
    let mut out = m.clone();
    let (folded, mut diags) = fold_relationships(m.relationships().iter().cloned());

    let mut kept = Vec::with_capacity(folded.len());
    let mut converted: BTreeSet<Name> = BTreeSet::new();
    for r in folded {
        let Some(datatype) = datatype_classes.get(&r.target) else {
            kept.push(r);
            continue;
        };
        converted.insert(r.target.clone());
        if let Some(source) = out.entity_mut(&r.source) {
            diags.extend(source.add_attribute(Attribute {
                name: r.name.clone(),
                datatype,
            }));
        }
    }
    out.set_relationships(kept);

    for dt in converted {
        let orphaned = out
            .entity(&dt)
            .is_some_and(|e| e.origin == Origin::RelationshipTarget)
            && !out
                .relationships()
                .iter()
                .any(|r| r.source == dt || r.target == dt)
            && !out.generalizations().any(|g| g.sub == dt || g.sup == dt);
        if orphaned {
            out.remove_entity(&dt);
        }
    }

    diags.extend(break_generalization_cycles(&mut out));
    (out, diags)
}

fn break_generalization_cycles(m: &mut ConceptualModel) -> Vec<Diagnostic> {
    let mut diags = Vec::new();
    let mut parents: BTreeMap<Name, Vec<Name>> = BTreeMap::new();
    let mut dropped = Vec::new();
    for g in m.generalizations() {
        if g.sub == g.sup || reaches(&parents, &g.sup, &g.sub) {
            dropped.push(g.clone());
            continue;
        }
        parents
            .entry(g.sub.clone())
            .or_default()
            .push(g.sup.clone());
    }
    for g in dropped {
        diags.push(Diagnostic::warning(
            codes::GENERALIZATION_CYCLE,
            format!(
                "dropping generalization {} ⊑ {}, which closes a cycle",
                g.sub, g.sup
            ),
        ));
        m.remove_generalization(&g);
    }
    diags
}

/// Whether `to` is reachable from `from` by following sub → super links.
fn reaches(parents: &BTreeMap<Name, Vec<Name>>, from: &Name, to: &Name) -> bool {
    let mut stack = vec![from];
    let mut seen = BTreeSet::new();
    while let Some(n) = stack.pop() {
        if n == to {
            return true;
        }
        if !seen.insert(n) {
            continue;
        }
        if let Some(ps) = parents.get(n) {
            stack.extend(ps);
        }
    }
    false
}
