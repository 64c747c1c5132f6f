use std::fmt::Write;

use super::Ontology;

pub(super) fn write_ontology(o: &Ontology) -> String {
    let mut out = String::new();
    for c in &o.classes {
        let _ = writeln!(out, "Class({c})");
    }
    for (p, info) in &o.object_properties {
        let _ = writeln!(out, "ObjectProperty({p})");
        if let Some(d) = &info.domain {
            let _ = writeln!(out, "Domain({p}, {d})");
        }
        if let Some(r) = &info.range {
            let _ = writeln!(out, "Range({p}, {r})");
        }
        if let Some(q) = &info.inverse_of {
            let _ = writeln!(out, "InverseOf({p}, {q})");
        }
        if info.functional {
            let _ = writeln!(out, "Functional({p})");
        }
    }
    for (p, info) in &o.datatype_properties {
        let _ = writeln!(out, "DatatypeProperty({p})");
        if let Some(d) = &info.domain {
            let _ = writeln!(out, "Domain({p}, {d})");
        }
        if let Some(r) = &info.range {
            let _ = writeln!(out, "Range({p}, {r})");
        }
    }
    for ax in &o.subclass_axioms {
        let _ = writeln!(out, "SubClassOf({}, {})", ax.subject, ax.superclass);
    }
    for ax in &o.equivalence_axioms {
        let _ = writeln!(out, "EquivalentClasses({}, {})", ax.subject, ax.definition);
    }
    out
}
