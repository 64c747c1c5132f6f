use std::fmt::Write;

use crate::model::{ConceptualModel, Direction, Origin};

fn stereotype(origin: Origin) -> &'static str {
    match origin {
        Origin::Seed => "seed",
        Origin::Subconcept => "subconcept",
        Origin::RelationshipTarget => "relationship-target",
    }
}

/// Renders a model as a PlantUML class diagram.
///
/// One `class` block per entity (origin as stereotype, attributes as
/// `name : datatype`), then `Sub --|> Super` per generalization, then one
/// arrow per relationship: `-->` for uni-directional, `<-->` for
/// bi-directional, labelled with the target multiplicity and property name.
pub fn to_diagram_text(m: &ConceptualModel) -> String {
    let m = m.canonicalize();
    let mut out = String::from("@startuml\n");
    for e in m.entities() {
        let _ = writeln!(out, "class {} <<{}>> {{", e.name, stereotype(e.origin));
        for a in e.attributes() {
            let _ = writeln!(out, "  {} : {}", a.name, a.datatype.local());
        }
        out.push_str("}\n");
    }
    for g in m.generalizations() {
        let _ = writeln!(out, "{} --|> {}", g.sub, g.sup);
    }
    for r in m.relationships() {
        let arrow = match r.direction {
            Direction::Uni => "-->",
            Direction::Bi => "<-->",
        };
        let _ = writeln!(
            out,
            "{} {arrow} \"{}\" {} : {}",
            r.source,
            r.multiplicity(),
            r.target,
            r.name
        );
    }
    out.push_str("@enduml\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dl::DatatypeName;
    use crate::model::{Attribute, Generalization, Multiplicity, Relationship};
    use crate::name::name;

    #[test]
    fn empty_model_is_header_and_footer() {
        assert_eq!(
            to_diagram_text(&ConceptualModel::new()),
            "@startuml\n@enduml\n"
        );
    }

    #[test]
    fn protein_lines() {
        let mut m = ConceptualModel::new();
        m.add_entity(name("Protein"), Origin::Seed);
        m.add_entity(name("Macromolecular-compound"), Origin::RelationshipTarget);
        m.add_entity(name("Amino-Acid"), Origin::RelationshipTarget);
        m.add_entity(name("Protein-sequence"), Origin::RelationshipTarget)
            .add_attribute(Attribute {
                name: name("has-length"),
                datatype: DatatypeName::Integer,
            });
        m.add_generalization(Generalization::new(
            name("Protein"),
            name("Macromolecular-compound"),
        ));
        m.add_relationship(Relationship::new(
            name("polymer-of"),
            name("Protein"),
            name("Amino-Acid"),
            Direction::Uni,
            Multiplicity::ONE_OR_MORE,
        ));
        m.add_relationship(Relationship::new(
            name("part-of"),
            name("Protein"),
            name("Protein-sequence"),
            Direction::Bi,
            Multiplicity::ZERO_OR_MORE,
        ));
        let text = to_diagram_text(&m);
        let lines: Vec<&str> = text.lines().collect();
        assert!(lines.contains(&"Protein --|> Macromolecular-compound"));
        assert!(lines.contains(&"Protein --> \"1..*\" Amino-Acid : polymer-of"));
        assert!(lines.contains(&"Protein <--> \"0..*\" Protein-sequence : part-of"));
        assert!(lines.contains(&"  has-length : integer"));
        assert_eq!(lines[1], "class Amino-Acid <<relationship-target>> {");
        // relationships sorted by name: part-of before polymer-of
        let part = lines.iter().position(|l| l.ends_with(": part-of")).unwrap();
        let poly = lines
            .iter()
            .position(|l| l.ends_with(": polymer-of"))
            .unwrap();
        assert!(part < poly);
    }
}
