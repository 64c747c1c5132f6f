//! The ontology store: named classes, class axioms and property metadata.

mod parser;
mod writer;

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use thiserror::Error;

use crate::diagnostic::{codes, Diagnostic};
use crate::dl::{ClassExpression, DatatypeName};
use crate::name::Name;

pub use parser::{parse_ontology, parse_ontology_bytes};

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ObjectPropertyInfo {
    pub domain: Option<Name>,
    pub range: Option<Name>,
    pub inverse_of: Option<Name>,
    pub functional: bool,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct DatatypePropertyInfo {
    pub domain: Option<Name>,
    pub range: Option<DatatypeName>,
}

/// `subject ⊑ superclass`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubClassAxiom {
    pub subject: Name,
    pub superclass: ClassExpression,
}

impl SubClassAxiom {
    /// The superclass name when the superclass is a bare named class.
    pub fn atomic_superclass(&self) -> Option<&Name> {
        match &self.superclass {
            ClassExpression::Atomic(n) => Some(n),
            _ => None,
        }
    }
}

/// `subject ≡ definition`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EquivalenceAxiom {
    pub subject: Name,
    pub definition: ClassExpression,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("unknown concept `{0}`")]
pub struct UnknownConcept(pub Name);

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Ontology {
    pub classes: BTreeSet<Name>,
    pub subclass_axioms: Vec<SubClassAxiom>,
    pub equivalence_axioms: Vec<EquivalenceAxiom>,
    pub object_properties: BTreeMap<Name, ObjectPropertyInfo>,
    pub datatype_properties: BTreeMap<Name, DatatypePropertyInfo>,
}

impl Ontology {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn contains_class(&self, c: &Name) -> bool {
        self.classes.contains(c)
    }

    /// Looks up the declared spelling of a class.
    pub fn class(&self, c: &Name) -> Option<&Name> {
        self.classes.get(c)
    }

    /// Superclasses asserted as bare named classes.
    pub fn atomic_superclasses<'a>(&'a self, c: &'a Name) -> impl Iterator<Item = &'a Name> + 'a {
        self.subclass_axioms
            .iter()
            .filter(move |ax| &ax.subject == c)
            .filter_map(SubClassAxiom::atomic_superclass)
    }

    /// Anonymous superclasses (restrictions and connectives) of `c`.
    pub fn description_superclasses<'a>(
        &'a self,
        c: &'a Name,
    ) -> impl Iterator<Item = &'a ClassExpression> + 'a {
        self.subclass_axioms
            .iter()
            .filter(move |ax| &ax.subject == c && ax.atomic_superclass().is_none())
            .map(|ax| &ax.superclass)
    }

    pub fn definitions<'a>(
        &'a self,
        c: &'a Name,
    ) -> impl Iterator<Item = &'a ClassExpression> + 'a {
        self.equivalence_axioms
            .iter()
            .filter(move |ax| &ax.subject == c)
            .map(|ax| &ax.definition)
    }

    pub fn is_defined(&self, c: &Name) -> bool {
        self.definitions(c).next().is_some()
    }

    /// Classes directly below `c`: subjects of atomic subclass axioms on `c`,
    /// then defined classes naming `c` as a conjunct (`A ≡ c ⊓ ...` entails
    /// `A ⊑ c`). Axiom order.
    pub fn direct_subconcepts<'a>(&'a self, c: &'a Name) -> impl Iterator<Item = &'a Name> + 'a {
        let asserted = self
            .subclass_axioms
            .iter()
            .filter(move |ax| ax.atomic_superclass() == Some(c))
            .map(|ax| &ax.subject);
        let defined = self
            .equivalence_axioms
            .iter()
            .filter(move |ax| named_conjuncts(&ax.definition).any(|n| n == c))
            .map(|ax| &ax.subject);
        asserted.chain(defined)
    }

    /// Transitive closure of [`Ontology::direct_subconcepts`] below `c`,
    /// excluding `c`.
    pub fn subconcepts_of(&self, c: &Name) -> Result<BTreeSet<Name>, UnknownConcept> {
        if !self.contains_class(c) {
            return Err(UnknownConcept(c.clone()));
        }
        let mut seen = BTreeSet::new();
        let mut queue: VecDeque<&Name> = VecDeque::from([c]);
        while let Some(next) = queue.pop_front() {
            for sub in self.direct_subconcepts(next) {
                if sub != c && seen.insert(sub.clone()) {
                    queue.push_back(sub);
                }
            }
        }
        Ok(seen)
    }

    pub fn has_inverse(&self, p: &Name) -> bool {
        self.object_properties
            .get(p)
            .is_some_and(|info| info.inverse_of.is_some())
    }

    /// Checks referential integrity, completes inverse links and rejects
    /// subsumption cycles.
    ///
    /// Errors: undeclared properties or classes, a property used with the
    /// wrong kind, contradicting inverse declarations, cycles among atomic
    /// subclass axioms. Warnings: properties with neither domain nor range.
    pub fn validate(&mut self) -> Vec<Diagnostic> {
        let mut out = Vec::new();
        self.check_class_references(&mut out);
        self.check_property_references(&mut out);
        self.complete_inverses(&mut out);
        self.check_cycles(&mut out);
        for (p, info) in &self.object_properties {
            if info.domain.is_none() && info.range.is_none() {
                out.push(Diagnostic::warning(
                    codes::UNCONSTRAINED_PROPERTY,
                    format!("object property `{p}` has neither domain nor range"),
                ));
            }
        }
        for (p, info) in &self.datatype_properties {
            if info.domain.is_none() && info.range.is_none() {
                out.push(Diagnostic::warning(
                    codes::UNCONSTRAINED_PROPERTY,
                    format!("datatype property `{p}` has neither domain nor range"),
                ));
            }
        }
        out
    }

    fn check_class_references(&self, out: &mut Vec<Diagnostic>) {
        let mut report = |c: &Name, context: String| {
            if !self.classes.contains(c) {
                out.push(Diagnostic::error(
                    codes::UNDECLARED_CLASS,
                    format!("class `{c}` is used in {context} but never declared"),
                ));
            }
        };
        for ax in &self.subclass_axioms {
            report(&ax.subject, format!("SubClassOf({}, ...)", ax.subject));
            for n in ax.superclass.atomic_names() {
                report(&n, format!("SubClassOf({}, ...)", ax.subject));
            }
        }
        for ax in &self.equivalence_axioms {
            report(
                &ax.subject,
                format!("EquivalentClasses({}, ...)", ax.subject),
            );
            for n in ax.definition.atomic_names() {
                report(&n, format!("EquivalentClasses({}, ...)", ax.subject));
            }
        }
        for (p, info) in &self.object_properties {
            for c in info.domain.iter().chain(info.range.iter()) {
                report(c, format!("the domain or range of `{p}`"));
            }
        }
        for (p, info) in &self.datatype_properties {
            if let Some(c) = &info.domain {
                report(c, format!("the domain of `{p}`"));
            }
        }
    }

    fn check_property_references(&self, out: &mut Vec<Diagnostic>) {
        let exprs = self
            .subclass_axioms
            .iter()
            .map(|ax| (&ax.subject, &ax.superclass))
            .chain(
                self.equivalence_axioms
                    .iter()
                    .map(|ax| (&ax.subject, &ax.definition)),
            );
        for (subject, expr) in exprs {
            for (p, as_data) in expr.properties() {
                let (own, other) = if as_data {
                    (
                        self.datatype_properties.contains_key(p),
                        self.object_properties.contains_key(p),
                    )
                } else {
                    (
                        self.object_properties.contains_key(p),
                        self.datatype_properties.contains_key(p),
                    )
                };
                if own {
                    continue;
                }
                let kind = if as_data { "datatype" } else { "object" };
                if other {
                    out.push(Diagnostic::error(
                        codes::PROPERTY_KIND_MISMATCH,
                        format!("`{p}` is used as a {kind} property in an axiom on `{subject}`"),
                    ));
                } else {
                    out.push(Diagnostic::error(
                        codes::UNDECLARED_PROPERTY,
                        format!(
                            "property `{p}` is used in an axiom on `{subject}` but never declared"
                        ),
                    ));
                }
            }
        }
    }

    fn complete_inverses(&mut self, out: &mut Vec<Diagnostic>) {
        let pairs: Vec<(Name, Name)> = self
            .object_properties
            .iter()
            .filter_map(|(p, info)| info.inverse_of.clone().map(|q| (p.clone(), q)))
            .collect();
        for (p, q) in pairs {
            match self.object_properties.get_mut(&q) {
                None => out.push(Diagnostic::error(
                    codes::UNDECLARED_PROPERTY,
                    format!("`{p}` is declared inverse of undeclared property `{q}`"),
                )),
                Some(info) => match &info.inverse_of {
                    None => info.inverse_of = Some(p),
                    Some(r) if *r == p => {}
                    Some(r) => out.push(Diagnostic::error(
                        codes::CONFLICTING_AXIOM,
                        format!("`{q}` is inverse of both `{r}` and `{p}`"),
                    )),
                },
            }
        }
    }

    fn check_cycles(&self, out: &mut Vec<Diagnostic>) {
        let mut edges: BTreeMap<&Name, Vec<&Name>> = BTreeMap::new();
        for ax in &self.subclass_axioms {
            if let Some(sup) = ax.atomic_superclass() {
                edges.entry(&ax.subject).or_default().push(sup);
            }
        }
        for cycle in find_cycles(&edges) {
            let path: Vec<String> = cycle.iter().map(|n| n.to_string()).collect();
            out.push(Diagnostic::error(
                codes::SUBSUMPTION_CYCLE,
                format!("subsumption cycle: {} ⊑ {}", path.join(" ⊑ "), path[0]),
            ));
        }
    }

    /// Serializes to the line-oriented ontology format. Parsing the result
    /// yields an ontology equal to `self`.
    pub fn to_text(&self) -> String {
        writer::write_ontology(self)
    }
}

/// The named classes a definition is an intersection of.
fn named_conjuncts(e: &ClassExpression) -> impl Iterator<Item = &Name> {
    let ops: &[ClassExpression] = match e {
        ClassExpression::Intersection(ops) => ops,
        other => std::slice::from_ref(other),
    };
    ops.iter().filter_map(|op| match op {
        ClassExpression::Atomic(n) => Some(n),
        _ => None,
    })
}

/// One representative cycle per back edge found by a depth-first walk.
fn find_cycles<'a>(edges: &BTreeMap<&'a Name, Vec<&'a Name>>) -> Vec<Vec<&'a Name>> {
    #[derive(Clone, Copy, PartialEq)]
    enum Mark {
        Open,
        Done,
    }
    fn visit<'a>(
        node: &'a Name,
        edges: &BTreeMap<&'a Name, Vec<&'a Name>>,
        marks: &mut BTreeMap<&'a Name, Mark>,
        stack: &mut Vec<&'a Name>,
        cycles: &mut Vec<Vec<&'a Name>>,
    ) {
        marks.insert(node, Mark::Open);
        stack.push(node);
        for &next in edges.get(node).map(Vec::as_slice).unwrap_or_default() {
            match marks.get(next) {
                Some(Mark::Open) => {
                    let start = stack.iter().position(|n| *n == next).unwrap_or(0);
                    cycles.push(stack[start..].to_vec());
                }
                Some(Mark::Done) => {}
                None => visit(next, edges, marks, stack, cycles),
            }
        }
        stack.pop();
        marks.insert(node, Mark::Done);
    }

    let mut marks = BTreeMap::new();
    let mut cycles = Vec::new();
    for &node in edges.keys() {
        if !marks.contains_key(node) {
            visit(node, edges, &mut marks, &mut Vec::new(), &mut cycles);
        }
    }
    cycles
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::name::name;

    fn parsed(text: &str) -> Ontology {
        let (o, diags) = parse_ontology(text);
        assert!(diags.is_empty(), "{diags:?}");
        o
    }

    #[test]
    fn subconcepts_are_transitive() {
        let o = parsed("Class(A)\nClass(B)\nClass(C)\nSubClassOf(A, B)\nSubClassOf(B, C)\n");
        let subs = o.subconcepts_of(&name("C")).unwrap();
        assert_eq!(subs, BTreeSet::from([name("A"), name("B")]));
        assert!(o.subconcepts_of(&name("A")).unwrap().is_empty());
    }

    #[test]
    fn subconcepts_ignore_complex_superclasses() {
        let o = parsed("Class(A)\nClass(B)\nObjectProperty(p)\nSubClassOf(A, Some(p, B))\n");
        assert!(o.subconcepts_of(&name("B")).unwrap().is_empty());
    }

    #[test]
    fn defined_classes_are_subconcepts_of_their_named_conjuncts() {
        let o = parsed(
            "Class(A)\nClass(B)\nClass(C)\nClass(D)\nObjectProperty(p)\n\
             EquivalentClasses(A, And(B, Some(p, C)))\nEquivalentClasses(D, Or(B, C))\n",
        );
        assert_eq!(
            o.subconcepts_of(&name("B")).unwrap(),
            BTreeSet::from([name("A")])
        );
        assert!(o.subconcepts_of(&name("C")).unwrap().is_empty());
    }

    #[test]
    fn fixture_protein_is_a_macromolecular_compound() {
        let (o, _) = parse_ontology(crate::MINI_TAO);
        assert!(o
            .subconcepts_of(&name("Macromolecular-compound"))
            .unwrap()
            .contains(&name("Protein")));
        assert_eq!(
            o.subconcepts_of(&name("Macromolecule-Part")).unwrap(),
            BTreeSet::from([name("DNA-Part")])
        );
    }

    #[test]
    fn subconcepts_of_unknown_concept_fails() {
        let o = Ontology::new();
        assert_eq!(o.subconcepts_of(&name("X")), Err(UnknownConcept(name("X"))));
    }

    #[test]
    fn undeclared_property_in_restriction() {
        let mut o = parsed("Class(A)\nClass(B)\nSubClassOf(A, Some(encodes, B))\n");
        let diags = o.validate();
        assert!(diags
            .iter()
            .any(|d| d.code == codes::UNDECLARED_PROPERTY && d.is_error()));
    }

    #[test]
    fn property_kind_mismatch() {
        let mut o = parsed("Class(A)\nDatatypeProperty(len)\nSubClassOf(A, Some(len, A))\n");
        let diags = o.validate();
        assert!(diags
            .iter()
            .any(|d| d.code == codes::PROPERTY_KIND_MISMATCH));
    }

    #[test]
    fn inverse_is_completed() {
        let mut o = parsed(
            "Class(A)\nObjectProperty(part-of)\nObjectProperty(has-part)\nDomain(part-of, A)\nDomain(has-part, A)\nInverseOf(part-of, has-part)\n",
        );
        assert_eq!(o.object_properties[&name("has-part")].inverse_of, None);
        let diags = o.validate();
        assert!(diags.is_empty(), "{diags:?}");
        assert_eq!(
            o.object_properties[&name("has-part")].inverse_of,
            Some(name("part-of"))
        );
        assert_eq!(
            o.object_properties[&name("part-of")].inverse_of,
            Some(name("has-part"))
        );
    }

    #[test]
    fn conflicting_inverse() {
        let mut o = parsed(
            "ObjectProperty(p)\nObjectProperty(q)\nObjectProperty(r)\nDomain(p, A)\nDomain(q, A)\nDomain(r, A)\nClass(A)\nInverseOf(p, q)\nInverseOf(r, q)\n",
        );
        let diags = o.validate();
        assert!(
            diags.iter().any(|d| d.code == codes::CONFLICTING_AXIOM),
            "{diags:?}"
        );
    }

    #[test]
    fn two_cycle_is_rejected() {
        let mut o = parsed("Class(A)\nClass(B)\nSubClassOf(A, B)\nSubClassOf(B, A)\n");
        let diags = o.validate();
        assert_eq!(
            diags
                .iter()
                .filter(|d| d.code == codes::SUBSUMPTION_CYCLE)
                .count(),
            1
        );
    }

    #[test]
    fn self_subsumption_is_a_cycle() {
        let mut o = parsed("Class(A)\nSubClassOf(A, A)\n");
        assert!(o
            .validate()
            .iter()
            .any(|d| d.code == codes::SUBSUMPTION_CYCLE));
    }

    #[test]
    fn unconstrained_property_warns() {
        let mut o = parsed("ObjectProperty(p)\n");
        let diags = o.validate();
        assert_eq!(diags.len(), 1);
        assert_eq!(diags[0].code, codes::UNCONSTRAINED_PROPERTY);
        assert!(!diags[0].is_error());
    }

    #[test]
    fn undeclared_class_in_axiom() {
        let mut o = parsed("Class(A)\nSubClassOf(A, B)\n");
        assert!(o
            .validate()
            .iter()
            .any(|d| d.code == codes::UNDECLARED_CLASS));
    }
}
