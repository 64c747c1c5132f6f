//! Description-logic class expressions.
//!
//! The AST covers the OWL subset the transformer understands: named classes,
//! intersections and unions, existential/universal/cardinality restrictions on
//! object properties, and existential/universal restrictions on datatype
//! properties. Complements, nominals and property chains are not representable.

use std::collections::BTreeSet;
use std::fmt;
use std::ops::Deref;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::name::Name;

/// The closed set of datatypes an attribute can carry.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum DatatypeName {
    #[serde(rename = "xsd:boolean")]
    Boolean,
    #[serde(rename = "xsd:date")]
    Date,
    #[serde(rename = "xsd:float")]
    Float,
    #[serde(rename = "xsd:integer")]
    Integer,
    #[serde(rename = "xsd:string")]
    String,
}

impl DatatypeName {
    pub const ALL: [DatatypeName; 5] = [
        DatatypeName::Boolean,
        DatatypeName::Date,
        DatatypeName::Float,
        DatatypeName::Integer,
        DatatypeName::String,
    ];

    /// The prefixed form, e.g. `xsd:integer`.
    pub fn qualified(self) -> &'static str {
        match self {
            DatatypeName::Boolean => "xsd:boolean",
            DatatypeName::Date => "xsd:date",
            DatatypeName::Float => "xsd:float",
            DatatypeName::Integer => "xsd:integer",
            DatatypeName::String => "xsd:string",
        }
    }

    /// The bare local name, e.g. `integer`.
    pub fn local(self) -> &'static str {
        &self.qualified()[4..]
    }
}

impl fmt::Display for DatatypeName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.qualified())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("unknown datatype `{0}` (expected one of xsd:string, xsd:integer, xsd:float, xsd:boolean, xsd:date)")]
pub struct UnknownDatatype(pub String);

impl FromStr for DatatypeName {
    type Err = UnknownDatatype;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        DatatypeName::ALL
            .into_iter()
            .find(|d| d.qualified() == s)
            .ok_or_else(|| UnknownDatatype(s.to_string()))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("a connective needs at least two operands, got {0}")]
pub struct TooFewOperands(pub usize);

/// Operand list of an intersection or union.
///
/// Always holds at least two expressions, none of which is a directly nested
/// node of the owning connective.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Operands(Vec<ClassExpression>);

impl Deref for Operands {
    type Target = [ClassExpression];

    fn deref(&self) -> &[ClassExpression] {
        &self.0
    }
}

impl Operands {
    pub fn into_vec(self) -> Vec<ClassExpression> {
        self.0
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum ClassExpression {
    Atomic(Name),
    Intersection(Operands),
    Union(Operands),
    /// `∃R.C`
    Exists {
        property: Name,
        filler: Box<ClassExpression>,
    },
    /// `∀R.C`
    ForAll {
        property: Name,
        filler: Box<ClassExpression>,
    },
    /// `≥ n R[.C]`
    MinCard {
        property: Name,
        n: u32,
        filler: Option<Box<ClassExpression>>,
    },
    /// `≤ n R[.C]`
    MaxCard {
        property: Name,
        n: u32,
        filler: Option<Box<ClassExpression>>,
    },
    /// `= n R[.C]`
    ExactCard {
        property: Name,
        n: u32,
        filler: Option<Box<ClassExpression>>,
    },
    DataExists {
        property: Name,
        datatype: DatatypeName,
    },
    DataForAll {
        property: Name,
        datatype: DatatypeName,
    },
}

impl ClassExpression {
    pub fn atomic(name: Name) -> Self {
        ClassExpression::Atomic(name)
    }

    /// Builds an intersection, splicing in the operands of nested intersections.
    pub fn intersection(operands: Vec<ClassExpression>) -> Result<Self, TooFewOperands> {
        Self::flattened(operands, true).map(ClassExpression::Intersection)
    }

    /// Builds a union, splicing in the operands of nested unions.
    pub fn union(operands: Vec<ClassExpression>) -> Result<Self, TooFewOperands> {
        Self::flattened(operands, false).map(ClassExpression::Union)
    }

    fn flattened(operands: Vec<ClassExpression>, and: bool) -> Result<Operands, TooFewOperands> {
        if operands.len() < 2 {
            return Err(TooFewOperands(operands.len()));
        }
        let mut out = Vec::with_capacity(operands.len());
        for op in operands {
            match op {
                ClassExpression::Intersection(inner) if and => out.extend(inner.0),
                ClassExpression::Union(inner) if !and => out.extend(inner.0),
                other => out.push(other),
            }
        }
        Ok(Operands(out))
    }

    pub fn exists(property: Name, filler: ClassExpression) -> Self {
        ClassExpression::Exists {
            property,
            filler: Box::new(filler),
        }
    }

    pub fn for_all(property: Name, filler: ClassExpression) -> Self {
        ClassExpression::ForAll {
            property,
            filler: Box::new(filler),
        }
    }

    pub fn min_card(property: Name, n: u32, filler: Option<ClassExpression>) -> Self {
        ClassExpression::MinCard {
            property,
            n,
            filler: filler.map(Box::new),
        }
    }

    pub fn max_card(property: Name, n: u32, filler: Option<ClassExpression>) -> Self {
        ClassExpression::MaxCard {
            property,
            n,
            filler: filler.map(Box::new),
        }
    }

    pub fn exact_card(property: Name, n: u32, filler: Option<ClassExpression>) -> Self {
        ClassExpression::ExactCard {
            property,
            n,
            filler: filler.map(Box::new),
        }
    }

    /// True for every restriction variant, object or datatype.
    pub fn is_restriction(&self) -> bool {
        !matches!(
            self,
            ClassExpression::Atomic(_)
                | ClassExpression::Intersection(_)
                | ClassExpression::Union(_)
        )
    }

    /// The restricted property, if this is a restriction.
    pub fn property(&self) -> Option<&Name> {
        match self {
            ClassExpression::Exists { property, .. }
            | ClassExpression::ForAll { property, .. }
            | ClassExpression::MinCard { property, .. }
            | ClassExpression::MaxCard { property, .. }
            | ClassExpression::ExactCard { property, .. }
            | ClassExpression::DataExists { property, .. }
            | ClassExpression::DataForAll { property, .. } => Some(property),
            _ => None,
        }
    }

    /// The filler of an object-property restriction. `None` for unqualified
    /// cardinalities and for every non-object-restriction variant.
    pub fn filler(&self) -> Option<&ClassExpression> {
        match self {
            ClassExpression::Exists { filler, .. } | ClassExpression::ForAll { filler, .. } => {
                Some(filler)
            }
            ClassExpression::MinCard { filler, .. }
            | ClassExpression::MaxCard { filler, .. }
            | ClassExpression::ExactCard { filler, .. } => filler.as_deref(),
            _ => None,
        }
    }

    pub fn is_object_restriction(&self) -> bool {
        matches!(
            self,
            ClassExpression::Exists { .. }
                | ClassExpression::ForAll { .. }
                | ClassExpression::MinCard { .. }
                | ClassExpression::MaxCard { .. }
                | ClassExpression::ExactCard { .. }
        )
    }

    pub fn is_data_restriction(&self) -> bool {
        matches!(
            self,
            ClassExpression::DataExists { .. } | ClassExpression::DataForAll { .. }
        )
    }

    /// Splits a connective into its operands; any other expression comes back
    /// as a one-element list. Never empty.
    pub fn deconstruct(&self) -> Vec<&ClassExpression> {
        match self {
            ClassExpression::Intersection(ops) | ClassExpression::Union(ops) => {
                ops.iter().collect()
            }
            other => vec![other],
        }
    }

    /// Every named class mentioned anywhere in the tree, fillers included.
    pub fn atomic_names(&self) -> BTreeSet<Name> {
        let mut out = BTreeSet::new();
        self.collect_atomic_names(&mut out);
        out
    }

    fn collect_atomic_names(&self, out: &mut BTreeSet<Name>) {
        match self {
            ClassExpression::Atomic(n) => {
                out.insert(n.clone());
            }
            ClassExpression::Intersection(ops) | ClassExpression::Union(ops) => {
                for op in ops.iter() {
                    op.collect_atomic_names(out);
                }
            }
            other => {
                if let Some(f) = other.filler() {
                    f.collect_atomic_names(out);
                }
            }
        }
    }

    /// Every property mentioned anywhere in the tree, paired with whether it is
    /// used as a datatype property.
    pub fn properties(&self) -> Vec<(&Name, bool)> {
        let mut out = Vec::new();
        self.collect_properties(&mut out);
        out
    }

    fn collect_properties<'a>(&'a self, out: &mut Vec<(&'a Name, bool)>) {
        match self {
            ClassExpression::Atomic(_) => {}
            ClassExpression::Intersection(ops) | ClassExpression::Union(ops) => {
                for op in ops.iter() {
                    op.collect_properties(out);
                }
            }
            ClassExpression::DataExists { property, .. }
            | ClassExpression::DataForAll { property, .. } => {
                out.push((property, true));
            }
            other => {
                if let Some(p) = other.property() {
                    out.push((p, false));
                }
                if let Some(f) = other.filler() {
                    f.collect_properties(out);
                }
            }
        }
    }
}

/// Renders in the ontology file syntax, e.g. `Some(polymer-of, Amino-Acid)`.
impl fmt::Display for ClassExpression {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn list(f: &mut fmt::Formatter<'_>, head: &str, ops: &[ClassExpression]) -> fmt::Result {
            write!(f, "{head}(")?;
            for (i, op) in ops.iter().enumerate() {
                if i > 0 {
                    f.write_str(", ")?;
                }
                write!(f, "{op}")?;
            }
            f.write_str(")")
        }
        fn card(
            f: &mut fmt::Formatter<'_>,
            head: &str,
            property: &Name,
            n: u32,
            filler: &Option<Box<ClassExpression>>,
        ) -> fmt::Result {
            match filler {
                Some(c) => write!(f, "{head}({property}, {n}, {c})"),
                None => write!(f, "{head}({property}, {n})"),
            }
        }
        match self {
            ClassExpression::Atomic(n) => write!(f, "{n}"),
            ClassExpression::Intersection(ops) => list(f, "And", ops),
            ClassExpression::Union(ops) => list(f, "Or", ops),
            ClassExpression::Exists { property, filler } => write!(f, "Some({property}, {filler})"),
            ClassExpression::ForAll { property, filler } => write!(f, "Only({property}, {filler})"),
            ClassExpression::MinCard {
                property,
                n,
                filler,
            } => card(f, "Min", property, *n, filler),
            ClassExpression::MaxCard {
                property,
                n,
                filler,
            } => card(f, "Max", property, *n, filler),
            ClassExpression::ExactCard {
                property,
                n,
                filler,
            } => card(f, "Exact", property, *n, filler),
            ClassExpression::DataExists { property, datatype } => {
                write!(f, "DataSome({property}, {datatype})")
            }
            ClassExpression::DataForAll { property, datatype } => {
                write!(f, "DataOnly({property}, {datatype})")
            }
        }
    }
}
