//! Derives conceptual data models (entity types, attributes, relationships
//! with multiplicities, generalizations) from ontologies written in a
//! description-logic subset of OWL, and scores generated models against
//! hand-corrected gold models.
//!
//! The pipeline is: [`parse_ontology`] → [`Ontology::validate`] →
//! [`transform`] → [`write_model`] / [`to_diagram_text`], with [`evaluate`]
//! comparing two models.

pub mod diagnostic;
pub mod dl;
pub mod emit;
pub mod engine;
pub mod eval;
pub mod model;
pub mod name;
pub mod ontology;

pub use diagnostic::{Diagnostic, Location, Severity};
pub use dl::{ClassExpression, DatatypeName};
pub use emit::{read_model, to_diagram_text, write_model, ModelFileError};
pub use engine::{transform, DatatypeClasses, TransformError, TransformOptions, Transformed};
pub use eval::{diff, evaluate, metrics, EvalReport, ModelDiff};
pub use model::{ConceptualModel, Direction, Multiplicity, Origin, Relationship, Upper};
pub use name::Name;
pub use ontology::{parse_ontology, Ontology};

/// The bundled ontology fixture encoding the protein example.
pub const MINI_TAO: &str = include_str!("../fixtures/mini-tao.onto");
