use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::diagnostic::{codes, Diagnostic};
use crate::dl::DatatypeName;
use crate::model::{
    Attribute, ConceptualModel, Direction, EntityType, Generalization, Multiplicity, Origin,
    Relationship, Upper,
};
use crate::name::Name;

/// Value of the `format` field written and accepted by this version.
pub const MODEL_FORMAT: &str = "cdm/1";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("BAD_MODEL_FILE: {0}")]
pub struct ModelFileError(pub String);

impl ModelFileError {
    pub fn diagnostic(&self) -> Diagnostic {
        Diagnostic::error(codes::BAD_MODEL_FILE, self.0.clone())
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct FileRepr {
    format: String,
    entities: Vec<EntityRepr>,
    relationships: Vec<RelationshipRepr>,
    generalizations: Vec<GeneralizationRepr>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct EntityRepr {
    name: Name,
    origin: Origin,
    attributes: Vec<AttributeRepr>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct AttributeRepr {
    name: Name,
    datatype: DatatypeName,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RelationshipRepr {
    name: Name,
    source: Name,
    target: Name,
    direction: Direction,
    multiplicity: (u32, UpperRepr),
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct GeneralizationRepr {
    sub: Name,
    #[serde(rename = "super")]
    sup: Name,
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum UpperRepr {
    Bounded(u32),
    Star(String),
}

impl From<Upper> for UpperRepr {
    fn from(u: Upper) -> Self {
        match u {
            Upper::Bounded(n) => UpperRepr::Bounded(n),
            Upper::Unbounded => UpperRepr::Star("*".into()),
        }
    }
}

/// Serializes a model as pretty-printed JSON in canonical order, with a
/// trailing newline. The same model always yields the same bytes.
pub fn write_model(m: &ConceptualModel) -> String {
    let m = m.canonicalize();
    let repr = FileRepr {
        format: MODEL_FORMAT.to_string(),
        entities: m
            .entities()
            .map(|e| EntityRepr {
                name: e.name.clone(),
                origin: e.origin,
                attributes: e
                    .attributes()
                    .map(|a| AttributeRepr {
                        name: a.name.clone(),
                        datatype: a.datatype,
                    })
                    .collect(),
            })
            .collect(),
        relationships: m
            .relationships()
            .iter()
            .map(|r| {
                let mult = r.multiplicity();
                RelationshipRepr {
                    name: r.name.clone(),
                    source: r.source.clone(),
                    target: r.target.clone(),
                    direction: r.direction,
                    multiplicity: (mult.lower(), mult.upper().into()),
                }
            })
            .collect(),
        generalizations: m
            .generalizations()
            .map(|g| GeneralizationRepr {
                sub: g.sub.clone(),
                sup: g.sup.clone(),
            })
            .collect(),
    };
    let mut out = serde_json::to_string_pretty(&repr).expect("model serialization cannot fail");
    out.push('\n');
    out
}

/// Parses a model file. Rejects malformed JSON, unknown format versions,
/// duplicate entities or attributes, inverted multiplicities and dangling
/// endpoints.
pub fn read_model(text: &str) -> Result<ConceptualModel, ModelFileError> {
    let value: serde_json::Value =
        serde_json::from_str(text).map_err(|e| ModelFileError(e.to_string()))?;
    match value.get("format").and_then(|f| f.as_str()) {
        Some(MODEL_FORMAT) => {}
        Some(other) => {
            return Err(ModelFileError(format!(
                "unsupported format `{other}`, expected `{MODEL_FORMAT}`"
            )))
        }
        None => return Err(ModelFileError("missing `format` field".into())),
    }
    let repr: FileRepr =
        serde_json::from_value(value).map_err(|e| ModelFileError(e.to_string()))?;

    let mut m = ConceptualModel::new();
    for e in repr.entities {
        if m.contains_entity(&e.name) {
            return Err(ModelFileError(format!("duplicate entity `{}`", e.name)));
        }
        let mut entity = EntityType::new(e.name, e.origin);
        for a in e.attributes {
            if entity.attribute(&a.name).is_some() {
                return Err(ModelFileError(format!(
                    "duplicate attribute `{}` on `{}`",
                    a.name, entity.name
                )));
            }
            entity.add_attribute(Attribute {
                name: a.name,
                datatype: a.datatype,
            });
        }
        m.insert_entity(entity);
    }
    for r in repr.relationships {
        let (lower, upper) = r.multiplicity;
        let upper = match upper {
            UpperRepr::Bounded(n) => Upper::Bounded(n),
            UpperRepr::Star(s) if s == "*" => Upper::Unbounded,
            UpperRepr::Star(s) => return Err(ModelFileError(format!("bad upper bound `{s}`"))),
        };
        let mult = Multiplicity::new(lower, upper).map_err(|e| ModelFileError(e.to_string()))?;
        m.add_relationship(Relationship::new(
            r.name,
            r.source,
            r.target,
            r.direction,
            mult,
        ));
    }
    for g in repr.generalizations {
        m.add_generalization(Generalization::new(g.sub, g.sup));
    }
    if let Some(problem) = m.integrity_problems().into_iter().next() {
        return Err(ModelFileError(problem));
    }
    Ok(m)
}
