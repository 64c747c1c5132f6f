//! Normalized concept and property names.
//!
//! Ontologies in the wild mix spellings such as `Amino-Acid` and `amino-acid`.
//! A [`Name`] keeps the spelling it was built from but compares, orders and
//! hashes case-insensitively, so the two spellings above denote one concept.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NameError {
    #[error("name is empty after normalization")]
    Empty,
    #[error("name `{0}` contains characters outside letters, digits, `-` and `_`")]
    InvalidCharacter(String),
}

/// A concept or property name.
///
/// Construction trims surrounding whitespace and collapses every internal run
/// of whitespace into a single hyphen. The remaining characters must be ASCII
/// letters, digits, `-` or `_`.
#[derive(Clone)]
pub struct Name {
    spelling: String,
    key: String,
}

impl Name {
    pub fn new(raw: &str) -> Result<Self, NameError> {
        let spelling = raw.split_whitespace().collect::<Vec<_>>().join("-");
        if spelling.is_empty() {
            return Err(NameError::Empty);
        }
        if !spelling
            .chars()
            .all(|c| c.is_ascii_alphanumeric() || c == '-' || c == '_')
        {
            return Err(NameError::InvalidCharacter(spelling));
        }
        let key = spelling.to_ascii_lowercase();
        Ok(Name { spelling, key })
    }

    /// The spelling this name was constructed with.
    pub fn as_str(&self) -> &str {
        &self.spelling
    }

    /// The case-folded comparison key.
    pub fn key(&self) -> &str {
        &self.key
    }

    /// Of two equal names, the one whose spelling is byte-wise smaller.
    ///
    /// Used wherever two spellings of one name meet, so the surviving spelling
    /// does not depend on argument order.
    pub fn preferred<'a>(&'a self, other: &'a Name) -> &'a Name {
        if other.spelling < self.spelling {
            other
        } else {
            self
        }
    }
}

impl PartialEq for Name {
    fn eq(&self, other: &Self) -> bool {
        self.key == other.key
    }
}

impl Eq for Name {}

impl Hash for Name {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.key.hash(state);
    }
}

impl PartialOrd for Name {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Name {
    fn cmp(&self, other: &Self) -> Ordering {
        self.key.cmp(&other.key)
    }
}

impl fmt::Display for Name {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.spelling)
    }
}

impl fmt::Debug for Name {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.spelling)
    }
}

impl std::str::FromStr for Name {
    type Err = NameError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Name::new(s)
    }
}

impl Serialize for Name {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.spelling)
    }
}

impl<'de> Deserialize<'de> for Name {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let raw = String::deserialize(deserializer)?;
        Name::new(&raw).map_err(serde::de::Error::custom)
    }
}

/// Builds a [`Name`] from a literal, panicking on invalid input. Test and
/// fixture helper.
pub fn name(raw: &str) -> Name {
    Name::new(raw).unwrap_or_else(|e| panic!("invalid name {raw:?}: {e}"))
}
