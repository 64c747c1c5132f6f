use std::fmt;

use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Severity {
    Info,
    Warning,
    Error,
}

impl fmt::Display for Severity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Severity::Info => "info",
            Severity::Warning => "warning",
            Severity::Error => "error",
        })
    }
}

/// 1-based line and column in the source text.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Location {
    pub line: usize,
    pub column: usize,
}

/// A finding reported by the parser, validator, engine or merge.
///
/// Codes are short stable strings (`PARSE_ARITY`, `MULT_CONFLICT`, ...) that
/// tests and scripts match on; messages are free text.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Diagnostic {
    pub severity: Severity,
    pub code: &'static str,
    pub message: String,
    pub location: Option<Location>,
}

impl Diagnostic {
    pub fn error(code: &'static str, message: impl Into<String>) -> Self {
        Diagnostic {
            severity: Severity::Error,
            code,
            message: message.into(),
            location: None,
        }
    }

    pub fn warning(code: &'static str, message: impl Into<String>) -> Self {
        Diagnostic {
            severity: Severity::Warning,
            code,
            message: message.into(),
            location: None,
        }
    }

    pub fn info(code: &'static str, message: impl Into<String>) -> Self {
        Diagnostic {
            severity: Severity::Info,
            code,
            message: message.into(),
            location: None,
        }
    }

    pub fn at(mut self, line: usize, column: usize) -> Self {
        self.location = Some(Location { line, column });
        self
    }

    pub fn is_error(&self) -> bool {
        self.severity == Severity::Error
    }
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[{}]", self.severity, self.code)?;
        if let Some(loc) = self.location {
            write!(f, " {}:{}", loc.line, loc.column)?;
        }
        write!(f, ": {}", self.message)
    }
}

pub fn has_errors(diagnostics: &[Diagnostic]) -> bool {
    diagnostics.iter().any(Diagnostic::is_error)
}

/// Diagnostic codes emitted across the crate.
pub mod codes {
    pub const PARSE_SYNTAX: &str = "PARSE_SYNTAX";
    pub const PARSE_ARITY: &str = "PARSE_ARITY";
    pub const PARSE_KEYWORD: &str = "PARSE_KEYWORD";
    pub const PARSE_UNSUPPORTED: &str = "PARSE_UNSUPPORTED";
    pub const PARSE_NAME: &str = "PARSE_NAME";
    pub const PARSE_NUMBER: &str = "PARSE_NUMBER";
    pub const PARSE_DATATYPE: &str = "PARSE_DATATYPE";

    pub const UNDECLARED_PROPERTY: &str = "UNDECLARED_PROPERTY";
    pub const UNDECLARED_CLASS: &str = "UNDECLARED_CLASS";
    pub const PROPERTY_KIND_CONFLICT: &str = "PROPERTY_KIND_CONFLICT";
    pub const PROPERTY_KIND_MISMATCH: &str = "PROPERTY_KIND_MISMATCH";
    pub const CONFLICTING_AXIOM: &str = "CONFLICTING_AXIOM";
    pub const SUBSUMPTION_CYCLE: &str = "SUBSUMPTION_CYCLE";
    pub const UNCONSTRAINED_PROPERTY: &str = "UNCONSTRAINED_PROPERTY";

    pub const UNKNOWN_SEED: &str = "UNKNOWN_SEED";
    pub const ITERATION_CAP: &str = "ITERATION_CAP";
    pub const EMPTY_FILLER: &str = "EMPTY_FILLER";
    pub const UNSUPPORTED_SHAPE: &str = "UNSUPPORTED_SHAPE";
    pub const RANGELESS_PROPERTY: &str = "RANGELESS_PROPERTY";
    pub const DEFINED_ONLY: &str = "DEFINED_ONLY";
    pub const GENERALIZATION_CYCLE: &str = "GENERALIZATION_CYCLE";

    pub const MULT_CONFLICT: &str = "MULT_CONFLICT";
    pub const ATTR_CONFLICT: &str = "ATTR_CONFLICT";

    pub const BAD_MODEL_FILE: &str = "BAD_MODEL_FILE";
}
