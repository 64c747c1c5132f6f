use std::cmp::Ordering;
use std::fmt;

use thiserror::Error;

/// Upper end of a multiplicity interval.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Upper {
    Bounded(u32),
    Unbounded,
}

impl Ord for Upper {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Upper::Bounded(a), Upper::Bounded(b)) => a.cmp(b),
            (Upper::Bounded(_), Upper::Unbounded) => Ordering::Less,
            (Upper::Unbounded, Upper::Bounded(_)) => Ordering::Greater,
            (Upper::Unbounded, Upper::Unbounded) => Ordering::Equal,
        }
    }
}

impl PartialOrd for Upper {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Upper {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Upper::Bounded(n) => write!(f, "{n}"),
            Upper::Unbounded => f.write_str("*"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("empty multiplicity interval [{lower}, {upper}]")]
pub struct EmptyInterval {
    pub lower: u32,
    pub upper: Upper,
}

/// A non-empty participation interval `[lower, upper]` at a relationship end.
///
/// Ordered by `(lower, upper)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Multiplicity {
    lower: u32,
    upper: Upper,
}

impl Multiplicity {
    /// `0..*`
    pub const ZERO_OR_MORE: Multiplicity = Multiplicity {
        lower: 0,
        upper: Upper::Unbounded,
    };
    /// `1..*`
    pub const ONE_OR_MORE: Multiplicity = Multiplicity {
        lower: 1,
        upper: Upper::Unbounded,
    };
    /// `0..1`
    pub const OPTIONAL: Multiplicity = Multiplicity {
        lower: 0,
        upper: Upper::Bounded(1),
    };

    pub fn new(lower: u32, upper: Upper) -> Result<Self, EmptyInterval> {
        if Upper::Bounded(lower) > upper {
            Err(EmptyInterval { lower, upper })
        } else {
            Ok(Multiplicity { lower, upper })
        }
    }

    pub fn at_least(n: u32) -> Self {
        Multiplicity {
            lower: n,
            upper: Upper::Unbounded,
        }
    }

    pub fn at_most(n: u32) -> Self {
        Multiplicity {
            lower: 0,
            upper: Upper::Bounded(n),
        }
    }

    pub fn exactly(n: u32) -> Self {
        Multiplicity {
            lower: n,
            upper: Upper::Bounded(n),
        }
    }

    pub fn lower(self) -> u32 {
        self.lower
    }

    pub fn upper(self) -> Upper {
        self.upper
    }

    pub fn contains(self, n: u32) -> bool {
        n >= self.lower && Upper::Bounded(n) <= self.upper
    }

    /// `[max(lowers), min(uppers)]`, or `None` when that is empty.
    pub fn intersect(self, other: Multiplicity) -> Option<Multiplicity> {
        Multiplicity::new(self.lower.max(other.lower), self.upper.min(other.upper)).ok()
    }

    /// Text form `lower..upper`, with `*` for an unbounded upper end.
    pub fn encoding(self) -> String {
        self.to_string()
    }
}

impl fmt::Display for Multiplicity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}..{}", self.lower, self.upper)
    }
}

/// Running intersection of a group of intervals that may have become empty,
/// together with the interval to fall back on when it has.
///
/// Both components fold associatively and commutatively, so combining a group
/// in any order or tree shape gives the same state. The fallback is the member
/// with the lexicographically smallest encoding.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) struct Constraint {
    lower: u32,
    upper: Upper,
    fallback: Multiplicity,
}

impl Constraint {
    pub(crate) fn of(m: Multiplicity) -> Self {
        Constraint {
            lower: m.lower,
            upper: m.upper,
            fallback: m,
        }
    }

    pub(crate) fn meet(self, other: Constraint) -> Constraint {
        let fallback = match self.fallback.encoding().cmp(&other.fallback.encoding()) {
            Ordering::Greater => other.fallback,
            _ => self.fallback,
        };
        Constraint {
            lower: self.lower.max(other.lower),
            upper: self.upper.min(other.upper),
            fallback,
        }
    }

    pub(crate) fn is_empty(self) -> bool {
        Upper::Bounded(self.lower) > self.upper
    }

    /// The intersection when non-empty, the fallback otherwise.
    pub(crate) fn resolve(self) -> Multiplicity {
        Multiplicity::new(self.lower, self.upper).unwrap_or(self.fallback)
    }
}
