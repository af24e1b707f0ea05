//! Normal forms for modules over the cohomology ring of a point.

mod m2;
mod module;
mod poly;

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use m2::M2Element;
pub use module::{AntipodalKey, FreeKey, NormalFormModule, SummandKey};
pub use poly::{BivariatePolynomial, PolyParseError, UnivariatePolynomial};

/// Topological degree `p` and weight `q`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Bidegree {
    pub p: i64,
    pub q: i64,
}

impl Bidegree {
    pub const fn new(p: i64, q: i64) -> Self {
        Self { p, q }
    }
}

impl std::ops::Add for Bidegree {
    type Output = Bidegree;

    fn add(self, rhs: Bidegree) -> Bidegree {
        Bidegree::new(self.p + rhs.p, self.q + rhs.q)
    }
}

impl fmt::Display for Bidegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.p, self.q)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("constraint violation at {key}: {reason}")]
    ConstraintViolation { key: SummandKey, reason: &'static str },
    #[error("multiplicity {multiplicity} of {key} is not positive")]
    NegativeMultiplicity { key: SummandKey, multiplicity: i64 },
    #[error("invalid suspension shift ({p},{q}): need p >= q >= 0")]
    InvalidShift { p: i64, q: i64 },
}
