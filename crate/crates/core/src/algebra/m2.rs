//! The bigraded cohomology ring of a point.
//!
//! The positive cone is the polynomial ring `F2[rho, tau]` with
//! `rho` in bidegree (1,1) and `tau` in bidegree (0,1). The negative cone
//! consists of the classes `theta / (rho^r tau^s)`, where `theta` sits in
//! bidegree (0,-2). Every nonzero graded piece is one-dimensional, so an
//! element is either zero or a single basis class.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::Bidegree;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum M2Element {
    Zero,
    /// `rho^rho * tau^tau`.
    Pos { rho: u32, tau: u32 },
    /// `theta / (rho^rho * tau^tau)`.
    Neg { rho: u32, tau: u32 },
}

impl M2Element {
    pub const ONE: M2Element = M2Element::Pos { rho: 0, tau: 0 };
    pub const RHO: M2Element = M2Element::Pos { rho: 1, tau: 0 };
    pub const TAU: M2Element = M2Element::Pos { rho: 0, tau: 1 };
    pub const THETA: M2Element = M2Element::Neg { rho: 0, tau: 0 };

    pub fn pos(rho: u32, tau: u32) -> Self {
        M2Element::Pos { rho, tau }
    }

    pub fn neg(rho: u32, tau: u32) -> Self {
        M2Element::Neg { rho, tau }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, M2Element::Zero)
    }

    /// Bidegree `(p, q)`, or `None` for zero (which lives in every bidegree).
    pub fn bidegree(&self) -> Option<Bidegree> {
        match *self {
            M2Element::Zero => None,
            M2Element::Pos { rho, tau } => {
                let (a, b) = (rho as i64, tau as i64);
                Some(Bidegree::new(a, a + b))
            }
            M2Element::Neg { rho, tau } => {
                let (r, s) = (rho as i64, tau as i64);
                Some(Bidegree::new(-r, -r - s - 2))
            }
        }
    }

    pub fn multiply(&self, other: &M2Element) -> M2Element {
        use M2Element::*;
        match (*self, *other) {
            (Zero, _) | (_, Zero) => Zero,
            (Pos { rho: a, tau: b }, Pos { rho: c, tau: d }) => Pos {
                rho: a + c,
                tau: b + d,
            },
            (Pos { rho: a, tau: b }, Neg { rho: r, tau: s })
            | (Neg { rho: r, tau: s }, Pos { rho: a, tau: b }) => {
                if r >= a && s >= b {
                    Neg {
                        rho: r - a,
                        tau: s - b,
                    }
                } else {
                    Zero
                }
            }
            (Neg { .. }, Neg { .. }) => Zero,
        }
    }
}

impl std::ops::Mul for M2Element {
    type Output = M2Element;

    fn mul(self, rhs: M2Element) -> M2Element {
        self.multiply(&rhs)
    }
}

fn monomial(f: &mut fmt::Formatter<'_>, name: &str, exp: u32) -> fmt::Result {
    match exp {
        0 => Ok(()),
        1 => write!(f, "{name}"),
        e => write!(f, "{name}^{e}"),
    }
}

impl fmt::Display for M2Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            M2Element::Zero => write!(f, "0"),
            M2Element::Pos { rho: 0, tau: 0 } => write!(f, "1"),
            M2Element::Pos { rho, tau } => {
                monomial(f, "rho", rho)?;
                monomial(f, "tau", tau)
            }
            M2Element::Neg { rho: 0, tau: 0 } => write!(f, "theta"),
            M2Element::Neg { rho, tau } => {
                write!(f, "theta/")?;
                monomial(f, "rho", rho)?;
                monomial(f, "tau", tau)
            }
        }
    }
}
