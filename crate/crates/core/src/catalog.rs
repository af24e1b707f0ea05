//! Closed-form cohomology of standard examples: projective spaces, curves,
//! Severi-Brauer varieties without real points, real K3 surfaces and a real
//! cubic threefold.

use std::collections::BTreeMap;

use serde::Serialize;
use thiserror::Error;

use crate::algebra::{BivariatePolynomial, NormalFormModule};
use crate::classification::MaximalityClass;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CatalogError {
    #[error("unknown catalog entry {0:?}")]
    UnknownName(String),
    #[error("{entry}: {message}")]
    ParameterRange { entry: String, message: String },
}

pub type Parameters = BTreeMap<String, i64>;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EntryMetadata {
    /// Complex dimension, when the space is a Real manifold or one is conventional.
    pub dimension: Option<i64>,
    pub has_fixed_point: bool,
    pub connected: bool,
    pub expected_class: MaximalityClass,
    pub is_real_manifold: bool,
    pub hodge_polynomial: Option<BivariatePolynomial>,
    pub notes: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CatalogEntry {
    pub name: String,
    pub parameters: Parameters,
    pub module: NormalFormModule,
    pub metadata: EntryMetadata,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ParameterSchema {
    pub name: &'static str,
    pub min: i64,
    pub max: Option<i64>,
    pub description: &'static str,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EntrySchema {
    pub name: &'static str,
    pub description: &'static str,
    pub parameters: Vec<ParameterSchema>,
}

const fn param(name: &'static str, min: i64, max: Option<i64>, description: &'static str) -> ParameterSchema {
    ParameterSchema { name, min, max, description }
}

pub fn catalog_list() -> Vec<EntrySchema> {
    vec![
        EntrySchema { name: "point", description: "a fixed point; the ring M2", parameters: vec![] },
        EntrySchema {
            name: "representation_sphere",
            description: "the representation sphere S^{p,q}",
            parameters: vec![
                param("p", 0, None, "topological dimension"),
                param("q", 0, None, "number of sign coordinates, q <= p"),
            ],
        },
        EntrySchema {
            name: "projective_space",
            description: "complex projective space with conjugation",
            parameters: vec![param("n", 0, None, "complex dimension")],
        },
        EntrySchema {
            name: "elliptic_curve",
            description: "a real elliptic curve with two real components",
            parameters: vec![],
        },
        EntrySchema {
            name: "curve",
            description: "a real curve of genus g with r+1 real ovals",
            parameters: vec![param("g", 0, None, "genus"), param("r", 0, None, "number of ovals minus one, r <= g")],
        },
        EntrySchema {
            name: "severi_brauer_odd",
            description: "the Severi-Brauer variety of dimension 2k+1 without real points",
            parameters: vec![param("k", 0, None, "half of the dimension minus one")],
        },
        EntrySchema {
            name: "severi_brauer_1",
            description: "the real conic without real points",
            parameters: vec![],
        },
        EntrySchema {
            name: "twisted_plane",
            description: "RP^2 with the rotation by 180 degrees; not a Real manifold",
            parameters: vec![],
        },
        EntrySchema {
            name: "k3",
            description: "a real K3 surface with given total Betti number and Euler characteristic of its real part",
            parameters: vec![
                param("b_star", 2, Some(24), "total F2 Betti number of the real part"),
                param("chi", -18, Some(20), "Euler characteristic of the real part"),
            ],
        },
        EntrySchema {
            name: "k3_hodge_expressive",
            description: "the Hodge-expressive real K3 surface, k3(24, -16)",
            parameters: vec![],
        },
        EntrySchema {
            name: "cubic_threefold_s3_rp3",
            description: "a real cubic threefold whose real part is S^3 and RP^3",
            parameters: vec![],
        },
    ]
}

fn range_error(entry: &str, message: impl Into<String>) -> CatalogError {
    CatalogError::ParameterRange { entry: entry.to_string(), message: message.into() }
}

struct ParamReader<'a> {
    entry: &'a str,
    params: &'a Parameters,
}

impl ParamReader<'_> {
    fn get(&self, name: &str, min: i64) -> Result<i64, CatalogError> {
        let value = *self
            .params
            .get(name)
            .ok_or_else(|| range_error(self.entry, format!("missing parameter {name}")))?;
        if value < min {
            return Err(range_error(self.entry, format!("{name} = {value} is below {min}")));
        }
        Ok(value)
    }

    fn only(&self, allowed: &[&str]) -> Result<(), CatalogError> {
        match self.params.keys().find(|k| !allowed.contains(&k.as_str())) {
            Some(extra) => Err(range_error(self.entry, format!("unexpected parameter {extra}"))),
            None => Ok(()),
        }
    }
}

fn k3_hodge() -> BivariatePolynomial {
    BivariatePolynomial::from_terms([((0, 0), 1), ((2, 0), 1), ((0, 2), 1), ((1, 1), 20), ((2, 2), 1)])
}

fn diagonal_hodge(n: i64) -> BivariatePolynomial {
    BivariatePolynomial::from_terms((0..=n).map(|i| ((i, i), 1)))
}

fn class_of(antipodal_free: bool) -> MaximalityClass {
    if antipodal_free {
        MaximalityClass::Maximal
    } else {
        MaximalityClass::GaloisMaximalOnly
    }
}

/// A manifold-style entry: connected, with a real point.
fn manifold(dimension: i64, class: MaximalityClass, hodge: Option<BivariatePolynomial>) -> EntryMetadata {
    EntryMetadata {
        dimension: Some(dimension),
        has_fixed_point: true,
        connected: true,
        expected_class: class,
        is_real_manifold: true,
        hodge_polynomial: hodge,
        notes: String::new(),
    }
}

pub fn projective_space(n: i64) -> NormalFormModule {
    (0..=n).fold(NormalFormModule::zero(), |m, i| m.with_free(2 * i, i, 1))
}

pub fn curve(g: i64, r: i64) -> NormalFormModule {
    NormalFormModule::point()
        .with_free(1, 0, r as u64)
        .with_free(1, 1, r as u64)
        .with_antipodal(1, 0, (g - r) as u64)
        .with_free(2, 1, 1)
}

pub fn severi_brauer_odd(k: i64) -> NormalFormModule {
    (0..=k).fold(NormalFormModule::zero(), |m, i| m.with_antipodal(4 * i, 2, 1))
}

/// Multiplicities `(a, b, c)` of `Σ^{2,0}M2 = Σ^{2,2}M2`, `Σ^{2,1}M2` and
/// `Σ^{2,0}A0`, from the real part's total Betti number and Euler characteristic.
pub fn k3_exponents(b_star: i64, chi: i64) -> Option<(u64, u64, u64)> {
    let (a4, b2, c2) = (b_star + chi, b_star - chi, 24 - b_star);
    if a4 % 4 != 0 || b2 % 2 != 0 || c2 % 2 != 0 {
        return None;
    }
    let (a, b, c) = (a4 / 4 - 1, b2 / 2, c2 / 2);
    (a >= 0 && b >= 0 && c >= 0).then_some((a as u64, b as u64, c as u64))
}

pub fn k3(b_star: i64, chi: i64) -> Option<NormalFormModule> {
    let (a, b, c) = k3_exponents(b_star, chi)?;
    Some(
        NormalFormModule::point()
            .with_free(2, 0, a)
            .with_free(2, 1, b)
            .with_free(2, 2, a)
            .with_antipodal(2, 0, c)
            .with_free(4, 2, 1),
    )
}

pub fn cubic_threefold_s3_rp3() -> NormalFormModule {
    NormalFormModule::point()
        .with_free(2, 1, 1)
        .with_free(3, 0, 1)
        .with_free(3, 3, 1)
        .with_free(4, 2, 1)
        .with_antipodal(3, 0, 4)
        .with_free(6, 3, 1)
}

pub fn catalog_get(name: &str, params: &Parameters) -> Result<CatalogEntry, CatalogError> {
    let reader = ParamReader { entry: name, params };
    let (module, metadata) = match name {
        "point" => {
            reader.only(&[])?;
            (NormalFormModule::point(), manifold(0, MaximalityClass::Maximal, Some(BivariatePolynomial::one())))
        }
        "representation_sphere" => {
            reader.only(&["p", "q"])?;
            let p = reader.get("p", 0)?;
            let q = reader.get("q", 0)?;
            if q > p {
                return Err(range_error(name, format!("need q <= p, got p = {p}, q = {q}")));
            }
            let module = NormalFormModule::point().with_free(p, q, 1);
            let is_real_manifold = p == 2 * q;
            let metadata = EntryMetadata {
                dimension: is_real_manifold.then_some(q),
                has_fixed_point: true,
                connected: p > 0,
                expected_class: MaximalityClass::Maximal,
                is_real_manifold,
                hodge_polynomial: None,
                notes: "Σ^{p,q}M2 is the reduced cohomology; M2 is the base point".into(),
            };
            (module, metadata)
        }
        "projective_space" => {
            reader.only(&["n"])?;
            let n = reader.get("n", 0)?;
            (projective_space(n), manifold(n, MaximalityClass::Maximal, Some(diagonal_hodge(n))))
        }
        "elliptic_curve" => {
            reader.only(&[])?;
            let hodge = BivariatePolynomial::from_terms([((0, 0), 1), ((1, 0), 1), ((0, 1), 1), ((1, 1), 1)]);
            (curve(1, 1), manifold(1, MaximalityClass::Maximal, Some(hodge)))
        }
        "curve" => {
            reader.only(&["g", "r"])?;
            let g = reader.get("g", 0)?;
            let r = reader.get("r", 0)?;
            if r > g {
                return Err(range_error(name, format!("need r <= g, got g = {g}, r = {r}")));
            }
            let hodge = BivariatePolynomial::from_terms([
                ((0, 0), 1),
                ((1, 0), g as u64),
                ((0, 1), g as u64),
                ((1, 1), 1),
            ]);
            (curve(g, r), manifold(1, class_of(r == g), Some(hodge)))
        }
        "severi_brauer_odd" | "severi_brauer_1" => {
            let k = if name == "severi_brauer_1" {
                reader.only(&[])?;
                0
            } else {
                reader.only(&["k"])?;
                reader.get("k", 0)?
            };
            let metadata = EntryMetadata {
                dimension: Some(2 * k + 1),
                has_fixed_point: false,
                connected: true,
                expected_class: MaximalityClass::Neither,
                is_real_manifold: true,
                hodge_polynomial: Some(diagonal_hodge(2 * k + 1)),
                notes: "no real points; complex points form a projective space".into(),
            };
            (severi_brauer_odd(k), metadata)
        }
        "twisted_plane" => {
            reader.only(&[])?;
            let metadata = EntryMetadata {
                is_real_manifold: false,
                notes: "not a Real manifold: Σ^{1,1}M2 has no Σ^{1,0}M2 partner".into(),
                ..manifold(1, MaximalityClass::Maximal, None)
            };
            (NormalFormModule::point().with_free(1, 1, 1).with_free(2, 1, 1), metadata)
        }
        "k3" | "k3_hodge_expressive" => {
            let (b_star, chi) = if name == "k3" {
                reader.only(&["b_star", "chi"])?;
                (reader.get("b_star", i64::MIN)?, reader.get("chi", i64::MIN)?)
            } else {
                reader.only(&[])?;
                (24, -16)
            };
            let (_, _, c) = k3_exponents(b_star, chi).ok_or_else(|| {
                range_error(
                    name,
                    format!("b_star = {b_star}, chi = {chi} do not give nonnegative integral multiplicities"),
                )
            })?;
            let module = k3(b_star, chi).expect("exponents checked");
            (module, manifold(2, class_of(c == 0), Some(k3_hodge())))
        }
        "cubic_threefold_s3_rp3" => {
            reader.only(&[])?;
            // Stored as published; its u^3 + v^3 terms put 12 in degree 3,
            // while the module has b_3 = 10.
            let hodge = BivariatePolynomial::from_terms([
                ((0, 0), 1),
                ((1, 1), 1),
                ((2, 1), 5),
                ((1, 2), 5),
                ((2, 2), 1),
                ((3, 0), 1),
                ((0, 3), 1),
            ]);
            let metadata = EntryMetadata {
                notes: "b_3 = 10; the stored Hodge polynomial's degree-3 total (12) is inconsistent with it".into(),
                ..manifold(3, MaximalityClass::GaloisMaximalOnly, Some(hodge))
            };
            (cubic_threefold_s3_rp3(), metadata)
        }
        other => return Err(CatalogError::UnknownName(other.to_string())),
    };
    let parameters = match name {
        "k3_hodge_expressive" => Parameters::from([("b_star".into(), 24), ("chi".into(), -16)]),
        _ => params.clone(),
    };
    Ok(CatalogEntry { name: name.to_string(), parameters, module, metadata })
}
