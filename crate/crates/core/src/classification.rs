//! Maximal / Galois-Maximal classification and its equivalent readouts.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::{BivariatePolynomial, NormalFormModule};
use crate::localization::{fixed_poincare_polynomial, BorelModule, C2GradedSpace, GradedDims, LocalizationError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ClassificationError {
    #[error("internal inconsistency: totals give {from_totals} but normal form gives {from_module}")]
    InternalInconsistency {
        from_totals: MaximalityClass,
        from_module: MaximalityClass,
    },
    #[error("torsion-freeness of integral cohomology must be supplied")]
    TorsionUnknown,
    #[error(transparent)]
    Localization(#[from] LocalizationError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum MaximalityClass {
    #[serde(rename = "M")]
    Maximal,
    /// Galois-Maximal but not Maximal.
    #[serde(rename = "GM")]
    GaloisMaximalOnly,
    #[serde(rename = "NEITHER")]
    Neither,
}

impl MaximalityClass {
    /// True for both `Maximal` and `GaloisMaximalOnly`.
    pub fn is_galois_maximal(&self) -> bool {
        !matches!(self, MaximalityClass::Neither)
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            MaximalityClass::Maximal => "M",
            MaximalityClass::GaloisMaximalOnly => "GM",
            MaximalityClass::Neither => "NEITHER",
        }
    }
}

impl fmt::Display for MaximalityClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for MaximalityClass {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "M" => Ok(MaximalityClass::Maximal),
            "GM" => Ok(MaximalityClass::GaloisMaximalOnly),
            "NEITHER" => Ok(MaximalityClass::Neither),
            other => Err(format!("unknown class {other:?}, expected M, GM or NEITHER")),
        }
    }
}

/// M iff the module is free; GM iff every antipodal summand is `A_0`.
pub fn classify(m: &NormalFormModule) -> MaximalityClass {
    if m.antipodal().is_empty() {
        MaximalityClass::Maximal
    } else if m.antipodal().keys().all(|k| k.n == 0) {
        MaximalityClass::GaloisMaximalOnly
    } else {
        MaximalityClass::Neither
    }
}

/// Totals in the chain `dim H*(X^C2) <= dim H^1(C2; H*(X)) <= dim H*(X)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct SmithThomReport {
    #[serde(rename = "fixed")]
    pub fixed_total: u64,
    #[serde(rename = "group_cohomology")]
    pub group_cohomology_total: u64,
    #[serde(rename = "singular")]
    pub singular_total: u64,
    pub class: MaximalityClass,
}

fn class_from_totals(fixed: u64, group: u64, singular: u64) -> MaximalityClass {
    if fixed == singular {
        MaximalityClass::Maximal
    } else if fixed == group {
        MaximalityClass::GaloisMaximalOnly
    } else {
        MaximalityClass::Neither
    }
}

pub fn smith_thom_report(m: &NormalFormModule) -> Result<SmithThomReport, ClassificationError> {
    let free = m.free_count();
    let fixed_total = free;
    let group_cohomology_total = free + 2 * m.higher_antipodal_count();
    let singular_total = group_cohomology_total + 2 * m.free_orbit_count();
    let from_totals = class_from_totals(fixed_total, group_cohomology_total, singular_total);
    let from_module = classify(m);
    if from_totals != from_module {
        return Err(ClassificationError::InternalInconsistency { from_totals, from_module });
    }
    Ok(SmithThomReport { fixed_total, group_cohomology_total, singular_total, class: from_module })
}

/// `H^1(C2; A)` in each degree, as `A^σ / {a + σa}`: trivial lines survive,
/// regular summands are cohomologically trivial.
pub fn group_cohomology_dims(s: &C2GradedSpace) -> GradedDims {
    s.trivial.clone()
}

/// M iff free over `F2[z]`; GM iff the only torsion is `Σ^r F2[z]/(z)`.
pub fn borel_classify(b: &BorelModule) -> MaximalityClass {
    if b.is_free() {
        MaximalityClass::Maximal
    } else if b.torsion().all(|((_, n), _)| n == 0) {
        MaximalityClass::GaloisMaximalOnly
    } else {
        MaximalityClass::Neither
    }
}

/// `H(t, 1) = R(t, 1/t)` together with torsion-free integral cohomology.
/// Torsion-freeness cannot be seen with F2 coefficients, so the caller
/// must say.
pub fn hodge_expressive_check(
    m: &NormalFormModule,
    hodge: &BivariatePolynomial,
    torsion_free: Option<bool>,
) -> Result<bool, ClassificationError> {
    let torsion_free = torsion_free.ok_or(ClassificationError::TorsionUnknown)?;
    let fixed = fixed_poincare_polynomial(m)?;
    let row_sums = hodge.substitute_v_one();
    let fixed_terms: Vec<(i64, u64)> = fixed.terms().map(|(e, c)| (e as i64, c)).collect();
    let hodge_terms: Vec<(i64, u64)> = row_sums.into_iter().collect();
    Ok(torsion_free && fixed_terms == hodge_terms)
}

/// `Rk^{p+q,q} = h^{p,q}` for all `p, q >= 0`, with nothing left over on either side.
pub fn hodge_birank_check(m: &NormalFormModule, hodge: &BivariatePolynomial) -> bool {
    let hodge_side = hodge.terms().all(|((p, q), h)| p >= 0 && q >= 0 && m.rank(p + q, q) == h);
    let module_side = m
        .free_summands()
        .all(|(k, c)| hodge.coefficient(k.p - k.q, k.q) == c);
    hodge_side && module_side
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::localization::{tau_localize, underlying_singular};

    fn k3(a: u64, b: u64, c: u64) -> NormalFormModule {
        NormalFormModule::point()
            .with_free(2, 0, a)
            .with_free(2, 1, b)
            .with_free(2, 2, a)
            .with_antipodal(2, 0, c)
            .with_free(4, 2, 1)
    }

    fn k3_hodge() -> BivariatePolynomial {
        "1 + u^2 + v^2 + 20uv + u^2v^2".parse().unwrap()
    }

    #[test]
    fn classes() {
        let pn = NormalFormModule::point().with_free(2, 1, 1).with_free(4, 2, 1);
        assert_eq!(classify(&pn), MaximalityClass::Maximal);
        let curve = NormalFormModule::point()
            .with_free(1, 0, 1)
            .with_free(1, 1, 1)
            .with_antipodal(1, 0, 2)
            .with_free(2, 1, 1);
        assert_eq!(classify(&curve), MaximalityClass::GaloisMaximalOnly);
        let sb1 = NormalFormModule::zero().with_antipodal(0, 2, 1);
        assert_eq!(classify(&sb1), MaximalityClass::Neither);
    }

    #[test]
    fn smith_thom_totals() {
        let r = smith_thom_report(&k3(1, 0, 10)).unwrap();
        assert_eq!((r.fixed_total, r.group_cohomology_total, r.singular_total), (4, 4, 24));
        assert_eq!(r.class, MaximalityClass::GaloisMaximalOnly);
        let r = smith_thom_report(&NormalFormModule::zero().with_antipodal(0, 2, 1)).unwrap();
        assert_eq!((r.fixed_total, r.group_cohomology_total, r.singular_total), (0, 2, 2));
        assert_eq!(r.class, MaximalityClass::Neither);
        let r = smith_thom_report(&NormalFormModule::point()).unwrap();
        assert_eq!((r.fixed_total, r.group_cohomology_total, r.singular_total), (1, 1, 1));
        assert_eq!(r.class, MaximalityClass::Maximal);
    }

    #[test]
    fn group_cohomology() {
        let line = C2GradedSpace { trivial: GradedDims::from_dense(&[1]), regular: GradedDims::new() };
        assert_eq!(group_cohomology_dims(&line), GradedDims::from_dense(&[1]));
        let regular = C2GradedSpace { trivial: GradedDims::new(), regular: GradedDims::from_dense(&[0, 0, 3]) };
        assert!(group_cohomology_dims(&regular).is_empty());
        for g in 0..6u64 {
            for r in 0..=g {
                let curve = NormalFormModule::point()
                    .with_free(1, 0, r)
                    .with_free(1, 1, r)
                    .with_antipodal(1, 0, g - r)
                    .with_free(2, 1, 1);
                let total = group_cohomology_dims(&underlying_singular(&curve)).total();
                assert_eq!(total, 2 * r + 2);
            }
        }
    }

    #[test]
    fn borel_classes() {
        assert_eq!(borel_classify(&BorelModule::new().with_free(0, 1)), MaximalityClass::Maximal);
        let gm = BorelModule::new().with_free(0, 1).with_torsion(2, 0, 3);
        assert_eq!(borel_classify(&gm), MaximalityClass::GaloisMaximalOnly);
        let neither = BorelModule::new().with_free(0, 1).with_torsion(0, 2, 1);
        assert_eq!(borel_classify(&neither), MaximalityClass::Neither);
        assert_eq!(borel_classify(&tau_localize(&k3(1, 0, 10))), MaximalityClass::GaloisMaximalOnly);
    }

    #[test]
    fn hodge_expressive() {
        let he = k3(1, 20, 0);
        assert_eq!(hodge_expressive_check(&he, &k3_hodge(), Some(true)), Ok(true));
        assert_eq!(hodge_expressive_check(&he, &k3_hodge(), Some(false)), Ok(false));
        assert_eq!(hodge_expressive_check(&k3(1, 0, 10), &k3_hodge(), Some(true)), Ok(false));
        assert_eq!(
            hodge_expressive_check(&NormalFormModule::point(), &BivariatePolynomial::one(), Some(true)),
            Ok(true)
        );
        assert_eq!(
            hodge_expressive_check(&he, &k3_hodge(), None),
            Err(ClassificationError::TorsionUnknown)
        );
    }

    #[test]
    fn hodge_birank() {
        assert!(hodge_birank_check(&k3(1, 20, 0), &k3_hodge()));
        assert!(!hodge_birank_check(&k3(1, 0, 10), &k3_hodge()));
        let p3 = NormalFormModule::point().with_free(2, 1, 1).with_free(4, 2, 1).with_free(6, 3, 1);
        let h: BivariatePolynomial = "1 + uv + u^2v^2 + u^3v^3".parse().unwrap();
        assert!(hodge_birank_check(&p3, &h));
        let elliptic = NormalFormModule::point().with_free(1, 0, 1).with_free(1, 1, 1).with_free(2, 1, 1);
        assert!(hodge_birank_check(&elliptic, &"1 + u + v + uv".parse().unwrap()));
    }

    #[test]
    fn class_names_round_trip() {
        for c in [MaximalityClass::Maximal, MaximalityClass::GaloisMaximalOnly, MaximalityClass::Neither] {
            assert_eq!(c.as_str().parse::<MaximalityClass>(), Ok(c));
            assert_eq!(serde_json::to_string(&c).unwrap(), format!("\"{c}\""));
        }
        assert!("maximal".parse::<MaximalityClass>().is_err());
    }
}
