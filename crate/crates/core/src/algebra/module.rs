use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::{AlgebraError, BivariatePolynomial};

/// The free summand `Σ^{p,q} M2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FreeKey {
    pub p: i64,
    pub q: i64,
}

impl FreeKey {
    pub const fn new(p: i64, q: i64) -> Self {
        Self { p, q }
    }

    pub fn is_cw_valid(&self) -> bool {
        self.p >= self.q && self.q >= 0
    }
}

impl fmt::Display for FreeKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.p, self.q)
    }
}

/// The antipodal summand `Σ^{r,0} A_n`: the cohomology of the `n`-sphere with
/// antipodal action, shifted up by `r` in topological degree.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AntipodalKey {
    pub r: i64,
    pub n: i64,
}

impl AntipodalKey {
    pub const fn new(r: i64, n: i64) -> Self {
        Self { r, n }
    }

    pub fn is_cw_valid(&self) -> bool {
        self.r >= 0 && self.n >= 0
    }
}

impl fmt::Display for AntipodalKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.r, self.n)
    }
}

/// Either kind of summand key, used in error reports and violation lists.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum SummandKey {
    Free { p: i64, q: i64 },
    Antipodal { r: i64, n: i64 },
}

impl From<FreeKey> for SummandKey {
    fn from(k: FreeKey) -> Self {
        SummandKey::Free { p: k.p, q: k.q }
    }
}

impl From<AntipodalKey> for SummandKey {
    fn from(k: AntipodalKey) -> Self {
        SummandKey::Antipodal { r: k.r, n: k.n }
    }
}

impl fmt::Display for SummandKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            SummandKey::Free { p, q } => write!(f, "Σ^{{{p},{q}}}M2"),
            SummandKey::Antipodal { r, n } => write!(f, "Σ^{{{r},0}}A{n}"),
        }
    }
}

/// A finitely generated M2-module in normal form, stored as its two
/// multiplicity functions: the bigraded rank `Rk^{p,q}` on free summands and
/// the a-rank `Rk_a^{r,n}` on antipodal summands. Two modules are isomorphic
/// exactly when these maps agree, so `==` is isomorphism.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NormalFormModule {
    free: BTreeMap<FreeKey, u64>,
    antipodal: BTreeMap<AntipodalKey, u64>,
}

fn check_multiplicity(key: SummandKey, multiplicity: i64) -> Result<u64, AlgebraError> {
    if multiplicity <= 0 {
        Err(AlgebraError::NegativeMultiplicity { key, multiplicity })
    } else {
        Ok(multiplicity as u64)
    }
}

impl NormalFormModule {
    pub fn zero() -> Self {
        Self::default()
    }

    /// The ring of a point, `M2` itself.
    pub fn point() -> Self {
        Self::zero().with_free(0, 0, 1)
    }

    /// Merges duplicate keys and, when `cw` is set, enforces `p >= q >= 0`
    /// on free keys and `r, n >= 0` on antipodal keys.
    pub fn new(
        free: &[(i64, i64, i64)],
        antipodal: &[(i64, i64, i64)],
        cw: bool,
    ) -> Result<Self, AlgebraError> {
        let mut m = Self::zero();
        for &(p, q, c) in free {
            let key = FreeKey::new(p, q);
            let c = check_multiplicity(key.into(), c)?;
            *m.free.entry(key).or_insert(0) += c;
        }
        for &(r, n, c) in antipodal {
            let key = AntipodalKey::new(r, n);
            let c = check_multiplicity(key.into(), c)?;
            *m.antipodal.entry(key).or_insert(0) += c;
        }
        if cw {
            m.validate_cw()?;
        }
        Ok(m)
    }

    /// Builder-style addition of `count` copies of `Σ^{p,q} M2`. No validation.
    pub fn with_free(mut self, p: i64, q: i64, count: u64) -> Self {
        if count > 0 {
            *self.free.entry(FreeKey::new(p, q)).or_insert(0) += count;
        }
        self
    }

    /// Builder-style addition of `count` copies of `Σ^{r,0} A_n`. No validation.
    pub fn with_antipodal(mut self, r: i64, n: i64, count: u64) -> Self {
        if count > 0 {
            *self.antipodal.entry(AntipodalKey::new(r, n)).or_insert(0) += count;
        }
        self
    }

    pub fn from_maps(free: BTreeMap<FreeKey, u64>, antipodal: BTreeMap<AntipodalKey, u64>) -> Self {
        Self {
            free: free.into_iter().filter(|&(_, c)| c > 0).collect(),
            antipodal: antipodal.into_iter().filter(|&(_, c)| c > 0).collect(),
        }
    }

    pub fn validate_cw(&self) -> Result<(), AlgebraError> {
        if let Some(&key) = self.free.keys().find(|k| !k.is_cw_valid()) {
            return Err(AlgebraError::ConstraintViolation {
                key: key.into(),
                reason: "free summand requires p >= q >= 0",
            });
        }
        if let Some(&key) = self.antipodal.keys().find(|k| !k.is_cw_valid()) {
            return Err(AlgebraError::ConstraintViolation {
                key: key.into(),
                reason: "antipodal summand requires r >= 0 and n >= 0",
            });
        }
        Ok(())
    }

    pub fn is_cw_valid(&self) -> bool {
        self.validate_cw().is_ok()
    }

    pub fn is_zero(&self) -> bool {
        self.free.is_empty() && self.antipodal.is_empty()
    }

    /// `Rk^{p,q}`.
    pub fn rank(&self, p: i64, q: i64) -> u64 {
        self.free.get(&FreeKey::new(p, q)).copied().unwrap_or(0)
    }

    /// `Rk_a^{r,n}`.
    pub fn antipodal_rank(&self, r: i64, n: i64) -> u64 {
        self.antipodal.get(&AntipodalKey::new(r, n)).copied().unwrap_or(0)
    }

    pub fn free(&self) -> &BTreeMap<FreeKey, u64> {
        &self.free
    }

    pub fn antipodal(&self) -> &BTreeMap<AntipodalKey, u64> {
        &self.antipodal
    }

    pub fn free_summands(&self) -> impl Iterator<Item = (FreeKey, u64)> + '_ {
        self.free.iter().map(|(&k, &c)| (k, c))
    }

    pub fn antipodal_summands(&self) -> impl Iterator<Item = (AntipodalKey, u64)> + '_ {
        self.antipodal.iter().map(|(&k, &c)| (k, c))
    }

    /// `|I|`, free summands counted with multiplicity.
    pub fn free_count(&self) -> u64 {
        self.free.values().sum()
    }

    /// `|J|`, antipodal summands counted with multiplicity.
    pub fn antipodal_count(&self) -> u64 {
        self.antipodal.values().sum()
    }

    /// `|J_0|`: summands `A_0`, i.e. free orbits.
    pub fn free_orbit_count(&self) -> u64 {
        self.antipodal_summands().filter(|(k, _)| k.n == 0).map(|(_, c)| c).sum()
    }

    /// `|J_+|`: antipodal summands with `n > 0`.
    pub fn higher_antipodal_count(&self) -> u64 {
        self.antipodal_summands().filter(|(k, _)| k.n > 0).map(|(_, c)| c).sum()
    }

    pub fn direct_sum(&self, other: &NormalFormModule) -> NormalFormModule {
        let mut out = self.clone();
        for (&k, &c) in &other.free {
            *out.free.entry(k).or_insert(0) += c;
        }
        for (&k, &c) in &other.antipodal {
            *out.antipodal.entry(k).or_insert(0) += c;
        }
        out
    }

    /// `Σ^{p,q}` applied summandwise. Antipodal summands only move in
    /// topological degree since `Σ^{p,q} A_n ≅ Σ^{p,0} A_n`.
    pub fn suspend(&self, p: i64, q: i64) -> Result<NormalFormModule, AlgebraError> {
        if q < 0 || q > p {
            return Err(AlgebraError::InvalidShift { p, q });
        }
        Ok(NormalFormModule {
            free: self
                .free
                .iter()
                .map(|(k, &c)| (FreeKey::new(k.p + p, k.q + q), c))
                .collect(),
            antipodal: self
                .antipodal
                .iter()
                .map(|(k, &c)| (AntipodalKey::new(k.r + p, k.n), c))
                .collect(),
        })
    }

    /// `R(u, v) = Σ Rk^{p,q} u^p v^q`. Antipodal summands do not contribute.
    pub fn rank_polynomial(&self) -> BivariatePolynomial {
        BivariatePolynomial::from_terms(self.free.iter().map(|(k, &c)| ((k.p, k.q), c)))
    }

    /// Canonical compact JSON: `{"free":[[p,q,m],..],"antipodal":[[r,n,m],..]}`.
    pub fn to_canonical_json(&self) -> String {
        serde_json::to_string(self).expect("module serialization is infallible")
    }
}

impl std::ops::Add for &NormalFormModule {
    type Output = NormalFormModule;

    fn add(self, rhs: &NormalFormModule) -> NormalFormModule {
        self.direct_sum(rhs)
    }
}

impl fmt::Display for NormalFormModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        for (k, c) in self.free_summands() {
            let base = if k.p == 0 && k.q == 0 {
                "M2".to_string()
            } else {
                format!("Σ^{{{},{}}}M2", k.p, k.q)
            };
            parts.push(power(base, c));
        }
        for (k, c) in self.antipodal_summands() {
            let base = if k.r == 0 {
                format!("A{}", k.n)
            } else {
                format!("Σ^{{{},0}}A{}", k.r, k.n)
            };
            parts.push(power(base, c));
        }
        write!(f, "{}", parts.join(" ⊕ "))
    }
}

fn power(base: String, c: u64) -> String {
    if c == 1 {
        base
    } else {
        format!("({base})^{c}")
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ModuleRepr {
    free: Vec<(i64, i64, i64)>,
    antipodal: Vec<(i64, i64, i64)>,
}

impl Serialize for NormalFormModule {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        ModuleRepr {
            free: self.free.iter().map(|(k, &c)| (k.p, k.q, c as i64)).collect(),
            antipodal: self.antipodal.iter().map(|(k, &c)| (k.r, k.n, c as i64)).collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for NormalFormModule {
    /// Accepts duplicates and any order; multiplicities must be positive.
    /// Structure-theorem bounds are not checked here.
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let repr = ModuleRepr::deserialize(deserializer)?;
        NormalFormModule::new(&repr.free, &repr.antipodal, false).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p2() -> NormalFormModule {
        NormalFormModule::new(&[(0, 0, 1), (2, 1, 1), (4, 2, 1)], &[], true).unwrap()
    }

    #[test]
    fn projective_plane() {
        let m = p2();
        assert_eq!(m.free_count(), 3);
        assert_eq!(m.rank(2, 1), 1);
        assert_eq!(m.to_canonical_json(), r#"{"free":[[0,0,1],[2,1,1],[4,2,1]],"antipodal":[]}"#);
    }

    #[test]
    fn empty_is_zero() {
        let m = NormalFormModule::new(&[], &[], true).unwrap();
        assert!(m.is_zero());
        assert_eq!(m, NormalFormModule::zero());
    }

    #[test]
    fn cw_bounds_reject_weight_above_degree() {
        let err = NormalFormModule::new(&[(1, 2, 1)], &[], true).unwrap_err();
        assert_eq!(
            err,
            AlgebraError::ConstraintViolation {
                key: SummandKey::Free { p: 1, q: 2 },
                reason: "free summand requires p >= q >= 0",
            }
        );
        assert!(NormalFormModule::new(&[(1, 2, 1)], &[], false).is_ok());
        assert!(NormalFormModule::new(&[], &[(-1, 0, 1)], true).is_err());
    }

    #[test]
    fn nonpositive_multiplicity() {
        let err = NormalFormModule::new(&[(0, 0, 0)], &[], false).unwrap_err();
        assert!(matches!(err, AlgebraError::NegativeMultiplicity { multiplicity: 0, .. }));
        assert!(NormalFormModule::new(&[], &[(0, 0, -3)], false).is_err());
    }

    #[test]
    fn duplicates_merge_and_sort() {
        let m = NormalFormModule::new(&[(2, 1, 1), (0, 0, 1), (2, 1, 2)], &[(1, 0, 1), (1, 0, 4)], true)
            .unwrap();
        assert_eq!(m.to_canonical_json(), r#"{"free":[[0,0,1],[2,1,3]],"antipodal":[[1,0,5]]}"#);
    }

    #[test]
    fn direct_sums() {
        let m2 = NormalFormModule::point();
        assert_eq!(m2.direct_sum(&m2), NormalFormModule::zero().with_free(0, 0, 2));
        let left = m2.clone().with_free(1, 0, 1);
        let right = NormalFormModule::zero().with_free(1, 1, 1).with_free(2, 1, 1);
        let torus = NormalFormModule::new(&[(0, 0, 1), (1, 0, 1), (1, 1, 1), (2, 1, 1)], &[], true).unwrap();
        assert_eq!(&left + &right, torus);
        assert_eq!(torus.direct_sum(&NormalFormModule::zero()), torus);
    }

    #[test]
    fn suspension() {
        let m2 = NormalFormModule::point();
        assert_eq!(m2.suspend(2, 1).unwrap(), NormalFormModule::zero().with_free(2, 1, 1));
        let a2 = NormalFormModule::zero().with_antipodal(0, 2, 1);
        assert_eq!(a2.suspend(4, 0).unwrap(), NormalFormModule::zero().with_antipodal(4, 2, 1));
        assert_eq!(a2.suspend(4, 3).unwrap(), NormalFormModule::zero().with_antipodal(4, 2, 1));
        assert_eq!(p2().suspend(0, 0).unwrap(), p2());
        assert_eq!(m2.suspend(1, 2), Err(AlgebraError::InvalidShift { p: 1, q: 2 }));
        assert_eq!(m2.suspend(1, -1), Err(AlgebraError::InvalidShift { p: 1, q: -1 }));
    }

    #[test]
    fn rank_polynomials() {
        let r = p2().rank_polynomial();
        assert_eq!(r, BivariatePolynomial::from_terms([((0, 0), 1), ((2, 1), 1), ((4, 2), 1)]));
        assert!(NormalFormModule::zero().rank_polynomial().is_zero());
        let with_orbits = p2().with_antipodal(1, 0, 3);
        assert_eq!(with_orbits.rank_polynomial(), r);
    }

    #[test]
    fn index_set_counts() {
        let m = NormalFormModule::point().with_antipodal(1, 0, 2).with_antipodal(0, 2, 3);
        assert_eq!(m.free_count(), 1);
        assert_eq!(m.antipodal_count(), 5);
        assert_eq!(m.free_orbit_count(), 2);
        assert_eq!(m.higher_antipodal_count(), 3);
    }

    #[test]
    fn json_parsing() {
        let m: NormalFormModule =
            serde_json::from_str(r#"{"free":[[2,1,1],[0,0,1],[0,0,1]],"antipodal":[]}"#).unwrap();
        assert_eq!(m.rank(0, 0), 2);
        assert!(serde_json::from_str::<NormalFormModule>(r#"{"free":[[0,0,0]],"antipodal":[]}"#).is_err());
        assert!(serde_json::from_str::<NormalFormModule>(r#"{"free":[]}"#).is_err());
        assert!(serde_json::from_str::<NormalFormModule>(r#"{"free":[],"antipodal":[],"x":1}"#).is_err());
    }

    #[test]
    fn display() {
        let m = NormalFormModule::point().with_free(2, 0, 1).with_antipodal(2, 0, 10);
        assert_eq!(m.to_string(), "M2 ⊕ Σ^{2,0}M2 ⊕ (Σ^{2,0}A0)^10");
    }
}
