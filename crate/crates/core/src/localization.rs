//! Invariants read off the normal form: fixed-point cohomology
//! (rho-localization), Borel cohomology (tau-localization), the underlying
//! singular cohomology with its involution, the image of the forgetful map,
//! homology duals and Poincare-duality symmetry checks.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::{AntipodalKey, FreeKey, NormalFormModule, SummandKey, UnivariatePolynomial};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LocalizationError {
    #[error("free summand {key} has weight above its degree; R(t, 1/t) has a negative exponent")]
    NegativeExponent { key: FreeKey },
}

/// Dimensions of a graded F2-vector space, indexed by degree.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct GradedDims(BTreeMap<i64, u64>);

impl GradedDims {
    pub fn new() -> Self {
        Self::default()
    }

    /// Dense profile `[b_0, b_1, ...]`.
    pub fn from_dense(dims: &[u64]) -> Self {
        let mut g = Self::new();
        for (d, &c) in dims.iter().enumerate() {
            g.add(d as i64, c);
        }
        g
    }

    pub fn add(&mut self, degree: i64, count: u64) {
        if count > 0 {
            *self.0.entry(degree).or_insert(0) += count;
        }
    }

    pub fn get(&self, degree: i64) -> u64 {
        self.0.get(&degree).copied().unwrap_or(0)
    }

    pub fn total(&self) -> u64 {
        self.0.values().sum()
    }

    pub fn iter(&self) -> impl Iterator<Item = (i64, u64)> + '_ {
        self.0.iter().map(|(&d, &c)| (d, c))
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn min_degree(&self) -> Option<i64> {
        self.0.keys().next().copied()
    }

    pub fn max_degree(&self) -> Option<i64> {
        self.0.keys().next_back().copied()
    }

    pub fn shifted(&self, by: i64) -> Self {
        Self(self.0.iter().map(|(&d, &c)| (d + by, c)).collect())
    }

    /// Dense profile from degree 0 through the top degree. Negative degrees are dropped.
    pub fn to_dense(&self) -> Vec<u64> {
        match self.max_degree() {
            Some(top) if top >= 0 => (0..=top).map(|d| self.get(d)).collect(),
            _ => Vec::new(),
        }
    }
}

impl FromIterator<(i64, u64)> for GradedDims {
    fn from_iter<I: IntoIterator<Item = (i64, u64)>>(iter: I) -> Self {
        let mut g = Self::new();
        for (d, c) in iter {
            g.add(d, c);
        }
        g
    }
}

impl Serialize for GradedDims {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let rows: Vec<(i64, u64)> = self.iter().collect();
        rows.serialize(serializer)
    }
}

/// A graded F2-vector space with involution, split into trivial lines
/// `Σ^d F2` and regular summands `Σ^d F2[C2]` (a swapped pair of basis vectors).
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, Serialize)]
pub struct C2GradedSpace {
    pub trivial: GradedDims,
    pub regular: GradedDims,
}

impl C2GradedSpace {
    pub fn dims(&self) -> GradedDims {
        let mut out = self.trivial.clone();
        for (d, c) in self.regular.iter() {
            out.add(d, 2 * c);
        }
        out
    }

    pub fn total_dim(&self) -> u64 {
        self.trivial.total() + 2 * self.regular.total()
    }

    /// Dimension of the subspace fixed by the involution in each degree.
    pub fn fixed_subspace_dims(&self) -> GradedDims {
        let mut out = self.trivial.clone();
        for (d, c) in self.regular.iter() {
            out.add(d, c);
        }
        out
    }
}

/// An `F2[z]`-module in normal form: free copies `Σ^p F2[z]` and truncated
/// copies `Σ^r F2[z]/(z^{n+1})`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct BorelModule {
    free: BTreeMap<i64, u64>,
    torsion: BTreeMap<(i64, i64), u64>,
}

impl BorelModule {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_free(mut self, p: i64, count: u64) -> Self {
        if count > 0 {
            *self.free.entry(p).or_insert(0) += count;
        }
        self
    }

    /// Adds `count` copies of `Σ^r F2[z]/(z^{n+1})`.
    pub fn with_torsion(mut self, r: i64, n: i64, count: u64) -> Self {
        if count > 0 {
            *self.torsion.entry((r, n)).or_insert(0) += count;
        }
        self
    }

    pub fn free(&self) -> impl Iterator<Item = (i64, u64)> + '_ {
        self.free.iter().map(|(&p, &c)| (p, c))
    }

    pub fn torsion(&self) -> impl Iterator<Item = ((i64, i64), u64)> + '_ {
        self.torsion.iter().map(|(&k, &c)| (k, c))
    }

    pub fn is_free(&self) -> bool {
        self.torsion.is_empty()
    }

    pub fn shifted(&self, by: i64) -> Self {
        Self {
            free: self.free.iter().map(|(&p, &c)| (p + by, c)).collect(),
            torsion: self.torsion.iter().map(|(&(r, n), &c)| ((r + by, n), c)).collect(),
        }
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct BorelRepr {
    free: Vec<(i64, u64)>,
    torsion: Vec<(i64, i64, u64)>,
}

impl Serialize for BorelModule {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        BorelRepr {
            free: self.free().collect(),
            torsion: self.torsion().map(|((r, n), c)| (r, n, c)).collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for BorelModule {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let repr = BorelRepr::deserialize(deserializer)?;
        let mut b = BorelModule::new();
        for (p, c) in repr.free {
            if c == 0 {
                return Err(serde::de::Error::custom(format!("free summand at {p} has zero count")));
            }
            b = b.with_free(p, c);
        }
        for (r, n, c) in repr.torsion {
            if c == 0 || n < 0 {
                return Err(serde::de::Error::custom(format!("invalid torsion summand ({r},{n},{c})")));
            }
            b = b.with_torsion(r, n, c);
        }
        Ok(b)
    }
}

/// Bigraded Bredon homology in normal form. Free keys `(p,q)` stand for
/// `Σ^{p,q} M2^op`, antipodal keys `(r,n)` for `Σ^{r,0} A_n^op`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct HomologyModule {
    pub summands: NormalFormModule,
    pub opposite: bool,
}

/// Fixed-locus Betti numbers: `Σ^{p,q} M2` contributes a line in degree
/// `p - q`; antipodal summands are rho-torsion and vanish.
pub fn rho_localize(m: &NormalFormModule) -> GradedDims {
    m.free_summands().map(|(k, c)| (k.p - k.q, c)).collect()
}

/// `P(t) = R(t, 1/t)`, computed by substituting into the rank polynomial.
pub fn fixed_poincare_polynomial(m: &NormalFormModule) -> Result<UnivariatePolynomial, LocalizationError> {
    if let Some((key, _)) = m.free_summands().find(|(k, _)| k.q > k.p) {
        return Err(LocalizationError::NegativeExponent { key });
    }
    let substituted = m.rank_polynomial().substitute_t_inverse_t();
    Ok(UnivariatePolynomial::from_terms(
        substituted.into_iter().map(|(e, c)| (e as u32, c)),
    ))
}

/// Borel cohomology: `Σ^{p,q} M2 ↦ Σ^p F2[z]` and `Σ^{r,0} A_n ↦ Σ^r F2[z]/(z^{n+1})`.
pub fn tau_localize(m: &NormalFormModule) -> BorelModule {
    let mut b = BorelModule::new();
    for (k, c) in m.free_summands() {
        b = b.with_free(k.p, c);
    }
    for (k, c) in m.antipodal_summands() {
        b = b.with_torsion(k.r, k.n, c);
    }
    b
}

/// Singular cohomology of the underlying space with its involution.
pub fn underlying_singular(m: &NormalFormModule) -> C2GradedSpace {
    let mut s = C2GradedSpace::default();
    for (k, c) in m.free_summands() {
        s.trivial.add(k.p, c);
    }
    for (k, c) in m.antipodal_summands() {
        if k.n == 0 {
            s.regular.add(k.r, c);
        } else {
            s.trivial.add(k.r, c);
            s.trivial.add(k.r + k.n, c);
        }
    }
    s
}

/// Dimensions of the image of the forgetful map in each degree. Every
/// summand contributes one line at its shift degree; for `A_0` this is the
/// diagonal of `F2[C2]`.
pub fn forgetful_image_dims(m: &NormalFormModule) -> GradedDims {
    let free = m.free_summands().map(|(k, c)| (k.p, c));
    let antipodal = m.antipodal_summands().map(|(k, c)| (k.r, c));
    free.chain(antipodal).collect()
}

/// `Σ^{p,q} M2^* = Σ^{p,q} M2^op` and `Σ^{r,0} A_n^* = Σ^{r+n,0} A_n^op`.
pub fn homology_dual(m: &NormalFormModule) -> HomologyModule {
    let antipodal = m
        .antipodal_summands()
        .map(|(k, c)| (AntipodalKey::new(k.r + k.n, k.n), c))
        .collect();
    HomologyModule {
        summands: NormalFormModule::from_maps(m.free().clone(), antipodal),
        opposite: true,
    }
}

/// Reads a homology module back as cohomology through the duality
/// `H_{*,*} ≅ Σ^{2n,n} (H^{*,*})^op` of a Real manifold of dimension `n`:
/// free `(p,q) ↦ (2n-p, n-q)`, antipodal `(s,t) ↦ (2n-s, t)`.
pub fn poincare_reindex(h: &HomologyModule, n: i64) -> NormalFormModule {
    let free = h
        .summands
        .free_summands()
        .map(|(k, c)| (FreeKey::new(2 * n - k.p, n - k.q), c))
        .collect();
    let antipodal = h
        .summands
        .antipodal_summands()
        .map(|(k, c)| (AntipodalKey::new(2 * n - k.r, k.n), c))
        .collect();
    NormalFormModule::from_maps(free, antipodal)
}

pub fn free_mirror(k: FreeKey, n: i64) -> FreeKey {
    FreeKey::new(2 * n - k.p, n - k.q)
}

pub fn antipodal_mirror(k: AntipodalKey, n: i64) -> AntipodalKey {
    AntipodalKey::new(2 * n - k.r - k.n, k.n)
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct PdViolation {
    pub key: SummandKey,
    pub mirror: SummandKey,
    pub count: u64,
    pub mirror_count: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct PdReport {
    pub holds: bool,
    pub violations: Vec<PdViolation>,
}

/// Checks `Rk^{p,q} = Rk^{2n-p,n-q}` and `Rk_a^{s,t} = Rk_a^{2n-s-t,t}`.
///
/// Each mismatched pair is reported once, from the side present in the
/// module (the smaller key when both are present).
pub fn pd_symmetric(m: &NormalFormModule, n: i64) -> PdReport {
    let mut violations = Vec::new();
    for (k, c) in m.free_summands() {
        let mirror = free_mirror(k, n);
        let mc = m.rank(mirror.p, mirror.q);
        if mc != c && !(mc > 0 && mirror < k) {
            violations.push(PdViolation { key: k.into(), mirror: mirror.into(), count: c, mirror_count: mc });
        }
    }
    for (k, c) in m.antipodal_summands() {
        let mirror = antipodal_mirror(k, n);
        let mc = m.antipodal_rank(mirror.r, mirror.n);
        if mc != c && !(mc > 0 && mirror < k) {
            violations.push(PdViolation { key: k.into(), mirror: mirror.into(), count: c, mirror_count: mc });
        }
    }
    PdReport { holds: violations.is_empty(), violations }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum ManifoldCondition {
    #[serde(rename = "q_i <= n")]
    WeightBound,
    #[serde(rename = "r_j + n_j <= 2n")]
    AntipodalTopBound,
    #[serde(rename = "r_j > 0")]
    PositiveShift,
    #[serde(rename = "r_j + n_j < 2n")]
    StrictAntipodalTopBound,
    #[serde(rename = "Rk^{0,0} = 1")]
    BasePoint,
    #[serde(rename = "b_0 = 1")]
    Connected,
    #[serde(rename = "poincare symmetry")]
    PoincareSymmetry,
}

impl ManifoldCondition {
    pub fn label(&self) -> &'static str {
        match self {
            ManifoldCondition::WeightBound => "q_i <= n",
            ManifoldCondition::AntipodalTopBound => "r_j + n_j <= 2n",
            ManifoldCondition::PositiveShift => "r_j > 0",
            ManifoldCondition::StrictAntipodalTopBound => "r_j + n_j < 2n",
            ManifoldCondition::BasePoint => "Rk^{0,0} = 1",
            ManifoldCondition::Connected => "b_0 = 1",
            ManifoldCondition::PoincareSymmetry => "poincare symmetry",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct ConditionCheck {
    pub condition: ManifoldCondition,
    pub passed: bool,
    pub offending: Vec<SummandKey>,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct ManifoldReport {
    pub dimension: i64,
    pub checks: Vec<ConditionCheck>,
    pub poincare: PdReport,
}

impl ManifoldReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failed(&self) -> impl Iterator<Item = &ConditionCheck> {
        self.checks.iter().filter(|c| !c.passed)
    }

    pub fn check(&self, condition: ManifoldCondition) -> Option<&ConditionCheck> {
        self.checks.iter().find(|c| c.condition == condition)
    }
}

fn check(condition: ManifoldCondition, offending: Vec<SummandKey>) -> ConditionCheck {
    ConditionCheck { condition, passed: offending.is_empty(), offending }
}

/// Runs every necessary condition for the cohomology of a compact Real
/// manifold of complex dimension `n`, reporting all failures.
pub fn real_manifold_validate(
    m: &NormalFormModule,
    n: i64,
    has_fixed_point: bool,
    connected: bool,
) -> ManifoldReport {
    let antipodal_where = |pred: &dyn Fn(AntipodalKey) -> bool| -> Vec<SummandKey> {
        m.antipodal_summands().filter(|&(k, _)| pred(k)).map(|(k, _)| k.into()).collect()
    };

    let mut checks = vec![
        check(
            ManifoldCondition::WeightBound,
            m.free_summands().filter(|(k, _)| k.q > n).map(|(k, _)| k.into()).collect(),
        ),
        check(ManifoldCondition::AntipodalTopBound, antipodal_where(&|k| k.r + k.n > 2 * n)),
    ];
    if has_fixed_point {
        checks.push(check(ManifoldCondition::PositiveShift, antipodal_where(&|k| k.r <= 0)));
        checks.push(check(
            ManifoldCondition::StrictAntipodalTopBound,
            antipodal_where(&|k| k.r + k.n >= 2 * n),
        ));
        if connected {
            let base = if m.rank(0, 0) == 1 { vec![] } else { vec![FreeKey::new(0, 0).into()] };
            checks.push(check(ManifoldCondition::BasePoint, base));
        }
    }
    if connected {
        let b0 = underlying_singular(m).dims().get(0);
        let offending = if b0 == 1 {
            vec![]
        } else {
            let mut keys: Vec<SummandKey> = m
                .free_summands()
                .filter(|(k, _)| k.p == 0)
                .map(|(k, _)| k.into())
                .collect();
            keys.extend(antipodal_where(&|k| k.r == 0 || k.r + k.n == 0));
            if keys.is_empty() {
                // nothing in degree 0 at all
                keys.push(FreeKey::new(0, 0).into());
            }
            keys
        };
        checks.push(check(ManifoldCondition::Connected, offending));
    }
    let poincare = pd_symmetric(m, n);
    checks.push(check(
        ManifoldCondition::PoincareSymmetry,
        poincare.violations.iter().map(|v| v.key).collect(),
    ));
    ManifoldReport { dimension: n, checks, poincare }
}
