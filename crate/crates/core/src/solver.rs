//! Enumeration of all normal forms compatible with topological constraints.
//!
//! The search walks topological degrees `d = 0..=2n`. Every summand key is
//! assigned at the lowest degree it touches; with Poincare duality enabled a
//! key and its mirror share one multiplicity and are charged together, so
//! the mirror symmetry never has to be searched. After degree `d` is
//! processed nothing else can contribute to `b_d`, so its budget must be
//! exactly spent.

use std::collections::BTreeSet;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::{AntipodalKey, FreeKey, NormalFormModule};
use crate::classification::{classify, MaximalityClass};
use crate::localization::{
    antipodal_mirror, forgetful_image_dims, free_mirror, real_manifold_validate, rho_localize,
    underlying_singular, GradedDims,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolverError {
    #[error("betti_total has nonzero entries beyond degree 2n = {top}")]
    InfeasibleBounds { top: i64 },
    #[error("invalid constraints: {0}")]
    InvalidConstraints(String),
}

/// Topological data constraining the bigraded cohomology of a space.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConstraintSet {
    /// Complex dimension `n`; Betti numbers live in degrees `0..=2n`.
    #[serde(rename = "n")]
    pub dimension: u32,
    /// `b_k(X)` for `k = 0, 1, ...`.
    pub betti_total: Vec<u64>,
    /// `b_k(X^C2)` for `k = 0, 1, ...`.
    #[serde(default)]
    pub betti_fixed: Option<Vec<u64>>,
    pub has_fixed_point: bool,
    pub connected: bool,
    pub poincare_dual: bool,
    #[serde(default)]
    pub forgetful_onto_degrees: Option<Vec<i64>>,
    #[serde(default)]
    pub class_filter: Option<MaximalityClass>,
}

impl ConstraintSet {
    pub fn new(dimension: u32, betti_total: Vec<u64>) -> Self {
        Self {
            dimension,
            betti_total,
            betti_fixed: None,
            has_fixed_point: false,
            connected: false,
            poincare_dual: false,
            forgetful_onto_degrees: None,
            class_filter: None,
        }
    }

    pub fn betti(&self, degree: i64) -> u64 {
        usize::try_from(degree)
            .ok()
            .and_then(|d| self.betti_total.get(d))
            .copied()
            .unwrap_or(0)
    }

    fn top(&self) -> i64 {
        2 * self.dimension as i64
    }

    fn onto_degrees(&self) -> BTreeSet<i64> {
        self.forgetful_onto_degrees.iter().flatten().copied().collect()
    }

    pub fn validate(&self) -> Result<(), SolverError> {
        let top = self.top();
        if self.betti_total.iter().enumerate().any(|(d, &b)| b > 0 && d as i64 > top) {
            return Err(SolverError::InfeasibleBounds { top });
        }
        if self.connected && self.betti(0) != 1 {
            return Err(SolverError::InvalidConstraints(
                "a connected space needs betti_total[0] = 1".into(),
            ));
        }
        if self.has_fixed_point {
            if let Some(fixed) = &self.betti_fixed {
                if fixed.iter().sum::<u64>() == 0 {
                    return Err(SolverError::InvalidConstraints(
                        "has_fixed_point contradicts an empty betti_fixed".into(),
                    ));
                }
            }
        }
        Ok(())
    }

    fn in_free_box(&self, k: FreeKey) -> bool {
        let n = self.dimension as i64;
        k.p >= 0 && k.p <= self.top() && k.q >= 0 && k.q <= k.p.min(n)
    }

    fn in_antipodal_box(&self, k: AntipodalKey) -> bool {
        let top = self.top();
        let lowest_shift = if self.has_fixed_point { 1 } else { 0 };
        let top_ok = if self.has_fixed_point { k.r + k.n < top } else { k.r + k.n <= top };
        k.n >= 0 && k.r >= lowest_shift && top_ok
    }

    fn antipodal_allowed(&self, k: AntipodalKey, onto: &BTreeSet<i64>) -> bool {
        if !self.in_antipodal_box(k) {
            return false;
        }
        // A_0 at an onto degree contributes 2 to b_d but 1 to the image;
        // the upper cell of A_n (n > 0) is never in the image.
        let blocks_onto = if k.n == 0 { onto.contains(&k.r) } else { onto.contains(&(k.r + k.n)) };
        let class_ok = match self.class_filter {
            Some(MaximalityClass::Maximal) => false,
            Some(MaximalityClass::GaloisMaximalOnly) => k.n == 0,
            _ => true,
        };
        !blocks_onto && class_ok
    }
}

/// True iff `m` meets every condition of `c`, checked through the public
/// localization and classification operations.
pub fn satisfies(c: &ConstraintSet, m: &NormalFormModule) -> bool {
    if !m.is_cw_valid() {
        return false;
    }
    let n = c.dimension as i64;
    let box_ok = m.free().keys().all(|&k| c.in_free_box(k))
        && m.antipodal().keys().all(|&k| c.in_antipodal_box(k));
    if !box_ok {
        return false;
    }
    let dims = underlying_singular(m).dims();
    if dims != GradedDims::from_dense(&c.betti_total) {
        return false;
    }
    if let Some(fixed) = &c.betti_fixed {
        if rho_localize(m) != GradedDims::from_dense(fixed) {
            return false;
        }
    }
    if c.poincare_dual && !real_manifold_validate(m, n, c.has_fixed_point, c.connected).passed() {
        return false;
    }
    if let Some(degrees) = &c.forgetful_onto_degrees {
        let image = forgetful_image_dims(m);
        if degrees.iter().any(|&d| image.get(d) != c.betti(d)) {
            return false;
        }
    }
    match c.class_filter {
        Some(class) => classify(m) == class,
        None => true,
    }
}

#[derive(Debug, Clone, Copy)]
enum Key {
    Free(FreeKey),
    Antipodal(AntipodalKey),
}

/// One shared multiplicity for one or two keys (a key and its mirror).
#[derive(Debug, Clone)]
struct Slot {
    keys: Vec<Key>,
    /// `(degree, units per copy)` charged against `betti_total`.
    betti: Vec<(usize, u64)>,
    /// `(degree, units per copy)` charged against `betti_fixed`.
    fixed: Vec<(usize, u64)>,
}

#[derive(Debug, Clone)]
enum Step {
    Assign(Slot),
    Close(usize),
}

fn charge(list: &mut Vec<(usize, u64)>, degree: usize, units: u64) {
    match list.iter_mut().find(|(d, _)| *d == degree) {
        Some(entry) => entry.1 += units,
        None => list.push((degree, units)),
    }
}

fn key_charges(key: Key, slot: &mut Slot) {
    match key {
        Key::Free(k) => {
            charge(&mut slot.betti, k.p as usize, 1);
            charge(&mut slot.fixed, (k.p - k.q) as usize, 1);
        }
        Key::Antipodal(k) if k.n == 0 => charge(&mut slot.betti, k.r as usize, 2),
        Key::Antipodal(k) => {
            charge(&mut slot.betti, k.r as usize, 1);
            charge(&mut slot.betti, (k.r + k.n) as usize, 1);
        }
    }
}

fn make_slot(keys: Vec<Key>) -> Slot {
    let mut slot = Slot { keys, betti: Vec::new(), fixed: Vec::new() };
    for key in slot.keys.clone() {
        key_charges(key, &mut slot);
    }
    slot
}

fn build_plan(c: &ConstraintSet) -> Vec<Step> {
    let n = c.dimension as i64;
    let top = c.top();
    let onto = c.onto_degrees();
    let mut plan = Vec::new();
    for d in 0..=top {
        for q in 0..=d.min(n) {
            let key = FreeKey::new(d, q);
            let keys = if c.poincare_dual {
                let mirror = free_mirror(key, n);
                if !c.in_free_box(mirror) || mirror < key {
                    continue;
                }
                if mirror == key { vec![Key::Free(key)] } else { vec![Key::Free(key), Key::Free(mirror)] }
            } else {
                vec![Key::Free(key)]
            };
            plan.push(Step::Assign(make_slot(keys)));
        }
        for t in 0..=(top - d) {
            let key = AntipodalKey::new(d, t);
            if !c.antipodal_allowed(key, &onto) {
                continue;
            }
            let keys = if c.poincare_dual {
                let mirror = antipodal_mirror(key, n);
                if !c.antipodal_allowed(mirror, &onto) || mirror < key {
                    continue;
                }
                if mirror == key {
                    vec![Key::Antipodal(key)]
                } else {
                    vec![Key::Antipodal(key), Key::Antipodal(mirror)]
                }
            } else {
                vec![Key::Antipodal(key)]
            };
            plan.push(Step::Assign(make_slot(keys)));
        }
        plan.push(Step::Close(d as usize));
    }
    plan
}

#[derive(Debug, Clone)]
struct State {
    betti: Vec<u64>,
    fixed: Option<Vec<u64>>,
    chosen: Vec<(usize, u64)>,
}

impl State {
    fn max_copies(&self, slot: &Slot) -> u64 {
        let mut bound = u64::MAX;
        for &(d, units) in &slot.betti {
            bound = bound.min(self.betti.get(d).copied().unwrap_or(0) / units);
        }
        if let Some(fixed) = &self.fixed {
            for &(d, units) in &slot.fixed {
                bound = bound.min(fixed.get(d).copied().unwrap_or(0) / units);
            }
        }
        bound
    }

    fn apply(&self, index: usize, slot: &Slot, copies: u64) -> State {
        let mut next = self.clone();
        if copies == 0 {
            return next;
        }
        for &(d, units) in &slot.betti {
            next.betti[d] -= units * copies;
        }
        if let Some(fixed) = next.fixed.as_mut() {
            for &(d, units) in &slot.fixed {
                fixed[d] -= units * copies;
            }
        }
        next.chosen.push((index, copies));
        next
    }

    fn module(&self, plan: &[Step]) -> NormalFormModule {
        let mut m = NormalFormModule::zero();
        for &(index, copies) in &self.chosen {
            let Step::Assign(slot) = &plan[index] else { unreachable!() };
            for key in &slot.keys {
                m = match *key {
                    Key::Free(k) => m.with_free(k.p, k.q, copies),
                    Key::Antipodal(k) => m.with_antipodal(k.r, k.n, copies),
                };
            }
        }
        m
    }
}

/// Advances through `plan[step..]`, collecting completed states, or states
/// paused at `stop_at` when it is set.
fn search(plan: &[Step], step: usize, state: State, stop_at: Option<usize>, out: &mut Vec<(usize, State)>) {
    if Some(step) == stop_at || step == plan.len() {
        out.push((step, state));
        return;
    }
    match &plan[step] {
        Step::Close(d) => {
            if state.betti[*d] == 0 {
                search(plan, step + 1, state, stop_at, out);
            }
        }
        Step::Assign(slot) => {
            for copies in 0..=state.max_copies(slot) {
                search(plan, step + 1, state.apply(step, slot, copies), stop_at, out);
            }
        }
    }
}

/// Every cw-valid normal form satisfying `c`, in canonical order.
pub fn enumerate_decompositions(c: &ConstraintSet) -> Result<Vec<NormalFormModule>, SolverError> {
    c.validate()?;
    let top = c.top() as usize;
    let plan = build_plan(c);
    let fixed_budget = c.betti_fixed.as_ref().map(|f| {
        let mut budget = vec![0; top + 1];
        for (d, &b) in f.iter().enumerate().take(top + 1) {
            budget[d] = b;
        }
        budget
    });
    if let Some(fixed) = &c.betti_fixed {
        if fixed.iter().skip(top + 1).any(|&b| b > 0) {
            return Ok(Vec::new());
        }
    }
    let mut betti = vec![0; top + 1];
    for (d, &b) in c.betti_total.iter().enumerate().take(top + 1) {
        betti[d] = b;
    }
    let root = State { betti, fixed: fixed_budget, chosen: Vec::new() };

    // Fan out after the first few assignment slots; branches share nothing.
    let split = plan.len().min(6);
    let mut frontier = Vec::new();
    search(&plan, 0, root, Some(split), &mut frontier);

    let mut solutions: Vec<NormalFormModule> = frontier
        .into_par_iter()
        .flat_map_iter(|(step, state)| {
            let mut leaves = Vec::new();
            search(&plan, step, state, None, &mut leaves);
            leaves
        })
        .map(|(_, state)| state.module(&plan))
        .filter(|m| satisfies(c, m))
        .collect();
    solutions.sort_by_cached_key(|m| m.to_canonical_json());
    solutions.dedup();
    Ok(solutions)
}

/// A criterion's verdict: `prediction` is set only when the hypotheses hold.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct Prediction {
    pub applicable: bool,
    pub prediction: Option<PredictedClass>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum PredictedClass {
    /// Galois-Maximal: either M or GM-only.
    #[serde(rename = "GM")]
    GaloisMaximal,
}

impl PredictedClass {
    pub fn admits(&self, class: MaximalityClass) -> bool {
        match self {
            PredictedClass::GaloisMaximal => class.is_galois_maximal(),
        }
    }
}

impl Prediction {
    fn from_hypotheses(applicable: bool) -> Self {
        Self { applicable, prediction: applicable.then_some(PredictedClass::GaloisMaximal) }
    }
}

/// Surfaces with a real point and `b_1 = 0` are Galois-Maximal.
pub fn krasnov_predict(c: &ConstraintSet) -> Prediction {
    Prediction::from_hypotheses(
        c.dimension == 2 && c.has_fixed_point && c.poincare_dual && c.betti(1) == 0,
    )
}

/// Threefolds with a real point, `b_1 = 0` and forgetful map onto in degree 4
/// are Galois-Maximal.
pub fn threefold_predict(c: &ConstraintSet) -> Prediction {
    Prediction::from_hypotheses(
        c.dimension == 3
            && c.has_fixed_point
            && c.poincare_dual
            && c.betti(1) == 0
            && c.onto_degrees().contains(&4),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn k3_constraints() -> ConstraintSet {
        ConstraintSet {
            betti_fixed: Some(vec![2, 0, 2]),
            has_fixed_point: true,
            connected: true,
            poincare_dual: true,
            ..ConstraintSet::new(2, vec![1, 0, 22, 0, 1])
        }
    }

    #[test]
    fn k3_is_unique() {
        let solutions = enumerate_decompositions(&k3_constraints()).unwrap();
        let expected = NormalFormModule::point()
            .with_free(2, 0, 1)
            .with_free(2, 2, 1)
            .with_antipodal(2, 0, 10)
            .with_free(4, 2, 1);
        assert_eq!(solutions, vec![expected]);
    }

    #[test]
    fn out_of_range_betti() {
        let c = ConstraintSet::new(1, vec![1, 0, 1, 1]);
        assert_eq!(enumerate_decompositions(&c), Err(SolverError::InfeasibleBounds { top: 2 }));
        let trailing_zero = ConstraintSet::new(1, vec![1, 0, 1, 0]);
        assert!(enumerate_decompositions(&trailing_zero).is_ok());
    }

    #[test]
    fn connected_needs_single_component() {
        let c = ConstraintSet { connected: true, ..ConstraintSet::new(1, vec![2, 0, 2]) };
        assert!(matches!(enumerate_decompositions(&c), Err(SolverError::InvalidConstraints(_))));
    }

    #[test]
    fn empty_answer_is_not_an_error() {
        let c = ConstraintSet { betti_fixed: Some(vec![5]), ..ConstraintSet::new(0, vec![1]) };
        assert_eq!(enumerate_decompositions(&c), Ok(vec![]));
    }

    #[test]
    fn point_fiber() {
        // b_0 = 1 for a point: M2 is the only option with a fixed point.
        let c = ConstraintSet { has_fixed_point: true, ..ConstraintSet::new(0, vec![1]) };
        assert_eq!(enumerate_decompositions(&c).unwrap(), vec![NormalFormModule::point()]);
        // Without one, b_0 = 2 could be two fixed points or a free orbit.
        let c = ConstraintSet::new(0, vec![2]);
        let found = enumerate_decompositions(&c).unwrap();
        assert_eq!(found.len(), 2);
        assert!(found.contains(&NormalFormModule::zero().with_antipodal(0, 0, 1)));
        assert!(found.contains(&NormalFormModule::zero().with_free(0, 0, 2)));
    }

    #[test]
    fn class_filter_applies() {
        let c = ConstraintSet { class_filter: Some(MaximalityClass::Maximal), ..ConstraintSet::new(0, vec![2]) };
        assert_eq!(enumerate_decompositions(&c).unwrap(), vec![NormalFormModule::zero().with_free(0, 0, 2)]);
    }

    #[test]
    fn predictions() {
        let k3 = k3_constraints();
        assert_eq!(krasnov_predict(&k3).prediction, Some(PredictedClass::GaloisMaximal));
        let c = ConstraintSet { betti_total: vec![1, 2, 22, 2, 1], ..k3.clone() };
        assert!(!krasnov_predict(&c).applicable);
        assert!(!threefold_predict(&k3).applicable);
        let cubic = ConstraintSet {
            forgetful_onto_degrees: Some(vec![4]),
            ..ConstraintSet { dimension: 3, betti_total: vec![1, 0, 1, 10, 1, 0, 1], ..k3.clone() }
        };
        assert!(threefold_predict(&cubic).applicable);
        assert!(!krasnov_predict(&cubic).applicable);
        let no_onto = ConstraintSet { forgetful_onto_degrees: None, ..cubic };
        assert!(!threefold_predict(&no_onto).applicable);
        assert_eq!(threefold_predict(&no_onto).prediction, None);
    }

    #[test]
    fn constraint_json() {
        let json = r#"{"n":2,"betti_total":[1,0,22,0,1],"betti_fixed":[2,0,2],"has_fixed_point":true,
            "connected":true,"poincare_dual":true,"forgetful_onto_degrees":null,"class_filter":null}"#;
        let c: ConstraintSet = serde_json::from_str(json).unwrap();
        assert_eq!(c, k3_constraints());
        let filtered = r#"{"n":0,"betti_total":[1],"has_fixed_point":false,"connected":true,
            "poincare_dual":false,"class_filter":"GM"}"#;
        let c: ConstraintSet = serde_json::from_str(filtered).unwrap();
        assert_eq!(c.class_filter, Some(MaximalityClass::GaloisMaximalOnly));
    }
}
