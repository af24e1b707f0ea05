#![allow(dead_code)]

//! Test-only brute force over the finite key box. Shares no code with the
//! library's search: every predicate is recomputed from the raw rank maps.

use std::collections::BTreeMap;

use bredon::{ConstraintSet, MaximalityClass, NormalFormModule};

#[derive(Clone, Copy, Debug)]
enum Key {
    Free(i64, i64),
    Anti(i64, i64),
}

fn key_box(c: &ConstraintSet) -> Vec<Key> {
    let n = c.dimension as i64;
    let top = 2 * n;
    let mut keys = Vec::new();
    for p in 0..=top {
        for q in 0..=p.min(n) {
            keys.push(Key::Free(p, q));
        }
    }
    let r_min = if c.has_fixed_point { 1 } else { 0 };
    for r in r_min..=top {
        for t in 0..=top {
            let ok = if c.has_fixed_point { r + t < top } else { r + t <= top };
            if ok {
                keys.push(Key::Anti(r, t));
            }
        }
    }
    keys
}

fn footprint(k: Key) -> Vec<(usize, u64)> {
    match k {
        Key::Free(p, _) => vec![(p as usize, 1)],
        Key::Anti(r, 0) => vec![(r as usize, 2)],
        Key::Anti(r, t) => vec![(r as usize, 1), ((r + t) as usize, 1)],
    }
}

type Ranks = (BTreeMap<(i64, i64), u64>, BTreeMap<(i64, i64), u64>);

fn leaf_ok(c: &ConstraintSet, free: &BTreeMap<(i64, i64), u64>, anti: &BTreeMap<(i64, i64), u64>) -> bool {
    let n = c.dimension as i64;
    let top = 2 * n;
    let rk = |p: i64, q: i64| free.get(&(p, q)).copied().unwrap_or(0);
    let rka = |s: i64, t: i64| anti.get(&(s, t)).copied().unwrap_or(0);

    // b_d = Σ_q Rk^{d,q} + 2 Rk_a^{d,0} + Σ_{t>=1} (Rk_a^{d,t} + Rk_a^{d-t,t})
    for d in 0..=top {
        let mut b = 0;
        for q in -top..=top {
            b += rk(d, q);
        }
        b += 2 * rka(d, 0);
        for t in 1..=top {
            b += rka(d, t) + rka(d - t, t);
        }
        if b != c.betti(d) {
            return false;
        }
    }
    if let Some(fixed) = &c.betti_fixed {
        let mut counts = vec![0u64; (top + 1) as usize];
        for (&(p, q), &m) in free {
            let k = p - q;
            if k < 0 || k > top {
                return false;
            }
            counts[k as usize] += m;
        }
        for (k, &cnt) in counts.iter().enumerate() {
            if cnt != fixed.get(k).copied().unwrap_or(0) {
                return false;
            }
        }
        if fixed.iter().skip(counts.len()).any(|&b| b > 0) {
            return false;
        }
    }
    if c.poincare_dual {
        for (&(p, q), &m) in free {
            if q > n || rk(2 * n - p, n - q) != m {
                return false;
            }
        }
        for (&(s, t), &m) in anti {
            if s + t > 2 * n || rka(2 * n - s - t, t) != m {
                return false;
            }
            if c.has_fixed_point && (s <= 0 || s + t >= 2 * n) {
                return false;
            }
        }
        if c.has_fixed_point && c.connected && rk(0, 0) != 1 {
            return false;
        }
        if c.connected && c.betti(0) != 1 {
            return false;
        }
    }
    if let Some(degrees) = &c.forgetful_onto_degrees {
        for &d in degrees {
            let mut image = 0;
            for q in -top..=top {
                image += rk(d, q);
            }
            for t in 0..=top {
                image += rka(d, t);
            }
            if image != c.betti(d) {
                return false;
            }
        }
    }
    if let Some(class) = c.class_filter {
        let got = if anti.is_empty() {
            MaximalityClass::Maximal
        } else if anti.keys().all(|&(_, t)| t == 0) {
            MaximalityClass::GaloisMaximalOnly
        } else {
            MaximalityClass::Neither
        };
        if got != class {
            return false;
        }
    }
    true
}

fn recurse(
    c: &ConstraintSet,
    keys: &[Key],
    i: usize,
    budget: &mut Vec<u64>,
    ranks: &mut Ranks,
    out: &mut Vec<NormalFormModule>,
) {
    if i == keys.len() {
        if leaf_ok(c, &ranks.0, &ranks.1) {
            let mut m = NormalFormModule::zero();
            for (&(p, q), &k) in &ranks.0 {
                m = m.with_free(p, q, k);
            }
            for (&(r, t), &k) in &ranks.1 {
                m = m.with_antipodal(r, t, k);
            }
            out.push(m);
        }
        return;
    }
    let key = keys[i];
    let fp = footprint(key);
    let bound = fp.iter().map(|&(d, u)| budget.get(d).copied().unwrap_or(0) / u).min().unwrap();
    for copies in 0..=bound {
        if copies > 0 {
            for &(d, u) in &fp {
                budget[d] -= u;
            }
            match key {
                Key::Free(p, q) => *ranks.0.entry((p, q)).or_insert(0) += 1,
                Key::Anti(r, t) => *ranks.1.entry((r, t)).or_insert(0) += 1,
            }
        }
        recurse(c, keys, i + 1, budget, ranks, out);
    }
    for &(d, u) in &fp {
        budget[d] += u * bound;
    }
    match key {
        Key::Free(p, q) => remove(&mut ranks.0, (p, q), bound),
        Key::Anti(r, t) => remove(&mut ranks.1, (r, t), bound),
    }
}

fn remove(map: &mut BTreeMap<(i64, i64), u64>, key: (i64, i64), amount: u64) {
    if amount == 0 {
        return;
    }
    let entry = map.get_mut(&key).unwrap();
    *entry -= amount;
    if *entry == 0 {
        map.remove(&key);
    }
}

/// All modules over the key box satisfying `c`, in canonical JSON order.
pub fn brute_force(c: &ConstraintSet) -> Vec<NormalFormModule> {
    let top = 2 * c.dimension as usize;
    let mut budget: Vec<u64> = (0..=top).map(|d| c.betti(d as i64)).collect();
    let keys = key_box(c);
    let mut out = Vec::new();
    recurse(c, &keys, 0, &mut budget, &mut (BTreeMap::new(), BTreeMap::new()), &mut out);
    out.sort_by_cached_key(|m| m.to_canonical_json());
    out
}

pub fn k3_constraints() -> ConstraintSet {
    ConstraintSet {
        betti_fixed: Some(vec![2, 0, 2]),
        has_fixed_point: true,
        connected: true,
        poincare_dual: true,
        ..ConstraintSet::new(2, vec![1, 0, 22, 0, 1])
    }
}

pub fn cubic_constraints(with_onto: bool) -> ConstraintSet {
    ConstraintSet {
        betti_fixed: Some(vec![2, 1, 1, 2]),
        has_fixed_point: true,
        connected: true,
        poincare_dual: true,
        forgetful_onto_degrees: with_onto.then(|| vec![4]),
        ..ConstraintSet::new(3, vec![1, 0, 1, 10, 1, 0, 1])
    }
}
