//! Plain-text renderings.

use std::fmt::Write;

use bredon::localization::{ManifoldReport, PdReport};
use bredon::{BorelModule, C2GradedSpace, GradedDims, NormalFormModule, SmithThomReport};

/// The bigraded rank as a lattice diagram: `p` runs left to right, `q`
/// bottom to top, each cell shows `Rk^{p,q}` or `.` when zero.
pub fn rank_diagram(m: &NormalFormModule) -> String {
    let mut out = String::new();
    if m.free().is_empty() {
        out.push_str("free part: 0\n");
    } else {
        let keys = m.free().keys();
        let p_min = keys.clone().map(|k| k.p).min().unwrap().min(0);
        let p_max = keys.clone().map(|k| k.p).max().unwrap();
        let q_min = keys.clone().map(|k| k.q).min().unwrap().min(0);
        let q_max = keys.map(|k| k.q).max().unwrap();
        let width = m.free().values().map(|c| c.to_string().len()).max().unwrap().max(p_max.to_string().len()) + 1;
        for q in (q_min..=q_max).rev() {
            let _ = write!(out, "q={q:>3} |");
            for p in p_min..=p_max {
                let c = m.rank(p, q);
                let cell = if c == 0 { ".".to_string() } else { c.to_string() };
                let _ = write!(out, "{cell:>width$}");
            }
            out.push('\n');
        }
        let _ = write!(out, "      +{}\n   p:  ", "-".repeat(width * (p_max - p_min + 1) as usize));
        for p in p_min..=p_max {
            let _ = write!(out, "{p:>width$}");
        }
        out.push('\n');
    }
    if !m.antipodal().is_empty() {
        out.push_str("antipodal part:\n");
        for (k, c) in m.antipodal_summands() {
            let _ = writeln!(out, "  Σ^{{{},0}}A{}  x{c}", k.r, k.n);
        }
    }
    out
}

pub fn dims_table(title: &str, dims: &GradedDims) -> String {
    let mut out = format!("{title}\n");
    if dims.is_empty() {
        out.push_str("  (zero)\n");
    }
    for (d, c) in dims.iter() {
        let _ = writeln!(out, "  degree {d:>3}: {c}");
    }
    out
}

pub fn borel_table(b: &BorelModule) -> String {
    let mut parts: Vec<String> = b
        .free()
        .map(|(p, c)| power(format!("Σ^{p}F2[z]"), c))
        .collect();
    parts.extend(b.torsion().map(|((r, n), c)| power(format!("Σ^{r}F2[z]/(z^{})", n + 1), c)));
    if parts.is_empty() {
        "0\n".into()
    } else {
        format!("{}\n", parts.join(" ⊕ "))
    }
}

fn power(base: String, c: u64) -> String {
    if c == 1 {
        base
    } else {
        format!("({base})^{c}")
    }
}

pub fn singular_table(s: &C2GradedSpace) -> String {
    let dims = s.dims();
    let mut degrees: Vec<i64> = dims.iter().map(|(d, _)| d).collect();
    degrees.dedup();
    let mut out = String::from("degree  dim  trivial  regular\n");
    for d in degrees {
        let _ = writeln!(out, "{d:>6} {:>4} {:>8} {:>8}", dims.get(d), s.trivial.get(d), s.regular.get(d));
    }
    out
}

pub fn smith_thom_table(r: &SmithThomReport) -> String {
    format!(
        "fixed {}  <=  group cohomology {}  <=  singular {}   class {}\n",
        r.fixed_total, r.group_cohomology_total, r.singular_total, r.class
    )
}

pub fn pd_table(r: &PdReport, n: i64) -> String {
    if r.holds {
        return format!("Poincare symmetry holds at n = {n}\n");
    }
    let mut out = format!("Poincare symmetry fails at n = {n}\n");
    for v in &r.violations {
        let _ = writeln!(out, "  {} x{} vs mirror {} x{}", v.key, v.count, v.mirror, v.mirror_count);
    }
    out
}

pub fn manifold_table(r: &ManifoldReport) -> String {
    let mut out = format!("Real manifold conditions at n = {}\n", r.dimension);
    for c in &r.checks {
        let mark = if c.passed { "ok  " } else { "FAIL" };
        let _ = write!(out, "  [{mark}] {}", c.condition.label());
        if !c.offending.is_empty() {
            let keys: Vec<String> = c.offending.iter().map(|k| k.to_string()).collect();
            let _ = write!(out, ": {}", keys.join(", "));
        }
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn diagram_of_projective_plane() {
        let m = NormalFormModule::point().with_free(2, 1, 1).with_free(4, 2, 1);
        let text = rank_diagram(&m);
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], "q=  2 | . . . . 1");
        assert_eq!(lines[1], "q=  1 | . . 1 . .");
        assert_eq!(lines[2], "q=  0 | 1 . . . .");
        assert!(lines[4].ends_with("0 1 2 3 4"));
    }

    #[test]
    fn diagram_lists_antipodal_part() {
        let m = NormalFormModule::zero().with_antipodal(0, 2, 1);
        assert_eq!(rank_diagram(&m), "free part: 0\nantipodal part:\n  Σ^{0,0}A2  x1\n");
    }
}
