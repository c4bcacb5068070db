use rayon::prelude::*;

use super::{csv, Check, Summary};
use crate::capacity::{hcap_union_two_slits, hcap_union_two_slits_with, Method, SegmentSpec, DEFAULT_REL_STEP};
use crate::{Error, Result};

/// Finest relative zipper step tried when resolving a row against its bounds.
const MIN_REL_STEP: f64 = DEFAULT_REL_STEP / 16.0;

/// One angle pair of a branch-point sweep.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepRow {
    pub alpha1: f64,
    pub alpha2: f64,
    pub b1: f64,
    pub b2: f64,
    /// Derivative of the joint capacity at 0, the capacity of the union of
    /// the two full segments.
    pub cdot0: f64,
    pub lower: f64,
    pub upper: f64,
    pub err: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepResult {
    pub rows: Vec<SweepRow>,
}

impl SweepResult {
    pub fn to_csv(&self) -> String {
        csv(
            "alpha1,alpha2,b1,b2,cdot0,lower,upper,err",
            self.rows.iter().map(|r| vec![r.alpha1, r.alpha2, r.b1, r.b2, r.cdot0, r.lower, r.upper, r.err]),
        )
    }

    /// Bounds `max{b₁,b₂} ≤ ċ0 < b₁ + b₂` per row, equality at equal angles,
    /// and growth along the sweep when the pairs are nested.
    pub fn summary(&self) -> Summary {
        let mut checks = Vec::new();
        for (i, r) in self.rows.iter().enumerate() {
            let both = r.b1 > 0.0 && r.b2 > 0.0;
            if r.alpha1 == r.alpha2 || !both {
                checks.push(Check::new(
                    format!("row {i}: cdot0 = max(b1, b2)"),
                    r.cdot0,
                    format!("{} ± 1e-3", r.lower),
                    (r.cdot0 - r.lower).abs() <= 1e-3,
                ));
            } else {
                checks.push(Check::new(
                    format!("row {i}: max(b1, b2) < cdot0 < b1 + b2"),
                    r.cdot0,
                    format!("({}, {}) beyond 3·err", r.lower, r.upper),
                    r.cdot0 - r.lower > 3.0 * r.err && r.upper - r.cdot0 > 3.0 * r.err,
                ));
            }
        }
        for (i, w) in self.rows.windows(2).enumerate() {
            let nested = w[1].alpha1 <= w[0].alpha1 && w[1].alpha2 >= w[0].alpha2 && (w[0].b1, w[0].b2) == (w[1].b1, w[1].b2);
            if nested && (w[0].alpha1, w[0].alpha2) != (w[1].alpha1, w[1].alpha2) {
                checks.push(Check::new(
                    format!("rows {i}->{}: cdot0 increases", i + 1),
                    w[1].cdot0 - w[0].cdot0,
                    "> 0",
                    w[1].cdot0 > w[0].cdot0,
                ));
            }
        }
        Summary::new("branch-sweep", checks)
    }
}

/// `ċ(0) = hcap(L₁ ∪ L₂)` for segments of capacities `b₁, b₂` leaving 0 at
/// each angle pair.
pub fn branch_sweep(angle_pairs: &[(f64, f64)], b1: f64, b2: f64) -> Result<SweepResult> {
    for &(a1, a2) in angle_pairs {
        if !(0.0 < a1 && a1 <= a2 && a2 < std::f64::consts::PI) {
            return Err(Error::domain(format!("angle pair ({a1}, {a2}) must satisfy 0 < α₁ ≤ α₂ < π")));
        }
    }
    let rows = angle_pairs
        .par_iter()
        .map(|&(alpha1, alpha2)| {
            let (s1, s2) = (SegmentSpec::new(alpha1, b1, 0.0)?, SegmentSpec::new(alpha2, b2, 0.0)?);
            let mut e = hcap_union_two_slits(&s1, &s2, true)?;
            let (lower, upper) = (b1.max(b2), b1 + b2);
            // halve the step until the row is separated from its bounds
            let mut rel = DEFAULT_REL_STEP;
            while e.method == Method::Zipper && 3.0 * e.err >= (e.value - lower).min(upper - e.value) && rel > MIN_REL_STEP {
                rel *= 0.5;
                e = hcap_union_two_slits_with(&s1, &s2, true, rel)?;
            }
            Ok(SweepRow { alpha1, alpha2, b1, b2, cdot0: e.value, lower, upper, err: e.err })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SweepResult { rows })
}

/// `c(t)/t` for two segments at distinct bases, each grown to capacity
/// `b_k·t`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DisjointRow {
    pub t: f64,
    pub c: f64,
    pub ratio: f64,
}

impl DisjointRow {
    pub fn csv(rows: &[DisjointRow]) -> String {
        csv("t,c,c_over_t", rows.iter().map(|r| vec![r.t, r.c, r.ratio]))
    }
}

pub fn disjoint_sum_check(s1: &SegmentSpec, s2: &SegmentSpec, t_list: &[f64]) -> Result<Vec<DisjointRow>> {
    if s1.base == s2.base {
        return Err(Error::domain("disjoint_sum_check needs distinct bases"));
    }
    if t_list.iter().any(|&t| !(t > 0.0 && t <= 1.0)) {
        return Err(Error::domain("times must lie in (0, 1]"));
    }
    t_list
        .par_iter()
        .map(|&t| {
            let a = SegmentSpec { capacity: s1.capacity * t, ..*s1 };
            let b = SegmentSpec { capacity: s2.capacity * t, ..*s2 };
            let c = hcap_union_two_slits(&a, &b, false)?.value;
            Ok(DisjointRow { t, c, ratio: c / t })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn equal_angles_and_zero_capacity() {
        let r = branch_sweep(&[(PI / 3.0, PI / 3.0)], 1.0, 0.25).unwrap();
        assert_eq!(r.rows[0].cdot0, 1.0);
        let r = branch_sweep(&[(0.4, 2.0)], 0.0, 0.7).unwrap();
        assert_eq!(r.rows[0].cdot0, 0.7);
        assert!(r.summary().pass);
    }

    #[test]
    fn disjoint_labels_commute() {
        let s1 = SegmentSpec::new(PI / 2.0, 0.5, -5.0).unwrap();
        let s2 = SegmentSpec::new(PI / 3.0, 0.3, 5.0).unwrap();
        let a = disjoint_sum_check(&s1, &s2, &[0.1, 0.01]).unwrap();
        let b = disjoint_sum_check(&s2, &s1, &[0.1, 0.01]).unwrap();
        for (x, y) in a.iter().zip(&b) {
            assert!((x.c - y.c).abs() < 1e-9 * x.c);
        }
        let empty = SegmentSpec::new(PI / 2.0, 0.0, 5.0).unwrap();
        let one = disjoint_sum_check(&s1, &empty, &[0.1]).unwrap();
        assert_eq!(one[0].ratio, 0.5);
    }
}
