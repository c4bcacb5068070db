use std::f64::consts::PI;

use num_complex::Complex64;

use super::{CapacityEstimate, SegmentSpec};
use crate::chordal::{weld, weld_through, weld_union, Side, SlitInput};
use crate::geom::{project_to_segment, Chart, Hull, PolylineSlit};
use crate::{Error, Result};

/// Default zipper step: capacity per elementary map relative to `diam²`.
pub const DEFAULT_REL_STEP: f64 = 1e-3;

/// Half-plane capacity of a hull of one or two slits by welding.
pub fn hcap_zipper(hull: &Hull) -> Result<CapacityEstimate> {
    hcap_zipper_with(hull, DEFAULT_REL_STEP)
}

/// As [`hcap_zipper`] with step `rel_step·diam²`. The value is taken at half
/// that step and `err` is the difference to the value at the full step.
pub fn hcap_zipper_with(hull: &Hull, rel_step: f64) -> Result<CapacityEstimate> {
    if hull.chart() == Some(Chart::Disk) {
        return Err(Error::domain("hcap_zipper expects a half-plane hull"));
    }
    let mut slits: Vec<&PolylineSlit> = hull.nonempty_slits().collect();
    if slits.is_empty() {
        return Ok(CapacityEstimate::zipper(0.0, 0.0));
    }
    if !hull.is_disjoint() {
        let (a, b) = (slits[0], slits[1]);
        if contains(a, b) {
            slits = vec![a];
        } else if contains(b, a) {
            slits = vec![b];
        } else {
            return Err(Error::geometry("slits of the hull intersect"));
        }
    }
    let step = rel_step * hull.diameter().powi(2);
    let coarse = union_capacity(&slits, step)?;
    let fine = union_capacity(&slits, 0.5 * step)?;
    Ok(CapacityEstimate::zipper(fine, (fine - coarse).abs()))
}

/// Whether every vertex of `small` lies on `big` (same base).
fn contains(big: &PolylineSlit, small: &PolylineSlit) -> bool {
    if big.base() != small.base() {
        return false;
    }
    let tol = 1e-12 * big.diameter().max(small.diameter());
    small.vertices().iter().all(|&v| {
        big.segments().any(|(a, b)| (project_to_segment(v, a, b) - v).norm() <= tol)
    })
}

fn union_capacity(slits: &[&PolylineSlit], step: f64) -> Result<f64> {
    let inputs = slits.iter().map(|s| SlitInput::chordal(s)).collect();
    Ok(weld_union(inputs, &|z| Ok(z), step)?.total_capacity())
}

/// Capacity of the union of two straight segments.
///
/// Nested segments and segments of zero capacity are answered exactly;
/// everything else goes through [`hcap_zipper`].
pub fn hcap_union_two_slits(s1: &SegmentSpec, s2: &SegmentSpec, common_base: bool) -> Result<CapacityEstimate> {
    hcap_union_two_slits_with(s1, s2, common_base, DEFAULT_REL_STEP)
}

/// As [`hcap_union_two_slits`] with the zipper step of [`hcap_zipper_with`].
pub fn hcap_union_two_slits_with(
    s1: &SegmentSpec,
    s2: &SegmentSpec,
    common_base: bool,
    rel_step: f64,
) -> Result<CapacityEstimate> {
    if common_base != (s1.base == s2.base) {
        return Err(Error::domain(if common_base {
            "common_base requires equal base points"
        } else {
            "segments at the same base need common_base"
        }));
    }
    let max = s1.capacity.max(s2.capacity);
    if s1.capacity == 0.0 || s2.capacity == 0.0 {
        return Ok(CapacityEstimate::exact(max));
    }
    if common_base && (s1.angle - s2.angle).abs() <= 1e-12 {
        return Ok(CapacityEstimate::exact(max));
    }
    // reflection in the vertical line through the base preserves capacity;
    // one orientation of each pair is used so the result is symmetric
    let (s1, s2) = if common_base { canonical(s1, s2) } else { (*s1, *s2) };
    let hull = Hull::new(vec![s1.to_slit()?, s2.to_slit()?])?;
    if !hull.is_disjoint() {
        return Err(Error::geometry("segments overlap without being nested"));
    }
    hcap_zipper_with(&hull, rel_step)
}

/// The pair or its mirror image, whichever has the lexicographically smaller
/// `(angle, capacity)` entries after sorting by angle.
fn canonical(s1: &SegmentSpec, s2: &SegmentSpec) -> (SegmentSpec, SegmentSpec) {
    let mirror = |s: &SegmentSpec| SegmentSpec { angle: PI - s.angle, ..*s };
    let key = |a: &SegmentSpec, b: &SegmentSpec| {
        let (lo, hi) = if a.angle <= b.angle { (a, b) } else { (b, a) };
        [lo.angle, lo.capacity, hi.angle, hi.capacity]
    };
    let (m1, m2) = (mirror(s2), mirror(s1));
    if key(&m1, &m2) < key(s1, s2) {
        (m1, m2)
    } else {
        (*s1, *s2)
    }
}

/// Ratios `hcap(g_B(A_δ)) / δ` for vertical segments `A_δ` of capacity `δ`
/// standing at `x`. They stay below 1 and tend to `g_B′(x)²` as `δ → 0`.
pub fn pushforward_capacity_ratio(b: &PolylineSlit, x: f64, deltas: &[f64]) -> Result<Vec<f64>> {
    if deltas.iter().any(|&d| !(d > 0.0)) || deltas.windows(2).any(|w| !(w[1] < w[0])) {
        return Err(Error::domain("capacities must be positive and strictly decreasing"));
    }
    if b.is_empty() {
        return Ok(vec![1.0; deltas.len()]);
    }
    if b.chart() != Chart::HalfPlane {
        return Err(Error::domain("pushforward ratio expects a half-plane slit"));
    }
    if x == b.base_real() {
        return Err(Error::domain("growth point coincides with the base of the other slit"));
    }
    let (_, cm) = weld(b, DEFAULT_REL_STEP * b.diameter().powi(2))?;
    deltas
        .iter()
        .map(|&d| {
            let a = PolylineSlit::segment(x, Complex64::new(x, (2.0 * d).sqrt()))?;
            if !Hull::new(vec![b.clone(), a.clone()])?.is_disjoint() {
                return Err(Error::geometry(format!("growth segment at {x} meets the other slit")));
            }
            let w = weld_through(&cm, &a, Side::Right, DEFAULT_REL_STEP * d)?;
            Ok(w.capacity() / d)
        })
        .collect()
}
