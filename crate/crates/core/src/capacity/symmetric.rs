//! Capacity of hulls symmetric under `z ↦ −z̄`.
//!
//! For `K̂ = K ∪ K*` with `K` in the closed right half-plane, `z ↦ z²` sends
//! the right half of `ℍ ∖ K̂` onto `ℍ` minus the squared path, and
//! `g_{K̂}(√w)² = h(w) + 2·hcap(K̂)` with `h` the normalized map of the squared
//! picture. The highest point of `K̂` on the imaginary axis goes to 0 under
//! `g_{K̂}`, so `hcap(K̂) = −h(−y_top²)/2`. Pieces of `K` running along the
//! axis square onto the real line and carry no capacity; arcs leaving and
//! returning to the axis become closed bubbles.

use num_complex::Complex64;

use super::{zipper::DEFAULT_REL_STEP, CapacityEstimate};
use crate::chordal::{weld_curve, ComposedMap, CurveSpec, Side};
use crate::geom::{Chart, PolylineSlit};
use crate::{Error, Result};

/// Capacity of `right ∪ mirror(right)`.
pub fn hcap_symmetric(right: &PolylineSlit) -> Result<CapacityEstimate> {
    hcap_symmetric_with(right, DEFAULT_REL_STEP)
}

pub fn hcap_symmetric_with(right: &PolylineSlit, rel_step: f64) -> Result<CapacityEstimate> {
    if right.chart() != Chart::HalfPlane {
        return Err(Error::domain("symmetric capacity expects a half-plane slit"));
    }
    if right.is_empty() {
        return Ok(CapacityEstimate::zipper(0.0, 0.0));
    }
    if right.base_real() != 0.0 {
        return Err(Error::domain("symmetric hull must be based at 0"));
    }
    let diam = right.points().map(|z| z.norm()).fold(0.0, f64::max);
    if right.vertices().iter().any(|v| v.re < -1e-12 * diam) {
        return Err(Error::domain("slit must lie in the closed right half-plane"));
    }
    // squared picture has diameter about diam²
    let step = rel_step * diam.powi(4);
    let coarse = squared_capacity(right, step, diam)?;
    let fine = squared_capacity(right, 0.5 * step, diam)?;
    Ok(CapacityEstimate::zipper(fine, (fine - coarse).abs()))
}

fn squared_capacity(right: &PolylineSlit, step: f64, diam: f64) -> Result<f64> {
    let tol = 1e-12 * diam;
    let on_axis = |z: Complex64| z.re.abs() <= tol;
    let pts: Vec<Complex64> = right.points().collect();
    let n = pts.len();
    let mut cm = ComposedMap::identity();
    // image of the highest axis point reached so far, seen from its left
    let mut top = 0.0;
    let mut i = 0;
    while i + 1 < n {
        if on_axis(pts[i + 1]) {
            top = cm.apply_real(-pts[i + 1].im.powi(2), Side::Left);
            i += 1;
            continue;
        }
        let mut j = i + 1;
        while j < n && !on_axis(pts[j]) {
            j += 1;
        }
        let closes = j < n;
        let last = if closes { j } else { n - 1 };
        let weld = {
            let premap = |z: Complex64| cm.apply(z * z);
            let end_image = closes.then(|| cm.apply_real(-pts[j].im.powi(2), Side::Left));
            weld_curve(CurveSpec {
                base_source: pts[i],
                base_image: top,
                vertices: pts[i + 1..=last].to_vec(),
                premap: &premap,
                end_image,
                max_cap_step: step,
            })?
        };
        top = match weld.end_image() {
            Some(e) => e,
            None => weld.map().apply_real(top, Side::Left),
        };
        cm.extend(weld.map());
        i = last;
    }
    Ok(-top / 2.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn v_closed_form(alpha: f64, length: f64) -> f64 {
        let a = 2.0 * alpha / PI;
        let s = length.powi(2) / (a.powf(a) * (1.0 - a).powf(1.0 - a));
        a * s / 2.0
    }

    #[test]
    fn straight_v() {
        for &alpha in &[0.05 * PI, 0.25 * PI, 0.4 * PI] {
            let slit = PolylineSlit::segment(0.0, Complex64::from_polar(1.3, alpha)).unwrap();
            let e = hcap_symmetric(&slit).unwrap();
            let exact = v_closed_form(alpha, 1.3);
            assert!((e.value - exact).abs() < 5e-4 * exact, "{alpha}: {} vs {exact}", e.value);
        }
    }

    #[test]
    fn vertical_slit_on_axis() {
        let slit = PolylineSlit::segment(0.0, Complex64::new(0.0, 1.0)).unwrap();
        assert!((hcap_symmetric(&slit).unwrap().value - 0.5).abs() < 1e-12);
    }

    #[test]
    fn half_disk_bump() {
        // a polygonal half-annulus arc from i to 2i; the filled hull is the
        // half disk of radius 1 centred at 1.5i seen from outside
        let verts: Vec<Complex64> = (1..=64)
            .map(|k| {
                let th = -PI / 2.0 + PI * k as f64 / 64.0;
                Complex64::new(0.0, 1.5) + Complex64::from_polar(0.5, th)
            })
            .collect();
        let mut all = vec![Complex64::new(0.0, 1.0)];
        all.extend(verts);
        let slit = PolylineSlit::half_plane(0.0, all).unwrap();
        let with_bump = hcap_symmetric(&slit).unwrap().value;
        let stick = hcap_symmetric(&PolylineSlit::segment(0.0, Complex64::new(0.0, 2.0)).unwrap()).unwrap().value;
        // the filled bump contains the stick
        assert!(with_bump > stick + 0.05, "{with_bump} vs {stick}");
    }
}
