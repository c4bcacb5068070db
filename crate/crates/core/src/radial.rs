//! Radial Loewner evolution in the unit disk and the logarithmic mapping
//! radius of boundary slits.
//!
//! The mapping radius is computed in the half-plane: the Cayley transform
//! `m(z) = i(1 − z)/(1 + z)` sends the base at 1 to 0 and 0 to `i`. With
//! `g_H` the normalized map of the image hull, the disk map fixing 0 is
//! `g_H ∘ m` followed by the automorphism sending `g_H(i)` to 0, so
//! `lmr = log(|g_H′(i)| / Im g_H(i))`.

use std::fmt::Write as _;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::capacity::DEFAULT_REL_STEP;
use crate::chordal::{integrate, weld_detailed, weld_union, ComposedMap, SlitInput};
use crate::geom::{log_transform, segments_intersect, Chart, Hull, PolylineSlit};
use crate::numeric::fmt12;
use crate::{Error, Result};

/// One sample of a radial driving path.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RadialSample {
    pub t: f64,
    /// Driving point on the unit circle.
    pub xi: Complex64,
    /// Cumulative logarithmic mapping radius.
    pub c: f64,
}

/// Sampled `(t, ξ(t), c(t))`. Between samples `ξ` moves along the shorter
/// arc at constant speed and `c` is linear.
#[derive(Debug, Clone, PartialEq)]
pub struct RadialDrivingPath {
    samples: Vec<RadialSample>,
}

impl RadialDrivingPath {
    pub fn new(samples: Vec<RadialSample>) -> Result<Self> {
        let first = samples.first().ok_or_else(|| Error::domain("radial path without samples"))?;
        if first.t != 0.0 || first.c != 0.0 {
            return Err(Error::domain("radial path must start at t = 0 with c = 0"));
        }
        for s in &samples {
            if !((s.xi.norm() - 1.0).abs() <= 1e-12 && s.t.is_finite() && s.c.is_finite()) {
                return Err(Error::domain(format!("driving point {} is not on the unit circle", s.xi)));
            }
        }
        for w in samples.windows(2) {
            if !(w[1].t > w[0].t) {
                return Err(Error::domain("radial path times must increase strictly"));
            }
            if w[1].c < w[0].c {
                return Err(Error::domain("mapping radius must be non-decreasing"));
            }
        }
        Ok(RadialDrivingPath { samples })
    }

    /// Uniform samples of `ξ(t) = exp(iθ(t))` on `[0, t_end]` with `c(t) = t`.
    pub fn from_angle_fn(t_end: f64, n: usize, theta: impl Fn(f64) -> f64) -> Result<Self> {
        Self::new(
            (0..=n)
                .map(|k| {
                    let t = t_end * k as f64 / n as f64;
                    RadialSample { t, xi: Complex64::from_polar(1.0, theta(t)), c: t }
                })
                .collect(),
        )
    }

    pub fn samples(&self) -> &[RadialSample] {
        &self.samples
    }

    pub fn final_lmr(&self) -> f64 {
        self.samples.last().map_or(0.0, |s| s.c)
    }
}

/// Reject steps closer than this to the driving point.
const GUARD: f64 = 1e-6;

/// `g_T(z)` for `∂ₜg = ċ(t)·g·(ξ(t) + g)/(ξ(t) − g)`.
pub fn radial_solve_forward(path: &RadialDrivingPath, z: Complex64) -> Result<Complex64> {
    if !(z.norm() < 1.0) {
        return Err(Error::domain(format!("starting point {z} is not in the open unit disk")));
    }
    let mut g = z;
    for w in path.samples().windows(2) {
        let (s0, s1) = (w[0], w[1]);
        let rate = (s1.c - s0.c) / (s1.t - s0.t);
        if rate == 0.0 {
            continue;
        }
        let theta0 = s0.xi.arg();
        let dtheta = (s1.xi / s0.xi).arg();
        let rhs = |t: f64, g: Complex64| {
            let xi = Complex64::from_polar(1.0, theta0 + dtheta * (t - s0.t) / (s1.t - s0.t));
            let d = xi - g;
            (d.norm() >= GUARD).then(|| g * (xi + g) / d * rate)
        };
        g = integrate(rhs, g, s0.t, s1.t, 1e-9)
            .map_err(|_| Error::numerical(format!("point {z} is swallowed before t = {}", s1.t)))?;
    }
    Ok(g)
}

/// Logarithmic mapping radius with a discretization error.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LmrValue {
    pub value: f64,
    pub err: f64,
}

/// `tan(w/2)`, which equals the Cayley transform of `exp(iw)`.
fn tan_half(w: Complex64) -> Complex64 {
    (w * 0.5).tan()
}

fn lmr_from_map(map: &ComposedMap) -> Result<f64> {
    let (g, d) = map.apply_with_derivative(Complex64::i())?;
    Ok((d.norm() / g.im).ln())
}

/// Logarithmic mapping radius of a boundary slit of the unit disk.
pub fn lmr_of_boundary_slit(disk_slit: &PolylineSlit) -> Result<LmrValue> {
    lmr_of_hull(&Hull::single(disk_slit.clone()))
}

/// Logarithmic mapping radius of a disk hull of one or two slits.
pub fn lmr_of_hull(hull: &Hull) -> Result<LmrValue> {
    if hull.is_empty() {
        return Ok(LmrValue { value: 0.0, err: 0.0 });
    }
    if hull.chart() != Some(Chart::Disk) {
        return Err(Error::domain("lmr expects a disk hull"));
    }
    if !hull.is_disjoint() {
        return Err(Error::geometry("slits of the hull intersect"));
    }
    let slits: Vec<&PolylineSlit> = hull.nonempty_slits().collect();
    let origin = Complex64::new(0.0, 0.0);
    for s in &slits {
        if s.segments().any(|(a, b)| segments_intersect(a, b, origin, origin)) {
            return Err(Error::domain("slit passes through the origin"));
        }
    }
    // rotate the first base to 1; the mapping radius is rotation invariant
    let rot = slits[0].base().conj();
    let cayley = move |z: Complex64| {
        let u = z * rot;
        Ok(Complex64::i() * (1.0 - u) / (1.0 + u))
    };
    let inputs = |s: &PolylineSlit| -> Result<SlitInput> {
        let zeta = s.base() * rot;
        if (zeta + 1.0).norm() < 1e-12 {
            return Err(Error::domain("slit bases must not be antipodal"));
        }
        // the Cayley image of e^{iθ} is tan(θ/2); angles to the circle are kept
        let d = (s.vertices()[0] - s.base()) * rot;
        Ok(SlitInput {
            base_source: s.base(),
            base_image: (zeta.arg() / 2.0).tan(),
            vertices: s.vertices().to_vec(),
            angle: (d / (Complex64::i() * zeta)).arg(),
        })
    };
    // the Cayley picture has size comparable to the disk diameter of the hull
    let scale = hull.diameter().powi(2);
    let at = |step: f64| -> Result<f64> {
        let ins = slits.iter().map(|s| inputs(s)).collect::<Result<Vec<_>>>()?;
        lmr_from_map(&weld_union(ins, &cayley, step)?)
    };
    let coarse = at(DEFAULT_REL_STEP * scale)?;
    let fine = at(0.5 * DEFAULT_REL_STEP * scale)?;
    Ok(LmrValue { value: fine, err: (fine - coarse).abs() })
}

/// One row of the bridge comparison.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BridgeRow {
    pub t: f64,
    pub hcap: f64,
    pub lmr: f64,
    pub ratio: f64,
}

/// Compare `hcap` of the chordal hull `A_t = −i·log K_t` with twice the
/// mapping radius of `K_t`, where `K_t` truncates each slit of `disk_hull`
/// to own half-plane capacity `t` in the logarithmic picture.
///
/// Both quantities are computed on the same curve: the chordal polyline
/// `A_t` directly and `K_t = exp(i·A_t)` through `tan(w/2)`.
pub fn bridge_check(disk_hull: &Hull, t_list: &[f64]) -> Result<Vec<BridgeRow>> {
    if disk_hull.chart() != Some(Chart::Disk) {
        return Err(Error::domain("bridge_check expects a disk hull"));
    }
    if t_list.iter().any(|&t| !(t > 0.0)) || t_list.windows(2).any(|w| !(w[1] < w[0])) {
        return Err(Error::domain("capacities must be positive and strictly decreasing"));
    }
    let base = disk_hull.slits().first().map(|s| s.base());
    if disk_hull.slits().iter().any(|s| Some(s.base()) != base) || base != Some(Complex64::new(1.0, 0.0)) {
        return Err(Error::domain("bridge_check expects all slits attached at 1"));
    }
    let chordal: Vec<PolylineSlit> = disk_hull.nonempty_slits().map(log_transform).collect::<Result<_>>()?;
    let welds = chordal
        .iter()
        .map(|s| weld_detailed(s, DEFAULT_REL_STEP * s.diameter().powi(2)))
        .collect::<Result<Vec<_>>>()?;
    t_list
        .par_iter()
        .map(|&t| {
            let parts = welds.iter().map(|w| w.truncate(t)).collect::<Result<Vec<_>>>()?;
            let parts: Vec<&PolylineSlit> = parts.iter().filter(|p| !p.is_empty()).collect();
            let inputs = || parts.iter().map(|p| SlitInput::chordal(p)).collect::<Vec<_>>();
            let step = DEFAULT_REL_STEP * t;
            let identity = |z: Complex64| Ok(z);
            let hcap = weld_union(inputs(), &identity, step)?.total_capacity();
            let tan = |z: Complex64| Ok(tan_half(z));
            let lmr = lmr_from_map(&weld_union(inputs(), &tan, step)?)?;
            Ok(BridgeRow { t, hcap, lmr, ratio: hcap / (2.0 * lmr) })
        })
        .collect()
}

/// CSV with header `t,hcap,lmr,ratio`.
pub fn bridge_csv(rows: &[BridgeRow]) -> String {
    let mut out = String::from("t,hcap,lmr,ratio\n");
    for r in rows {
        let _ = writeln!(out, "{},{},{},{}", fmt12(r.t), fmt12(r.hcap), fmt12(r.lmr), fmt12(r.ratio));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn radial_slit(s: f64) -> PolylineSlit {
        PolylineSlit::disk(Complex64::new(1.0, 0.0), vec![Complex64::new(s, 0.0)]).unwrap()
    }

    #[test]
    fn radial_slit_closed_form() {
        for &s in &[0.5f64, 0.3, 0.8] {
            // the radial slit map has g′(0) = (1 + s)²/(4s)
            let exact = ((1.0 + s) * (1.0 + s) / (4.0 * s)).ln();
            let v = lmr_of_boundary_slit(&radial_slit(s)).unwrap();
            assert!((v.value - exact).abs() < 1e-9, "{s}: {} vs {exact}", v.value);
        }
    }

    #[test]
    fn lmr_grows_with_the_slit() {
        let a = lmr_of_boundary_slit(&radial_slit(0.5)).unwrap().value;
        let b = lmr_of_boundary_slit(&radial_slit(0.4)).unwrap().value;
        assert!(a < b);
        let empty = PolylineSlit::empty(Chart::Disk, Complex64::new(1.0, 0.0));
        assert_eq!(lmr_of_boundary_slit(&empty).unwrap().value, 0.0);
    }

    #[test]
    fn lmr_is_rotation_invariant() {
        let rot = Complex64::from_polar(1.0, 2.0);
        let s = PolylineSlit::disk(rot, vec![rot * Complex64::new(0.6, 0.1), rot * Complex64::new(0.5, -0.1)]).unwrap();
        let t = PolylineSlit::disk(Complex64::new(1.0, 0.0), vec![Complex64::new(0.6, 0.1), Complex64::new(0.5, -0.1)]).unwrap();
        let (a, b) = (lmr_of_boundary_slit(&s).unwrap().value, lmr_of_boundary_slit(&t).unwrap().value);
        assert!((a - b).abs() < 1e-10);
    }

    #[test]
    fn forward_flow_fixes_origin_and_scales_derivative() {
        let path = RadialDrivingPath::from_angle_fn(0.7, 10, |t| 0.3 * t).unwrap();
        assert_eq!(radial_solve_forward(&path, Complex64::new(0.0, 0.0)).unwrap(), Complex64::new(0.0, 0.0));
        let h = 1e-5;
        let d = (radial_solve_forward(&path, Complex64::new(h, 0.0)).unwrap()
            - radial_solve_forward(&path, Complex64::new(-h, 0.0)).unwrap())
            / (2.0 * h);
        assert!((d.norm() - 0.7f64.exp()).abs() < 1e-5 * 0.7f64.exp());
        let g = radial_solve_forward(&path, Complex64::new(0.3, 0.4)).unwrap();
        assert!(g.norm() < 1.0);
    }

    #[test]
    fn constant_driving_keeps_negative_axis_real() {
        let path = RadialDrivingPath::from_angle_fn(0.5, 5, |_| 0.0).unwrap();
        let g = radial_solve_forward(&path, Complex64::new(-0.4, 0.0)).unwrap();
        assert!(g.im.abs() < 1e-14 && g.re < 0.0);
    }

    #[test]
    fn bridge_ratio_for_radial_slit() {
        let hull = Hull::single(radial_slit(0.5));
        let rows = bridge_check(&hull, &[1e-1, 1e-2, 1e-3]).unwrap();
        let last = rows.last().unwrap();
        assert!((last.ratio - 1.0).abs() < 0.02, "{rows:?}");
        assert!((last.hcap - 1e-3).abs() < 1e-12);
        let _ = PI;
    }
}
