//! Direct integration of the chordal Loewner equation
//! `∂ₜg = ḃ(t) / (g − U(t))` and its two-slit variant.

use num_complex::Complex64;

use super::driving::DrivingPath;
use crate::{Error, Result};

/// Points closer than this to a driving point are swallowed.
const SWALLOW_DISTANCE: f64 = 1e-12;

/// Adaptive RK4 with step doubling on `[t0, t1]`.
///
/// A step is accepted when the two half steps agree with the full step to
/// `tol·max(1, |g|)`. `rhs` returns `None` at points it refuses to evaluate,
/// which rejects the step.
pub(crate) fn integrate<F>(mut rhs: F, g0: Complex64, t0: f64, t1: f64, tol: f64) -> Result<Complex64>
where
    F: FnMut(f64, Complex64) -> Option<Complex64>,
{
    let span = t1 - t0;
    if span <= 0.0 {
        return Ok(g0);
    }
    let h_min = span * 1e-14;
    let mut rk4 = |t: f64, g: Complex64, h: f64| -> Option<Complex64> {
        let k1 = rhs(t, g)?;
        let k2 = rhs(t + 0.5 * h, g + k1 * (0.5 * h))?;
        let k3 = rhs(t + 0.5 * h, g + k2 * (0.5 * h))?;
        let k4 = rhs(t + h, g + k3 * h)?;
        Some(g + (k1 + k2 * 2.0 + k3 * 2.0 + k4) * (h / 6.0))
    };
    let mut t = t0;
    let mut g = g0;
    let mut h = span;
    while t < t1 {
        h = h.min(t1 - t);
        let trial = rk4(t, g, h).and_then(|full| {
            let mid = rk4(t, g, 0.5 * h)?;
            let half = rk4(t + 0.5 * h, mid, 0.5 * h)?;
            Some((full, half))
        });
        match trial {
            Some((full, half)) if (full - half).norm() <= tol * g.norm().max(1.0) => {
                g = half + (half - full) / 15.0;
                t += h;
                h *= 2.0;
            }
            _ => {
                h *= 0.5;
                if h < h_min {
                    return Err(Error::numerical(format!("step size underflow at t = {t}, g = {g}")));
                }
            }
        }
    }
    Ok(g)
}

/// `g_t(z)` at the final time of `path`.
pub fn solve_forward(path: &DrivingPath, z: Complex64) -> Result<Complex64> {
    if !(z.im > 0.0) {
        return Err(Error::domain(format!("starting point {z} is not in the upper half-plane")));
    }
    let mut g = z;
    for w in path.samples().windows(2) {
        let (s0, s1) = (w[0], w[1]);
        let rate = (s1.b - s0.b) / (s1.t - s0.t);
        if rate == 0.0 {
            continue;
        }
        let slope = (s1.u - s0.u) / (s1.t - s0.t);
        let rhs = |t: f64, g: Complex64| {
            let d = g - (s0.u + slope * (t - s0.t));
            (d.norm() > SWALLOW_DISTANCE).then(|| rate / d)
        };
        g = integrate(rhs, g, s0.t, s1.t, 1e-12)
            .map_err(|_| Error::numerical(format!("point {z} is swallowed before t = {}", s1.t)))?;
    }
    Ok(g)
}

/// `g_t(z)` for `∂ₜg = Σₖ λₖ(t) / (g − Uₖ(t))`.
///
/// Both paths must share sample times; `weights[k]` holds `λₖ` at those
/// times and is interpolated linearly. The `b` columns are ignored.
pub fn multi_solve_forward(paths: [&DrivingPath; 2], weights: [&[f64]; 2], z: Complex64) -> Result<Complex64> {
    if !(z.im > 0.0) {
        return Err(Error::domain(format!("starting point {z} is not in the upper half-plane")));
    }
    let (p1, p2) = (paths[0].samples(), paths[1].samples());
    if p1.len() != p2.len() || p1.iter().zip(p2).any(|(a, b)| a.t != b.t) {
        return Err(Error::domain("driving paths must share sample times"));
    }
    if weights[0].len() != p1.len() || weights[1].len() != p1.len() {
        return Err(Error::domain("one weight per sample is required"));
    }
    if weights.iter().any(|w| w.iter().any(|&x| !(x >= 0.0 && x.is_finite()))) {
        return Err(Error::domain("weights must be finite and non-negative"));
    }
    for (a, b) in p1.iter().zip(p2) {
        if (a.u - b.u).abs() <= SWALLOW_DISTANCE {
            return Err(Error::domain(format!("driving functions collide at t = {}", a.t)));
        }
    }
    let mut g = z;
    for k in 0..p1.len() - 1 {
        let (t0, t1) = (p1[k].t, p1[k + 1].t);
        if (p1[k].u - p2[k].u).signum() != (p1[k + 1].u - p2[k + 1].u).signum() {
            return Err(Error::domain(format!("driving functions cross on [{t0}, {t1}]")));
        }
        let lerp = |a: f64, b: f64, t: f64| a + (b - a) * (t - t0) / (t1 - t0);
        let rhs = |t: f64, g: Complex64| {
            let mut sum = Complex64::new(0.0, 0.0);
            for (p, w) in [(p1, weights[0]), (p2, weights[1])] {
                let d = g - lerp(p[k].u, p[k + 1].u, t);
                if d.norm() <= SWALLOW_DISTANCE {
                    return None;
                }
                sum += lerp(w[k], w[k + 1], t) / d;
            }
            Some(sum)
        };
        g = integrate(rhs, g, t0, t1, 1e-12)
            .map_err(|_| Error::numerical(format!("point {z} is swallowed before t = {t1}")))?;
    }
    Ok(g)
}
