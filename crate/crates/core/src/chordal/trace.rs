//! Reconstruct a slit from sampled driving data.
//!
//! Each sample interval becomes one or more straight-slit steps whose
//! capacity is the increment of `b` and whose driving displacement is the
//! increment of `U`. Within an interval `U` is interpolated along
//! `U_k + ΔU·√(τ/Δt)`, the profile that a single straight step produces, so
//! tracing the output of a weld reproduces it exactly.

use num_complex::Complex64;

use super::composed::ComposedMap;
use super::driving::DrivingPath;
use super::elementary::ElementaryMap;
use super::weld::MIN_STEP_CAPACITY;
use crate::geom::{Chart, PolylineSlit};
use crate::{Error, Result};

/// Elementary steps generated by `path`, at most one per `dt_max` of time.
pub fn driving_steps(path: &DrivingPath, dt_max: f64) -> Result<ComposedMap> {
    if !(dt_max > 0.0) {
        return Err(Error::domain(format!("dt_max must be positive, got {dt_max}")));
    }
    let mut map = ComposedMap::identity();
    let samples = path.samples();
    let mut u = samples[0].u;
    for w in samples.windows(2) {
        let (s0, s1) = (w[0], w[1]);
        let db = s1.b - s0.b;
        let du = s1.u - s0.u;
        if db <= 0.0 {
            u = s1.u;
            continue;
        }
        let m = ((s1.t - s0.t) / dt_max).ceil().max(1.0) as usize;
        for j in 1..=m {
            let target = s0.u + du * (j as f64 / m as f64).sqrt();
            let cap = db / m as f64;
            if cap < MIN_STEP_CAPACITY {
                continue;
            }
            let step = ElementaryMap::from_increment(u, cap, target - u)?;
            u = step.tip_image();
            map.push(step);
        }
        u = s1.u;
    }
    Ok(map)
}

/// Polyline through the tips of the elementary steps generated by `path`.
pub fn trace(path: &DrivingPath, dt_max: f64) -> Result<PolylineSlit> {
    let map = driving_steps(path, dt_max)?;
    let base = path.samples()[0].u;
    if map.is_empty() {
        return Ok(PolylineSlit::empty(Chart::HalfPlane, Complex64::new(base, 0.0)));
    }
    let tips: Vec<Complex64> = map
        .steps()
        .iter()
        .enumerate()
        .map(|(k, m)| map.invert_prefix(k, m.tip()))
        .collect();
    PolylineSlit::half_plane(base, tips).map_err(|e| Error::numerical(format!("traced curve is not a simple slit: {e}")))
}
