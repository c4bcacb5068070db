//! Brownian estimator `hcap(A) = lim_{y→∞} y·E^{iy}[Im B_τ]`.
//!
//! Paths are simulated by walk-on-spheres: from `z` jump to a uniform point
//! on the circle of radius `dist(z, A ∪ ℝ)`, which samples the exit point of
//! that disk exactly. A path is absorbed within `1e-4·diam` of `A ∪ ℝ` and
//! projected to the nearest boundary point; it is killed beyond `|z| > 100y`.
//! The bias in the starting height is `O(y⁻²)`, removed by extrapolating
//! from `y = 50·diam` and `y = 100·diam`.
//!
//! The first passage from `x0 + iy` to the line `Im z = h` above the hull
//! has the Poisson kernel `P_{y−h}` as its law. Most of that mass lies far
//! from the hull, so the passage point is drawn from a proposal concentrated
//! near it and the sample is weighted by the density ratio. The expectation
//! is unchanged and the variance grows only like `log² y`.

use std::f64::consts::{PI, TAU};

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::{CapacityEstimate, Method};
use crate::geom::{project_to_segment, Chart, Hull};
use crate::{Error, Result};

const BATCH: u64 = 10_000;

/// Monte Carlo capacity with a one-sigma error. Deterministic in
/// `(hull, n, seed)`, independent of the number of worker threads.
pub fn hcap_mc(hull: &Hull, n: u64, seed: u64) -> Result<CapacityEstimate> {
    let result = |value, err| CapacityEstimate {
        value,
        method: Method::MonteCarlo,
        err,
        n_samples: Some(n),
        seed: Some(seed),
    };
    if hull.is_empty() {
        return Ok(result(0.0, 0.0));
    }
    if hull.chart() != Some(Chart::HalfPlane) {
        return Err(Error::domain("hcap_mc expects a half-plane hull"));
    }
    if n < 1000 {
        return Err(Error::domain(format!("at least 1000 samples are required, got {n}")));
    }
    let segments: Vec<(Complex64, Complex64)> = hull.nonempty_slits().flat_map(|s| s.segments()).collect();
    let diam = hull.diameter();
    let (lo, hi) = segments
        .iter()
        .flat_map(|&(a, b)| [a.re, b.re])
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(l, h), x| (l.min(x), h.max(x)));
    let top = segments.iter().flat_map(|&(a, b)| [a.im, b.im]).fold(0.0, f64::max);
    let sampler = Sampler { segments, x0: 0.5 * (lo + hi), eps: 1e-4 * diam, line: top + 0.25 * diam, spread: diam };

    let n1 = n / 2;
    let (m1, s1) = sampler.run(50.0 * diam, n1, seed, 0);
    let (m2, s2) = sampler.run(100.0 * diam, n - n1, seed, 1 << 32);
    Ok(result((4.0 * m2 - m1) / 3.0, (16.0 * s2 * s2 + s1 * s1).sqrt() / 3.0))
}

struct Sampler {
    segments: Vec<(Complex64, Complex64)>,
    x0: f64,
    eps: f64,
    /// Height of the line where paths are started.
    line: f64,
    /// Scale of the Cauchy proposal for the passage point.
    spread: f64,
}

impl Sampler {
    /// Mean and standard error of `y·Im B_τ` over `n` paths from `x0 + iy`.
    /// Assumes `y` is well above the starting line.
    fn run(&self, y: f64, n: u64, seed: u64, stream0: u64) -> (f64, f64) {
        let batches = n.div_ceil(BATCH);
        let sums: Vec<(f64, f64)> = (0..batches)
            .into_par_iter()
            .map(|b| {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                rng.set_stream(stream0 + b);
                let count = BATCH.min(n - b * BATCH);
                let (mut s, mut s2) = (0.0, 0.0);
                for _ in 0..count {
                    let (r, weight) = self.passage(y, &mut rng);
                    let v = y * weight * self.path(Complex64::new(self.x0 + r, self.line), 100.0 * y, &mut rng);
                    s += v;
                    s2 += v * v;
                }
                (s, s2)
            })
            .collect();
        let (s, s2) = sums.iter().fold((0.0, 0.0), |(a, b), &(x, y)| (a + x, b + y));
        let nf = n as f64;
        let mean = s / nf;
        let var = (s2 / nf - mean * mean).max(0.0) * nf / (nf - 1.0);
        (mean, (var / nf).sqrt())
    }

    /// Offset of the passage point from `x0` and its density ratio
    /// `P_{y−h}(r) / q(r)`. The proposal `q` is an even mixture of a Cauchy
    /// law of scale `c` and a law with density `∝ 1/|r|` on `c ≤ |r| ≤ y−h`,
    /// which is close to the optimal `√(P²·hit probability) ∝ 1/|r|`.
    fn passage(&self, y: f64, rng: &mut ChaCha8Rng) -> (f64, f64) {
        let (s, c) = (y - self.line, self.spread);
        let span = (s / c).ln();
        let r = if rng.random::<bool>() {
            c * (PI * (rng.random::<f64>() - 0.5)).tan()
        } else {
            let sign = if rng.random::<bool>() { 1.0 } else { -1.0 };
            sign * c * (span * rng.random::<f64>()).exp()
        };
        let a = r.abs();
        let cauchy = c / (PI * (r * r + c * c));
        let log = if (c..=s).contains(&a) { 1.0 / (2.0 * a * span) } else { 0.0 };
        let poisson = s / (PI * (r * r + s * s));
        (r, poisson / (0.5 * cauchy + 0.5 * log))
    }

    /// Imaginary part of the exit point, zero on the real axis or when killed.
    fn path(&self, mut z: Complex64, r_kill: f64, rng: &mut ChaCha8Rng) -> f64 {
        loop {
            let (d, nearest) = self.nearest(z);
            if d < self.eps {
                return nearest.im;
            }
            z += Complex64::from_polar(d, TAU * rng.random::<f64>());
            if z.norm() > r_kill {
                return 0.0;
            }
        }
    }

    fn nearest(&self, z: Complex64) -> (f64, Complex64) {
        let mut best = (z.im, Complex64::new(z.re, 0.0));
        for &(a, b) in &self.segments {
            let p = project_to_segment(z, a, b);
            let d = (z - p).norm();
            if d < best.0 {
                best = (d, p);
            }
        }
        best
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::PolylineSlit;

    #[test]
    fn empty_hull_is_exactly_zero() {
        let e = hcap_mc(&Hull::empty(), 1000, 1).unwrap();
        assert_eq!((e.value, e.err), (0.0, 0.0));
    }

    #[test]
    fn vertical_segment_within_three_sigma() {
        let s = PolylineSlit::segment(0.0, Complex64::new(0.0, 1.0)).unwrap();
        let e = hcap_mc(&Hull::single(s), 100_000, 7).unwrap();
        assert!((e.value - 0.5).abs() <= 3.0 * e.err, "{e:?}");
        let again = hcap_mc(&Hull::single(PolylineSlit::segment(0.0, Complex64::new(0.0, 1.0)).unwrap()), 100_000, 7).unwrap();
        assert_eq!(e.value.to_bits(), again.value.to_bits());
    }
}
