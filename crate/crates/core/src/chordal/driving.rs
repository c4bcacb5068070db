use std::fmt::Write as _;

use crate::numeric::fmt12;
use crate::{Error, Result};

/// One sample of a chordal driving path.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DrivingSample {
    pub t: f64,
    /// Driving position.
    pub u: f64,
    /// Cumulative half-plane capacity.
    pub b: f64,
}

/// Sampled `(t, U(t), b(t))`; `t` strictly increasing from 0, `b`
/// non-decreasing from 0.
#[derive(Debug, Clone, PartialEq)]
pub struct DrivingPath {
    samples: Vec<DrivingSample>,
}

impl DrivingPath {
    pub fn new(samples: Vec<DrivingSample>) -> Result<Self> {
        let first = samples.first().ok_or_else(|| Error::domain("driving path without samples"))?;
        if first.t != 0.0 || first.b != 0.0 {
            return Err(Error::domain("driving path must start at t = 0 with b = 0"));
        }
        for s in &samples {
            if !(s.t.is_finite() && s.u.is_finite() && s.b.is_finite()) {
                return Err(Error::domain("non-finite driving sample"));
            }
        }
        for w in samples.windows(2) {
            if !(w[1].t > w[0].t) {
                return Err(Error::domain("driving path times must increase strictly"));
            }
            if w[1].b < w[0].b {
                return Err(Error::domain("driving path capacity must be non-decreasing"));
            }
        }
        Ok(DrivingPath { samples })
    }

    /// Path with `b(t) = t` from parallel time and driving arrays.
    pub fn capacity_parametrized(times: &[f64], drive: &[f64]) -> Result<Self> {
        if times.len() != drive.len() {
            return Err(Error::domain("time and driving arrays differ in length"));
        }
        Self::new(times.iter().zip(drive).map(|(&t, &u)| DrivingSample { t, u, b: t }).collect())
    }

    /// Uniformly sampled `U(t)` on `[0, t_end]` with `b(t) = t`.
    pub fn from_fn(t_end: f64, n: usize, u: impl Fn(f64) -> f64) -> Result<Self> {
        let times: Vec<f64> = (0..=n).map(|k| t_end * k as f64 / n as f64).collect();
        let drive: Vec<f64> = times.iter().map(|&t| u(t)).collect();
        Self::capacity_parametrized(&times, &drive)
    }

    pub fn samples(&self) -> &[DrivingSample] {
        &self.samples
    }

    pub fn final_time(&self) -> f64 {
        self.samples.last().map_or(0.0, |s| s.t)
    }

    pub fn total_capacity(&self) -> f64 {
        self.samples.last().map_or(0.0, |s| s.b)
    }

    /// Index `k` with `t_k ≤ t ≤ t_{k+1}`, clamped to the sampled range.
    fn bracket(&self, t: f64) -> usize {
        let n = self.samples.len();
        if n < 2 {
            return 0;
        }
        let k = self.samples.partition_point(|s| s.t <= t);
        k.saturating_sub(1).min(n - 2)
    }

    /// Piecewise-linear driving position.
    pub fn u_at(&self, t: f64) -> f64 {
        self.interp(t, |s| s.u)
    }

    /// Piecewise-linear cumulative capacity.
    pub fn b_at(&self, t: f64) -> f64 {
        self.interp(t, |s| s.b)
    }

    /// Slope of `b` on the sample interval containing `t`.
    pub fn b_rate(&self, t: f64) -> f64 {
        if self.samples.len() < 2 {
            return 0.0;
        }
        let k = self.bracket(t);
        let (a, b) = (self.samples[k], self.samples[k + 1]);
        (b.b - a.b) / (b.t - a.t)
    }

    fn interp(&self, t: f64, f: impl Fn(&DrivingSample) -> f64) -> f64 {
        if self.samples.len() < 2 {
            return f(&self.samples[0]);
        }
        let k = self.bracket(t);
        let (a, b) = (&self.samples[k], &self.samples[k + 1]);
        let lam = ((t - a.t) / (b.t - a.t)).clamp(0.0, 1.0);
        f(a) + (f(b) - f(a)) * lam
    }

    /// CSV with header `t,U,b`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("t,U,b\n");
        for s in &self.samples {
            let _ = writeln!(out, "{},{},{}", fmt12(s.t), fmt12(s.u), fmt12(s.b));
        }
        out
    }

    /// Parse the `t,U,b` CSV; lines starting with `#` are ignored.
    pub fn from_csv(text: &str) -> Result<Self> {
        let mut lines = text.lines().filter(|l| !l.trim().is_empty() && !l.starts_with('#'));
        match lines.next() {
            Some(h) if h.trim() == "t,U,b" => {}
            other => return Err(Error::Parse(format!("expected header `t,U,b`, got {other:?}"))),
        }
        let mut samples = Vec::new();
        for line in lines {
            let vals: Vec<f64> = line
                .split(',')
                .map(|v| v.trim().parse::<f64>().map_err(|_| Error::Parse(format!("bad number in `{line}`"))))
                .collect::<Result<_>>()?;
            if vals.len() != 3 {
                return Err(Error::Parse(format!("expected three columns in `{line}`")));
            }
            samples.push(DrivingSample { t: vals[0], u: vals[1], b: vals[2] });
        }
        Self::new(samples)
    }
}
