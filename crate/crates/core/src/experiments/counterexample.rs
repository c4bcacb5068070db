//! A self-similar slit whose union with its mirror image has a capacity
//! that is not linear in the common half-plane parametrization.

use num_complex::Complex64;
use rayon::prelude::*;

use super::{csv, Check, Summary};
use crate::capacity::{hcap_symmetric, DEFAULT_REL_STEP};
use crate::chordal::{weld_detailed, Weld};
use crate::geom::{Hull, PolylineSlit};
use crate::{Error, Result};

/// Vertices of the building block after its first point `3/4·i + ε/2`.
fn block(eps: f64) -> [Complex64; 4] {
    [
        Complex64::new(eps, 1.0),
        Complex64::new(0.5, 1.0),
        Complex64::new(0.5, 1.5),
        Complex64::new(eps, 1.5),
    ]
}

/// `Γ_N = stub ∪ ⋃_{n<N} 2⁻ⁿ·A` together with its reflection in the
/// imaginary axis. The stub is the straight segment from 0 to the first
/// point of the smallest copy.
pub fn build_selfsimilar_slit(eps: f64, n_levels: usize) -> Result<Hull> {
    if !(0.0..0.5).contains(&eps) {
        return Err(Error::domain(format!("ε must lie in [0, 1/2), got {eps}")));
    }
    if n_levels == 0 {
        return Err(Error::domain("at least one level is required"));
    }
    let start = Complex64::new(eps / 2.0, 0.75);
    let mut vertices = vec![start * 0.5f64.powi(n_levels as i32 - 1)];
    for level in (0..n_levels).rev() {
        let scale = 0.5f64.powi(level as i32);
        vertices.extend(block(eps).iter().map(|v| v * scale));
    }
    let right = PolylineSlit::half_plane(0.0, vertices)?;
    let left = right.reflect_imaginary_axis()?;
    Hull::new(vec![right, left])
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CapacityRow {
    pub t: f64,
    pub c: f64,
    pub ratio: f64,
}

/// Rows `(t, c(t), c(t)/t)`.
#[derive(Debug, Clone, PartialEq)]
pub struct CapacityTable {
    pub rows: Vec<CapacityRow>,
}

impl CapacityTable {
    pub fn to_csv(&self) -> String {
        csv("t,c,c_over_t", self.rows.iter().map(|r| vec![r.t, r.c, r.ratio]))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CounterexampleReport {
    pub eps: f64,
    pub n_levels: usize,
    pub table: CapacityTable,
    /// Capacity of `Γ` alone.
    pub total: f64,
    /// `γ(t₁)` is the first point of the largest copy, `γ(t₂)` its second.
    pub t1: f64,
    pub t2: f64,
    pub c1: f64,
    pub c2: f64,
    pub quotient: f64,
    /// `|4·c(t/4)/c(t) − 1|` for consecutive grid entries `t, t/4`.
    pub residuals: Vec<f64>,
}

impl CounterexampleReport {
    pub fn summary(&self) -> Summary {
        let mut checks = Vec::new();
        for (i, &r) in self.residuals.iter().enumerate() {
            checks.push(Check::new(format!("self-similarity level {i}"), r, "<= 0.01", r <= 0.01));
        }
        let monotone = self.table.rows.windows(2).all(|w| (w[0].t < w[1].t) == (w[0].c < w[1].c));
        checks.push(Check::new("c monotone in t", f64::from(u8::from(monotone)), "1", monotone));
        checks.push(Check::new("difference quotient over [t1, t2]", self.quotient, "< 1", self.quotient < 1.0));
        let ratio = self.table.rows.iter().find(|r| r.t == self.total).map_or(f64::NAN, |r| r.ratio);
        checks.push(Check::new("c(T)/T", ratio, "> 1", ratio > 1.0));
        Summary::new("counterexample", checks)
    }
}

/// Capacity of the truncated symmetric hull at each `t`, the difference
/// quotient over the first segment of the largest copy and the
/// self-similarity residuals. The default grid is `T/4ⁿ`, `n = 0..=4`.
pub fn counterexample_capacity_table(eps: f64, n_levels: usize, t_grid: Option<&[f64]>) -> Result<CounterexampleReport> {
    let hull = build_selfsimilar_slit(eps, n_levels)?;
    let right = &hull.slits()[0];
    let weld = weld_detailed(right, DEFAULT_REL_STEP * right.diameter().powi(2))?;
    let total = weld.capacity();
    let grid: Vec<f64> = match t_grid {
        Some(g) => g.to_vec(),
        None => (0..=4).map(|n| total / 4f64.powi(n)).collect(),
    };
    // below the stub the slit no longer resolves the self-similar structure
    let resolved = weld.vertex_capacity(0);
    if let Some(&t) = grid.iter().find(|&&t| !(t > resolved && t <= total)) {
        return Err(Error::domain(format!("t = {t} outside the resolved range ({resolved}, {total}]")));
    }
    let c_of = |t: f64| -> Result<f64> { capacity_at(&weld, t) };
    let c: Vec<f64> = grid.par_iter().map(|&t| c_of(t)).collect::<Result<_>>()?;
    let rows: Vec<CapacityRow> = grid.iter().zip(&c).map(|(&t, &c)| CapacityRow { t, c, ratio: c / t }).collect();

    let i1 = 4 * (n_levels - 1);
    let (t1, t2) = (weld.vertex_capacity(i1), weld.vertex_capacity(i1 + 1));
    let (c1, c2) = (c_of(t1)?, c_of(t2)?);
    let residuals = rows
        .windows(2)
        .filter(|w| (w[1].t * 4.0 - w[0].t).abs() <= 1e-12 * w[0].t)
        .map(|w| (4.0 * w[1].c / w[0].c - 1.0).abs())
        .collect();
    Ok(CounterexampleReport {
        eps,
        n_levels,
        table: CapacityTable { rows },
        total,
        t1,
        t2,
        c1,
        c2,
        quotient: (c2 - c1) / (t2 - t1),
        residuals,
    })
}

fn capacity_at(weld: &Weld, t: f64) -> Result<f64> {
    let cut = weld.prefix(t)?;
    // the pulled back end point may leave the axis by rounding
    let vertices = cut.vertices().iter().map(|v| Complex64::new(v.re.max(0.0), v.im)).collect();
    Ok(hcap_symmetric(&PolylineSlit::half_plane(0.0, vertices)?)?.value)
}
