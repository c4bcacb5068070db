//! Joint growth of two disjoint slits. A prescribed per-slit capacity `u₁(s)`
//! of the first slit is completed by `v₂(s)` so that the truncated union has
//! capacity `s`; the growth weights `λ_k = α_k²·μ_k` then sum to 1.

use num_complex::Complex64;
use rayon::prelude::*;

use super::{csv, Check, Summary};
use crate::capacity::DEFAULT_REL_STEP;
use crate::chordal::{weld_curve, weld_detailed, weld_through, ComposedMap, CurveSpec, Side, Weld};
use crate::geom::{Chart, Hull, PolylineSlit};
use crate::numeric::bisect;
use crate::{Error, Result};

/// Tolerance of the bisection for `v₂`.
const V2_TOL: f64 = 1e-10;
/// Weld step of the joint parametrization relative to the squared slit
/// diameter; every grid point welds five curves.
const JOINT_REL_STEP: f64 = 1e-2;

/// Joint parametrization sampled on a grid of total capacities `s`.
#[derive(Debug, Clone, PartialEq)]
pub struct JointParam {
    pub s: Vec<f64>,
    /// Capacity of the first slit's truncation taken alone.
    pub u1: Vec<f64>,
    /// Capacity of the second slit's truncation taken alone.
    pub v2: Vec<f64>,
    /// Capacity of the union of both truncations.
    pub total: Vec<f64>,
    /// `α_k = |h_k′(U_k)|`, `h_k` mapping out the image of the other slit.
    pub alpha1: Vec<f64>,
    pub alpha2: Vec<f64>,
    /// Weights per grid interval.
    pub lambda1: Vec<f64>,
    pub lambda2: Vec<f64>,
}

impl JointParam {
    pub fn to_csv(&self) -> String {
        let n = self.s.len();
        csv(
            "s,u1,v2,total,alpha1,alpha2",
            (0..n).map(|i| vec![self.s[i], self.u1[i], self.v2[i], self.total[i], self.alpha1[i], self.alpha2[i]]),
        )
    }

    /// Weights with the midpoint of their interval.
    pub fn lambda_csv(&self) -> String {
        csv(
            "s_mid,lambda1,lambda2,sum",
            self.lambda1
                .iter()
                .zip(&self.lambda2)
                .enumerate()
                .map(|(i, (&l1, &l2))| vec![0.5 * (self.s[i] + self.s[i + 1]), l1, l2, l1 + l2]),
        )
    }

    pub fn max_total_error(&self) -> f64 {
        self.s.iter().zip(&self.total).map(|(s, t)| (s - t).abs()).fold(0.0, f64::max)
    }

    pub fn max_lambda_sum_error(&self) -> f64 {
        self.lambda1.iter().zip(&self.lambda2).map(|(a, b)| (a + b - 1.0).abs()).fold(0.0, f64::max)
    }

    fn checks(&self) -> Vec<Check> {
        let total = self.max_total_error();
        let lambda = self.max_lambda_sum_error();
        let monotone = self.v2.windows(2).all(|w| w[1] > w[0]);
        vec![
            Check::new("max |total - s|", total, "<= 1e-4", total <= 1e-4),
            Check::new("max |lambda1 + lambda2 - 1|", lambda, "<= 2e-3", lambda <= 2e-3),
            Check::new("v2 strictly increasing", f64::from(u8::from(monotone)), "1", monotone),
        ]
    }

    pub fn summary(&self) -> Summary {
        Summary::new("joint-param", self.checks())
    }
}

/// Welds of the two full slits, reused for every grid point.
struct Pair<'a> {
    b: &'a PolylineSlit,
    weld_a: Weld,
    weld_b: Weld,
    step_a: f64,
    step_b: f64,
}

impl<'a> Pair<'a> {
    fn new(a: &'a PolylineSlit, b: &'a PolylineSlit) -> Result<Self> {
        for s in [a, b] {
            if s.chart() != Chart::HalfPlane || s.is_empty() {
                return Err(Error::domain("joint growth needs two nonempty half-plane slits"));
            }
        }
        if a.base() == b.base() {
            return Err(Error::domain("joint growth needs distinct bases"));
        }
        if !Hull::new(vec![a.clone(), b.clone()])?.is_disjoint() {
            return Err(Error::geometry("slits intersect"));
        }
        let step_a = JOINT_REL_STEP * a.diameter().powi(2);
        let step_b = JOINT_REL_STEP * b.diameter().powi(2);
        Ok(Pair { b, weld_a: weld_detailed(a, step_a)?, weld_b: weld_detailed(b, step_b)?, step_a, step_b })
    }
}

/// Normalized map of a possibly empty slit and the image of its tip.
fn map_out(slit: &PolylineSlit, step: f64) -> Result<(ComposedMap, f64)> {
    if slit.is_empty() {
        return Ok((ComposedMap::identity(), slit.base_real()));
    }
    let w = weld_detailed(slit, step)?;
    let u = w.final_driving();
    Ok((w.into_parts().1, u))
}

/// Capacity of `own ∪ other` by welding `own` first, and `|h′(U)|` where
/// `U` is the tip image of `own` under its own map and `h` maps out the
/// image of `other`.
fn weld_pair(own: &PolylineSlit, other: &PolylineSlit, own_step: f64, other_step: f64) -> Result<(f64, f64)> {
    let (cm, u) = map_out(own, own_step)?;
    if other.is_empty() {
        return Ok((cm.total_capacity(), 1.0));
    }
    let h = weld_through(&cm, other, Side::Right, other_step)?;
    Ok((cm.total_capacity() + h.capacity(), h.map().derivative_real(u).abs()))
}

/// One grid point: `v₂` by bisection in the truncation of the second slit,
/// then the union capacity and both boundary derivatives.
fn grid_point(pair: &Pair<'_>, s: f64, u1: f64) -> Result<(f64, f64, f64, f64)> {
    if s == 0.0 {
        return Ok((0.0, 0.0, 1.0, 1.0));
    }
    let a = pair.weld_a.truncate(u1)?;
    let (cm_a, _) = map_out(&a, pair.step_a)?;
    let rest = s - cm_a.total_capacity();
    let image_b = weld_through(&cm_a, pair.b, Side::Right, pair.step_b)?;
    if rest > image_b.capacity() {
        return Err(Error::domain(format!("s = {s} exceeds the capacity of the full hull with u1 = {u1}")));
    }
    // capacity of g_A(B_v) grows strictly with v
    let f = |v: f64| -> Result<f64> {
        let tip = pair.weld_b.point_at(v)?;
        Ok(if v <= 0.0 { -rest } else { image_b.capacity_at(tip, |z| cm_a.apply(z))? - rest })
    };
    let v2 = bisect(f, 0.0, pair.weld_b.capacity(), V2_TOL * pair.weld_b.capacity().max(1.0))
        .ok_or_else(|| Error::numerical(format!("no truncation of the second slit reaches s = {s}")))?;
    let b = pair.weld_b.truncate(v2)?;
    let (total, alpha1) = weld_pair(&a, &b, pair.step_a, pair.step_b)?;
    let (_, alpha2) = weld_pair(&b, &a, pair.step_b, pair.step_a)?;
    Ok((v2, total, alpha1, alpha2))
}

/// Complete a prescribed capacity `u₁(s)` of `s1` by a truncation of `s2`
/// such that the union has capacity `s`, on every grid point.
///
/// `u1` must start at 0 with `s`, increase strictly, and have difference
/// quotients below 1. The weights are `λ₁ = ⟨α₁²⟩·Δu₁/Δs` and
/// `λ₂ = ⟨α₂²⟩·Δv₂/Δs`, with `⟨·⟩` the mean over the interval end points.
pub fn joint_parametrization(s1: &PolylineSlit, s2: &PolylineSlit, u1: &[f64], s_grid: &[f64]) -> Result<JointParam> {
    if u1.len() != s_grid.len() || s_grid.len() < 2 {
        return Err(Error::domain("u1 and s need the same length of at least 2"));
    }
    if s_grid[0] < 0.0 || s_grid.windows(2).any(|w| !(w[1] > w[0])) {
        return Err(Error::domain("s grid must be nonnegative and strictly increasing"));
    }
    if u1[0] < 0.0 || u1[0] > s_grid[0] || (s_grid[0] == 0.0) != (u1[0] == 0.0) {
        return Err(Error::domain("u1 must vanish exactly at s = 0 and stay below s"));
    }
    for (w, s) in u1.windows(2).zip(s_grid.windows(2)) {
        let q = (w[1] - w[0]) / (s[1] - s[0]);
        if !(q > 0.0 && q < 1.0) {
            return Err(Error::domain(format!(
                "u1 difference quotient {q} on [{}, {}] violates 0 < q < 1",
                s[0], s[1]
            )));
        }
    }
    let pair = Pair::new(s1, s2)?;
    if let Some(&last) = u1.last() {
        if last > pair.weld_a.capacity() {
            return Err(Error::domain(format!("u1 = {last} exceeds the capacity of the first slit")));
        }
    }
    let points = s_grid
        .par_iter()
        .zip(u1)
        .map(|(&s, &u)| grid_point(&pair, s, u))
        .collect::<Result<Vec<_>>>()?;
    let v2: Vec<f64> = points.iter().map(|p| p.0).collect();
    let total = points.iter().map(|p| p.1).collect();
    let alpha1: Vec<f64> = points.iter().map(|p| p.2).collect();
    let alpha2: Vec<f64> = points.iter().map(|p| p.3).collect();
    let weights = |alpha: &[f64], cap: &[f64]| -> Vec<f64> {
        (0..s_grid.len() - 1)
            .map(|i| {
                let mean = 0.5 * (alpha[i].powi(2) + alpha[i + 1].powi(2));
                mean * (cap[i + 1] - cap[i]) / (s_grid[i + 1] - s_grid[i])
            })
            .collect()
    };
    Ok(JointParam {
        s: s_grid.to_vec(),
        u1: u1.to_vec(),
        lambda1: weights(&alpha1, u1),
        lambda2: weights(&alpha2, &v2),
        v2,
        total,
        alpha1,
        alpha2,
    })
}

/// Joint parametrization with `u₁` kinked at `s = 1/2`.
#[derive(Debug, Clone, PartialEq)]
pub struct KinkReport {
    pub eps: f64,
    /// Slopes of `u₁` before and after the kink.
    pub slope_before: f64,
    pub slope_after: f64,
    pub joint: JointParam,
    /// `λ₁` on the intervals adjacent to `s = 1/2`, before minus after.
    pub jump: f64,
    /// `Δtotal/Δs` per interval.
    pub total_slopes: Vec<f64>,
}

impl KinkReport {
    pub fn summary(&self) -> Summary {
        let mut checks = self.joint.checks();
        let target = self.slope_before - self.slope_after;
        if self.eps > 0.0 {
            checks.push(Check::new(
                "lambda1 jump at s = 1/2",
                self.jump,
                format!("{target} ± 20%"),
                (self.jump - target).abs() <= 0.2 * target,
            ));
        } else {
            checks.push(Check::new("lambda1 jump at s = 1/2 (control)", self.jump, "|.| <= 1e-3", self.jump.abs() <= 1e-3));
        }
        let slope = self.total_slopes.iter().map(|d| (d - 1.0).abs()).fold(0.0, f64::max);
        checks.push(Check::new("max |total slope - 1|", slope, "<= 1e-3", slope <= 1e-3));
        Summary::new("kinked-reparam", checks)
    }
}

/// Base slope of the kinked `u₁`.
const KINK_SLOPE: f64 = 0.5;
const KINK_GRID: usize = 20;

/// `u₁(s) = (L+ε)·s` up to `s = 1/2` and slope `L−ε` after, with `L = 1/2`,
/// on the grid `s = k/20`, `k = 0..=20`.
pub fn kinked_reparam_demo(s1: &PolylineSlit, s2: &PolylineSlit, eps: f64) -> Result<KinkReport> {
    if !(0.0..KINK_SLOPE).contains(&eps) {
        return Err(Error::domain(format!("ε must lie in [0, {KINK_SLOPE}), got {eps}")));
    }
    let (before, after) = (KINK_SLOPE + eps, KINK_SLOPE - eps);
    let s: Vec<f64> = (0..=KINK_GRID).map(|k| k as f64 / KINK_GRID as f64).collect();
    let u1: Vec<f64> = s.iter().map(|&s| if s <= 0.5 { before * s } else { 0.5 * before + after * (s - 0.5) }).collect();
    let joint = joint_parametrization(s1, s2, &u1, &s)?;
    let mid = KINK_GRID / 2;
    let jump = joint.lambda1[mid - 1] - joint.lambda1[mid];
    let total_slopes = joint.total.windows(2).zip(s.windows(2)).map(|(c, s)| (c[1] - c[0]) / (s[1] - s[0])).collect();
    Ok(KinkReport { eps, slope_before: before, slope_after: after, joint, jump, total_slopes })
}

/// Growth rate of the union capacity as the first slit grows past `t₀`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LambdaRow {
    pub delta: f64,
    pub ratio: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LambdaCheck {
    pub t0: f64,
    /// `|h′(U)|` with `h` mapping out the image of the second slit after the
    /// first is mapped out up to `t₀`.
    pub alpha: f64,
    pub rows: Vec<LambdaRow>,
}

impl LambdaCheck {
    pub fn to_csv(&self) -> String {
        let a2 = self.alpha * self.alpha;
        csv("delta,ratio,alpha_sq", self.rows.iter().map(|r| vec![r.delta, r.ratio, a2]))
    }

    pub fn summary(&self) -> Summary {
        let a2 = self.alpha * self.alpha;
        let last = self.rows.last().map_or(f64::NAN, |r| r.ratio);
        let rel = (last - a2).abs() / a2;
        let mut checks = vec![Check::new("|ratio - alpha^2| / alpha^2 at smallest delta", rel, "<= 0.03", rel <= 0.03)];
        if a2 < 1.0 {
            let max = self.rows.iter().map(|r| r.ratio).fold(f64::NEG_INFINITY, f64::max);
            checks.push(Check::new("max ratio", max, "< 1", max < 1.0));
        }
        Summary::new("lambda-check", checks)
    }
}

/// `(hcap(A_{t₀+δ} ∪ B) − hcap(A_{t₀} ∪ B))/δ` for each `δ`, obtained by
/// welding the piece of `A` between capacities `t₀` and `t₀ + δ` through the
/// map of `A_{t₀} ∪ B`, against `α²`.
pub fn alpha_mu_lambda_check(s1: &PolylineSlit, s2: &PolylineSlit, t0: f64, deltas: &[f64]) -> Result<LambdaCheck> {
    if deltas.is_empty() || deltas.iter().any(|&d| !(d > 0.0)) || deltas.windows(2).any(|w| !(w[1] < w[0])) {
        return Err(Error::domain("δ list must be positive and strictly decreasing"));
    }
    if s1.chart() != Chart::HalfPlane || s1.is_empty() {
        return Err(Error::domain("the growing slit must be a nonempty half-plane slit"));
    }
    let step_a = DEFAULT_REL_STEP * s1.diameter().powi(2);
    let weld_a = weld_detailed(s1, step_a)?;
    if !(t0 >= 0.0 && t0 + deltas[0] <= weld_a.capacity()) {
        return Err(Error::domain(format!("t0 + δ must stay within [0, {}]", weld_a.capacity())));
    }
    if !s2.is_empty() && !Hull::new(vec![s1.clone(), s2.clone()])?.is_disjoint() {
        return Err(Error::geometry("slits intersect"));
    }
    let a0 = weld_a.truncate(t0)?;
    let (cm_a, u_a) = map_out(&a0, step_a)?;
    let (map, u, alpha) = if s2.is_empty() {
        (cm_a, u_a, 1.0)
    } else {
        let step_b = DEFAULT_REL_STEP * s2.diameter().powi(2);
        let h = weld_through(&cm_a, s2, Side::Right, step_b)?;
        let alpha = h.map().derivative_real(u_a).abs();
        let u = h.map().apply_real(u_a, Side::Right);
        let mut g = cm_a;
        g.extend(h.map());
        (g, u, alpha)
    };
    let premap = |z: Complex64| map.apply(z);
    let rows = deltas
        .par_iter()
        .map(|&delta| {
            let (start, vertices) = weld_a.piece(t0, t0 + delta)?;
            let w = weld_curve(CurveSpec {
                base_source: start,
                base_image: u,
                vertices,
                premap: &premap,
                end_image: None,
                max_cap_step: DEFAULT_REL_STEP * delta,
            })?;
            Ok(LambdaRow { delta, ratio: w.capacity() / delta })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(LambdaCheck { t0, alpha, rows })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chordal::weld;

    fn vertical(x: f64, h: f64) -> PolylineSlit {
        PolylineSlit::segment(x, Complex64::new(x, h)).unwrap()
    }

    #[test]
    fn far_apart_vertical_slits_split_linearly() {
        let k = 0.3;
        let s: Vec<f64> = (0..=4).map(|i| 0.1 * i as f64).collect();
        let u1: Vec<f64> = s.iter().map(|s| k * s).collect();
        let j = joint_parametrization(&vertical(-5.0, 1.0), &vertical(5.0, 1.0), &u1, &s).unwrap();
        assert!(j.max_total_error() <= 1e-4, "{:?}", j.total);
        // at distance 10 the interaction is of order 1e-3
        assert!((j.lambda1[0] - k).abs() < 2e-3 && (j.lambda2[0] - (1.0 - k)).abs() < 2e-3, "{j:?}");
        assert!(j.summary().pass, "{}", j.summary().to_json());
    }

    #[test]
    fn single_slit_parametrization_is_rejected() {
        let s = [0.0, 0.1, 0.2];
        let err = joint_parametrization(&vertical(-5.0, 1.0), &vertical(5.0, 1.0), &s, &s);
        assert!(err.is_err());
    }

    #[test]
    fn lambda_check_without_other_slit() {
        let e = PolylineSlit::empty(Chart::HalfPlane, Complex64::new(3.0, 0.0));
        let r = alpha_mu_lambda_check(&vertical(0.0, 0.5), &e, 0.0, &[1e-2, 1e-3]).unwrap();
        assert_eq!(r.alpha, 1.0);
        assert!(r.rows.iter().all(|row| (row.ratio - 1.0).abs() < 1e-9), "{r:?}");
    }

    #[test]
    fn weld_of_map_out_tip() {
        let (cm, u) = map_out(&vertical(0.5, 1.0), 1e-3).unwrap();
        assert!((cm.total_capacity() - 0.5).abs() < 1e-12 && (u - 0.5).abs() < 1e-12);
        assert_eq!(weld(&vertical(0.5, 1.0), 1e-3).unwrap().1.len(), cm.len());
    }
}
