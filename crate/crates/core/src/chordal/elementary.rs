//! Single-slit maps: the hydrodynamically normalized conformal map removing
//! one straight slit from the upper half-plane.
//!
//! The inverse of the map for a slit of capacity `δ` at angle `aπ` attached at
//! the origin is `F(w) = (w − p)^(1−a) (w − q)^a` with prevertices
//! `p = −a·s`, `q = (1−a)·s` and `s = √(2δ / (a(1−a)))`. The two sides of the
//! base go to `p` and `q`, the tip goes to `(1 − 2a)·s`. For `a = 1/2` this is
//! the vertical slit map `g(z) = √(z² + 2δ)`.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::numeric::{arg_upper, log_upper, safeguarded_newton, sqrt_upper};
use crate::{Error, Result};

/// Modulus of the tip of a straight slit at angle `aπ` with unit capacity.
pub fn unit_tip_modulus(a: f64) -> f64 {
    unit_tip_modulus_sq(a).sqrt()
}

/// Squared tip modulus `2·a^(2a−1)·(1−a)^(1−2a)`; exactly 2 at `a = 1/2`.
pub fn unit_tip_modulus_sq(a: f64) -> f64 {
    2.0 * a.powf(2.0 * a - 1.0) * (1.0 - a).powf(1.0 - 2.0 * a)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SlitKind {
    Vertical,
    Tilted,
}

/// Side of a boundary point at which a slit is attached.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

/// One zipper step.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ElementaryMap {
    kind: SlitKind,
    base: f64,
    capacity: f64,
    angle: f64,
}

impl ElementaryMap {
    pub fn vertical(base: f64, capacity: f64) -> Result<Self> {
        check_capacity(capacity)?;
        Ok(ElementaryMap { kind: SlitKind::Vertical, base, capacity, angle: 0.5 })
    }

    /// Straight slit at angle `angle·π`, `angle ∈ (0, 1)`.
    pub fn tilted(base: f64, capacity: f64, angle: f64) -> Result<Self> {
        check_capacity(capacity)?;
        if !(angle > 0.0 && angle < 1.0) {
            return Err(Error::domain(format!("slit angle fraction {angle} outside (0, 1)")));
        }
        Ok(ElementaryMap { kind: SlitKind::Tilted, base, capacity, angle })
    }

    /// The straight slit from the real point `base` to `tip`.
    pub fn from_chord(base: f64, tip: Complex64) -> Result<Self> {
        let d = tip - base;
        if !(d.im > 0.0) {
            return Err(Error::numerical(format!("chord tip {tip} is not above the real axis")));
        }
        let a = (d.im.atan2(d.re) / PI).clamp(1e-9, 1.0 - 1e-9);
        let cap = (d.norm() / unit_tip_modulus(a)).powi(2);
        if d.re == 0.0 {
            Self::vertical(base, cap)
        } else {
            Self::tilted(base, cap, a)
        }
    }

    /// The straight slit of capacity `capacity` whose tip is sent to
    /// `base + displacement`.
    pub fn from_increment(base: f64, capacity: f64, displacement: f64) -> Result<Self> {
        check_capacity(capacity)?;
        if displacement == 0.0 {
            return Self::vertical(base, capacity);
        }
        // displacement = (1 − 2a)·√(2δ/(a(1−a))); with x = 1 − 2a this is 2x/√(1−x²)·√(2δ)
        let r = displacement / (2.0 * capacity).sqrt();
        let x = r / (r * r + 4.0).sqrt();
        let a = ((1.0 - x) / 2.0).clamp(1e-12, 1.0 - 1e-12);
        Self::tilted(base, capacity, a)
    }

    pub fn kind(&self) -> SlitKind {
        self.kind
    }

    pub fn base(&self) -> f64 {
        self.base
    }

    pub fn capacity(&self) -> f64 {
        self.capacity
    }

    /// Angle as a fraction of π.
    pub fn angle(&self) -> f64 {
        self.angle
    }

    fn scale(&self) -> f64 {
        let a = self.angle;
        (2.0 * self.capacity / (a * (1.0 - a))).sqrt()
    }

    /// Prevertices of the two sides of the base, relative to the base.
    pub fn prevertices(&self) -> (f64, f64) {
        let s = self.scale();
        (-self.angle * s, (1.0 - self.angle) * s)
    }

    /// Image of the tip minus the base: the driving increment of this step.
    pub fn driving_increment(&self) -> f64 {
        match self.kind {
            SlitKind::Vertical => 0.0,
            SlitKind::Tilted => (1.0 - 2.0 * self.angle) * self.scale(),
        }
    }

    /// Real image of the tip.
    pub fn tip_image(&self) -> f64 {
        self.base + self.driving_increment()
    }

    /// Tip of the removed slit.
    pub fn tip(&self) -> Complex64 {
        let r = self.capacity.sqrt() * unit_tip_modulus(self.angle);
        self.base + Complex64::from_polar(r, PI * self.angle)
    }

    fn psi(&self, w0: Complex64) -> (Complex64, Complex64) {
        let (p, q) = self.prevertices();
        let a = self.angle;
        let val = log_upper(w0 - p) * (1.0 - a) + log_upper(w0 - q) * a;
        let der = (1.0 - a) / (w0 - p) + a / (w0 - q);
        (val, der)
    }

    /// Inverse map: closed upper half-plane onto the slit half-plane.
    pub fn invert(&self, w: Complex64) -> Complex64 {
        let w0 = w - self.base;
        match self.kind {
            SlitKind::Vertical => self.base + sqrt_upper(w0 * w0 - 2.0 * self.capacity, w0.re),
            SlitKind::Tilted => self.base + self.psi(w0).0.exp(),
        }
    }

    /// The map itself, for `z` in the half-plane off the slit.
    pub fn apply(&self, z: Complex64) -> Result<Complex64> {
        let z0 = z - self.base;
        match self.kind {
            SlitKind::Vertical => {
                let h = (2.0 * self.capacity).sqrt();
                if z0.re == 0.0 && z0.im > 0.0 && z0.im < h {
                    return Err(Error::domain(format!("point {z} lies on the removed slit")));
                }
                Ok(self.base + sqrt_upper(z0 * z0 + 2.0 * self.capacity, z0.re))
            }
            SlitKind::Tilted => Ok(self.base + self.preimage(z0)?),
        }
    }

    /// The map together with its derivative.
    pub fn apply_with_derivative(&self, z: Complex64) -> Result<(Complex64, Complex64)> {
        let z0 = z - self.base;
        let g = self.apply(z)?;
        let w0 = g - self.base;
        let d = match self.kind {
            SlitKind::Vertical => z0 / w0,
            SlitKind::Tilted => 1.0 / (z0 * self.psi(w0).1),
        };
        Ok((g, d))
    }

    /// Image of a real boundary point. At the base itself `side` selects the
    /// prevertex of the left or the right side of the slit.
    pub fn apply_real(&self, x: f64, side: Side) -> f64 {
        let x0 = x - self.base;
        let (p, q) = self.prevertices();
        if x0 == 0.0 {
            return self.base
                + match side {
                    Side::Left => p,
                    Side::Right => q,
                };
        }
        if self.kind == SlitKind::Vertical {
            return self.base + x0.signum() * (x0 * x0 + 2.0 * self.capacity).sqrt();
        }
        let a = self.angle;
        let s = q - p;
        let w0 = if x0 > 0.0 {
            let target = x0.ln();
            safeguarded_newton(
                |w| {
                    let (dp, dq) = (w - p, w - q);
                    ((1.0 - a) * dp.ln() + a * dq.ln() - target, (1.0 - a) / dp + a / dq)
                },
                q,
                q + x0 + s,
                1e-16,
            )
        } else {
            let target = (-x0).ln();
            safeguarded_newton(
                |w| {
                    let (dp, dq) = (p - w, q - w);
                    ((1.0 - a) * dp.ln() + a * dq.ln() - target, -(1.0 - a) / dp - a / dq)
                },
                p + x0 - s,
                p,
                1e-16,
            )
        };
        // the bracket always contains a root; the fallback is unreachable
        self.base + w0.unwrap_or(if x0 > 0.0 { q } else { p })
    }

    /// Derivative of the map at a real point away from the base.
    pub fn derivative_real(&self, x: f64) -> f64 {
        let x0 = x - self.base;
        let w0 = self.apply_real(x, Side::Right) - self.base;
        match self.kind {
            SlitKind::Vertical => x0 / w0,
            SlitKind::Tilted => {
                let (p, q) = self.prevertices();
                let a = self.angle;
                1.0 / (x0 * ((1.0 - a) / (w0 - p) + a / (w0 - q)))
            }
        }
    }

    /// Solve `F(w) = z0` for `w` in the closed upper half-plane.
    fn preimage(&self, z0: Complex64) -> Result<Complex64> {
        let a = self.angle;
        let theta = arg_upper(z0);
        let tip_mod = self.capacity.sqrt() * unit_tip_modulus(a);
        if z0.norm() == 0.0 {
            return Err(Error::domain("point is the base of the removed slit"));
        }
        if (theta - PI * a).abs() < 1e-15 && z0.norm() < tip_mod * (1.0 - 1e-15) {
            return Err(Error::domain(format!("point {z0} lies on the removed slit")));
        }
        let target = log_upper(z0);
        let (p, q) = self.prevertices();
        let s = q - p;
        let w_tip = (1.0 - 2.0 * a) * s;

        let laurent = z0 + self.capacity / z0;
        if z0.norm() > 3.0 * tip_mod {
            if let Some(w) = self.newton(laurent, target) {
                return Ok(w);
            }
        }
        let mut guesses = Vec::with_capacity(4);
        guesses.push(laurent);
        let tip_log = Complex64::new(tip_mod.ln(), PI * a);
        let dw2 = (target - tip_log) * (-2.0 * a * (1.0 - a) * s * s);
        guesses.push(w_tip + sqrt_upper(dw2, 0.0));
        if theta >= PI * a {
            let l = (target - Complex64::new(s.ln(), PI) * a) / (1.0 - a);
            guesses.push(p + l.exp());
        } else {
            let l = (target - Complex64::new(s.ln(), 0.0) * (1.0 - a)) / a;
            guesses.push(q + l.exp());
        }
        let mut best = None;
        let mut best_res = f64::INFINITY;
        for g in guesses {
            let g = Complex64::new(g.re, g.im.max(0.0));
            if !(g.re.is_finite() && g.im.is_finite()) {
                continue;
            }
            let r = (self.psi(g).0 - target).norm();
            if r < best_res {
                best_res = r;
                best = Some(g);
            }
        }
        if let Some(w) = best.and_then(|g| self.newton(g, target)) {
            return Ok(w);
        }
        self.continuation(z0)
            .ok_or_else(|| Error::numerical(format!("slit map inversion failed at {z0}")))
    }

    fn newton(&self, mut w: Complex64, target: Complex64) -> Option<Complex64> {
        let scale = self.scale();
        let (val, mut der) = self.psi(w);
        let mut f = val - target;
        let mut fnorm = f.norm();
        for _ in 0..100 {
            if !fnorm.is_finite() {
                return None;
            }
            if fnorm <= 2e-16 * (1.0 + target.norm()) {
                return Some(w);
            }
            let step = f / der;
            if !(step.re.is_finite() && step.im.is_finite()) {
                return None;
            }
            let mut lam = 1.0;
            let (wn, fn_) = loop {
                let cand = w - step * lam;
                if cand.im >= 0.0 {
                    let (vc, dc) = self.psi(cand);
                    let fc = vc - target;
                    if fc.norm() < fnorm || lam < 1e-3 && fc.norm() <= fnorm * 1.5 {
                        der = dc;
                        break (cand, fc);
                    }
                }
                lam *= 0.5;
                if lam < 1e-12 {
                    return None;
                }
            };
            let moved = (wn - w).norm();
            w = wn;
            f = fn_;
            fnorm = f.norm();
            if moved <= 1e-15 * (w.norm() + scale) {
                return Some(w);
            }
        }
        if fnorm <= 1e-12 * (1.0 + target.norm()) {
            Some(w)
        } else {
            None
        }
    }

    /// Follow the preimage inward along the ray through `z0`.
    fn continuation(&self, z0: Complex64) -> Option<Complex64> {
        let tip_mod = self.capacity.sqrt() * unit_tip_modulus(self.angle);
        let r0 = z0.norm();
        let far = 8.0 * r0.max(tip_mod);
        let k = 64;
        let mut w = None;
        for i in 0..=k {
            let r = far * (r0 / far).powf(i as f64 / k as f64);
            let z = z0 * (r / r0);
            let guess = w.unwrap_or(z + self.capacity / z);
            w = Some(self.newton(guess, log_upper(z))?);
        }
        w
    }
}

fn check_capacity(capacity: f64) -> Result<()> {
    if !(capacity > 0.0 && capacity.is_finite()) {
        return Err(Error::domain(format!("slit capacity must be positive, got {capacity}")));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn grid() -> Vec<Complex64> {
        let mut pts = Vec::new();
        for i in -6..=6 {
            for j in 1..=6 {
                pts.push(c(0.37 * i as f64, 0.29 * j as f64));
            }
        }
        pts
    }

    #[test]
    fn vertical_closed_form() {
        let m = ElementaryMap::vertical(0.0, 0.5).unwrap();
        let g = m.apply(c(0.0, 2.0)).unwrap();
        // oracle: √((2i)² + 1) with Im ≥ 0
        assert!((g - c(0.0, 3f64.sqrt())).norm() < 1e-14);
        assert!((m.tip() - c(0.0, 1.0)).norm() < 1e-14);
        assert!(m.apply(c(0.0, 1.0 + 1e-12)).unwrap().norm() < 1e-5);
    }

    #[test]
    fn tiny_capacity_is_near_identity() {
        let m = ElementaryMap::vertical(0.0, 1e-14).unwrap();
        for z in grid() {
            assert!((m.apply(z).unwrap() - z).norm() < 1e-12);
        }
    }

    #[test]
    fn tilted_half_angle_matches_vertical() {
        let v = ElementaryMap::vertical(0.3, 0.7).unwrap();
        let t = ElementaryMap::tilted(0.3, 0.7, 0.5).unwrap();
        for z in grid() {
            let (gv, gt) = (v.apply(z).unwrap(), t.apply(z).unwrap());
            assert!((gv - gt).norm() <= 1e-12 * (1.0 + gv.norm()), "{z}: {gv} vs {gt}");
        }
        assert_eq!(v.tip_image(), t.tip_image());
    }

    #[test]
    fn tilted_round_trip_and_tip() {
        for &a in &[0.03, 0.2, 0.45, 0.7, 0.97] {
            let m = ElementaryMap::tilted(0.0, 0.9, a).unwrap();
            for z in grid() {
                if (z - m.tip()).norm() < 1e-3 {
                    continue;
                }
                let g = m.apply(z).unwrap();
                assert!(g.im >= 0.0);
                let back = m.invert(g);
                assert!((back - z).norm() <= 1e-10 * (1.0 + z.norm()), "a={a} z={z} back={back}");
            }
            let tip = m.invert(c(m.tip_image(), 0.0));
            assert!((tip - m.tip()).norm() < 1e-12);
            let (p, q) = m.prevertices();
            // exact prevertices; the inverse is Hölder of order min(a, 1−a) there
            assert_eq!(m.invert(c(m.base() + p, 0.0)), c(m.base(), 0.0));
            assert_eq!(m.invert(c(m.base() + q, 0.0)), c(m.base(), 0.0));
        }
    }

    #[test]
    fn points_hugging_the_slit() {
        let m = ElementaryMap::tilted(0.0, 1.0, 0.3).unwrap();
        let dir = Complex64::from_polar(1.0, 0.3 * PI);
        let normal = dir * Complex64::i();
        for &t in &[0.01, 0.3, 0.7, 0.999] {
            for &eps in &[1e-3, 1e-6, -1e-6, -1e-3] {
                let z = m.tip() * t + normal * eps + m.base();
                let g = m.apply(z).unwrap();
                assert!((m.invert(g) - z).norm() < 1e-9, "t={t} eps={eps}");
            }
        }
    }

    #[test]
    fn hydrodynamic_normalization() {
        let m = ElementaryMap::tilted(0.2, 0.8, 0.35).unwrap();
        let z = c(0.0, 1e4);
        let g = m.apply(z).unwrap();
        // g(z) = z + δ/z + O(|z|⁻²)
        assert!((g - z - 0.8 / z).norm() < 10.0 * 0.8 / 1e8);
    }

    #[test]
    fn real_axis_images() {
        let m = ElementaryMap::tilted(1.0, 0.5, 0.25).unwrap();
        for &x in &[-5.0, -0.5, 0.99, 1.01, 3.0] {
            let g = m.apply_real(x, Side::Left);
            let back = m.invert(c(g, 0.0));
            // conditioning degrades like |x − base|^(1/a − 1) near the base
            let tol = if (x - 1.0f64).abs() < 0.1 { 1e-8 } else { 1e-12 };
            assert!((back - c(x, 0.0)).norm() < tol, "{x}: {back}");
            let (_, d) = m.apply_with_derivative(c(x, 1e-9)).unwrap();
            assert!((d.re - m.derivative_real(x)).abs() < 1e-6);
        }
        let (p, q) = m.prevertices();
        assert_eq!(m.apply_real(1.0, Side::Left), 1.0 + p);
        assert_eq!(m.apply_real(1.0, Side::Right), 1.0 + q);
    }

    #[test]
    fn increment_inverts_driving() {
        for &a in &[0.1, 0.4, 0.5, 0.8] {
            let m = ElementaryMap::tilted(0.0, 0.3, a).unwrap();
            let n = ElementaryMap::from_increment(0.0, 0.3, m.driving_increment()).unwrap();
            assert!((n.angle() - a).abs() < 1e-12);
            let k = ElementaryMap::from_chord(0.0, m.tip()).unwrap();
            assert!((k.capacity() - 0.3).abs() < 1e-12 && (k.angle() - a).abs() < 1e-12);
        }
    }

    #[test]
    fn rejects_points_on_slit() {
        let m = ElementaryMap::vertical(0.0, 0.5).unwrap();
        assert!(m.apply(c(0.0, 0.5)).is_err());
        assert!(ElementaryMap::tilted(0.0, 1.0, 1.0).is_err());
        assert!(ElementaryMap::vertical(0.0, 0.0).is_err());
    }
}
