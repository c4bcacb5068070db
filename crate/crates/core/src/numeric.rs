//! Small numerical helpers shared across modules.

use std::f64::consts::PI;

use num_complex::Complex64;

/// Argument in `[0, π]` for points of the closed upper half-plane.
///
/// Points with a (possibly negative zero or rounding-negative) vanishing
/// imaginary part are treated as lying on the real axis.
pub(crate) fn arg_upper(z: Complex64) -> f64 {
    if z.im > 0.0 {
        z.im.atan2(z.re)
    } else if z.re >= 0.0 {
        0.0
    } else {
        PI
    }
}

/// Logarithm with the argument taken in `[0, π]`.
pub(crate) fn log_upper(z: Complex64) -> Complex64 {
    Complex64::new(z.norm().ln(), arg_upper(z))
}

/// Square root with non-negative imaginary part. When the result is real,
/// its sign follows `sign_hint`.
pub(crate) fn sqrt_upper(w: Complex64, sign_hint: f64) -> Complex64 {
    let mut s = w.sqrt();
    if s.im < 0.0 {
        s = -s;
    }
    if s.im == 0.0 && sign_hint < 0.0 {
        s = -s;
    }
    s
}

/// Root of a monotone function on a bracket `[lo, hi]`, Newton steps with
/// bisection fallback. `f` returns `(value, derivative)`.
pub(crate) fn safeguarded_newton<F>(mut f: F, mut lo: f64, mut hi: f64, tol: f64) -> Option<f64>
where
    F: FnMut(f64) -> (f64, f64),
{
    let (flo, _) = f(lo);
    let (fhi, _) = f(hi);
    if flo == 0.0 {
        return Some(lo);
    }
    if fhi == 0.0 {
        return Some(hi);
    }
    if flo.signum() == fhi.signum() {
        return None;
    }
    // orient so that f(lo) < 0
    let increasing = flo < 0.0;
    let mut x = 0.5 * (lo + hi);
    for _ in 0..200 {
        let (fx, dfx) = f(x);
        if fx == 0.0 {
            return Some(x);
        }
        if (fx < 0.0) == increasing {
            lo = x;
        } else {
            hi = x;
        }
        let newton = x - fx / dfx;
        let next = if dfx.is_finite() && dfx != 0.0 && newton > lo && newton < hi {
            newton
        } else {
            0.5 * (lo + hi)
        };
        if (next - x).abs() <= tol * (1.0 + x.abs()) || (hi - lo).abs() <= tol * (1.0 + x.abs()) {
            return Some(next);
        }
        x = next;
    }
    Some(x)
}

/// Bisection for a monotone predicate change on `[lo, hi]`: returns the point
/// where `f` crosses zero to absolute tolerance `tol`.
pub(crate) fn bisect<F>(mut f: F, mut lo: f64, mut hi: f64, tol: f64) -> Option<f64>
where
    F: FnMut(f64) -> crate::Result<f64>,
{
    let flo = f(lo).ok()?;
    let fhi = f(hi).ok()?;
    if flo == 0.0 {
        return Some(lo);
    }
    if fhi == 0.0 {
        return Some(hi);
    }
    if flo.signum() == fhi.signum() {
        return None;
    }
    let lo_neg = flo < 0.0;
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        let fm = f(mid).ok()?;
        if fm == 0.0 {
            return Some(mid);
        }
        if (fm < 0.0) == lo_neg {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Some(0.5 * (lo + hi))
}

/// Format a float with 12 significant digits, shortest round-trip form.
pub(crate) fn fmt12(x: f64) -> String {
    if !x.is_finite() {
        return format!("{x}");
    }
    let rounded: f64 = format!("{:.11e}", x).parse().unwrap_or(x);
    if rounded != 0.0 && !(1e-4..1e12).contains(&rounded.abs()) {
        format!("{rounded:e}")
    } else {
        format!("{rounded}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sqrt_upper_branch() {
        let s = sqrt_upper(Complex64::new(-3.0, 0.0), 1.0);
        assert!((s - Complex64::new(0.0, 3f64.sqrt())).norm() < 1e-15);
        let s = sqrt_upper(Complex64::new(4.0, 0.0), -1.0);
        assert_eq!(s, Complex64::new(-2.0, 0.0));
        let s = sqrt_upper(Complex64::new(-1.0, -1e-3), 1.0);
        assert!(s.im > 0.0);
    }

    #[test]
    fn arg_upper_on_axis() {
        assert_eq!(arg_upper(Complex64::new(-2.0, -0.0)), PI);
        assert_eq!(arg_upper(Complex64::new(2.0, -1e-300)), 0.0);
    }

    #[test]
    fn newton_finds_cube_root() {
        let r = safeguarded_newton(|x| (x * x * x - 2.0, 3.0 * x * x), 0.0, 2.0, 1e-15).unwrap();
        assert!((r - 2f64.cbrt()).abs() < 1e-13);
    }

    #[test]
    fn twelve_digit_format() {
        assert_eq!(fmt12(0.5), "0.5");
        assert_eq!(fmt12(1.0 / 3.0), "0.333333333333");
        assert_eq!(fmt12(0.0), "0");
    }
}
