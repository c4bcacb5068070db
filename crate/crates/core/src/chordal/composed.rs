use num_complex::Complex64;

use super::elementary::{ElementaryMap, Side};
use crate::Result;

/// Composition `g = g_n ∘ … ∘ g_1` of elementary slit maps, the discrete
/// form of the normalized map of a welded hull.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct ComposedMap {
    steps: Vec<ElementaryMap>,
    total_capacity: f64,
}

impl ComposedMap {
    pub fn identity() -> Self {
        Self::default()
    }

    pub fn from_steps(steps: Vec<ElementaryMap>) -> Self {
        let mut map = Self::identity();
        for s in steps {
            map.push(s);
        }
        map
    }

    pub fn push(&mut self, step: ElementaryMap) {
        self.total_capacity += step.capacity();
        self.steps.push(step);
    }

    /// Append all steps of `other`, applied after the steps of `self`.
    pub fn extend(&mut self, other: &ComposedMap) {
        for s in &other.steps {
            self.push(*s);
        }
    }

    pub fn steps(&self) -> &[ElementaryMap] {
        &self.steps
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// Sum of the step capacities.
    pub fn total_capacity(&self) -> f64 {
        self.total_capacity
    }

    pub fn apply(&self, z: Complex64) -> Result<Complex64> {
        self.steps.iter().try_fold(z, |z, m| m.apply(z))
    }

    pub fn apply_with_derivative(&self, z: Complex64) -> Result<(Complex64, Complex64)> {
        let mut acc = (z, Complex64::new(1.0, 0.0));
        for m in &self.steps {
            let (g, d) = m.apply_with_derivative(acc.0)?;
            acc = (g, acc.1 * d);
        }
        Ok(acc)
    }

    /// Image of a real boundary point; `side` is used when the point is the
    /// base of a step.
    pub fn apply_real(&self, x: f64, side: Side) -> f64 {
        self.steps.iter().fold(x, |x, m| m.apply_real(x, side))
    }

    /// Derivative at a real point that is not the base of any step.
    pub fn derivative_real(&self, x: f64) -> f64 {
        let mut x = x;
        let mut d = 1.0;
        for m in &self.steps {
            d *= m.derivative_real(x);
            x = m.apply_real(x, Side::Right);
        }
        d
    }

    /// Inverse `g_1⁻¹ ∘ … ∘ g_n⁻¹`.
    pub fn invert(&self, w: Complex64) -> Complex64 {
        self.steps.iter().rev().fold(w, |w, m| m.invert(w))
    }

    /// Inverse of the first `n` steps only.
    pub fn invert_prefix(&self, n: usize, w: Complex64) -> Complex64 {
        self.steps[..n].iter().rev().fold(w, |w, m| m.invert(w))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn capacity_bookkeeping_and_normalization() {
        let steps = vec![
            ElementaryMap::vertical(0.0, 0.2).unwrap(),
            ElementaryMap::tilted(0.0, 0.05, 0.3).unwrap(),
            ElementaryMap::tilted(0.4, 0.1, 0.6).unwrap(),
        ];
        let cm = ComposedMap::from_steps(steps);
        assert_eq!(cm.total_capacity(), 0.2 + 0.05 + 0.1);
        for &y in &[1e3, 1e4] {
            let z = Complex64::new(0.0, y);
            let g = cm.apply(z).unwrap();
            let b = cm.total_capacity();
            assert!((g - z - b / z).norm() <= 10.0 * b / (y * y));
        }
        let z = Complex64::new(0.3, 0.8);
        assert!((cm.invert(cm.apply(z).unwrap()) - z).norm() < 1e-12);
    }

    #[test]
    fn identity_map() {
        let z = Complex64::new(-0.2, 0.1);
        assert_eq!(ComposedMap::identity().apply(z).unwrap(), z);
    }
}
