//! Half-plane capacity: closed form for straight segments, zipper welding
//! for polyline hulls, and a Brownian Monte Carlo estimator.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::chordal::{unit_tip_modulus, unit_tip_modulus_sq};
use crate::geom::PolylineSlit;
use crate::{Error, Result};

mod monte_carlo;
mod symmetric;
mod zipper;

pub use monte_carlo::hcap_mc;
pub use symmetric::{hcap_symmetric, hcap_symmetric_with};
pub use zipper::{hcap_union_two_slits, hcap_union_two_slits_with, hcap_zipper, hcap_zipper_with, pushforward_capacity_ratio, DEFAULT_REL_STEP};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    ClosedForm,
    Zipper,
    MonteCarlo,
}

/// A capacity value with the method that produced it and an error
/// indication: discretization difference for the zipper, one standard
/// deviation for Monte Carlo, zero for closed forms.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CapacityEstimate {
    pub value: f64,
    pub method: Method,
    pub err: f64,
    pub n_samples: Option<u64>,
    pub seed: Option<u64>,
}

impl CapacityEstimate {
    pub fn exact(value: f64) -> Self {
        CapacityEstimate { value, method: Method::ClosedForm, err: 0.0, n_samples: None, seed: None }
    }

    pub(crate) fn zipper(value: f64, err: f64) -> Self {
        CapacityEstimate { value, method: Method::Zipper, err, n_samples: None, seed: None }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("estimate serializes")
    }
}

/// A straight segment from `base` at angle `angle ∈ (0, π)` with half-plane
/// capacity `capacity`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SegmentSpec {
    pub angle: f64,
    pub capacity: f64,
    pub base: f64,
}

impl SegmentSpec {
    pub fn new(angle: f64, capacity: f64, base: f64) -> Result<Self> {
        check_angle(angle)?;
        if !(capacity >= 0.0 && capacity.is_finite()) {
            return Err(Error::domain(format!("segment capacity must be finite and non-negative, got {capacity}")));
        }
        Ok(SegmentSpec { angle, capacity, base })
    }

    pub fn from_length(angle: f64, length: f64, base: f64) -> Result<Self> {
        Self::new(angle, segment_capacity(angle, length)?, base)
    }

    pub fn length(&self) -> f64 {
        self.capacity.sqrt() * unit_tip_modulus(self.angle / PI)
    }

    pub fn tip(&self) -> Complex64 {
        self.base + Complex64::from_polar(self.length(), self.angle)
    }

    /// The segment as a slit; empty when the capacity vanishes.
    pub fn to_slit(&self) -> Result<PolylineSlit> {
        if self.capacity == 0.0 {
            Ok(PolylineSlit::empty(crate::Chart::HalfPlane, Complex64::new(self.base, 0.0)))
        } else {
            PolylineSlit::segment(self.base, self.tip())
        }
    }
}

fn check_angle(angle: f64) -> Result<()> {
    if angle > 0.0 && angle < PI {
        Ok(())
    } else {
        Err(Error::domain(format!("segment angle {angle} outside (0, π)")))
    }
}

/// Capacity of a straight segment of length `length` at angle `angle`.
pub fn segment_capacity(angle: f64, length: f64) -> Result<f64> {
    check_angle(angle)?;
    if !(length >= 0.0) {
        return Err(Error::domain(format!("segment length must be non-negative, got {length}")));
    }
    Ok(length * length / unit_tip_modulus_sq(angle / PI))
}

/// Length of the straight segment at angle `angle` with capacity `capacity`.
pub fn segment_length(angle: f64, capacity: f64) -> Result<f64> {
    check_angle(angle)?;
    if !(capacity >= 0.0) {
        return Err(Error::domain(format!("segment capacity must be non-negative, got {capacity}")));
    }
    Ok(capacity.sqrt() * unit_tip_modulus(angle / PI))
}
