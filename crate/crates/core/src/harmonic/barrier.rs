use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::HarmonicError;
use crate::geometry::CoverPoint;

/// H_t(z) = Im(log t · log z / (log t + i log z)) on arg z > 0.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BarrierHt {
    t: f64,
}

impl BarrierHt {
    pub fn new(t: f64) -> Result<Self, HarmonicError> {
        if !(t > 0.0 && t < 1.0) {
            return Err(HarmonicError::InvalidParameter(format!("t = {t} not in (0,1)")));
        }
        Ok(Self { t })
    }

    pub fn t(&self) -> f64 {
        self.t
    }

    /// |log t|
    pub fn depth(&self) -> f64 {
        -self.t.ln()
    }

    pub fn eval(&self, z: CoverPoint) -> Result<f64, HarmonicError> {
        if !(z.argument() > 0.0) {
            return Err(HarmonicError::OutsideHalfPlane(z.argument()));
        }
        let lt = Complex64::new(self.t.ln(), 0.0);
        let lz = z.log();
        Ok((lt * lz / (lt + Complex64::i() * lz)).im)
    }

    /// The same value from the polar expression
    /// (T²θ + T(s² + θ²)) / ((T + θ)² + s²) with T = |log t|, s = ln r.
    pub fn eval_polar(&self, z: CoverPoint) -> Result<f64, HarmonicError> {
        let theta = z.argument();
        if !(theta > 0.0) {
            return Err(HarmonicError::OutsideHalfPlane(theta));
        }
        let t = self.depth();
        let s = z.modulus().ln();
        Ok((t * t * theta + t * (s * s + theta * theta)) / ((t + theta).powi(2) + s * s))
    }

    /// Lower bound used for large arguments on t ≤ |z| ≤ 1:
    /// (T²θ + Tθ²) / ((T + θ)² + T²).
    pub fn annulus_lower_bound(&self, theta: f64) -> f64 {
        let t = self.depth();
        (t * t * theta + t * theta * theta) / ((t + theta).powi(2) + t * t)
    }
}

pub fn barrier_ht(t: f64, z: CoverPoint) -> Result<f64, HarmonicError> {
    BarrierHt::new(t)?.eval(z)
}
