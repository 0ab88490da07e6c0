use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::GeometryError;

/// Conformal factor λ of the metric λ²|dz|² on a planar chart.
///
/// A finite radius r gives the stereographic factor 2r²/(r²+|z|²); an
/// infinite radius gives the euclidean factor λ ≡ 1.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ConformalMetric {
    radius: f64,
}

impl ConformalMetric {
    pub fn spherical(radius: f64) -> Result<Self, GeometryError> {
        if !(radius > 0.0) || radius.is_nan() {
            return Err(GeometryError::InvalidRadius(radius));
        }
        Ok(Self { radius })
    }

    pub fn euclidean() -> Self {
        Self { radius: f64::INFINITY }
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    pub fn is_euclidean(&self) -> bool {
        self.radius.is_infinite()
    }

    pub fn factor(&self, z: Complex64) -> f64 {
        if self.is_euclidean() {
            return 1.0;
        }
        let r2 = self.radius * self.radius;
        2.0 * r2 / (r2 + z.norm_sqr())
    }

    /// ∇λ/λ packed as λ_x/λ + i·λ_y/λ.
    pub fn log_gradient(&self, z: Complex64) -> Complex64 {
        if self.is_euclidean() {
            return Complex64::new(0.0, 0.0);
        }
        let r2 = self.radius * self.radius;
        -2.0 * z / (r2 + z.norm_sqr())
    }

    /// Reflection through the equator |z| = r, z ↦ r²/z̄.
    pub fn equator_reflection(&self, z: Complex64) -> Result<Complex64, GeometryError> {
        if self.is_euclidean() {
            return Err(GeometryError::NoEquator);
        }
        Ok(self.radius * self.radius / z.conj())
    }

    /// Norm of a planar vector `v` at `z` measured in this metric.
    pub fn norm_at(&self, z: Complex64, v: Complex64) -> f64 {
        self.factor(z) * v.norm()
    }
}
