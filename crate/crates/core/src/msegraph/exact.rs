//! Closed-form minimal graphs used as oracles.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::geometry::CoverPoint;

/// (t/2π)·arg z: minimal in every rotationally symmetric conformal metric.
pub fn helicoid(t: f64, p: CoverPoint) -> f64 {
    t / (2.0 * PI) * p.argument()
}

/// a·cosh⁻¹(|z|/a) for |z| ≥ a: the euclidean catenoid with neck radius a.
pub fn catenoid(a: f64, z: Complex64) -> f64 {
    a * (z.norm() / a).acosh()
}

/// Euclidean gradient of [`catenoid`], packed as f_x + i·f_y.
pub fn catenoid_gradient(a: f64, z: Complex64) -> Complex64 {
    let r = z.norm();
    z / r / ((r / a).powi(2) - 1.0).sqrt()
}
