use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::{cover_contour_integral, ComplexError, Contour};
use crate::geometry::CoverPoint;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum PoleOrder {
    One,
    Two,
}

impl PoleOrder {
    fn power(self) -> i32 {
        match self {
            PoleOrder::One => 1,
            PoleOrder::Two => 2,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Prefactor {
    /// g ≡ 1
    One,
    /// g(z) = (1 − z²)/(4z²)
    Equatorial,
}

impl Prefactor {
    pub fn eval(self, z: Complex64) -> Complex64 {
        match self {
            Prefactor::One => Complex64::new(1.0, 0.0),
            Prefactor::Equatorial => (1.0 - z * z) / (4.0 * z * z),
        }
    }
}

/// Residue at p of g(z)·(log z − log p)^(−k) in closed form.
pub fn residue_log_pole(p: Complex64, order: PoleOrder, prefactor: Prefactor) -> Result<Complex64, ComplexError> {
    if p.norm() == 0.0 || !p.is_finite() {
        return Err(ComplexError::SingularConfiguration("pole at the puncture"));
    }
    let one = Complex64::new(1.0, 0.0);
    Ok(match (order, prefactor) {
        (PoleOrder::One, Prefactor::One) => p,
        (PoleOrder::Two, Prefactor::One) => p,
        (PoleOrder::One, Prefactor::Equatorial) => (one - p * p) / (4.0 * p),
        (PoleOrder::Two, Prefactor::Equatorial) => -(one + p * p) / (4.0 * p),
    })
}

/// The same residue by trapezoid quadrature over C(p, eps), with log z
/// continued along the circle from the principal lift of p.
pub fn residue_numeric(
    p: Complex64,
    order: PoleOrder,
    prefactor: Prefactor,
    eps: f64,
    nodes: usize,
) -> Result<Complex64, ComplexError> {
    let base = CoverPoint::from_planar(p)?;
    let lp = base.log();
    let k = order.power();
    let c = Contour::ccw(p, eps, nodes)?;
    let integral = cover_contour_integral(|q| prefactor.eval(q.planar()) / (q.log() - lp).powi(k), base, &c)?;
    Ok(integral / Complex64::new(0.0, 2.0 * PI))
}
