use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::HarmonicError;
use crate::geometry::CoverPoint;

/// A weighted pole of h_p.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GreenPole {
    pub p: CoverPoint,
    pub weight: f64,
}

/// h_p(z) = −ln |(log z − log p)/(log z − log p̄)| with cover logarithms.
pub fn h_pole(p: CoverPoint, z: CoverPoint) -> Result<f64, HarmonicError> {
    let lz = z.log();
    let lp = p.log();
    let a = lz - lp;
    let b = lz - lp.conj();
    if a.norm() == 0.0 || b.norm() == 0.0 {
        return Err(HarmonicError::PoleEvaluation);
    }
    Ok(b.norm().ln() - a.norm().ln())
}

/// ∂h_p/∂z = −(1/2z)·(1/(log z − log p) − 1/(log z − log p̄)).
pub fn h_pole_dz(p: CoverPoint, z: CoverPoint) -> Result<Complex64, HarmonicError> {
    let lz = z.log();
    let lp = p.log();
    let a = lz - lp;
    let b = lz - lp.conj();
    if a.norm() == 0.0 || b.norm() == 0.0 {
        return Err(HarmonicError::PoleEvaluation);
    }
    Ok(-(1.0 / a - 1.0 / b) / (2.0 * z.planar()))
}

/// ũ(z) = c₀·arg z + Σ cᵢ h_{pᵢ}(z).
pub fn limit_u(c0: f64, poles: &[GreenPole], z: CoverPoint) -> Result<f64, HarmonicError> {
    let mut acc = c0 * z.argument();
    for g in poles {
        acc += g.weight * h_pole(g.p, z)?;
    }
    Ok(acc)
}

/// ∂ũ/∂z = c₀/(2iz) + Σ cᵢ ∂h_{pᵢ}/∂z.
pub fn limit_u_dz(c0: f64, poles: &[GreenPole], z: CoverPoint) -> Result<Complex64, HarmonicError> {
    let mut acc = c0 / (2.0 * Complex64::i() * z.planar());
    for g in poles {
        acc += g.weight * h_pole_dz(g.p, z)?;
    }
    Ok(acc)
}
