use std::f64::consts::PI;

use crate::forces::{max_contour_radius, NeckConfiguration};

use super::FluxError;

fn rho(t: f64) -> Result<f64, FluxError> {
    if !(t > 0.0 && t < 1.0) {
        return Err(FluxError::InvalidPitch(t));
    }
    Ok(t / t.ln().abs())
}

/// Model vertical flux 2π·cᵢ·t/|log t| through the circle of radius ε about
/// neck i at pitch t.
pub fn neck_flux_model(cfg: &NeckConfiguration, i: usize, eps: f64, t: f64) -> Result<f64, FluxError> {
    let max = max_contour_radius(cfg, i)?;
    if !(eps > 0.0 && eps < max) {
        return Err(FluxError::OverlappingNecks { eps, max });
    }
    Ok(2.0 * PI * cfg.weights()[i] * rho(t)?)
}

/// Vertical flux around a cluster of coincident necks: the weights add.
pub fn cluster_flux(weights: &[f64], t: f64) -> Result<f64, FluxError> {
    Ok(2.0 * PI * weights.iter().sum::<f64>() * rho(t)?)
}
