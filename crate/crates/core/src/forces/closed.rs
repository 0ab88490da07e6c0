use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use super::{ForceError, NeckCase, NeckConfiguration};

/// f(x, y) = −2π² / (L·|L + iπ|²), L = ln x − ln y.
///
/// Odd in L, so f(x, y) = −f(y, x) holds bit for bit.
pub fn kernel_f(x: f64, y: f64) -> Result<f64, ForceError> {
    if !(x > 0.0 && y > 0.0) {
        return Err(ForceError::InvalidConfiguration(format!("kernel at ({x}, {y})")));
    }
    let l = x.ln() - y.ln();
    if l == 0.0 {
        return Err(ForceError::CoincidentNecks(x));
    }
    Ok(-2.0 * PI * PI / (l * (l * l + PI * PI)))
}

/// Force on one neck split into its self term and pairwise terms.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ForceVector {
    pub forces: Vec<f64>,
    pub self_terms: Vec<f64>,
    /// pair[i][j]: contribution of neck j to the force on neck i.
    pub pair: Vec<Vec<f64>>,
}

fn pair_term(cfg: &NeckConfiguration, i: usize, j: usize) -> Result<f64, ForceError> {
    let y = cfg.positions();
    let c = cfg.weights();
    Ok(match cfg.case() {
        NeckCase::Case1 | NeckCase::Case2 => c[i] * c[j] * kernel_f(y[i], y[j])?,
        NeckCase::Case3b => -PI * c[i] * c[j] / (y[i] - y[j]),
    })
}

fn self_term(cfg: &NeckConfiguration, i: usize) -> f64 {
    let y = cfg.positions()[i];
    let c = cfg.weights()[i];
    match cfg.case() {
        NeckCase::Case1 => c * c * (1.0 - y * y) / (1.0 + y * y),
        NeckCase::Case2 => c * c,
        NeckCase::Case3b => 0.0,
    }
}

/// Closed-form force on neck i for whichever case the configuration carries.
pub fn force_closed(cfg: &NeckConfiguration, i: usize) -> Result<f64, ForceError> {
    cfg.check_index(i)?;
    let mut f = self_term(cfg, i);
    for j in 0..cfg.len() {
        if j != i {
            f += pair_term(cfg, i, j)?;
        }
    }
    Ok(f)
}

/// cᵢ²(1 − yᵢ²)/(1 + yᵢ²) + Σⱼ cᵢcⱼ f(yᵢ, yⱼ)
pub fn force_case1(cfg: &NeckConfiguration, i: usize) -> Result<f64, ForceError> {
    cfg.require(NeckCase::Case1)?;
    force_closed(cfg, i)
}

/// ĉᵢ² + Σⱼ ĉᵢĉⱼ f(yᵢ, yⱼ)
pub fn force_case2(cfg: &NeckConfiguration, i: usize) -> Result<f64, ForceError> {
    cfg.require(NeckCase::Case2)?;
    force_closed(cfg, i)
}

/// −π Σⱼ ĉᵢĉⱼ/(yᵢ − yⱼ)
pub fn force_case3b(cfg: &NeckConfiguration, i: usize) -> Result<f64, ForceError> {
    cfg.require(NeckCase::Case3b)?;
    force_closed(cfg, i)
}

pub fn force_vector(cfg: &NeckConfiguration) -> Result<ForceVector, ForceError> {
    let n = cfg.len();
    let mut pair = vec![vec![0.0; n]; n];
    let mut self_terms = Vec::with_capacity(n);
    let mut forces = Vec::with_capacity(n);
    for i in 0..n {
        let s = self_term(cfg, i);
        let mut f = s;
        for j in 0..n {
            if j != i {
                pair[i][j] = pair_term(cfg, i, j)?;
                f += pair[i][j];
            }
        }
        self_terms.push(s);
        forces.push(f);
    }
    Ok(ForceVector { forces, self_terms, pair })
}
