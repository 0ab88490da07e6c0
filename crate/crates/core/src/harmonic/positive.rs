use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::HarmonicError;

/// Coefficients of u(z) = c₀ Im z − Σ cᵢ ln|(z − qᵢ)/(z − q̄ᵢ)|.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PositiveHarmonicFit {
    pub c0: f64,
    pub weights: Vec<f64>,
    /// Largest absolute residual over the samples.
    pub max_residual: f64,
    pub rms_residual: f64,
}

fn column(j: usize, poles: &[Complex64], z: Complex64) -> f64 {
    if j == 0 {
        z.im
    } else {
        let q = poles[j - 1];
        -((z - q).norm() / (z - q.conj()).norm()).ln()
    }
}

/// Nonnegative least-squares fit on the half-plane model class.
///
/// The unconstrained solution is computed first; a coefficient below
/// −1e−8·max|c| means the data is not of the model form. Coefficients within
/// that tolerance of zero are pinned to zero and the rest refitted.
pub fn fit_positive_harmonic(
    samples: &[(Complex64, f64)],
    poles: &[Complex64],
) -> Result<PositiveHarmonicFit, HarmonicError> {
    let m = poles.len() + 1;
    if samples.len() < m {
        return Err(HarmonicError::InvalidParameter(format!("{} samples for {m} unknowns", samples.len())));
    }
    if let Some(q) = poles.iter().find(|q| !(q.im > 0.0)) {
        return Err(HarmonicError::InvalidParameter(format!("pole {q} not in the upper half-plane")));
    }
    let all: Vec<usize> = (0..m).collect();
    let coef = solve(samples, poles, &all)?;
    let scale = coef.iter().fold(0.0f64, |a, c| a.max(c.abs()));
    let tol = 1e-8 * scale;
    if let Some((index, &value)) = coef.iter().enumerate().find(|(_, c)| **c < -tol) {
        return Err(HarmonicError::NotRepresentable { index, value });
    }
    let active: Vec<usize> = (0..m).filter(|&j| coef[j] > tol).collect();
    let mut full = vec![0.0; m];
    if !active.is_empty() {
        let refit = solve(samples, poles, &active)?;
        for (k, &j) in active.iter().enumerate() {
            full[j] = refit[k].max(0.0);
        }
    }
    let mut max_residual: f64 = 0.0;
    let mut sq = 0.0;
    for &(z, u) in samples {
        let model: f64 = (0..m).map(|j| full[j] * column(j, poles, z)).sum();
        let r = (model - u).abs();
        max_residual = max_residual.max(r);
        sq += r * r;
    }
    Ok(PositiveHarmonicFit {
        c0: full[0],
        weights: full[1..].to_vec(),
        max_residual,
        rms_residual: (sq / samples.len() as f64).sqrt(),
    })
}

fn solve(samples: &[(Complex64, f64)], poles: &[Complex64], cols: &[usize]) -> Result<Vec<f64>, HarmonicError> {
    let a = DMatrix::from_fn(samples.len(), cols.len(), |i, k| column(cols[k], poles, samples[i].0));
    let b = DVector::from_iterator(samples.len(), samples.iter().map(|s| s.1));
    let svd = a.svd(true, true);
    let x = svd.solve(&b, 1e-14).map_err(|e| HarmonicError::InvalidParameter(e.to_string()))?;
    Ok(x.iter().copied().collect())
}
