use serde::{Deserialize, Serialize};

use super::ForceError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum NeckCase {
    /// Necks on the positive imaginary axis of the sphere chart.
    Case1,
    /// Blow-up at the origin, ŷ₁ = 1.
    Case2,
    /// Blow-up at i, positions in [−1/2, 1/2] with both endpoints occupied.
    Case3b,
}

impl NeckCase {
    pub fn label(self) -> &'static str {
        match self {
            NeckCase::Case1 => "case1",
            NeckCase::Case2 => "case2",
            NeckCase::Case3b => "case3b",
        }
    }
}

/// Necks at pᵢ = i·yᵢ with weights cᵢ.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NeckConfiguration {
    positions: Vec<f64>,
    weights: Vec<f64>,
    c0: f64,
    case: NeckCase,
}

const ENDPOINT_TOL: f64 = 1e-12;

impl NeckConfiguration {
    pub fn new(case: NeckCase, positions: Vec<f64>, weights: Vec<f64>, c0: f64) -> Result<Self, ForceError> {
        if positions.is_empty() || positions.len() != weights.len() {
            return Err(ForceError::InvalidConfiguration(format!(
                "{} positions and {} weights",
                positions.len(),
                weights.len()
            )));
        }
        if positions.iter().chain(&weights).any(|v| !v.is_finite()) || !c0.is_finite() {
            return Err(ForceError::InvalidConfiguration("non-finite entry".into()));
        }
        if weights.iter().any(|&c| c < 0.0) || c0 < 0.0 {
            return Err(ForceError::InvalidConfiguration("negative weight".into()));
        }
        for w in positions.windows(2) {
            if w[1] == w[0] {
                return Err(ForceError::CoincidentNecks(w[0]));
            }
            if w[1] < w[0] {
                return Err(ForceError::ClusterUnresolved);
            }
        }
        match case {
            NeckCase::Case1 => {
                if positions[0] <= 0.0 {
                    return Err(ForceError::CaseHypothesisViolated("positions must be positive".into()));
                }
            }
            NeckCase::Case2 => {
                if (positions[0] - 1.0).abs() > ENDPOINT_TOL {
                    return Err(ForceError::CaseHypothesisViolated("blow-up normalization needs y1 = 1".into()));
                }
            }
            NeckCase::Case3b => {
                if positions.len() < 2 {
                    return Err(ForceError::CaseHypothesisViolated("needs at least two necks".into()));
                }
                let last = positions[positions.len() - 1];
                if (positions[0] + 0.5).abs() > ENDPOINT_TOL || (last - 0.5).abs() > ENDPOINT_TOL {
                    return Err(ForceError::CaseHypothesisViolated("endpoints must be -1/2 and 1/2".into()));
                }
            }
        }
        Ok(Self { positions, weights, c0, case })
    }

    pub fn case(&self) -> NeckCase {
        self.case
    }

    pub fn positions(&self) -> &[f64] {
        &self.positions
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn c0(&self) -> f64 {
        self.c0
    }

    pub fn len(&self) -> usize {
        self.positions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.positions.is_empty()
    }

    pub(crate) fn check_index(&self, i: usize) -> Result<(), ForceError> {
        if i >= self.len() {
            return Err(ForceError::IndexOutOfRange(i));
        }
        Ok(())
    }

    pub(crate) fn require(&self, case: NeckCase) -> Result<(), ForceError> {
        if self.case != case {
            return Err(ForceError::WrongCase { expected: case, found: self.case });
        }
        Ok(())
    }
}
