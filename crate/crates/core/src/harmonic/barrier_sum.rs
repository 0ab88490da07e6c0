use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use super::{h_pole, BarrierHt, HarmonicError, SupersolutionGn};
use crate::geometry::CoverPoint;

/// Desk-scale parameters for the barrier sum v₁ + v₂ + v₃.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BarrierSumParams {
    pub t: f64,
    pub alpha: f64,
    pub beta: f64,
    pub c1: f64,
    pub c2: f64,
    /// Neck centres, closed under z ↦ 1/z̄.
    pub poles: Vec<CoverPoint>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BarrierSum {
    pub v1: f64,
    pub v2: f64,
    pub v3: f64,
}

impl BarrierSum {
    pub fn total(&self) -> f64 {
        self.v1 + self.v2 + self.v3
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BarrierSumReport {
    pub samples: usize,
    pub max_sum: f64,
    pub bound: f64,
    pub worst_modulus: f64,
    pub worst_argument: f64,
    pub pass: bool,
}

impl BarrierSumParams {
    fn validate(&self) -> Result<(), HarmonicError> {
        let ok = self.t > 0.0
            && self.t < 1.0
            && self.alpha > 0.0
            && self.alpha < 1.0
            && self.beta > 0.0
            && self.beta < self.alpha;
        if !ok {
            return Err(HarmonicError::InvalidParameter("need 0 < t < 1 and 0 < beta < alpha < 1".into()));
        }
        Ok(())
    }

    /// (N + 2)(β/α)|log t|
    pub fn bound(&self) -> f64 {
        (self.poles.len() as f64 + 2.0) * self.beta / self.alpha * (-self.t.ln())
    }
}

/// v₁ = −C₁t²|log t| g + C₁(C₂+N)t^(2−2α)|log t|, v₂ = (1/α)Σ h_{pᵢ}, v₃ = (1/α)H_{t^α}.
pub fn barrier_sum(params: &BarrierSumParams, z: CoverPoint) -> Result<BarrierSum, HarmonicError> {
    params.validate()?;
    let lt = -params.t.ln();
    let n = params.poles.len() as f64;
    let g = SupersolutionGn::new(params.c2, params.poles.clone())?;
    let v1 = -params.c1 * params.t * params.t * lt * g.value(z)
        + params.c1 * (params.c2 + n) * params.t.powf(2.0 - 2.0 * params.alpha) * lt;
    let mut v2 = 0.0;
    for p in &params.poles {
        v2 += h_pole(*p, z)?;
    }
    v2 /= params.alpha;
    let v3 = BarrierHt::new(params.t.powf(params.alpha))?.eval(z)? / params.alpha;
    Ok(BarrierSum { v1, v2, v3 })
}

/// Samples the shrunken set {t^β < |z| < 1, 0 < arg z ≤ π} minus the disks
/// D(pᵢ, t^β) on an `nr × ntheta` log-polar grid and compares the barrier sum
/// with (N+2)(β/α)|log t|.
pub fn barrier_sum_check(
    params: &BarrierSumParams,
    nr: usize,
    ntheta: usize,
) -> Result<BarrierSumReport, HarmonicError> {
    params.validate()?;
    let rmin = params.t.powf(params.beta);
    let s0 = rmin.ln();
    let mut report = BarrierSumReport {
        samples: 0,
        max_sum: f64::NEG_INFINITY,
        bound: params.bound(),
        worst_modulus: f64::NAN,
        worst_argument: f64::NAN,
        pass: false,
    };
    for i in 1..nr {
        let r = (s0 * (1.0 - i as f64 / nr as f64)).exp();
        for j in 1..=ntheta {
            let theta = PI * j as f64 / ntheta as f64;
            let z = CoverPoint::new(r, theta)?;
            let w = z.planar();
            if params.poles.iter().any(|p| (w - p.planar()).norm() <= rmin && (theta - p.argument()).abs() < PI / 2.0) {
                continue;
            }
            let v = barrier_sum(params, z)?.total();
            report.samples += 1;
            if v > report.max_sum {
                report.max_sum = v;
                report.worst_modulus = r;
                report.worst_argument = theta;
            }
        }
    }
    report.pass = report.samples > 0 && report.max_sum <= report.bound;
    Ok(report)
}
