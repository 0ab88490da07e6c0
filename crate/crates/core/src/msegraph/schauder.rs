use serde::{Deserialize, Serialize};

use super::graph::GraphFunction;
use super::MseError;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SchauderReport {
    pub t: f64,
    /// sup d·|∇f|/t over nodes with d ≥ t.
    pub gradient_sup: f64,
    /// sup d⁴·|Δf|/t³ over the same nodes.
    pub laplacian_sup: f64,
    pub nodes: usize,
}

/// Measured constants of the interior gradient and Laplacian estimates.
///
/// A discrete Laplacian within the rounding error of its five-point stencil
/// counts as zero.
pub fn empirical_schauder(f: &GraphFunction, t: f64) -> Result<SchauderReport, MseError> {
    if !(t > 0.0 && t.is_finite()) {
        return Err(MseError::EstimateInapplicable(format!("t = {t}")));
    }
    let d = f.domain();
    let fmax = f.values().iter().fold(0.0f64, |m, v| m.max(v.abs()));
    if fmax > t * (1.0 + 1e-12) {
        return Err(MseError::EstimateInapplicable(format!("sup|f| = {fmax} exceeds t = {t}")));
    }
    let (rows, cols) = (d.rows(), d.columns());
    let (hs, ht) = (d.hs(), d.ht());
    let periodic = d.is_periodic();
    let mut out = SchauderReport { t, gradient_sup: 0.0, laplacian_sup: 0.0, nodes: 0 };
    for i in 1..rows - 1 {
        for j in 0..cols {
            if !periodic && (j == 0 || j + 1 == cols) {
                continue;
            }
            let (jp, jm) = ((j + 1) % cols, (j + cols - 1) % cols);
            let stencil = [(i, j), (i + 1, j), (i - 1, j), (i, jp), (i, jm)];
            if stencil.iter().any(|&(a, b)| d.hole_containing(d.node_point(a, b)).is_some()) {
                continue;
            }
            let grad = f.node_gradient(i, j).norm();
            if grad > 1.0 + 1e-9 {
                return Err(MseError::EstimateInapplicable(format!("|∇f| = {grad} exceeds 1")));
            }
            let p = d.node_point(i, j);
            let dist = d.boundary_distance(p);
            if dist < t {
                continue;
            }
            let c = f.at(i, j);
            let fss = (f.at(i + 1, j) - 2.0 * c + f.at(i - 1, j)) / (hs * hs);
            let ftt = (f.at(i, jp) - 2.0 * c + f.at(i, jm)) / (ht * ht);
            let e2 = (-2.0 * d.s_at(i)).exp();
            let mut lap = e2 * (fss + ftt);
            let noise = 16.0 * f64::EPSILON * fmax * 4.0 * (1.0 / (hs * hs) + 1.0 / (ht * ht)) * e2;
            if lap.abs() <= noise {
                lap = 0.0;
            }
            out.gradient_sup = out.gradient_sup.max(dist * grad / t);
            out.laplacian_sup = out.laplacian_sup.max(dist.powi(4) * lap.abs() / t.powi(3));
            out.nodes += 1;
        }
    }
    Ok(out)
}

/// Values at or below this count as numerically zero in a stability sweep.
pub const ZERO_FLOOR: f64 = 1e-8;

/// A sweep is stable when its values stay within a factor 2 of each other,
/// or are all numerically zero.
pub fn sweep_stable(values: &[f64]) -> bool {
    let max = values.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    if max <= ZERO_FLOOR {
        return true;
    }
    let min = values.iter().fold(f64::INFINITY, |m, v| m.min(v.abs()));
    min > 0.0 && max / min <= 2.0
}
