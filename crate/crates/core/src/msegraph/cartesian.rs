use num_complex::Complex64;

use super::MseError;
use crate::geometry::ConformalMetric;

/// Uniform node grid x₀ + i·h + i(y₀ + j·h), 0 ≤ i ≤ nx, 0 ≤ j ≤ ny.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CartesianGrid {
    pub origin: Complex64,
    pub h: f64,
    pub nx: usize,
    pub ny: usize,
}

impl CartesianGrid {
    pub fn new(origin: Complex64, h: f64, nx: usize, ny: usize) -> Result<Self, MseError> {
        if !(h > 0.0 && h.is_finite()) || nx < 2 || ny < 2 {
            return Err(MseError::InvalidDomain(format!("cartesian grid h={h}, {nx}×{ny}")));
        }
        Ok(Self { origin, h, nx, ny })
    }

    /// Square [x₀, x₀ + side] × [y₀, y₀ + side] with n cells per side.
    pub fn square(origin: Complex64, side: f64, n: usize) -> Result<Self, MseError> {
        Self::new(origin, side / n as f64, n, n)
    }

    pub fn point(&self, i: usize, j: usize) -> Complex64 {
        self.origin + Complex64::new(i as f64 * self.h, j as f64 * self.h)
    }

    pub fn sample(&self, f: impl Fn(Complex64) -> f64) -> Vec<f64> {
        let mut v = Vec::with_capacity((self.nx + 1) * (self.ny + 1));
        for j in 0..=self.ny {
            for i in 0..=self.nx {
                v.push(f(self.point(i, j)));
            }
        }
        v
    }
}

/// Coordinate form of the minimal surface equation at interior nodes,
/// the outermost ring of nodes acting as the ghost layer:
///
/// (1+λ⁻²f_y²)f_xx + (1+λ⁻²f_x²)f_yy − 2λ⁻²f_x f_y f_xy
///   + λ⁻²(f_x²+f_y²)((λ_x/λ)f_x + (λ_y/λ)f_y)
///
/// Returned row-major over i = 1..nx−1, j = 1..ny−1.
pub fn mse_residual(grid: &CartesianGrid, values: &[f64], metric: &ConformalMetric) -> Result<Vec<f64>, MseError> {
    let w = grid.nx + 1;
    if values.len() != w * (grid.ny + 1) {
        return Err(MseError::DomainMismatch);
    }
    let h = grid.h;
    let at = |i: usize, j: usize| values[j * w + i];
    let mut out = Vec::with_capacity((grid.nx - 1) * (grid.ny - 1));
    for j in 1..grid.ny {
        for i in 1..grid.nx {
            let z = grid.point(i, j);
            let lam = metric.factor(z);
            let il2 = 1.0 / (lam * lam);
            let lg = metric.log_gradient(z);
            let fx = (at(i + 1, j) - at(i - 1, j)) / (2.0 * h);
            let fy = (at(i, j + 1) - at(i, j - 1)) / (2.0 * h);
            let fxx = (at(i + 1, j) - 2.0 * at(i, j) + at(i - 1, j)) / (h * h);
            let fyy = (at(i, j + 1) - 2.0 * at(i, j) + at(i, j - 1)) / (h * h);
            let fxy = (at(i + 1, j + 1) - at(i + 1, j - 1) - at(i - 1, j + 1) + at(i - 1, j - 1)) / (4.0 * h * h);
            out.push(
                (1.0 + il2 * fy * fy) * fxx + (1.0 + il2 * fx * fx) * fyy - 2.0 * il2 * fx * fy * fxy
                    + il2 * (fx * fx + fy * fy) * (lg.re * fx + lg.im * fy),
            );
        }
    }
    Ok(out)
}

/// Observed order log₂(e_k/e_{k+1}) between successive halvings.
pub fn observed_orders(errors: &[f64]) -> Vec<f64> {
    errors.windows(2).map(|w| (w[0] / w[1]).log2()).collect()
}
