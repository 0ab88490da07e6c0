use std::sync::Arc;

use num_complex::Complex64;

use super::domain::GraphDomain;
use super::stencil::Discretization;
use super::MseError;
use crate::geometry::CoverPoint;

/// Node values of a graph over a log-polar domain.
#[derive(Debug, Clone)]
pub struct GraphFunction {
    domain: Arc<GraphDomain>,
    values: Vec<f64>,
}

/// Cubic Lagrange weights for nodes 0..4 at position x ∈ [0, 3].
fn lagrange4(x: f64) -> [f64; 4] {
    let (a, b, c, d) = (x, x - 1.0, x - 2.0, x - 3.0);
    [-b * c * d / 6.0, a * c * d / 2.0, -a * b * d / 2.0, a * b * c / 6.0]
}

impl GraphFunction {
    /// Samples `f` at every node, holes included.
    pub fn sample(domain: Arc<GraphDomain>, f: impl Fn(CoverPoint) -> f64) -> Self {
        let mut values = Vec::with_capacity(domain.node_count());
        for i in 0..domain.rows() {
            for j in 0..domain.columns() {
                values.push(f(domain.node_point(i, j)));
            }
        }
        Self { domain, values }
    }

    /// Samples `f` and then imposes the domain's Dirichlet and hole data.
    pub fn with_boundary_data(domain: Arc<GraphDomain>, f: impl Fn(CoverPoint) -> f64) -> Self {
        let mut g = Self::sample(domain, f);
        g.values = Discretization::new(&g.domain).impose(&g.values);
        g
    }

    pub fn zeros(domain: Arc<GraphDomain>) -> Self {
        Self::with_boundary_data(domain, |_| 0.0)
    }

    pub fn from_values(domain: Arc<GraphDomain>, values: Vec<f64>) -> Result<Self, MseError> {
        if values.len() != domain.node_count() || values.iter().any(|v| !v.is_finite()) {
            return Err(MseError::DomainMismatch);
        }
        Ok(Self { domain, values })
    }

    pub fn domain(&self) -> &Arc<GraphDomain> {
        &self.domain
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn at(&self, i: usize, j: usize) -> f64 {
        self.values[self.domain.index(i, j)]
    }

    /// max |f − g| over nodes outside the holes.
    pub fn max_error(&self, g: impl Fn(CoverPoint) -> f64) -> f64 {
        let d = &self.domain;
        let mut e: f64 = 0.0;
        for i in 0..d.rows() {
            for j in 0..d.columns() {
                let p = d.node_point(i, j);
                if d.hole_containing(p).is_none() {
                    e = e.max((self.at(i, j) - g(p)).abs());
                }
            }
        }
        e
    }

    /// Pointwise discrete residual of the minimal surface equation, zero on
    /// fixed nodes.
    pub fn mse_residual(&self) -> Vec<f64> {
        let disc = Discretization::new(&self.domain);
        let imb = disc.imbalance(&self.values);
        let mut out = vec![0.0; self.values.len()];
        for (v, &node) in disc.active.iter().enumerate() {
            out[node] = imb[v] / disc.area[v];
        }
        out
    }

    /// (∂_s f, ∂_θ f) at node (i, j) by second-order differences.
    pub fn node_log_gradient(&self, i: usize, j: usize) -> (f64, f64) {
        let d = &self.domain;
        let (rows, cols) = (d.rows(), d.columns());
        let fs = if i == 0 {
            (-3.0 * self.at(0, j) + 4.0 * self.at(1, j) - self.at(2, j)) / (2.0 * d.hs())
        } else if i + 1 == rows {
            (3.0 * self.at(i, j) - 4.0 * self.at(i - 1, j) + self.at(i - 2, j)) / (2.0 * d.hs())
        } else {
            (self.at(i + 1, j) - self.at(i - 1, j)) / (2.0 * d.hs())
        };
        let ft = if d.is_periodic() {
            (self.at(i, (j + 1) % cols) - self.at(i, (j + cols - 1) % cols)) / (2.0 * d.ht())
        } else if j == 0 {
            (-3.0 * self.at(i, 0) + 4.0 * self.at(i, 1) - self.at(i, 2)) / (2.0 * d.ht())
        } else if j + 1 == cols {
            (3.0 * self.at(i, j) - 4.0 * self.at(i, j - 1) + self.at(i, j - 2)) / (2.0 * d.ht())
        } else {
            (self.at(i, j + 1) - self.at(i, j - 1)) / (2.0 * d.ht())
        };
        (fs, ft)
    }

    /// Euclidean gradient f_x + i·f_y at node (i, j).
    pub fn node_gradient(&self, i: usize, j: usize) -> Complex64 {
        let (fs, ft) = self.node_log_gradient(i, j);
        let d = &self.domain;
        Complex64::new(fs, ft) * Complex64::from_polar((-d.s_at(i)).exp(), d.theta_at(j))
    }

    /// max over nodes outside the holes of ‖∇_g f‖_g = λ⁻¹|∇f|.
    pub fn max_metric_gradient(&self) -> f64 {
        let d = &self.domain;
        let mut m: f64 = 0.0;
        for i in 0..d.rows() {
            for j in 0..d.columns() {
                let p = d.node_point(i, j);
                if d.hole_containing(p).is_none() {
                    let lambda = d.metric().factor(d.absolute(p));
                    m = m.max(self.node_gradient(i, j).norm() / lambda);
                }
            }
        }
        m
    }

    fn stencil(&self, u: f64, n: usize, periodic: bool) -> ([usize; 4], [f64; 4]) {
        if periodic {
            let base = u.floor() as isize - 1;
            let w = lagrange4(u - base as f64);
            let idx = std::array::from_fn(|k| (base + k as isize).rem_euclid(n as isize) as usize);
            (idx, w)
        } else {
            let base = (u.floor() as isize - 1).clamp(0, n as isize - 4) as usize;
            let w = lagrange4(u - base as f64);
            (std::array::from_fn(|k| base + k), w)
        }
    }

    /// Bicubic interpolation of (f, ∂_s f, ∂_θ f) at a relative cover point.
    pub fn interpolate(&self, p: CoverPoint) -> Result<(f64, f64, f64), MseError> {
        let d = &self.domain;
        let s = p.modulus().ln();
        let u = (s - d.s_min()) / d.hs();
        let v = (p.argument() - d.theta_start()) / d.ht();
        let eps = 1e-9;
        if !(u >= -eps && u <= d.ns() as f64 + eps) || (!d.is_periodic() && !(v >= -eps && v <= d.nt() as f64 + eps)) {
            return Err(MseError::OutsideDomain(p.planar()));
        }
        let (iu, wu) = self.stencil(u, d.rows(), false);
        let (iv, wv) = self.stencil(v, d.columns(), d.is_periodic());
        let mut acc = (0.0, 0.0, 0.0);
        for a in 0..4 {
            for b in 0..4 {
                let w = wu[a] * wv[b];
                let (fs, ft) = self.node_log_gradient(iu[a], iv[b]);
                acc.0 += w * self.at(iu[a], iv[b]);
                acc.1 += w * fs;
                acc.2 += w * ft;
            }
        }
        Ok(acc)
    }

    /// Interpolated euclidean gradient f_x + i·f_y at an absolute planar point.
    pub fn gradient_at(&self, z: Complex64) -> Result<Complex64, MseError> {
        let p = self.domain.lift(z).ok_or(MseError::OutsideDomain(z))?;
        let (_, fs, ft) = self.interpolate(p)?;
        Ok(Complex64::new(fs, ft) * Complex64::from_polar(1.0 / p.modulus(), p.argument()))
    }

    pub fn value_at(&self, z: Complex64) -> Result<f64, MseError> {
        let p = self.domain.lift(z).ok_or(MseError::OutsideDomain(z))?;
        Ok(self.interpolate(p)?.0)
    }

    /// Grid dump with columns s, θ, value.
    pub fn to_csv(&self) -> String {
        let d = &self.domain;
        let mut out = String::from("# s,theta,value: log-radius, angle, graph height at grid nodes\ns,theta,value\n");
        for i in 0..d.rows() {
            for j in 0..d.columns() {
                out.push_str(&format!("{},{},{}\n", d.s_at(i), d.theta_at(j), self.at(i, j)));
            }
        }
        out
    }
}
