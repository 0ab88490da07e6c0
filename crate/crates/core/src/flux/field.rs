use std::sync::Arc;

use num_complex::Complex64;

use crate::geometry::{AnnularDomain, ConformalMetric};
use crate::msegraph::GraphFunction;

use super::FluxError;

/// A graph whose euclidean gradient can be evaluated along a contour.
pub trait GraphField {
    fn metric(&self) -> ConformalMetric;

    /// f_x + i·f_y at a planar point.
    fn gradient(&self, z: Complex64) -> Result<Complex64, FluxError>;

    /// Distance from z to the edge of the region where the gradient is valid.
    fn clearance(&self, z: Complex64) -> f64;

    /// Smallest clearance a contour node may have at z.
    fn min_clearance(&self, z: Complex64) -> f64;
}

impl GraphField for GraphFunction {
    fn metric(&self) -> ConformalMetric {
        self.domain().metric()
    }

    fn gradient(&self, z: Complex64) -> Result<Complex64, FluxError> {
        Ok(self.gradient_at(z)?)
    }

    fn clearance(&self, z: Complex64) -> f64 {
        let d = self.domain();
        match d.lift(z) {
            Some(p) if d.contains(p) => d.boundary_distance(p),
            _ => 0.0,
        }
    }

    /// One grid cell: the log-polar cell at z has euclidean size ≈ |z−c|·h.
    fn min_clearance(&self, z: Complex64) -> f64 {
        let d = self.domain();
        (z - d.center()).norm() * d.hs().max(d.ht())
    }
}

type Gradient = dyn Fn(Complex64) -> Complex64 + Send + Sync;

/// A graph given by a closed-form gradient.
#[derive(Clone)]
pub struct AnalyticGraph {
    gradient: Arc<Gradient>,
    metric: ConformalMetric,
    domain: Option<AnnularDomain>,
}

impl AnalyticGraph {
    pub fn new(metric: ConformalMetric, gradient: impl Fn(Complex64) -> Complex64 + Send + Sync + 'static) -> Self {
        Self { gradient: Arc::new(gradient), metric, domain: None }
    }

    /// Restrict the graph to a domain; contours must then stay inside it.
    pub fn on(mut self, domain: AnnularDomain) -> Self {
        self.domain = Some(domain);
        self
    }

    /// The graph of ε·f.
    pub fn scaled(&self, eps: f64) -> Self {
        let g = Arc::clone(&self.gradient);
        Self { gradient: Arc::new(move |z| eps * g(z)), metric: self.metric, domain: self.domain.clone() }
    }
}

impl std::fmt::Debug for AnalyticGraph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("AnalyticGraph")
            .field("metric", &self.metric)
            .field("domain", &self.domain)
            .finish_non_exhaustive()
    }
}

impl GraphField for AnalyticGraph {
    fn metric(&self) -> ConformalMetric {
        self.metric
    }

    fn gradient(&self, z: Complex64) -> Result<Complex64, FluxError> {
        let g = (self.gradient)(z);
        if !(g.re.is_finite() && g.im.is_finite()) {
            return Err(FluxError::InvalidContour(format!("gradient is singular at {z}")));
        }
        Ok(g)
    }

    fn clearance(&self, z: Complex64) -> f64 {
        match &self.domain {
            Some(d) if d.contains(z) => d.boundary_distance(z),
            Some(_) => 0.0,
            None => f64::INFINITY,
        }
    }

    fn min_clearance(&self, _z: Complex64) -> f64 {
        0.0
    }
}
