use std::f64::consts::{FRAC_PI_2, PI};
use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;

use super::MseError;
use crate::geometry::{ConformalMetric, CoverPoint};

type BoundaryFn = Arc<dyn Fn(CoverPoint) -> f64 + Send + Sync>;

/// Condition on one boundary component of a log-polar domain.
#[derive(Clone)]
pub enum Boundary {
    /// Prescribed values, as a function of the point relative to the domain
    /// center (its argument is the grid angle, unreduced).
    Dirichlet(BoundaryFn),
    /// Zero conormal derivative.
    Neumann,
}

impl Boundary {
    pub fn dirichlet(f: impl Fn(CoverPoint) -> f64 + Send + Sync + 'static) -> Self {
        Boundary::Dirichlet(Arc::new(f))
    }

    pub fn constant(v: f64) -> Self {
        Boundary::dirichlet(move |_| v)
    }

    pub fn is_dirichlet(&self) -> bool {
        matches!(self, Boundary::Dirichlet(_))
    }

    pub(crate) fn eval(&self, p: CoverPoint) -> Option<f64> {
        match self {
            Boundary::Dirichlet(f) => Some(f(p)),
            Boundary::Neumann => None,
        }
    }
}

impl fmt::Debug for Boundary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Boundary::Dirichlet(_) => f.write_str("Dirichlet(..)"),
            Boundary::Neumann => f.write_str("Neumann"),
        }
    }
}

/// Angular extent: a full turn, or a strip of the universal cover with
/// Dirichlet data on both rays.
#[derive(Debug, Clone)]
pub enum ThetaRange {
    Periodic,
    Strip { start: f64, end: f64, lower: Boundary, upper: Boundary },
}

/// Disk removed from the domain, carrying constant Dirichlet data.
///
/// The center is relative to the domain center; on a strip its argument
/// selects the sheet.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Hole {
    pub center: CoverPoint,
    pub radius: f64,
    pub value: f64,
}

impl Hole {
    pub fn new(center: CoverPoint, radius: f64, value: f64) -> Result<Self, MseError> {
        if !(radius > 0.0 && radius.is_finite()) || !value.is_finite() {
            return Err(MseError::InvalidDomain(format!("hole radius {radius}, value {value}")));
        }
        Ok(Self { center, radius, value })
    }

    fn contains(&self, p: CoverPoint, periodic: bool) -> bool {
        if !periodic && (p.argument() - self.center.argument()).abs() >= FRAC_PI_2 {
            return false;
        }
        (p.planar() - self.center.planar()).norm() < self.radius
    }

    fn distance(&self, p: CoverPoint, periodic: bool) -> f64 {
        if !periodic && (p.argument() - self.center.argument()).abs() >= FRAC_PI_2 {
            return f64::INFINITY;
        }
        (p.planar() - self.center.planar()).norm() - self.radius
    }
}

/// Boundary component a fixed node or boundary face belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Component {
    Inner,
    Outer,
    Lower,
    Upper,
    Hole(usize),
}

impl Component {
    pub fn label(self) -> String {
        match self {
            Component::Inner => "inner".into(),
            Component::Outer => "outer".into(),
            Component::Lower => "lower".into(),
            Component::Upper => "upper".into(),
            Component::Hole(k) => format!("hole{k}"),
        }
    }
}

/// Log-polar domain r_in ≤ |z − center| ≤ r_out, optionally cut to an
/// angular strip of the cover, minus constant-value holes.
///
/// Grid nodes sit at s = log r_in + i·h_s (i = 0..=ns) and θ = θ₀ + j·h_θ.
#[derive(Debug, Clone)]
pub struct GraphDomain {
    center: Complex64,
    r_in: f64,
    r_out: f64,
    theta: ThetaRange,
    inner: Boundary,
    outer: Boundary,
    holes: Vec<Hole>,
    metric: ConformalMetric,
    ns: usize,
    nt: usize,
}

impl GraphDomain {
    /// Full annulus with zero Dirichlet data on both circles.
    pub fn annulus(r_in: f64, r_out: f64, ns: usize, nt: usize, metric: ConformalMetric) -> Result<Self, MseError> {
        Self::build(r_in, r_out, ThetaRange::Periodic, ns, nt, metric)
    }

    /// Strip start ≤ arg ≤ end of the cover with the given data on both rays
    /// and zero Dirichlet data on both circles.
    #[allow(clippy::too_many_arguments)]
    pub fn strip(
        r_in: f64,
        r_out: f64,
        start: f64,
        end: f64,
        lower: Boundary,
        upper: Boundary,
        ns: usize,
        nt: usize,
        metric: ConformalMetric,
    ) -> Result<Self, MseError> {
        if !(start.is_finite() && end.is_finite() && end > start) {
            return Err(MseError::InvalidDomain(format!("strip [{start}, {end}]")));
        }
        if !lower.is_dirichlet() || !upper.is_dirichlet() {
            return Err(MseError::InvalidDomain("strip rays need Dirichlet data".into()));
        }
        Self::build(r_in, r_out, ThetaRange::Strip { start, end, lower, upper }, ns, nt, metric)
    }

    fn build(
        r_in: f64,
        r_out: f64,
        theta: ThetaRange,
        ns: usize,
        nt: usize,
        metric: ConformalMetric,
    ) -> Result<Self, MseError> {
        if !(r_in > 0.0 && r_out > r_in && r_out.is_finite()) {
            return Err(MseError::InvalidDomain(format!("radii {r_in}, {r_out}")));
        }
        if ns < 4 || nt < 4 {
            return Err(MseError::InvalidDomain(format!("grid {ns}×{nt} too coarse")));
        }
        Ok(Self {
            center: Complex64::new(0.0, 0.0),
            r_in,
            r_out,
            theta,
            inner: Boundary::constant(0.0),
            outer: Boundary::constant(0.0),
            holes: Vec::new(),
            metric,
            ns,
            nt,
        })
    }

    pub fn with_center(mut self, center: Complex64) -> Self {
        self.center = center;
        self
    }

    pub fn with_inner(mut self, b: Boundary) -> Self {
        self.inner = b;
        self
    }

    pub fn with_outer(mut self, b: Boundary) -> Self {
        self.outer = b;
        self
    }

    /// Adds a hole; it must stay two cells clear of the circles and of the
    /// other holes.
    pub fn with_hole(mut self, hole: Hole) -> Result<Self, MseError> {
        let c = hole.center;
        let gap = 2.0 * self.hs().max(self.ht()) * c.modulus();
        if c.modulus() - hole.radius < self.r_in + gap || c.modulus() + hole.radius > self.r_out - gap {
            return Err(MseError::InvalidDomain(format!(
                "hole at {:?} of radius {} meets a boundary circle",
                c.planar(),
                hole.radius
            )));
        }
        if let ThetaRange::Strip { start, end, .. } = self.theta {
            let half = (hole.radius / c.modulus()).asin() + 2.0 * self.ht();
            if c.argument() - half < start || c.argument() + half > end {
                return Err(MseError::InvalidDomain("hole meets a strip ray".into()));
            }
        }
        for other in &self.holes {
            let same_sheet = self.is_periodic() || (other.center.argument() - c.argument()).abs() < FRAC_PI_2;
            if same_sheet && (other.center.planar() - c.planar()).norm() <= other.radius + hole.radius + gap {
                return Err(MseError::InvalidDomain("holes overlap".into()));
            }
        }
        self.holes.push(hole);
        Ok(self)
    }

    /// Same geometry and data on a different grid.
    pub fn refined(&self, ns: usize, nt: usize) -> Result<Self, MseError> {
        if ns < 4 || nt < 4 {
            return Err(MseError::InvalidDomain(format!("grid {ns}×{nt} too coarse")));
        }
        Ok(Self { ns, nt, ..self.clone() })
    }

    pub fn center(&self) -> Complex64 {
        self.center
    }
    pub fn r_in(&self) -> f64 {
        self.r_in
    }
    pub fn r_out(&self) -> f64 {
        self.r_out
    }
    pub fn theta_range(&self) -> &ThetaRange {
        &self.theta
    }
    pub fn inner(&self) -> &Boundary {
        &self.inner
    }
    pub fn outer(&self) -> &Boundary {
        &self.outer
    }
    pub fn holes(&self) -> &[Hole] {
        &self.holes
    }
    pub fn metric(&self) -> ConformalMetric {
        self.metric
    }
    pub fn ns(&self) -> usize {
        self.ns
    }
    pub fn nt(&self) -> usize {
        self.nt
    }

    pub fn is_periodic(&self) -> bool {
        matches!(self.theta, ThetaRange::Periodic)
    }

    pub fn s_min(&self) -> f64 {
        self.r_in.ln()
    }

    pub fn hs(&self) -> f64 {
        (self.r_out / self.r_in).ln() / self.ns as f64
    }

    pub fn theta_start(&self) -> f64 {
        match self.theta {
            ThetaRange::Periodic => 0.0,
            ThetaRange::Strip { start, .. } => start,
        }
    }

    pub fn theta_span(&self) -> f64 {
        match self.theta {
            ThetaRange::Periodic => 2.0 * PI,
            ThetaRange::Strip { start, end, .. } => end - start,
        }
    }

    pub fn ht(&self) -> f64 {
        self.theta_span() / self.nt as f64
    }

    /// Number of θ columns stored (the periodic seam is not duplicated).
    pub fn columns(&self) -> usize {
        if self.is_periodic() {
            self.nt
        } else {
            self.nt + 1
        }
    }

    pub fn rows(&self) -> usize {
        self.ns + 1
    }

    pub fn node_count(&self) -> usize {
        self.rows() * self.columns()
    }

    pub fn index(&self, i: usize, j: usize) -> usize {
        i * self.columns() + j
    }

    pub fn s_at(&self, i: usize) -> f64 {
        self.s_min() + i as f64 * self.hs()
    }

    pub fn theta_at(&self, j: usize) -> f64 {
        self.theta_start() + j as f64 * self.ht()
    }

    /// Point of node (i, j) relative to the center.
    pub fn node_point(&self, i: usize, j: usize) -> CoverPoint {
        self.log_point(self.s_at(i), self.theta_at(j))
    }

    pub(crate) fn log_point(&self, s: f64, theta: f64) -> CoverPoint {
        CoverPoint::new(s.exp(), theta).expect("grid points are finite")
    }

    /// Absolute planar position of a relative point.
    pub fn absolute(&self, p: CoverPoint) -> Complex64 {
        self.center + p.planar()
    }

    /// μ = λ⁻²e^{−2s}: the factor turning |∇_w f|² into |∇_g f|²_g.
    pub(crate) fn mu(&self, s: f64, theta: f64) -> f64 {
        let lambda = self.metric.factor(self.absolute(self.log_point(s, theta)));
        (-2.0 * s).exp() / (lambda * lambda)
    }

    pub fn hole_containing(&self, p: CoverPoint) -> Option<usize> {
        let periodic = self.is_periodic();
        self.holes.iter().position(|h| h.contains(p, periodic))
    }

    /// Whether a relative point lies in the open domain.
    pub fn contains(&self, p: CoverPoint) -> bool {
        let r = p.modulus();
        if !(r > self.r_in && r < self.r_out) {
            return false;
        }
        if let ThetaRange::Strip { start, end, .. } = self.theta {
            if !(p.argument() > start && p.argument() < end) {
                return false;
            }
        }
        self.hole_containing(p).is_none()
    }

    /// Euclidean distance from a relative point to ∂Ω.
    pub fn boundary_distance(&self, p: CoverPoint) -> f64 {
        let r = p.modulus();
        let mut d = (r - self.r_in).min(self.r_out - r);
        if let ThetaRange::Strip { start, end, .. } = self.theta {
            for ray in [start, end] {
                let dt = (p.argument() - ray).abs();
                d = d.min(if dt < FRAC_PI_2 { r * dt.sin() } else { r });
            }
        }
        let periodic = self.is_periodic();
        for h in &self.holes {
            d = d.min(h.distance(p, periodic));
        }
        d
    }

    /// Relative cover point of an absolute planar point, on the first sheet
    /// of a strip that contains its angle.
    pub fn lift(&self, z: Complex64) -> Option<CoverPoint> {
        let w = z - self.center;
        if w.norm() == 0.0 {
            return None;
        }
        let mut theta = w.arg();
        match self.theta {
            ThetaRange::Periodic => {
                if theta < 0.0 {
                    theta += 2.0 * PI;
                }
            }
            ThetaRange::Strip { start, .. } => {
                theta = start + (theta - start).rem_euclid(2.0 * PI);
            }
        }
        CoverPoint::new(w.norm(), theta).ok()
    }

    pub(crate) fn validate(&self) -> Result<(), MseError> {
        let any_dirichlet =
            self.inner.is_dirichlet() || self.outer.is_dirichlet() || !self.is_periodic() || !self.holes.is_empty();
        if !any_dirichlet {
            return Err(MseError::IllPosed);
        }
        Ok(())
    }

    pub(crate) fn all_dirichlet(&self) -> bool {
        self.inner.is_dirichlet() && self.outer.is_dirichlet()
    }
}
