use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::ComplexError;
use crate::geometry::CoverPoint;

/// Stop doubling once two successive trapezoid sums differ by less than this.
pub const ADAPTIVE_TOLERANCE: f64 = 1e-11;
/// Node cap for adaptive doubling.
pub const ADAPTIVE_MAX_NODES: usize = 1 << 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Orientation {
    Ccw,
    Cw,
}

impl Orientation {
    pub fn sign(self) -> f64 {
        match self {
            Orientation::Ccw => 1.0,
            Orientation::Cw => -1.0,
        }
    }
}

/// A circle discretized by equispaced nodes, shifted half a step off the
/// coordinate axes.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Contour {
    pub center: Complex64,
    pub radius: f64,
    pub orientation: Orientation,
    pub node_count: usize,
}

impl Contour {
    pub fn new(
        center: Complex64,
        radius: f64,
        orientation: Orientation,
        node_count: usize,
    ) -> Result<Self, ComplexError> {
        if !(radius > 0.0 && radius.is_finite()) {
            return Err(ComplexError::InvalidContour(format!("radius {radius}")));
        }
        if node_count < 3 {
            return Err(ComplexError::InvalidContour(format!("{node_count} nodes")));
        }
        Ok(Self { center, radius, orientation, node_count })
    }

    pub fn ccw(center: Complex64, radius: f64, node_count: usize) -> Result<Self, ComplexError> {
        Self::new(center, radius, Orientation::Ccw, node_count)
    }

    pub fn with_nodes(&self, node_count: usize) -> Self {
        Self { node_count, ..*self }
    }

    pub fn length(&self) -> f64 {
        2.0 * PI * self.radius
    }

    /// Angle of node k.
    pub fn angle(&self, k: usize) -> f64 {
        2.0 * PI * (k as f64 + 0.5) / self.node_count as f64
    }

    /// Node positions and trapezoid weights dz.
    pub fn nodes(&self) -> impl Iterator<Item = (Complex64, Complex64)> + '_ {
        let h = 2.0 * PI / self.node_count as f64 * self.orientation.sign();
        (0..self.node_count).map(move |k| {
            let e = Complex64::from_polar(1.0, self.angle(k));
            let z = self.center + self.radius * e;
            (z, Complex64::i() * self.radius * e * h)
        })
    }

    /// Nodes lifted to the cover, starting from the lift `base` of the center.
    /// The argument is carried by continuity, which needs radius < |center|.
    pub fn cover_nodes(&self, base: CoverPoint) -> Result<Vec<(CoverPoint, Complex64)>, ComplexError> {
        if (base.planar() - self.center).norm() > 1e-12 * (1.0 + self.center.norm()) {
            return Err(ComplexError::InvalidContour("cover base does not project to the contour center".into()));
        }
        if self.radius >= base.modulus() {
            return Err(ComplexError::InvalidContour("circle encloses the puncture".into()));
        }
        self.nodes().map(|(z, dz)| Ok((base.translate(z - self.center)?, dz))).collect()
    }
}

/// ∮ f dz by the trapezoid rule on the contour nodes.
pub fn contour_integral<F>(f: F, c: &Contour) -> Result<Complex64, ComplexError>
where
    F: Fn(Complex64) -> Complex64,
{
    let mut acc = Complex64::new(0.0, 0.0);
    for (k, (z, dz)) in c.nodes().enumerate() {
        let v = f(z);
        if !v.is_finite() {
            return Err(ComplexError::QuadratureFailure { node: k });
        }
        acc += v * dz;
    }
    Ok(acc)
}

/// ∮ f dz for an integrand defined on the cover.
pub fn cover_contour_integral<F>(f: F, base: CoverPoint, c: &Contour) -> Result<Complex64, ComplexError>
where
    F: Fn(CoverPoint) -> Complex64,
{
    let mut acc = Complex64::new(0.0, 0.0);
    for (k, (p, dz)) in c.cover_nodes(base)?.into_iter().enumerate() {
        let v = f(p);
        if !v.is_finite() {
            return Err(ComplexError::QuadratureFailure { node: k });
        }
        acc += v * dz;
    }
    Ok(acc)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AdaptiveIntegral {
    pub value: Complex64,
    pub nodes: usize,
    pub last_change: f64,
    pub converged: bool,
}

/// Doubles the node count from `c.node_count` until two successive results
/// differ by less than [`ADAPTIVE_TOLERANCE`] or [`ADAPTIVE_MAX_NODES`] is hit.
pub fn contour_integral_adaptive<F>(f: F, c: &Contour) -> Result<AdaptiveIntegral, ComplexError>
where
    F: Fn(Complex64) -> Complex64,
{
    let mut n = c.node_count.max(8);
    let mut prev = contour_integral(&f, &c.with_nodes(n))?;
    let mut last_change = f64::INFINITY;
    loop {
        let next_n = 2 * n;
        if next_n > ADAPTIVE_MAX_NODES {
            return Ok(AdaptiveIntegral { value: prev, nodes: n, last_change, converged: false });
        }
        let next = contour_integral(&f, &c.with_nodes(next_n))?;
        let change = (next - prev).norm();
        if change < ADAPTIVE_TOLERANCE {
            return Ok(AdaptiveIntegral { value: next, nodes: next_n, last_change: change, converged: true });
        }
        prev = next;
        n = next_n;
        last_change = change;
    }
}
