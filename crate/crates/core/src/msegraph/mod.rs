//! Minimal graphs f: Ω → ℝ in S²(R)×ℝ over planar domains with a conformal
//! metric λ²|dz|², solved on log-polar grids by damped Newton iteration.
//!
//! The equation is div(∇f/W) = 0 with W = √(1 + λ⁻²|∇f|²); in the log
//! coordinate w = log z it keeps the same form, which is what the solver
//! discretizes. Holes carry constant Dirichlet data and are resolved with
//! Shortley–Weller arms.

mod cartesian;
mod domain;
pub mod exact;
mod graph;
mod height;
mod schauder;
mod solver;
mod stencil;

pub use cartesian::{mse_residual, observed_orders, CartesianGrid};
pub use domain::{Boundary, Component, GraphDomain, Hole, ThetaRange};
pub use graph::GraphFunction;
pub use height::{
    height_bound, height_check, ring_bound, ring_gradient_search, HeightReport, HypothesisCheck, RingSearch,
};
pub use schauder::{empirical_schauder, sweep_stable, SchauderReport, ZERO_FLOOR};
pub use solver::{ring_flux, solve_graph, ComponentFlux, SolveOptions, SolveReport};

use num_complex::Complex64;

use crate::geometry::GeometryError;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum MseError {
    #[error("invalid domain: {0}")]
    InvalidDomain(String),
    #[error("ill-posed problem: no Dirichlet data anywhere")]
    IllPosed,
    #[error("Newton iteration stalled after {iterations} steps at residual {residual:e}")]
    NotConverged { iterations: usize, residual: f64, history: Vec<f64> },
    #[error("linear solve failed: {0}")]
    LinearSolve(String),
    #[error("maximum principle violated: {value} outside [{min}, {max}]")]
    MaximumPrinciple { value: f64, min: f64, max: f64 },
    #[error("estimate inapplicable: {0}")]
    EstimateInapplicable(String),
    #[error("height estimate inapplicable: hypothesis {clause} fails: {detail}")]
    Inapplicable { clause: u8, detail: String },
    #[error("invalid rings: {0}")]
    InvalidRings(String),
    #[error("ring {0} is not a full circle of regular nodes")]
    InvalidRing(usize),
    #[error("point {0} is outside the grid")]
    OutsideDomain(Complex64),
    #[error("values do not match the domain")]
    DomainMismatch,
    #[error(transparent)]
    Geometry(#[from] GeometryError),
}
