//! Fluxes of Killing fields of S²(R)×ℝ across closed curves on minimal
//! graphs.
//!
//! For a curve γ in the base domain the conormal μ of the graph over γ is
//! integrated against a Killing field. On a minimal graph the result only
//! depends on the homology class of γ in Ω. Each flux is available in two
//! forms: the exact conormal integrand, and the small-gradient expansion in
//! f_z = (f_x − i f_y)/2, which is how the flux enters the force balance.
//!
//! The normal ν along γ is the euclidean exterior normal with (γ′, ν)
//! negatively oriented, so ν·ds = −i·dz for a counterclockwise curve.

mod field;
mod integrals;
mod neck;

pub use field::{AnalyticGraph, GraphField};
pub use integrals::{
    expansion_defect, horizontal_flux, stable_constant, vertical_flux, ExpansionDefect, FluxMethod, FluxResult,
};
pub use neck::{cluster_flux, neck_flux_model};

use crate::complexkit::ComplexError;
use crate::forces::ForceError;
use crate::msegraph::MseError;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum FluxError {
    #[error("invalid contour: {0}")]
    InvalidContour(String),
    #[error("horizontal flux needs a horizontal Killing field")]
    WrongFieldKind,
    #[error("radius {eps} overlaps a neighbouring neck (max {max})")]
    OverlappingNecks { eps: f64, max: f64 },
    #[error("pitch must lie in (0, 1), got {0}")]
    InvalidPitch(f64),
    #[error(transparent)]
    Mse(#[from] MseError),
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error(transparent)]
    Force(#[from] ForceError),
}
