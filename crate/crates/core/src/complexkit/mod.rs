//! Contour quadrature on circles, residue identities for log-poles, the
//! Cauchy–Pompeiu formula and a Laurent-type splitting for C¹ functions.

mod contour;
mod laurent;
mod pompeiu;
mod residue;

pub use contour::{
    contour_integral, contour_integral_adaptive, cover_contour_integral, AdaptiveIntegral, Contour, Orientation,
    ADAPTIVE_MAX_NODES, ADAPTIVE_TOLERANCE,
};
pub use laurent::{
    check_real_residue, check_real_residue_with_gradient, laurent_decompose, AreaTerm, LaurentDecomposition,
    LaurentOptions, DEFAULT_CUTOFF,
};
pub use pompeiu::{pompeiu_area_term, pompeiu_eval, PompeiuOptions};
pub use residue::{residue_log_pole, residue_numeric, PoleOrder, Prefactor};

use crate::geometry::GeometryError;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ComplexError {
    #[error("quadrature failure: non-finite sample at node {node}")]
    QuadratureFailure { node: usize },
    #[error("singular configuration: {0}")]
    SingularConfiguration(&'static str),
    #[error("evaluation point at distance {distance} from the boundary (minimum {min})")]
    NearBoundaryEvaluation { distance: f64, min: f64 },
    #[error("invalid contour: {0}")]
    InvalidContour(String),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
}
