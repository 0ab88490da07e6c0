//! Explicit harmonic functions on the cover: the log-quotient Green function
//! h_p, the barrier H_t, the supersolution g_n, and the half-plane
//! representation of positive harmonic functions.

mod barrier;
mod barrier_sum;
mod green;
mod positive;
mod supersolution;

pub use barrier::{barrier_ht, BarrierHt};
pub use barrier_sum::{barrier_sum, barrier_sum_check, BarrierSum, BarrierSumParams, BarrierSumReport};
pub use green::{h_pole, h_pole_dz, limit_u, limit_u_dz, GreenPole};
pub use positive::{fit_positive_harmonic, PositiveHarmonicFit};
pub use supersolution::{
    bump_chi, bump_chi_derivatives, delta_distance, smooth_step, supersolution_gn, SupersolutionGn, SupersolutionSample,
};

use crate::geometry::GeometryError;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum HarmonicError {
    #[error("evaluation at a pole of h_p")]
    PoleEvaluation,
    #[error("argument {0} is outside the half-plane arg z > 0")]
    OutsideHalfPlane(f64),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("coefficient {index} fitted to {value}, not representable with nonnegative weights")]
    NotRepresentable { index: usize, value: f64 },
    #[error(transparent)]
    Geometry(#[from] GeometryError),
}
