//! Catenoidal necks as interacting particles: closed-form forces for the three
//! neck geometries, the same forces from contour integrals of the limit
//! function ũ, random equilibrium scans and the cross-term decay model.

mod closed;
mod config;
mod contour;
mod cross;
mod scan;

pub use closed::{force_case1, force_case2, force_case3b, force_closed, force_vector, kernel_f, ForceVector};
pub use config::{NeckCase, NeckConfiguration};
pub use contour::{
    contour_prefactor, force_via_contour, hand_expansion_residue, max_contour_radius, numeric_residue_case1,
    residue_free_check,
};
pub use cross::{cross_term_decay, CrossTermRow, CrossTermTable, TailModel};
pub use scan::{equilibrium_scan, ScanOptions, ScanReport, ScanTrial, EQUILIBRIUM_TOLERANCE};

use crate::complexkit::ComplexError;
use crate::harmonic::HarmonicError;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ForceError {
    #[error("coincident necks at {0}")]
    CoincidentNecks(f64),
    #[error("unresolved cluster: positions must be strictly increasing")]
    ClusterUnresolved,
    #[error("case hypothesis violated: {0}")]
    CaseHypothesisViolated(String),
    #[error("invalid configuration: {0}")]
    InvalidConfiguration(String),
    #[error("neck index {0} out of range")]
    IndexOutOfRange(usize),
    #[error("operation requires {expected:?}, configuration is {found:?}")]
    WrongCase { expected: NeckCase, found: NeckCase },
    #[error("contour radius {eps} exceeds the admissible {max}")]
    InvalidRadius { eps: f64, max: f64 },
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error(transparent)]
    Harmonic(#[from] HarmonicError),
}
