//! Numerical laboratory for genus-g helicoids in S²×ℝ.
//!
//! Minimal graphs over the universal cover of the punctured plane in a
//! conformal metric, Killing-field fluxes, explicit harmonic barriers, residue
//! and Laurent machinery for C¹ functions, height estimates, and the force
//! balance of catenoidal necks.

// `!(x > 0.0)` is the intended way to reject NaN along with bad values.
// Matrix assembly reads clearer with explicit indices.
#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::needless_range_loop)]

pub mod complexkit;
pub mod flux;
pub mod forces;
pub mod geometry;
pub mod harmonic;
pub mod msegraph;

/// Crate version, echoed into experiment manifests.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    struct Introduction;
    #[doc = include_str!("../../../book/src/geometry.md")]
    struct Geometry;
    #[doc = include_str!("../../../book/src/contours.md")]
    struct Contours;
    #[doc = include_str!("../../../book/src/barriers.md")]
    struct Barriers;
    #[doc = include_str!("../../../book/src/minimal-graphs.md")]
    struct MinimalGraphs;
    #[doc = include_str!("../../../book/src/flux.md")]
    struct Flux;
    #[doc = include_str!("../../../book/src/forces.md")]
    struct Forces;
}
