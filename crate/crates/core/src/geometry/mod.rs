//! Conformal model of S²(r)×ℝ: cover arithmetic, metric factor, Killing fields
//! and Möbius maps.

mod cover;
mod killing;
mod metric;
mod moebius;

pub use cover::{apply_involution, cover_log, CoverPoint, Involution};
pub use killing::{killing_at, KillingField, KillingKind, KillingValue};
pub use metric::ConformalMetric;
pub use moebius::{blowup_map, MoebiusMap, ScaledMoebius};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum GeometryError {
    #[error("modulus must be positive and finite, got {0}")]
    NonPositiveModulus(f64),
    #[error("argument must be finite, got {0}")]
    NonFiniteArgument(f64),
    #[error("invalid scale {0}: must be positive")]
    InvalidScale(f64),
    #[error("invalid radius {0}: must be positive")]
    InvalidRadius(f64),
    #[error("degenerate Möbius coefficients (ad - bc = 0)")]
    SingularMoebius,
    #[error("translation by {step} leaves the sheet of a point with modulus {modulus}")]
    TranslationTooLong { step: f64, modulus: f64 },
    #[error("the euclidean metric has no equator")]
    NoEquator,
    #[error("invalid domain: {0}")]
    InvalidDomain(String),
}

/// A planar circle.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Circle {
    pub center: Complex64,
    pub radius: f64,
}

impl Circle {
    pub fn new(center: Complex64, radius: f64) -> Result<Self, GeometryError> {
        if !(radius > 0.0 && radius.is_finite()) {
            return Err(GeometryError::InvalidRadius(radius));
        }
        Ok(Self { center, radius })
    }

    pub fn contains(&self, z: Complex64) -> bool {
        (z - self.center).norm() < self.radius
    }

    /// Signed distance from `z` to the circle, positive outside.
    pub fn signed_distance(&self, z: Complex64) -> f64 {
        (z - self.center).norm() - self.radius
    }
}

/// Outer disk minus finitely many pairwise disjoint closed disks.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AnnularDomain {
    outer: Circle,
    holes: Vec<Circle>,
}

impl AnnularDomain {
    pub fn new(outer: Circle, holes: Vec<Circle>) -> Result<Self, GeometryError> {
        for (i, h) in holes.iter().enumerate() {
            if (h.center - outer.center).norm() + h.radius >= outer.radius {
                return Err(GeometryError::InvalidDomain(format!("hole {i} is not strictly inside the outer circle")));
            }
            for (j, k) in holes.iter().enumerate().skip(i + 1) {
                if (h.center - k.center).norm() <= h.radius + k.radius {
                    return Err(GeometryError::InvalidDomain(format!("holes {i} and {j} overlap")));
                }
            }
        }
        Ok(Self { outer, holes })
    }

    pub fn disk(center: Complex64, radius: f64) -> Result<Self, GeometryError> {
        Self::new(Circle::new(center, radius)?, Vec::new())
    }

    pub fn outer(&self) -> Circle {
        self.outer
    }

    pub fn holes(&self) -> &[Circle] {
        &self.holes
    }

    pub fn contains(&self, z: Complex64) -> bool {
        self.outer.contains(z) && self.holes.iter().all(|h| !h.contains(z) && h.signed_distance(z) > 0.0)
    }

    /// Euclidean distance from an interior point to the boundary.
    pub fn boundary_distance(&self, z: Complex64) -> f64 {
        let mut d = -self.outer.signed_distance(z);
        for h in &self.holes {
            d = d.min(h.signed_distance(z));
        }
        d
    }

    /// Mirror image under complex conjugation.
    pub fn conjugate(&self) -> Self {
        let flip = |c: Circle| Circle { center: c.center.conj(), radius: c.radius };
        Self { outer: flip(self.outer), holes: self.holes.iter().copied().map(flip).collect() }
    }
}
