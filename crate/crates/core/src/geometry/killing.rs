use num_complex::Complex64;
use serde::{Deserialize, Serialize};

/// The four Killing fields of S²(R)×ℝ used in flux computations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum KillingKind {
    /// Vertical unit field ξ.
    Vertical,
    /// Rotation fixing the great circle through ±iR.
    X,
    /// Rotation fixing the great circle through ±R.
    Y,
    /// Rotation about the vertical axis, tangent to the equator.
    E,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct KillingField {
    pub kind: KillingKind,
    pub radius: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum KillingValue {
    Horizontal(Complex64),
    Vertical,
}

impl KillingField {
    pub fn new(kind: KillingKind, radius: f64) -> Self {
        Self { kind, radius }
    }

    pub fn is_horizontal(&self) -> bool {
        self.kind != KillingKind::Vertical
    }

    /// Horizontal component at `z`, `None` for ξ.
    pub fn horizontal(&self, z: Complex64) -> Option<Complex64> {
        let r = self.radius;
        let w = z * z / (r * r);
        let one = Complex64::new(1.0, 0.0);
        let i = Complex64::i();
        match self.kind {
            KillingKind::Vertical => None,
            KillingKind::X => Some(0.5 * (one + w)),
            KillingKind::Y => Some(0.5 * i * (one - w)),
            // Counterclockwise rotation about the vertical axis.
            KillingKind::E => Some(i * z / r),
        }
    }
}

pub fn killing_at(k: KillingField, z: Complex64) -> KillingValue {
    match k.horizontal(z) {
        Some(v) => KillingValue::Horizontal(v),
        None => KillingValue::Vertical,
    }
}
