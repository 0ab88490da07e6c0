use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::GeometryError;

/// A point of the universal cover of the punctured plane.
///
/// The argument is never reduced modulo 2π; it names the sheet.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CoverPoint {
    modulus: f64,
    argument: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Involution {
    /// (m, a) → (m, −a)
    Conjugate,
    /// (m, a) → (1/m, a)
    Invert,
}

impl CoverPoint {
    pub fn new(modulus: f64, argument: f64) -> Result<Self, GeometryError> {
        if !(modulus > 0.0 && modulus.is_finite()) {
            return Err(GeometryError::NonPositiveModulus(modulus));
        }
        if !argument.is_finite() {
            return Err(GeometryError::NonFiniteArgument(argument));
        }
        Ok(Self { modulus, argument })
    }

    /// Lift of a nonzero planar point using the principal argument.
    pub fn from_planar(z: Complex64) -> Result<Self, GeometryError> {
        Self::new(z.norm(), z.arg())
    }

    /// Inverse of [`CoverPoint::log`].
    pub fn from_log(w: Complex64) -> Result<Self, GeometryError> {
        Self::new(w.re.exp(), w.im)
    }

    pub fn modulus(&self) -> f64 {
        self.modulus
    }

    pub fn argument(&self) -> f64 {
        self.argument
    }

    /// Projection to the punctured plane.
    pub fn planar(&self) -> Complex64 {
        Complex64::from_polar(self.modulus, self.argument)
    }

    /// Analytic continuation of log z: ln m + i·a.
    pub fn log(&self) -> Complex64 {
        Complex64::new(self.modulus.ln(), self.argument)
    }

    pub fn conjugate(&self) -> Self {
        Self { modulus: self.modulus, argument: -self.argument }
    }

    pub fn invert(&self) -> Self {
        Self { modulus: 1.0 / self.modulus, argument: self.argument }
    }

    pub fn involution(&self, which: Involution) -> Self {
        match which {
            Involution::Conjugate => self.conjugate(),
            Involution::Invert => self.invert(),
        }
    }

    /// Moves the planar projection by `dz`, carrying the argument by continuity
    /// along the segment. Requires |dz| < modulus so the segment avoids 0.
    pub fn translate(&self, dz: Complex64) -> Result<Self, GeometryError> {
        let step = dz.norm();
        if step >= self.modulus {
            return Err(GeometryError::TranslationTooLong { step, modulus: self.modulus });
        }
        let z = self.planar();
        let ratio = (z + dz) / z;
        Self::new((z + dz).norm(), self.argument + ratio.arg())
    }
}

pub fn cover_log(p: CoverPoint) -> Complex64 {
    p.log()
}

pub fn apply_involution(p: CoverPoint, which: Involution) -> CoverPoint {
    p.involution(which)
}
