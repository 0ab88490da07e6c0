use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::GeometryError;

/// z ↦ (az+b)/(cz+d), stored with ad − bc = 1.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MoebiusMap {
    a: Complex64,
    b: Complex64,
    c: Complex64,
    d: Complex64,
}

impl MoebiusMap {
    pub fn new(a: Complex64, b: Complex64, c: Complex64, d: Complex64) -> Result<Self, GeometryError> {
        let det = a * d - b * c;
        if det.norm() == 0.0 || !det.is_finite() {
            return Err(GeometryError::SingularMoebius);
        }
        let s = det.sqrt();
        Ok(Self { a: a / s, b: b / s, c: c / s, d: d / s })
    }

    pub fn identity() -> Self {
        let one = Complex64::new(1.0, 0.0);
        let zero = Complex64::new(0.0, 0.0);
        Self { a: one, b: zero, c: zero, d: one }
    }

    /// The quarter turn φ(z) = (z − i)/(1 − iz) fixing the circle through ±1,
    /// sending i to 0.
    pub fn blowup_rotation() -> Self {
        let i = Complex64::i();
        let one = Complex64::new(1.0, 0.0);
        Self::new(one, -i, -i, one).expect("nonsingular")
    }

    /// Rotation φ(z) = (Rz + iR²)/(iz + R), which carries the equator field χ_E
    /// to χ_X.
    pub fn equator_to_x(radius: f64) -> Self {
        let i = Complex64::i();
        let r = Complex64::new(radius, 0.0);
        Self::new(r, i * r * r, i, r).expect("nonsingular")
    }

    /// Rotation z ↦ iz, which carries χ_X to χ_Y.
    pub fn quarter_turn() -> Self {
        let i = Complex64::i();
        let zero = Complex64::new(0.0, 0.0);
        Self::new(i, zero, zero, Complex64::new(1.0, 0.0)).expect("nonsingular")
    }

    pub fn coefficients(&self) -> [Complex64; 4] {
        [self.a, self.b, self.c, self.d]
    }

    pub fn apply(&self, z: Complex64) -> Complex64 {
        (self.a * z + self.b) / (self.c * z + self.d)
    }

    /// φ′(z) = 1/(cz + d)² under the unit-determinant normalization.
    pub fn derivative(&self, z: Complex64) -> Complex64 {
        let q = self.c * z + self.d;
        1.0 / (q * q)
    }

    pub fn inverse(&self) -> Self {
        Self { a: self.d, b: -self.b, c: -self.c, d: self.a }
    }

    /// self ∘ other.
    pub fn compose(&self, other: &Self) -> Self {
        Self {
            a: self.a * other.a + self.b * other.c,
            b: self.a * other.b + self.b * other.d,
            c: self.c * other.a + self.d * other.c,
            d: self.c * other.b + self.d * other.d,
        }
    }

    /// Push-forward of a planar vector field: (φ_*V)(φ(z)) = φ′(z)·V(z).
    pub fn push_forward<F: Fn(Complex64) -> Complex64>(&self, field: F, z: Complex64) -> (Complex64, Complex64) {
        (self.apply(z), self.derivative(z) * field(z))
    }
}

/// A Möbius map followed by division by a positive scale.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ScaledMoebius {
    pub map: MoebiusMap,
    pub scale: f64,
}

impl ScaledMoebius {
    pub fn apply(&self, z: Complex64) -> Complex64 {
        self.map.apply(z) / self.scale
    }

    pub fn derivative(&self, z: Complex64) -> Complex64 {
        self.map.derivative(z) / self.scale
    }

    pub fn inverse_apply(&self, w: Complex64) -> Complex64 {
        self.map.inverse().apply(w * self.scale)
    }
}

/// Blow-up chart at i: z ↦ φ(z)/mu with φ the quarter turn sending i to 0.
pub fn blowup_map(mu: f64) -> Result<ScaledMoebius, GeometryError> {
    if !(mu > 0.0 && mu.is_finite()) {
        return Err(GeometryError::InvalidScale(mu));
    }
    Ok(ScaledMoebius { map: MoebiusMap::blowup_rotation(), scale: mu })
}
