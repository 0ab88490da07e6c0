use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::HarmonicError;
use crate::geometry::CoverPoint;

/// Smooth step S(x) = ψ(x)/(ψ(x)+ψ(1−x)), ψ(x) = e^(−1/x), with S′ and S″.
///
/// Written as the logistic 1/(1+e^g), g = 1/x − 1/(1−x), to stay finite near
/// the endpoints.
pub fn smooth_step(x: f64) -> (f64, f64, f64) {
    if x <= 0.0 {
        return (0.0, 0.0, 0.0);
    }
    if x >= 1.0 {
        return (1.0, 0.0, 0.0);
    }
    let y = 1.0 - x;
    let g = 1.0 / x - 1.0 / y;
    let s = if g > 0.0 {
        let e = (-g).exp();
        e / (1.0 + e)
    } else {
        1.0 / (1.0 + g.exp())
    };
    let q = s * (1.0 - s);
    let k = 1.0 / (x * x) + 1.0 / (y * y);
    let dk = -2.0 / (x * x * x) + 2.0 / (y * y * y);
    let d1 = k * q;
    let d2 = dk * q + k * d1 * (1.0 - 2.0 * s);
    (s, d1, d2)
}

/// χ(θ) = S((2π − θ)/π): 1 on θ ≤ π, 0 on θ ≥ 2π.
pub fn bump_chi(theta: f64) -> f64 {
    bump_chi_derivatives(theta).0
}

/// (χ, χ′, χ″) at θ.
pub fn bump_chi_derivatives(theta: f64) -> (f64, f64, f64) {
    let (s, d1, d2) = smooth_step((2.0 * PI - theta) / PI);
    (s, -d1 / PI, d2 / (PI * PI))
}

/// δ(z): min(|z|, |z − pᵢ|) for 0 < arg z < π, and |z| for arg z ≥ π.
pub fn delta_distance(poles: &[CoverPoint], z: CoverPoint) -> f64 {
    let r = z.modulus();
    let theta = z.argument();
    if theta > 0.0 && theta < PI {
        let w = z.planar();
        poles.iter().map(|p| (w - p.planar()).norm()).fold(r, f64::min)
    } else {
        r
    }
}

/// g_n(z) = C₂/|z|² + χ(arg z) Σ 1/|z − pᵢ|².
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SupersolutionGn {
    pub c2: f64,
    pub poles: Vec<CoverPoint>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SupersolutionSample {
    pub value: f64,
    pub laplacian: f64,
    pub numeric_laplacian: f64,
    pub delta: f64,
}

impl SupersolutionGn {
    pub fn new(c2: f64, poles: Vec<CoverPoint>) -> Result<Self, HarmonicError> {
        if !(c2 >= 1.0) {
            return Err(HarmonicError::InvalidParameter(format!("C2 = {c2} < 1")));
        }
        Ok(Self { c2, poles })
    }

    pub fn value(&self, z: CoverPoint) -> f64 {
        let w = z.planar();
        let chi = bump_chi(z.argument());
        let mut sum = 0.0;
        if chi != 0.0 {
            for p in &self.poles {
                sum += 1.0 / (w - p.planar()).norm_sqr();
            }
        }
        self.c2 / w.norm_sqr() + chi * sum
    }

    /// Closed-form Laplacian: 4C₂/r⁴ + χΔq + 2χ′∇θ·∇q + χ″q/r².
    pub fn laplacian(&self, z: CoverPoint) -> f64 {
        let w = z.planar();
        let r2 = w.norm_sqr();
        let (chi, d1, d2) = bump_chi_derivatives(z.argument());
        let mut q = 0.0;
        let mut lap_q = 0.0;
        let mut grad_q = Complex64::new(0.0, 0.0);
        for p in &self.poles {
            let d = w - p.planar();
            let n2 = d.norm_sqr();
            q += 1.0 / n2;
            lap_q += 4.0 / (n2 * n2);
            grad_q += -2.0 * d / (n2 * n2);
        }
        let grad_theta = Complex64::new(-w.im, w.re) / r2;
        let cross = grad_theta.re * grad_q.re + grad_theta.im * grad_q.im;
        4.0 * self.c2 / (r2 * r2) + chi * lap_q + 2.0 * d1 * cross + d2 * q / r2
    }

    /// Five-point Laplacian with step `h`, stencil points carried on the cover.
    pub fn numeric_laplacian(&self, z: CoverPoint, h: f64) -> Result<f64, HarmonicError> {
        let c = self.value(z);
        let mut acc = -4.0 * c;
        for dz in [Complex64::new(h, 0.0), Complex64::new(-h, 0.0), Complex64::new(0.0, h), Complex64::new(0.0, -h)] {
            acc += self.value(z.translate(dz)?);
        }
        Ok(acc / (h * h))
    }

    pub fn sample(&self, z: CoverPoint) -> Result<SupersolutionSample, HarmonicError> {
        let delta = delta_distance(&self.poles, z);
        Ok(SupersolutionSample {
            value: self.value(z),
            laplacian: self.laplacian(z),
            numeric_laplacian: self.numeric_laplacian(z, 1e-3 * delta)?,
            delta,
        })
    }
}

pub fn supersolution_gn(cfg: &SupersolutionGn, z: CoverPoint) -> Result<SupersolutionSample, HarmonicError> {
    cfg.sample(z)
}
