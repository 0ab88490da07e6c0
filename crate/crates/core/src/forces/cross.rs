use std::f64::consts::{FRAC_PI_2, PI};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::{contour_prefactor, force_case1, max_contour_radius, ForceError, NeckCase, NeckConfiguration};
use crate::complexkit::{cover_contour_integral, Contour};
use crate::geometry::CoverPoint;
use crate::harmonic::{limit_u_dz, GreenPole, HarmonicError};

/// Principal-part perturbation of the normalized deviation near the lowest
/// neck: u_z/ρ = ũ_z + Σₖ Aₖ ρᵏ/(z − p₁)ᵏ with ρ = t/|log t|.
///
/// A₁ is real, as it must be for the gradient of a real function; the higher
/// coefficients are complex.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TailModel {
    pub coeffs: Vec<Complex64>,
}

impl Default for TailModel {
    fn default() -> Self {
        Self {
            coeffs: vec![
                Complex64::new(0.8, 0.0),
                Complex64::new(0.5, 0.3),
                Complex64::new(-0.2, 0.4),
                Complex64::new(0.1, -0.25),
                Complex64::new(0.05, 0.1),
                Complex64::new(-0.03, 0.02),
            ],
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CrossTermRow {
    pub t: f64,
    pub rho: f64,
    /// Re∮ (2t/(4πiz))·u_z·(1 − z²) dz
    pub cross: f64,
    /// −Re∮ (u_z)²(1 − z²) dz
    pub quadratic: f64,
    pub cross_ratio: f64,
    pub quadratic_ratio: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CrossTermTable {
    pub rows: Vec<CrossTermRow>,
    /// Closed-form F₁ times the case-1 prefactor.
    pub limit: f64,
    pub force: f64,
    pub prefactor: f64,
    /// |cross_ratio| strictly decreasing along the sweep.
    pub monotone: bool,
    /// |quadratic_ratio/prefactor − F₁| at the smallest pitch.
    pub final_force_error: f64,
}

/// Cross and quadratic parts of the χ_Y flux on C(p₁, ε) along a decreasing
/// pitch sweep.
pub fn cross_term_decay(
    cfg: &NeckConfiguration,
    pitches: &[f64],
    eps: f64,
    tail: &TailModel,
) -> Result<CrossTermTable, ForceError> {
    cfg.require(NeckCase::Case1)?;
    if pitches.is_empty() || pitches.iter().any(|&t| !(t > 0.0 && t < 1.0)) {
        return Err(ForceError::InvalidConfiguration("pitches must lie in (0, 1)".into()));
    }
    if pitches.windows(2).any(|w| w[1] >= w[0]) {
        return Err(ForceError::InvalidConfiguration("pitch sweep must decrease".into()));
    }
    let max = max_contour_radius(cfg, 0)?;
    if !(eps > 0.0 && eps < max) {
        return Err(ForceError::InvalidRadius { eps, max });
    }
    let y1 = cfg.positions()[0];
    let p1 = Complex64::new(0.0, y1);
    let base = CoverPoint::new(y1, FRAC_PI_2).map_err(HarmonicError::from)?;
    let poles: Vec<GreenPole> = cfg
        .positions()
        .iter()
        .zip(cfg.weights())
        .map(|(&y, &c)| Ok(GreenPole { p: CoverPoint::new(y, FRAC_PI_2).map_err(HarmonicError::from)?, weight: c }))
        .collect::<Result<_, ForceError>>()?;
    let contour = Contour::ccw(p1, eps, 512)?;
    let c0 = cfg.c0();

    let mut rows = Vec::with_capacity(pitches.len());
    for &t in pitches {
        let rho = t / t.ln().abs();
        let uz = |z: CoverPoint| -> Complex64 {
            let q = z.planar();
            let mut v = limit_u_dz(c0, &poles, z).unwrap_or(Complex64::new(f64::NAN, 0.0));
            let mut scale = rho;
            for (k, a) in tail.coeffs.iter().enumerate() {
                v += a * scale / (q - p1).powi(k as i32 + 1);
                scale *= rho;
            }
            v * rho
        };
        let cross = cover_contour_integral(
            |z| {
                let q = z.planar();
                2.0 * t / (4.0 * PI * Complex64::i() * q) * uz(z) * (1.0 - q * q)
            },
            base,
            &contour,
        )?
        .re;
        let quadratic = -cover_contour_integral(
            |z| {
                let q = z.planar();
                let u = uz(z);
                u * u * (1.0 - q * q)
            },
            base,
            &contour,
        )?
        .re;
        rows.push(CrossTermRow {
            t,
            rho,
            cross,
            quadratic,
            cross_ratio: cross / (rho * rho),
            quadratic_ratio: quadratic / (rho * rho),
        });
    }
    let force = force_case1(cfg, 0)?;
    let prefactor = contour_prefactor(cfg, 0)?;
    let monotone = rows.windows(2).all(|w| w[1].cross_ratio.abs() < w[0].cross_ratio.abs());
    let last = rows.last().expect("nonempty sweep");
    let final_force_error = (last.quadratic_ratio / prefactor - force).abs();
    Ok(CrossTermTable { rows, limit: force * prefactor, force, prefactor, monotone, final_force_error })
}
