use std::f64::consts::{FRAC_PI_2, PI};

use num_complex::Complex64;

use super::{ForceError, NeckCase, NeckConfiguration};
use crate::complexkit::{contour_integral, cover_contour_integral, residue_log_pole, Contour, PoleOrder, Prefactor};
use crate::geometry::CoverPoint;
use crate::harmonic::{limit_u_dz, GreenPole};

const NODES: usize = 512;

/// Half the distance from pᵢ to the nearest other singularity of the
/// integrand (other necks, mirror poles −i·yⱼ and, on the cover, the origin).
pub fn max_contour_radius(cfg: &NeckConfiguration, i: usize) -> Result<f64, ForceError> {
    cfg.check_index(i)?;
    let y = cfg.positions();
    let mut d = f64::INFINITY;
    for (j, &yj) in y.iter().enumerate() {
        if j != i {
            d = d.min((y[i] - yj).abs());
        }
    }
    if cfg.case() != NeckCase::Case3b {
        d = d.min(y[i]);
    }
    Ok(0.5 * d)
}

/// Factor relating −Re∮ to the bracketed force: π(y² + 1)/(2y), π/(2y) or 1.
pub fn contour_prefactor(cfg: &NeckConfiguration, i: usize) -> Result<f64, ForceError> {
    cfg.check_index(i)?;
    let y = cfg.positions()[i];
    Ok(match cfg.case() {
        NeckCase::Case1 => PI * (y * y + 1.0) / (2.0 * y),
        NeckCase::Case2 => PI / (2.0 * y),
        NeckCase::Case3b => 1.0,
    })
}

fn green_poles(cfg: &NeckConfiguration) -> Result<Vec<GreenPole>, ForceError> {
    cfg.positions()
        .iter()
        .zip(cfg.weights())
        .map(|(&y, &c)| {
            Ok(GreenPole { p: CoverPoint::new(y, FRAC_PI_2).map_err(crate::harmonic::HarmonicError::from)?, weight: c })
        })
        .collect()
}

/// ∮_{C(pᵢ, ε)} (ũ_z)²·w(z) dz for the configuration's limit function.
pub(crate) fn quadratic_integral(cfg: &NeckConfiguration, i: usize, eps: f64) -> Result<Complex64, ForceError> {
    let max = max_contour_radius(cfg, i)?;
    if !(eps > 0.0 && eps < max) {
        return Err(ForceError::InvalidRadius { eps, max });
    }
    let y = cfg.positions();
    let c = cfg.weights();
    let pi_ = Complex64::new(0.0, y[i]);
    let contour = Contour::ccw(pi_, eps, NODES)?;
    Ok(match cfg.case() {
        NeckCase::Case1 | NeckCase::Case2 => {
            let poles = green_poles(cfg)?;
            let base = CoverPoint::new(y[i], FRAC_PI_2).map_err(crate::harmonic::HarmonicError::from)?;
            let equatorial = cfg.case() == NeckCase::Case1;
            let c0 = cfg.c0();
            cover_contour_integral(
                |z| {
                    let uz = limit_u_dz(c0, &poles, z).unwrap_or(Complex64::new(f64::NAN, 0.0));
                    let w = if equatorial {
                        let q = z.planar();
                        1.0 - q * q
                    } else {
                        Complex64::new(1.0, 0.0)
                    };
                    uz * uz * w
                },
                base,
                &contour,
            )?
        }
        NeckCase::Case3b => contour_integral(
            |z| {
                let uz: Complex64 = y.iter().zip(c).map(|(&yj, &cj)| -cj / (2.0 * (z - Complex64::new(0.0, yj)))).sum();
                uz * uz
            },
            &contour,
        )?,
    })
}

/// Force on neck i from −Re∮(ũ_z)²w dz divided by [`contour_prefactor`].
pub fn force_via_contour(cfg: &NeckConfiguration, i: usize, eps: f64) -> Result<f64, ForceError> {
    let v = quadratic_integral(cfg, i, eps)?;
    Ok(-v.re / contour_prefactor(cfg, i)?)
}

/// Res_{pᵢ}(ũ_z)²(1 − z²) by quadrature.
pub fn numeric_residue_case1(cfg: &NeckConfiguration, i: usize, eps: f64) -> Result<Complex64, ForceError> {
    cfg.require(NeckCase::Case1)?;
    Ok(quadratic_integral(cfg, i, eps)? / Complex64::new(0.0, 2.0 * PI))
}

/// The same residue expanded by hand into log-pole residues:
/// cᵢ²·Res₂ + 2cᵢ·Res₁·(−c₀/i − cᵢ/(log pᵢ − log p̄ᵢ) + Σⱼ cⱼ/(log pᵢ − log pⱼ) − cⱼ/(log pᵢ − log p̄ⱼ)).
pub fn hand_expansion_residue(cfg: &NeckConfiguration, i: usize) -> Result<Complex64, ForceError> {
    cfg.require(NeckCase::Case1)?;
    cfg.check_index(i)?;
    let y = cfg.positions();
    let c = cfg.weights();
    let p = Complex64::new(0.0, y[i]);
    let log = |yy: f64| Complex64::new(yy.ln(), FRAC_PI_2);
    let lp = log(y[i]);
    let mut rest = -cfg.c0() / Complex64::i() - c[i] / (lp - lp.conj());
    for j in 0..cfg.len() {
        if j != i {
            let lq = log(y[j]);
            rest += c[j] / (lp - lq) - c[j] / (lp - lq.conj());
        }
    }
    let r2 = residue_log_pole(p, PoleOrder::Two, Prefactor::Equatorial)?;
    let r1 = residue_log_pole(p, PoleOrder::One, Prefactor::Equatorial)?;
    Ok(c[i] * c[i] * r2 + 2.0 * c[i] * r1 * rest)
}

/// ∮_{C(p, ε)} (1 − z²)/z² dz, zero whenever the circle avoids the origin.
pub fn residue_free_check(p: Complex64, eps: f64) -> Result<Complex64, ForceError> {
    if !(eps > 0.0 && eps < p.norm()) {
        return Err(ForceError::InvalidRadius { eps, max: p.norm() });
    }
    let contour = Contour::ccw(p, eps, NODES)?;
    Ok(contour_integral(|z| (1.0 - z * z) / (z * z), &contour)?)
}
