use std::f64::consts::{PI, SQRT_2};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::domain::Component;
use super::graph::GraphFunction;
use super::stencil::Discretization;
use super::MseError;

const DATA_TOL: f64 = 1e-12;
const SIGN_TOL: f64 = 1e-9;

/// (√2/π)·φ·log(r₂/r₁)
pub fn height_bound(phi: f64, r1: f64, r2: f64) -> f64 {
    SQRT_2 / PI * phi * (r2 / r1).ln()
}

/// √8·φ·(log(r₂/r₁))^{1/2}·(log(r′₂/r′₁))^{−1/2}
pub fn ring_bound(phi: f64, r1: f64, r2: f64, r1p: f64, r2p: f64) -> f64 {
    8f64.sqrt() * phi * ((r2 / r1).ln() / (r2p / r1p).ln()).sqrt()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HypothesisCheck {
    pub clause: u8,
    pub description: String,
    pub measured: f64,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HeightReport {
    pub h: f64,
    pub phi: f64,
    pub bound: f64,
    pub pass: bool,
    pub r1: f64,
    pub r2: f64,
    pub hypotheses: Vec<HypothesisCheck>,
}

/// Checks the five hypotheses of the height estimate on a solved graph over
/// a periodic domain (γ₁ the inner circle, Γ the outer one) and compares the
/// depth with the bound.
pub fn height_check(solution: &GraphFunction, r1: f64, r2: f64) -> Result<HeightReport, MseError> {
    let d = solution.domain();
    if !d.is_periodic() {
        return Err(MseError::Inapplicable { clause: 0, detail: "domain is not a disk minus disks".into() });
    }
    if !(r1 > 0.0 && r1 <= d.r_in() * (1.0 + DATA_TOL) && r2 >= d.r_out() * (1.0 - DATA_TOL)) {
        return Err(MseError::Inapplicable {
            clause: 0,
            detail: format!("need r1 ≤ {} and r2 ≥ {}, got {r1}, {r2}", d.r_in(), d.r_out()),
        });
    }
    let cols = d.columns();
    let row = |i: usize| (0..cols).map(move |j| solution.at(i, j));
    let mut hyps = Vec::new();
    let mut push = |clause: u8, description: &str, measured: f64, holds: bool| {
        hyps.push(HypothesisCheck { clause, description: description.into(), measured, holds });
    };

    let outer_sup = row(d.ns()).fold(0.0f64, |m, v| m.max(v.abs()));
    push(1, "f = 0 on the outer circle", outer_sup, d.outer().is_dirichlet() && outer_sup <= DATA_TOL);

    let inner: Vec<f64> = row(0).collect();
    let v0 = inner[0];
    let spread = inner.iter().fold(0.0f64, |m, v| m.max((v - v0).abs()));
    let h = -v0;
    push(
        2,
        "f = −h ≤ 0 constant on the inner circle",
        spread,
        d.inner().is_dirichlet() && spread <= DATA_TOL && h >= 0.0,
    );

    let worst3 = d.holes().iter().fold(0.0f64, |m, hole| m.max((hole.value).max(-2.0 * h - hole.value)));
    push(3, "−2h ≤ f ≤ 0 constant on the other holes", worst3, worst3 <= DATA_TOL);

    let disc = Discretization::new(d);
    let x = solution.values();
    let mut worst4 = f64::NEG_INFINITY;
    for f in &disc.faces {
        if matches!(f.owner, Some(Component::Inner) | Some(Component::Hole(_))) {
            worst4 = worst4.max(f.normal.eval(x));
        }
    }
    push(4, "∂f/∂ν ≤ 0 on the inner boundaries", worst4, worst4 <= SIGN_TOL);

    let grad = solution.max_metric_gradient();
    push(5, "‖∇_g f‖_g ≤ 1", grad, grad <= 1.0);

    if let Some(bad) = hyps.iter().find(|c| !c.holds) {
        return Err(MseError::Inapplicable {
            clause: bad.clause,
            detail: format!("{} (measured {:e})", bad.description, bad.measured),
        });
    }
    let phi = disc.component_fluxes(x).get(&Component::Outer).copied().unwrap_or(0.0);
    let bound = height_bound(phi, r1, r2);
    Ok(HeightReport { h, phi, bound, pass: h <= bound, r1, r2, hypotheses: hyps })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RingSearch {
    pub radius: f64,
    pub value: f64,
    /// (r, ∫_{C(p,r)∩Ω}|df|) for every scanned radius.
    pub profile: Vec<(f64, f64)>,
}

const RING_RADII: usize = 64;
const RING_NODES: usize = 720;

/// Scans radii in [r′₁, r′₂] about the absolute point p and returns the one
/// minimizing ∫_{C(p,r)∩Ω}|df|.
pub fn ring_gradient_search(
    solution: &GraphFunction,
    p: Complex64,
    r1p: f64,
    r2p: f64,
) -> Result<RingSearch, MseError> {
    if !(r1p > 0.0 && r2p > r1p && r2p.is_finite()) {
        return Err(MseError::InvalidRings(format!("[{r1p}, {r2p}]")));
    }
    let d = solution.domain();
    let mut profile = Vec::with_capacity(RING_RADII);
    let mut met = false;
    for k in 0..RING_RADII {
        let r = r1p * (r2p / r1p).powf(k as f64 / (RING_RADII - 1) as f64);
        let dphi = 2.0 * std::f64::consts::PI / RING_NODES as f64;
        let mut total = 0.0;
        for m in 0..RING_NODES {
            let z = p + Complex64::from_polar(r, (m as f64 + 0.5) * dphi);
            let Some(q) = d.lift(z) else { continue };
            if !d.contains(q) {
                continue;
            }
            met = true;
            total += solution.gradient_at(z)?.norm() * r * dphi;
        }
        profile.push((r, total));
    }
    if !met {
        return Err(MseError::InvalidRings("no ring meets the domain".into()));
    }
    let &(radius, value) = profile.iter().min_by(|a, b| a.1.total_cmp(&b.1)).expect("nonempty");
    Ok(RingSearch { radius, value, profile })
}
