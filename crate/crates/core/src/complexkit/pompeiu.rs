use std::f64::consts::PI;

use gauss_quad::GaussLegendre;
use num_complex::Complex64;

use super::{contour_integral_adaptive, ComplexError, Contour};
use crate::geometry::AnnularDomain;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PompeiuOptions {
    /// Cells across the outer diameter. One cell is the minimum admissible
    /// distance between the evaluation point and the boundary.
    pub cells: usize,
    /// Gauss points on each radial interval.
    pub radial_order: usize,
    /// Initial angular resolution; doubled until the area term settles.
    pub angular_order: usize,
    /// Initial node count on boundary circles.
    pub boundary_nodes: usize,
    /// Relative tolerance for angular doubling.
    pub tolerance: f64,
}

impl Default for PompeiuOptions {
    fn default() -> Self {
        Self { cells: 256, radial_order: 24, angular_order: 32, boundary_nodes: 256, tolerance: 1e-13 }
    }
}

impl PompeiuOptions {
    pub fn cell_size(&self, domain: &AnnularDomain) -> f64 {
        2.0 * domain.outer().radius / self.cells as f64
    }
}

fn guard(domain: &AnnularDomain, z: Complex64, opts: &PompeiuOptions) -> Result<(), ComplexError> {
    let d = domain.boundary_distance(z);
    let min = opts.cell_size(domain);
    if !(d >= min) {
        return Err(ComplexError::NearBoundaryEvaluation { distance: d, min });
    }
    Ok(())
}

/// Cauchy–Pompeiu reconstruction of f at an interior point z:
/// (1/2πi)∮_{∂Ω} f/(w−z) dw − (1/π)∬_Ω f_z̄/(w−z) dA.
pub fn pompeiu_eval<F, G>(
    f: F,
    fzbar: G,
    domain: &AnnularDomain,
    z: Complex64,
    opts: &PompeiuOptions,
) -> Result<Complex64, ComplexError>
where
    F: Fn(Complex64) -> Complex64,
    G: Fn(Complex64) -> Complex64,
{
    guard(domain, z, opts)?;
    let kernel = |w: Complex64| f(w) / (w - z);
    let outer = domain.outer();
    let mut boundary =
        contour_integral_adaptive(kernel, &Contour::ccw(outer.center, outer.radius, opts.boundary_nodes)?)?.value;
    for h in domain.holes() {
        boundary -= contour_integral_adaptive(kernel, &Contour::ccw(h.center, h.radius, opts.boundary_nodes)?)?.value;
    }
    let boundary = boundary / Complex64::new(0.0, 2.0 * PI);
    Ok(boundary + pompeiu_area_term(fzbar, domain, z, opts)?)
}

/// −(1/π)∬_Ω g(w)/(w−z) dA, integrated in polar coordinates centred at z so
/// the kernel singularity cancels against the Jacobian.
pub fn pompeiu_area_term<G>(
    g: G,
    domain: &AnnularDomain,
    z: Complex64,
    opts: &PompeiuOptions,
) -> Result<Complex64, ComplexError>
where
    G: Fn(Complex64) -> Complex64,
{
    guard(domain, z, opts)?;
    let radial = gauss_rule(opts.radial_order);
    let ray = |phi: f64| -> Complex64 {
        let e = Complex64::from_polar(1.0, phi);
        let mut acc = Complex64::new(0.0, 0.0);
        for (a, b) in ray_intervals(domain, z, e) {
            let half = 0.5 * (b - a);
            let mid = 0.5 * (b + a);
            for &(x, w) in &radial {
                acc += w * half * g(z + (mid + half * x) * e);
            }
        }
        acc * e.conj()
    };

    let mut breaks: Vec<f64> = Vec::new();
    for h in domain.holes() {
        let q = h.center - z;
        let beta = (h.radius / q.norm()).asin();
        for phi in [q.arg() - beta, q.arg() + beta] {
            breaks.push(phi.rem_euclid(2.0 * PI));
        }
    }
    breaks.sort_by(|a, b| a.total_cmp(b));

    let integrate = |n: usize| -> Complex64 {
        if breaks.is_empty() {
            let step = 2.0 * PI / n as f64;
            return (0..n).map(|k| ray(k as f64 * step)).sum::<Complex64>() * step;
        }
        let rule = gauss_rule(n);
        let m = breaks.len();
        let mut acc = Complex64::new(0.0, 0.0);
        for j in 0..m {
            let a = breaks[j];
            let b = if j + 1 < m { breaks[j + 1] } else { breaks[0] + 2.0 * PI };
            if b - a <= 0.0 {
                continue;
            }
            // φ = a + (b−a)(1 − cos πs)/2 clusters nodes at the tangent angles,
            // where the ray intervals open with a square-root profile.
            for &(x, w) in &rule {
                let s = 0.5 * (x + 1.0);
                let phi = a + (b - a) * 0.5 * (1.0 - (PI * s).cos());
                let jac = (b - a) * 0.5 * PI * (PI * s).sin() * 0.5;
                acc += w * jac * ray(phi);
            }
        }
        acc
    };

    let mut n = opts.angular_order.max(4);
    let mut prev = integrate(n);
    for _ in 0..8 {
        n *= 2;
        let next = integrate(n);
        let change = (next - prev).norm();
        prev = next;
        if change <= opts.tolerance * (1.0 + prev.norm()) {
            break;
        }
    }
    if !prev.is_finite() {
        return Err(ComplexError::QuadratureFailure { node: 0 });
    }
    Ok(-prev / PI)
}

fn gauss_rule(n: usize) -> Vec<(f64, f64)> {
    let n = n.max(2);
    GaussLegendre::new(n.try_into().expect("nonzero order")).iter().map(|(x, w)| (*x, *w)).collect()
}

/// Parameter intervals ρ ≥ 0 along z + ρe that lie in the domain.
fn ray_intervals(domain: &AnnularDomain, z: Complex64, e: Complex64) -> Vec<(f64, f64)> {
    let outer = domain.outer();
    let (_, end) = chord(z - outer.center, e, outer.radius).unwrap_or((0.0, 0.0));
    let mut cuts: Vec<(f64, f64)> = domain
        .holes()
        .iter()
        .filter_map(|h| chord(z - h.center, e, h.radius))
        .filter(|&(a, b)| b > 0.0 && a < end)
        .map(|(a, b)| (a.max(0.0), b.min(end)))
        .collect();
    cuts.sort_by(|a, b| a.0.total_cmp(&b.0));
    let mut out = Vec::with_capacity(cuts.len() + 1);
    let mut start = 0.0;
    for (a, b) in cuts {
        if a > start {
            out.push((start, a));
        }
        start = start.max(b);
    }
    if end > start {
        out.push((start, end));
    }
    out
}

/// Roots of |q + ρe| = r in ρ, ascending, if the line meets the circle.
fn chord(q: Complex64, e: Complex64, r: f64) -> Option<(f64, f64)> {
    let b = (q * e.conj()).re;
    let disc = b * b - q.norm_sqr() + r * r;
    if disc <= 0.0 {
        return None;
    }
    let s = disc.sqrt();
    Some((-b - s, -b + s))
}
