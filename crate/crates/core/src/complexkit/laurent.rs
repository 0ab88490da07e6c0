use std::f64::consts::PI;
use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;

use super::{contour_integral, pompeiu_area_term, ComplexError, Contour, PompeiuOptions};
use crate::geometry::{AnnularDomain, Circle};

/// Coefficients whose contribution |a|·ρ^(±k) at the evaluation point falls
/// below this are dropped.
pub const DEFAULT_CUTOFF: f64 = 1e-14;

pub type AreaTerm = Arc<dyn Fn(Complex64) -> Result<Complex64, ComplexError> + Send + Sync>;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LaurentOptions {
    /// Trapezoid nodes on each boundary circle.
    pub nodes: usize,
    /// Number of coefficients kept per series; at most nodes/4.
    pub terms: usize,
    pub cutoff: f64,
}

impl Default for LaurentOptions {
    fn default() -> Self {
        Self { nodes: 512, terms: 128, cutoff: DEFAULT_CUTOFF }
    }
}

/// f = f⁺ + Σᵢ fᵢ⁻ + area term on an annular domain.
///
/// `plus_coeffs[k]` multiplies (z − c₀)^k with c₀ the outer centre;
/// `minus_coeffs[i][k-1]` multiplies (z − pᵢ)^(−k).
#[derive(Clone)]
pub struct LaurentDecomposition {
    pub domain: AnnularDomain,
    pub plus_coeffs: Vec<Complex64>,
    pub minus_coeffs: Vec<Vec<Complex64>>,
    pub area_term: Option<AreaTerm>,
    pub cutoff: f64,
}

impl fmt::Debug for LaurentDecomposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("LaurentDecomposition")
            .field("domain", &self.domain)
            .field("plus_coeffs", &self.plus_coeffs)
            .field("minus_coeffs", &self.minus_coeffs)
            .field("area_term", &self.area_term.is_some())
            .field("cutoff", &self.cutoff)
            .finish()
    }
}

/// Terms actually summed during one evaluation.
#[derive(Debug, Clone, PartialEq)]
pub struct TermUsage {
    pub plus: usize,
    pub minus: Vec<usize>,
}

impl LaurentDecomposition {
    pub fn plus_part(&self, z: Complex64) -> Complex64 {
        self.plus_with_usage(z).0
    }

    pub fn minus_part(&self, i: usize, z: Complex64) -> Complex64 {
        self.minus_with_usage(i, z).0
    }

    fn plus_with_usage(&self, z: Complex64) -> (Complex64, usize) {
        let w = z - self.domain.outer().center;
        let rho = w.norm();
        let mut acc = Complex64::new(0.0, 0.0);
        let mut used = 0;
        let mut power = Complex64::new(1.0, 0.0);
        for (k, a) in self.plus_coeffs.iter().enumerate() {
            if a.norm() * rho.powi(k as i32) >= self.cutoff {
                acc += a * power;
                used += 1;
            }
            power *= w;
        }
        (acc, used)
    }

    fn minus_with_usage(&self, i: usize, z: Complex64) -> (Complex64, usize) {
        let w = 1.0 / (z - self.domain.holes()[i].center);
        let inv_rho = w.norm();
        let mut acc = Complex64::new(0.0, 0.0);
        let mut used = 0;
        let mut power = w;
        for (k, a) in self.minus_coeffs[i].iter().enumerate() {
            if a.norm() * inv_rho.powi(k as i32 + 1) >= self.cutoff {
                acc += a * power;
                used += 1;
            }
            power *= w;
        }
        (acc, used)
    }

    pub fn area(&self, z: Complex64) -> Result<Complex64, ComplexError> {
        match &self.area_term {
            Some(a) => a(z),
            None => Ok(Complex64::new(0.0, 0.0)),
        }
    }

    /// Reconstruction at an interior point.
    pub fn evaluate(&self, z: Complex64) -> Result<Complex64, ComplexError> {
        Ok(self.evaluate_with_usage(z)?.0)
    }

    pub fn evaluate_with_usage(&self, z: Complex64) -> Result<(Complex64, TermUsage), ComplexError> {
        let (mut acc, plus) = self.plus_with_usage(z);
        let mut minus = Vec::with_capacity(self.minus_coeffs.len());
        for i in 0..self.minus_coeffs.len() {
            let (v, used) = self.minus_with_usage(i, z);
            acc += v;
            minus.push(used);
        }
        Ok((acc + self.area(z)?, TermUsage { plus, minus }))
    }
}

/// Splits f by contour quadrature on the outer circle and on each hole circle.
/// Pass `fzbar` when f is not holomorphic; it feeds the Pompeiu area term.
pub fn laurent_decompose<F>(
    f: F,
    fzbar: Option<Arc<dyn Fn(Complex64) -> Complex64 + Send + Sync>>,
    domain: &AnnularDomain,
    opts: &LaurentOptions,
) -> Result<LaurentDecomposition, ComplexError>
where
    F: Fn(Complex64) -> Complex64,
{
    let terms = opts.terms.min(opts.nodes / 4).max(1);
    let two_pi_i = Complex64::new(0.0, 2.0 * PI);
    let outer = domain.outer();
    let c_out = Contour::ccw(outer.center, outer.radius, opts.nodes)?;
    let samples = sample(&f, &c_out)?;
    let plus_coeffs = (0..terms).map(|k| moment(&samples, outer, -(k as i32) - 1) / two_pi_i).collect();
    let mut minus_coeffs = Vec::with_capacity(domain.holes().len());
    for h in domain.holes() {
        let c = Contour::ccw(h.center, h.radius, opts.nodes)?;
        let samples = sample(&f, &c)?;
        minus_coeffs.push((1..=terms).map(|k| moment(&samples, *h, k as i32 - 1) / two_pi_i).collect());
    }
    let area_term = fzbar.map(|g| {
        let dom = domain.clone();
        let popts = PompeiuOptions::default();
        Arc::new(move |z: Complex64| pompeiu_area_term(|w| g(w), &dom, z, &popts)) as AreaTerm
    });
    Ok(LaurentDecomposition { domain: domain.clone(), plus_coeffs, minus_coeffs, area_term, cutoff: opts.cutoff })
}

struct Samples {
    values: Vec<Complex64>,
    offsets: Vec<Complex64>,
    weights: Vec<Complex64>,
}

fn sample<F: Fn(Complex64) -> Complex64>(f: &F, c: &Contour) -> Result<Samples, ComplexError> {
    let mut s = Samples {
        values: Vec::with_capacity(c.node_count),
        offsets: Vec::with_capacity(c.node_count),
        weights: Vec::with_capacity(c.node_count),
    };
    for (k, (z, dz)) in c.nodes().enumerate() {
        let v = f(z);
        if !v.is_finite() {
            return Err(ComplexError::QuadratureFailure { node: k });
        }
        s.values.push(v);
        s.offsets.push(z - c.center);
        s.weights.push(dz);
    }
    Ok(s)
}

/// ∮ f(z)(z − c)^m dz from cached samples.
fn moment(s: &Samples, _circle: Circle, m: i32) -> Complex64 {
    s.values.iter().zip(&s.offsets).zip(&s.weights).map(|((v, w), dz)| v * w.powi(m) * dz).sum()
}

/// max over holes of |Im a_{i,1}| for f = u_z, with u_z taken by fourth-order
/// central differences at step 5e−4 times the hole radius.
pub fn check_real_residue<U>(u: U, domain: &AnnularDomain) -> Result<f64, ComplexError>
where
    U: Fn(Complex64) -> f64,
{
    let mut worst: f64 = 0.0;
    for h in domain.holes() {
        let step = 5e-4 * h.radius;
        let uz = |z: Complex64| {
            let d = |dir: Complex64| {
                let a = u(z + dir * step);
                let b = u(z - dir * step);
                let a2 = u(z + dir * (2.0 * step));
                let b2 = u(z - dir * (2.0 * step));
                (8.0 * (a - b) - (a2 - b2)) / (12.0 * step)
            };
            let ux = d(Complex64::new(1.0, 0.0));
            let uy = d(Complex64::i());
            Complex64::new(ux, -uy) * 0.5
        };
        worst = worst.max(first_minus_coefficient(uz, h)?.im.abs());
    }
    Ok(worst)
}

/// As [`check_real_residue`] with u_z supplied in closed form.
pub fn check_real_residue_with_gradient<G>(uz: G, domain: &AnnularDomain) -> Result<f64, ComplexError>
where
    G: Fn(Complex64) -> Complex64,
{
    let mut worst: f64 = 0.0;
    for h in domain.holes() {
        worst = worst.max(first_minus_coefficient(&uz, h)?.im.abs());
    }
    Ok(worst)
}

fn first_minus_coefficient<G: Fn(Complex64) -> Complex64>(uz: G, h: &Circle) -> Result<Complex64, ComplexError> {
    let c = Contour::ccw(h.center, h.radius, 512)?;
    Ok(contour_integral(uz, &c)? / Complex64::new(0.0, 2.0 * PI))
}
