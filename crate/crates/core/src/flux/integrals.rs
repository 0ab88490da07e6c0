use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::complexkit::{Contour, Orientation};
use crate::geometry::KillingField;

use super::{FluxError, GraphField};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FluxMethod {
    /// The conormal integrand with the full 1/W factor.
    ExactIntegrand,
    /// Leading term in f_z.
    QuadraticExpansion,
}

impl FluxMethod {
    pub fn label(self) -> &'static str {
        match self {
            FluxMethod::ExactIntegrand => "exact-integrand",
            FluxMethod::QuadraticExpansion => "quadratic-expansion",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FluxResult {
    pub value: f64,
    pub method: FluxMethod,
    pub contour: String,
}

fn contour_id(c: &Contour) -> String {
    let dir = match c.orientation {
        Orientation::Ccw => "ccw",
        Orientation::Cw => "cw",
    };
    format!("circle({}{:+}i, r={}, {dir}, n={})", c.center.re, c.center.im, c.radius, c.node_count)
}

/// Contour nodes with the gradient f_x + i f_y at each.
fn sample(f: &impl GraphField, c: &Contour) -> Result<Vec<(Complex64, Complex64, Complex64)>, FluxError> {
    c.nodes()
        .map(|(z, dz)| {
            let room = f.clearance(z);
            let need = f.min_clearance(z);
            if !(room > 0.0 && room >= need) {
                return Err(FluxError::InvalidContour(format!(
                    "node {z} is {room:.3e} from the boundary, needs {need:.3e}"
                )));
            }
            Ok((z, dz, f.gradient(z)?))
        })
        .collect()
}

fn w_factor(lambda: f64, g: Complex64) -> f64 {
    (1.0 + g.norm_sqr() / (lambda * lambda)).sqrt()
}

/// Flux of the vertical field ξ.
///
/// Exact: ∫⟨∇f, ν⟩/W ds, with ⟨∇f, ν⟩ds = Im(conj(g)·dz) for g = f_x + i f_y.
/// Expansion: Im∮2f_z dz, which is the same integral with W replaced by 1.
pub fn vertical_flux(f: &impl GraphField, c: &Contour, method: FluxMethod) -> Result<FluxResult, FluxError> {
    let metric = f.metric();
    let mut acc = 0.0;
    for (z, dz, g) in sample(f, c)? {
        let term = (g.conj() * dz).im;
        acc += match method {
            FluxMethod::ExactIntegrand => term / w_factor(metric.factor(z), g),
            FluxMethod::QuadraticExpansion => term,
        };
    }
    Ok(FluxResult { value: acc, method, contour: contour_id(c) })
}

/// Flux of a horizontal Killing field χ.
///
/// Exact: Re∮[λ²χ(dy + i dx) + χ(f_y + i f_x)(f_x dx + f_y dy)]/W.
/// Expansion: −Im∮2(f_z)²χ dz. The λ²χ term integrates to zero over a closed
/// curve because χ is Killing; at second order in ∇f the two integrands agree
/// pointwise.
pub fn horizontal_flux(
    f: &impl GraphField,
    chi: KillingField,
    c: &Contour,
    method: FluxMethod,
) -> Result<FluxResult, FluxError> {
    if !chi.is_horizontal() {
        return Err(FluxError::WrongFieldKind);
    }
    let metric = f.metric();
    let mut acc = 0.0;
    for (z, dz, g) in sample(f, c)? {
        let x = chi.horizontal(z).ok_or(FluxError::WrongFieldKind)?;
        acc += match method {
            FluxMethod::ExactIntegrand => {
                let lambda = metric.factor(z);
                let (fx, fy) = (g.re, g.im);
                let (dx, dy) = (dz.re, dz.im);
                let num =
                    lambda * lambda * x * Complex64::new(dy, dx) + x * Complex64::new(fy, fx) * (fx * dx + fy * dy);
                num.re / w_factor(lambda, g)
            }
            FluxMethod::QuadraticExpansion => {
                let fz = g.conj() * 0.5;
                -(2.0 * fz * fz * x * dz).im
            }
        };
    }
    Ok(FluxResult { value: acc, method, contour: contour_id(c) })
}

/// Gap between the exact horizontal flux and its quadratic expansion,
/// normalized by sup|∇f|⁴·length(γ).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ExpansionDefect {
    pub exact: f64,
    pub expansion: f64,
    pub sup_gradient: f64,
    pub length: f64,
    /// |exact − expansion| / (sup|∇f|⁴·length).
    pub ratio: f64,
}

pub fn expansion_defect(f: &impl GraphField, chi: KillingField, c: &Contour) -> Result<ExpansionDefect, FluxError> {
    let exact = horizontal_flux(f, chi, c, FluxMethod::ExactIntegrand)?.value;
    let expansion = horizontal_flux(f, chi, c, FluxMethod::QuadraticExpansion)?.value;
    let sup_gradient = sample(f, c)?.iter().map(|(_, _, g)| g.norm()).fold(0.0, f64::max);
    let length = c.length();
    let scale = sup_gradient.powi(4) * length;
    let ratio = if scale > 0.0 { (exact - expansion).abs() / scale } else { 0.0 };
    Ok(ExpansionDefect { exact, expansion, sup_gradient, length, ratio })
}

/// The fitted constant K = max ratio, provided the ratios stay within a
/// factor `spread` of each other.
pub fn stable_constant(defects: &[ExpansionDefect], spread: f64) -> Option<f64> {
    let ks: Vec<f64> = defects.iter().map(|d| d.ratio).collect();
    let max = ks.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let min = ks.iter().copied().fold(f64::INFINITY, f64::min);
    (!ks.is_empty() && min > 0.0 && max <= spread * min).then_some(max)
}
