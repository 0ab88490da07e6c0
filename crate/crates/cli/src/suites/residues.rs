use std::f64::consts::PI;
use std::sync::Arc;

use helicoid_lab::complexkit::{
    check_real_residue, check_real_residue_with_gradient, laurent_decompose, residue_log_pole, residue_numeric,
    LaurentOptions, PoleOrder, Prefactor,
};
use helicoid_lab::geometry::{AnnularDomain, Circle};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::SuiteError;
use crate::config::Params;
use crate::report::{Check, SuiteReport, Table};

type RealFn = Box<dyn Fn(Complex64) -> f64>;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

const IDENTITIES: [(&str, PoleOrder, Prefactor); 4] = [
    // Res (log z − log p)⁻¹ = p
    ("log_pole", PoleOrder::One, Prefactor::One),
    // Res (1 − z²)/(4z)·(log z − log p)⁻² = −(1 + p²)/(4p)
    ("equatorial_square", PoleOrder::Two, Prefactor::Equatorial),
    ("log_pole_square", PoleOrder::Two, Prefactor::One),
    ("equatorial", PoleOrder::One, Prefactor::Equatorial),
];

/// Numeric residues of log-poles against their closed forms at random poles.
pub fn residue_identities(p: &Params) -> Result<SuiteReport, SuiteError> {
    let mut report = SuiteReport::new("residues");
    let tol = p.float("residue_tol");
    let nodes = p.usize("residue_nodes");
    let mut rng = ChaCha8Rng::seed_from_u64(p.int("seed"));
    let mut table = Table::new(
        "residues",
        "numeric vs closed-form residue per random pole and identity",
        &["identity", "p_re", "p_im", "closed_re", "closed_im", "numeric_re", "numeric_im", "error", "bound"],
    );
    let mut worst = [0.0f64; 4];
    let mut drawn = 0;
    while drawn < p.usize("residue_count") {
        let pole = Complex64::from_polar(rng.gen_range(0.2f64..5.0), rng.gen_range(-PI..PI));
        // The equatorial prefactor vanishes at ±1, where the order-two
        // residue degenerates.
        if (pole - 1.0).norm() < 0.05 || (pole + 1.0).norm() < 0.05 {
            continue;
        }
        drawn += 1;
        let eps = 0.3 * pole.norm();
        for (k, (name, order, pre)) in IDENTITIES.iter().enumerate() {
            let closed = residue_log_pole(pole, *order, *pre)?;
            let numeric = residue_numeric(pole, *order, *pre, eps, nodes)?;
            let err = (closed - numeric).norm();
            worst[k] = worst[k].max(err);
            table.push(vec![
                (*name).into(),
                pole.re.into(),
                pole.im.into(),
                closed.re.into(),
                closed.im.into(),
                numeric.re.into(),
                numeric.im.into(),
                err.into(),
                tol.into(),
            ]);
        }
    }
    for (k, (name, _, _)) in IDENTITIES.iter().enumerate() {
        report.check(Check::lt(format!("residues.{name}"), worst[k], tol));
    }
    report.table(table);
    Ok(report)
}

/// Random rational function with poles inside the holes and beyond the outer
/// circle, as (pole, coefficient, order).
fn random_rational(rng: &mut ChaCha8Rng, dom: &AnnularDomain) -> Vec<(Complex64, Complex64, i32)> {
    let mut terms = Vec::new();
    for h in dom.holes() {
        for _ in 0..2 {
            let q = h.center + Complex64::from_polar(rng.gen_range(0.0..0.5) * h.radius, rng.gen_range(0.0..2.0 * PI));
            terms.push((q, c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)), rng.gen_range(1..=2)));
        }
    }
    for _ in 0..2 {
        let q = Complex64::from_polar(rng.gen_range(1.6..3.0) * dom.outer().radius, rng.gen_range(0.0..2.0 * PI));
        terms.push((q, c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)), 1));
    }
    terms
}

fn eval_rational(terms: &[(Complex64, Complex64, i32)], z: Complex64) -> Complex64 {
    terms.iter().map(|(q, a, k)| a / (z - q).powi(*k)).sum()
}

fn test_domain() -> Result<AnnularDomain, SuiteError> {
    Ok(AnnularDomain::new(
        Circle::new(c(0.0, 0.0), 2.0)?,
        vec![Circle::new(c(0.5, 0.3), 0.25)?, Circle::new(c(-0.8, -0.4), 0.3)?],
    )?)
}

/// Laurent reconstruction of rational and C¹ functions, and reality of the
/// first negative coefficient for gradients of real functions.
pub fn laurent_checks(p: &Params) -> Result<SuiteReport, SuiteError> {
    let mut report = SuiteReport::new("residues");
    let dom = test_domain()?;
    let tol = p.float("laurent_tol");
    let opts = LaurentOptions::default();
    let mut rng = ChaCha8Rng::seed_from_u64(p.int("seed").wrapping_add(1));
    let mut table = Table::new(
        "laurent",
        "reconstruction error per test function at points at least 0.15 from the boundary",
        &["function", "kind", "error", "bound"],
    );

    let mut worst: f64 = 0.0;
    for k in 0..p.usize("laurent_samples") {
        let terms = random_rational(&mut rng, &dom);
        let d = laurent_decompose(|z| eval_rational(&terms, z), None, &dom, &opts)?;
        let mut err: f64 = 0.0;
        for j in 0..40 {
            let z = Complex64::from_polar(0.3 + 1.2 * (j as f64 / 40.0), 0.77 * j as f64);
            if dom.boundary_distance(z) < 0.15 {
                continue;
            }
            err = err.max((d.evaluate(z)? - eval_rational(&terms, z)).norm());
        }
        worst = worst.max(err);
        table.push(vec![format!("rational{k}").into(), "rational".into(), err.into(), tol.into()]);
    }
    report.check(Check::lt("laurent.rational_reconstruction", worst, tol));

    // f = |z|² + 1/(z − q) with ∂f/∂z̄ = z supplied for the area term.
    let q = c(0.5, 0.3);
    let f = move |z: Complex64| z.norm_sqr() + 1.0 / (z - q);
    let g: Arc<dyn Fn(Complex64) -> Complex64 + Send + Sync> = Arc::new(|z: Complex64| z);
    let d = laurent_decompose(f, Some(g), &dom, &opts)?;
    let mut err: f64 = 0.0;
    for z in [c(-1.0, 0.6), c(0.6, -0.6), c(1.2, -0.7), c(0.0, 1.2)] {
        err = err.max((d.evaluate(z)? - f(z)).norm());
    }
    table.push(vec!["abs2_plus_pole".into(), "c1".into(), err.into(), tol.into()]);
    report.check(Check::lt("laurent.c1_reconstruction", err, tol));

    let real_tol = p.float("real_residue_tol");
    let (q1, q2) = (c(0.5, 0.3), c(-0.8, -0.4));
    let reals: Vec<(&str, RealFn)> = vec![
        ("log_hole1", Box::new(move |z: Complex64| (z - q1).norm().ln())),
        ("log_pair", Box::new(move |z: Complex64| 0.7 * (z - q1).norm().ln() - 1.3 * (z - q2).norm().ln())),
        ("cubic", Box::new(|z: Complex64| (z * z * z).re)),
        ("x_abs2", Box::new(|z: Complex64| z.re * z.norm_sqr())),
        ("exp_cos", Box::new(|z: Complex64| z.re.exp() * (2.0 * z.im).cos())),
    ];
    let mut worst_im: f64 = 0.0;
    for (name, u) in &reals {
        let v = check_real_residue(u, &dom)?;
        worst_im = worst_im.max(v);
        table.push(vec![(*name).into(), "real_residue".into(), v.into(), real_tol.into()]);
    }
    let closed = check_real_residue_with_gradient(move |z: Complex64| 0.35 / (z - q1) - 0.65 / (z - q2), &dom)?;
    worst_im = worst_im.max(closed);
    table.push(vec!["log_pair_closed_gradient".into(), "real_residue".into(), closed.into(), real_tol.into()]);
    report.check(Check::lt("laurent.real_residue_imaginary_part", worst_im, real_tol));
    report.table(table);
    Ok(report)
}

pub fn run(p: &Params) -> Result<SuiteReport, SuiteError> {
    let mut r = residue_identities(p)?;
    r.absorb(laurent_checks(p)?);
    Ok(r)
}
