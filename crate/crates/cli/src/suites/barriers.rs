use std::f64::consts::PI;

use helicoid_lab::geometry::CoverPoint;
use helicoid_lab::harmonic::{h_pole, BarrierHt, SupersolutionGn};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::SuiteError;
use crate::config::Params;
use crate::report::{Check, SuiteReport, Table};

fn cp(m: f64, a: f64) -> Result<CoverPoint, SuiteError> {
    Ok(CoverPoint::new(m, a)?)
}

const RADIAL: usize = 120;
const ANGULAR: usize = 120;
const ARG_SPAN: f64 = 12.0 * PI;

/// Log-polar sample of the upper cover with ln r ∈ [ln t, −ln t] and
/// arg ∈ (0, 12π], symmetric under z ↦ 1/z̄.
fn upper_grid(t: f64) -> Result<Vec<CoverPoint>, SuiteError> {
    let lt = t.ln();
    let mut pts = Vec::with_capacity((RADIAL + 1) * ANGULAR);
    for i in 0..=RADIAL {
        let s = lt * (1.0 - 2.0 * i as f64 / RADIAL as f64);
        for j in 1..=ANGULAR {
            pts.push(cp(s.exp(), ARG_SPAN * j as f64 / ANGULAR as f64)?);
        }
    }
    Ok(pts)
}

fn barrier_properties(t: f64, tol: f64, report: &mut SuiteReport, table: &mut Table) -> Result<(), SuiteError> {
    let b = BarrierHt::new(t)?;
    let depth = b.depth();
    let grid = upper_grid(t)?;
    let tag = format!("t={t:e}");

    let mut min_value = f64::INFINITY;
    let mut inversion: f64 = 0.0;
    let mut above_log = f64::NEG_INFINITY;
    let mut limit_ratio: f64 = 0.0;
    for &z in &grid {
        let v = b.eval(z)?;
        min_value = min_value.min(v);
        inversion = inversion.max((b.eval(z.invert())? - v).abs() / v.max(1.0));
        let lz = z.log().norm();
        above_log = above_log.max((v - lz) / lz.max(1.0));
        // |H_t − arg z| ≤ |log z|²/|log t| from the polar form.
        limit_ratio = limit_ratio.max((v - z.argument()).abs() * depth / (lz * lz));
    }
    let on_circle = (1..=400)
        .map(|j| b.eval(cp(t, ARG_SPAN * j as f64 / 400.0)?).map_err(SuiteError::from))
        .collect::<Result<Vec<_>, _>>()?
        .into_iter()
        .fold(f64::INFINITY, f64::min);
    let theta = 10.0 * depth;
    let far = (0..=200)
        .map(|i| b.eval(cp((t.ln() * i as f64 / 200.0).exp(), theta)?).map_err(SuiteError::from))
        .collect::<Result<Vec<_>, _>>()?
        .into_iter()
        .fold(f64::INFINITY, f64::min);

    let checks = [
        Check::gt(format!("barrier.positive[{tag}]"), min_value, 0.0),
        Check::le(format!("barrier.inversion_symmetry[{tag}]"), inversion, tol),
        Check::ge(format!("barrier.boundary_circle[{tag}]"), on_circle, depth / 2.0 - tol),
        Check::gt(format!("barrier.large_argument[{tag}]"), far, depth / 2.0),
        Check::le(format!("barrier.limit_arg[{tag}]"), limit_ratio, 1.0),
        Check::le(format!("barrier.below_log[{tag}]"), above_log, tol),
    ];
    for c in checks {
        table.push(vec![t.into(), c.name.clone().into(), c.value.into(), c.bound.into()]);
        report.check(c);
    }
    Ok(())
}

/// Δg ≥ 4/δ⁴ on the working set for two necks at desk-scale pitch.
fn laplacian_margin(p: &Params, report: &mut SuiteReport) -> Result<Table, SuiteError> {
    let (t, alpha) = (1e-3f64, 0.5);
    let rmin = t.powf(alpha);
    let poles = vec![cp(0.5, PI / 2.0)?, cp(2.0, PI / 2.0)?];
    let g = SupersolutionGn::new(p.float("c2"), poles.clone())?;
    let margin = p.float("laplacian_margin");
    let mut table = Table::new(
        "supersolution",
        "numeric Laplacian of g over 4/δ⁴ on a log-polar grid of the working set",
        &["r", "theta", "numeric_laplacian", "four_over_delta4", "ratio", "bound"],
    );
    let mut worst = f64::INFINITY;
    for i in 1..120 {
        for j in 1..180 {
            let z = cp((rmin.ln() * i as f64 / 120.0).exp(), 3.0 * PI * j as f64 / 180.0)?;
            if poles.iter().any(|q| (z.planar() - q.planar()).norm() < rmin) {
                continue;
            }
            let s = g.sample(z)?;
            let floor = 4.0 / s.delta.powi(4);
            let ratio = s.numeric_laplacian / floor;
            worst = worst.min(ratio);
            if i % 8 == 0 && j % 12 == 0 {
                table.push(vec![
                    z.modulus().into(),
                    z.argument().into(),
                    s.numeric_laplacian.into(),
                    floor.into(),
                    ratio.into(),
                    margin.into(),
                ]);
            }
        }
    }
    report.check(Check::ge("supersolution.laplacian_margin", worst, margin));
    Ok(table)
}

/// h_p(z̄) = −h_p(z), h_{1/p̄}(1/z̄) = h_p(z), h_p > 0 on the upper cover.
fn green_symmetries(p: &Params, report: &mut SuiteReport) -> Result<(), SuiteError> {
    let mut rng = ChaCha8Rng::seed_from_u64(p.int("seed").wrapping_add(2));
    let mut conj: f64 = 0.0;
    let mut inv: f64 = 0.0;
    let mut min_positive = f64::INFINITY;
    let mut drawn = 0;
    let draw = |rng: &mut ChaCha8Rng| cp(rng.gen_range(-5.0f64..5.0).exp(), rng.gen_range(0.01..30.0));
    while drawn < p.usize("symmetry_samples") {
        let (q, z) = (draw(&mut rng)?, draw(&mut rng)?);
        if (z.log() - q.log()).norm() < 1e-6 {
            continue;
        }
        drawn += 1;
        let v = h_pole(q, z)?;
        conj = conj.max((h_pole(q, z.conjugate())? + v).abs() / (1.0 + v.abs()));
        inv = inv.max((h_pole(q.invert(), z.invert())? - v).abs() / (1.0 + v.abs()));
        min_positive = min_positive.min(v);
    }
    let tol = p.float("symmetry_tol");
    report.check(Check::le("green.conjugation_antisymmetry", conj, tol));
    report.check(Check::le("green.inversion_symmetry", inv, tol));
    report.check(Check::gt("green.positive_upper_cover", min_positive, 0.0));
    Ok(())
}

pub fn run(p: &Params) -> Result<SuiteReport, SuiteError> {
    let mut report = SuiteReport::new("barriers");
    let tol = p.float("barrier_tol");
    let mut table = Table::new("barrier", "H_t property measurements per pitch", &["t", "check", "value", "bound"]);
    for &t in p.list("barrier_pitches") {
        barrier_properties(t, tol, &mut report, &mut table)?;
    }
    // H_t(z) → arg z as t → 0 at a fixed point.
    let z = cp(0.5, 1.0)?;
    let mut pitches = p.list("barrier_pitches").to_vec();
    pitches.sort_by(|a, b| b.total_cmp(a));
    let errs = pitches
        .iter()
        .map(|&t| Ok((BarrierHt::new(t)?.eval(z)? - 1.0).abs()))
        .collect::<Result<Vec<f64>, SuiteError>>()?;
    let increases = errs.windows(2).filter(|w| w[1] >= w[0]).count();
    report.check(Check::le("barrier.limit_monotone", increases as f64, 0.0));
    report.table(table);
    let t = laplacian_margin(p, &mut report)?;
    report.table(t);
    green_symmetries(p, &mut report)?;
    Ok(report)
}
