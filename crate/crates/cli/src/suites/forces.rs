use helicoid_lab::forces::{
    cross_term_decay, equilibrium_scan, force_closed, force_via_contour, max_contour_radius, NeckCase,
    NeckConfiguration, ScanOptions, TailModel,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::SuiteError;
use crate::config::Params;
use crate::report::{Check, SuiteReport, Table};

fn cases(p: &Params) -> Vec<NeckCase> {
    match p.text("case") {
        "1" => vec![NeckCase::Case1],
        "2" => vec![NeckCase::Case2],
        "3b" => vec![NeckCase::Case3b],
        _ => vec![NeckCase::Case1, NeckCase::Case2, NeckCase::Case3b],
    }
}

/// n sorted uniform draws in [lo, hi] with gaps above 5% of the mean spacing.
fn random_sorted(rng: &mut ChaCha8Rng, n: usize, lo: f64, hi: f64) -> Vec<f64> {
    loop {
        let mut y: Vec<f64> = (0..n).map(|_| rng.gen_range(lo..hi)).collect();
        y.sort_by(f64::total_cmp);
        if y.windows(2).all(|w| w[1] - w[0] > 0.05 * (hi - lo) / n as f64) {
            return y;
        }
    }
}

/// Moderate configurations on which the trapezoid rule is fully resolved.
fn route_configuration(case: NeckCase, k: usize, rng: &mut ChaCha8Rng) -> Result<NeckConfiguration, SuiteError> {
    let weights = |rng: &mut ChaCha8Rng, n: usize| (0..n).map(|_| rng.gen_range(0.1..3.0)).collect::<Vec<f64>>();
    Ok(match case {
        NeckCase::Case1 => {
            let n = 1 + k % 4;
            let y = random_sorted(rng, n, -1.5, 1.5).iter().map(|l| l.exp()).collect();
            let c = weights(rng, n);
            NeckConfiguration::new(case, y, c, rng.gen_range(0.0..2.0))?
        }
        NeckCase::Case2 => {
            let n = 1 + k % 4;
            let mut y: Vec<f64> = random_sorted(rng, n, 0.2, 2.0).iter().map(|l| l.exp()).collect();
            y[0] = 1.0;
            let c = weights(rng, n);
            NeckConfiguration::new(case, y, c, 0.0)?
        }
        NeckCase::Case3b => {
            let n = 2 + k % 3;
            let mut y = random_sorted(rng, n, -0.5, 0.5);
            y[0] = -0.5;
            y[n - 1] = 0.5;
            let c = weights(rng, n);
            NeckConfiguration::new(case, y, c, 0.0)?
        }
    })
}

fn routes(p: &Params, report: &mut SuiteReport) -> Result<Table, SuiteError> {
    let tol = p.float("route_tol");
    let mut table = Table::new(
        "forces_routes",
        "closed-form force vs contour route per configuration and neck",
        &["case", "config", "neck", "eps", "closed", "contour", "difference", "bound"],
    );
    for case in cases(p) {
        let mut rng = ChaCha8Rng::seed_from_u64(p.int("seed"));
        let mut worst: f64 = 0.0;
        for k in 0..p.usize("route_configs") {
            let cfg = route_configuration(case, k, &mut rng)?;
            for i in 0..cfg.len() {
                let eps = 0.5 * max_contour_radius(&cfg, i)?;
                let a = force_closed(&cfg, i)?;
                let b = force_via_contour(&cfg, i, eps)?;
                worst = worst.max((a - b).abs());
                table.push(vec![
                    case.label().into(),
                    k.into(),
                    i.into(),
                    eps.into(),
                    a.into(),
                    b.into(),
                    (a - b).abs().into(),
                    tol.into(),
                ]);
            }
        }
        report.check(Check::lt(format!("forces.route_agreement[{}]", case.label()), worst, tol));
    }
    Ok(table)
}

fn join(v: &[f64]) -> String {
    v.iter().map(|x| format!("{x}")).collect::<Vec<_>>().join(";")
}

fn scans(p: &Params, report: &mut SuiteReport) -> Result<Vec<Table>, SuiteError> {
    let mut tables = Vec::new();
    for case in cases(p) {
        let opts = ScanOptions::new(case, p.usize("n"), p.usize("trials"), p.int("seed"));
        let scan = equilibrium_scan(opts)?;
        let mut table = Table::new(
            &format!("forces_scan_{}", case.label()),
            "seeded scan trial: positions and weights (';'-separated), force on the lowest neck, and its bound",
            &["trial", "positions", "weights", "margin", "bound"],
        );
        for (k, t) in scan.trials.iter().enumerate() {
            table.push(vec![k.into(), join(&t.positions).into(), join(&t.weights).into(), t.margin.into(), 0.0.into()]);
        }
        report.check(
            Check::gt(format!("forces.scan_min_margin[{}]", case.label()), scan.min_margin, 0.0).with_detail(format!(
                "{} trials, argmin {}",
                scan.trials.len(),
                scan.argmin
            )),
        );
        tables.push(table);
    }
    Ok(tables)
}

fn equilibrium(p: &Params, report: &mut SuiteReport) -> Result<(), SuiteError> {
    let tol = p.float("equilibrium_tol");
    let opts = ScanOptions { pinned: Some(1.0), ..ScanOptions::new(NeckCase::Case1, 1, 50, p.int("seed")) };
    let scan = equilibrium_scan(opts)?;
    let worst = scan.trials.iter().map(|t| t.forces[0].abs()).fold(0.0, f64::max);
    report.check(Check::lt("forces.equatorial_equilibrium", worst, tol));
    let cfg = NeckConfiguration::new(NeckCase::Case1, vec![1.0], vec![1.0], 0.0)?;
    let contour = force_via_contour(&cfg, 0, 0.25)?;
    report.check(Check::lt("forces.equatorial_equilibrium_contour", contour.abs(), p.float("route_tol")));
    Ok(())
}

fn cross_terms(p: &Params, report: &mut SuiteReport) -> Result<Table, SuiteError> {
    let cfg = NeckConfiguration::new(NeckCase::Case1, vec![0.4, 2.5], vec![1.0, 0.6], 0.0)?;
    let eps = 0.5 * max_contour_radius(&cfg, 0)?;
    let decay = cross_term_decay(&cfg, p.list("pitches"), eps, &TailModel::default())?;
    let mut table = Table::new(
        "cross_terms",
        "cross and quadratic parts of the χ_Y flux on C(p1, ε), each over ρ² = (t/|log t|)²",
        &["t", "rho", "cross", "quadratic", "cross_ratio", "quadratic_ratio", "limit"],
    );
    for r in &decay.rows {
        table.push(vec![
            r.t.into(),
            r.rho.into(),
            r.cross.into(),
            r.quadratic.into(),
            r.cross_ratio.into(),
            r.quadratic_ratio.into(),
            decay.limit.into(),
        ]);
    }
    let increases = decay.rows.windows(2).filter(|w| w[1].cross_ratio.abs() >= w[0].cross_ratio.abs()).count();
    report.check(
        Check::le("forces.cross_term_monotone", increases as f64, 0.0)
            .with_detail(format!("{} pitches", decay.rows.len())),
    );
    report.check(Check::lt("forces.cross_term_limit", decay.final_force_error, p.float("cross_force_tol")));
    Ok(table)
}

pub fn run(p: &Params) -> Result<SuiteReport, SuiteError> {
    let mut report = SuiteReport::new("forces");
    let t = routes(p, &mut report)?;
    report.table(t);
    for t in scans(p, &mut report)? {
        report.table(t);
    }
    equilibrium(p, &mut report)?;
    let t = cross_terms(p, &mut report)?;
    report.table(t);
    Ok(report)
}
