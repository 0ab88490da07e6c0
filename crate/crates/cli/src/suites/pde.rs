use std::f64::consts::PI;
use std::sync::Arc;

use helicoid_lab::complexkit::Contour;
use helicoid_lab::flux::{vertical_flux, FluxMethod};
use helicoid_lab::geometry::{ConformalMetric, CoverPoint};
use helicoid_lab::msegraph::exact::{catenoid, helicoid};
use helicoid_lab::msegraph::{
    mse_residual, observed_orders, solve_graph, Boundary, CartesianGrid, Component, GraphDomain, GraphFunction,
    SolveOptions,
};
use num_complex::Complex64;

use super::SuiteError;
use crate::config::Params;
use crate::report::{Check, SuiteReport, Table};

fn sup(v: &[f64]) -> f64 {
    v.iter().fold(0.0, |m, x| m.max(x.abs()))
}

fn order_checks(report: &mut SuiteReport, prefix: &str, orders: &[f64], target: f64, tol: f64) {
    for (k, o) in orders.iter().enumerate() {
        report.check(Check::le(format!("{prefix}[{k}]"), (o - target).abs(), tol).with_detail(format!("order {o:.4}")));
    }
}

/// Pointwise MSE residual of (t/2π)·arg z on a Cartesian box, in spherical
/// metrics of several radii.
fn helicoid_orders(p: &Params, report: &mut SuiteReport) -> Result<Table, SuiteError> {
    let (target, tol) = (p.float("order_target"), p.float("order_tol"));
    let mut table = Table::new(
        "pde_helicoid",
        "sup-norm MSE residual of the exact helicoid per sphere radius and grid",
        &["radius", "n", "h", "residual", "order", "order_target", "order_tol"],
    );
    for &r in p.list("radii") {
        let metric = ConformalMetric::spherical(r)?;
        let mut errs = Vec::new();
        let mut sizes = Vec::new();
        for k in 0..=p.usize("refine") {
            let n = 16 << k;
            let g = CartesianGrid::square(Complex64::new(1.0, 0.25), 0.5, n)?;
            let v = g.sample(|z| CoverPoint::from_planar(z).map(|q| helicoid(1.0, q)).unwrap_or(f64::NAN));
            errs.push(sup(&mse_residual(&g, &v, &metric)?));
            sizes.push(n);
        }
        let orders = observed_orders(&errs);
        for (k, (&n, &e)) in sizes.iter().zip(&errs).enumerate() {
            let o = if k == 0 { f64::NAN } else { orders[k - 1] };
            table.push(vec![
                r.into(),
                n.into(),
                (0.5 / n as f64).into(),
                e.into(),
                o.into(),
                target.into(),
                tol.into(),
            ]);
        }
        order_checks(report, &format!("pde.helicoid_order[R={r}]"), &orders, target, tol);
    }
    Ok(table)
}

fn catenoid_domain(ns: usize) -> Result<GraphDomain, SuiteError> {
    let data = |p: CoverPoint| catenoid(1.0, p.planar());
    Ok(GraphDomain::annulus(1.5, 6.0, ns, 32, ConformalMetric::euclidean())?
        .with_inner(Boundary::dirichlet(data))
        .with_outer(Boundary::dirichlet(data)))
}

/// Solved catenoid against the closed form, and its neck flux.
fn catenoid_solves(p: &Params, report: &mut SuiteReport) -> Result<Table, SuiteError> {
    let (target, tol) = (p.float("order_target"), p.float("order_tol"));
    let flux_tol = p.float("flux_tol");
    let mut table = Table::new(
        "pde_catenoid",
        "solved euclidean catenoid on 1.5 < |z| < 6: max error, order and neck flux",
        &[
            "ns",
            "error",
            "order",
            "order_target",
            "order_tol",
            "flux_contour",
            "flux_conservative",
            "flux_exact",
            "flux_tol",
        ],
    );
    let mut errs = Vec::new();
    let mut rows = Vec::new();
    for k in 0..=p.usize("refine") {
        let ns = 32 << k;
        let init = GraphFunction::zeros(Arc::new(catenoid_domain(ns)?));
        let (f, rep) = solve_graph(&init, &SolveOptions::default())?;
        errs.push(f.max_error(|q| catenoid(1.0, q.planar())));
        let gamma = Contour::ccw(Complex64::new(0.0, 0.0), 3.0, 512)?;
        let contour = vertical_flux(&f, &gamma, FluxMethod::ExactIntegrand)?.value;
        let conservative = rep.flux(Component::Outer).unwrap_or(f64::NAN);
        rows.push((ns, contour, conservative));
    }
    let orders = observed_orders(&errs);
    for (k, &(ns, contour, conservative)) in rows.iter().enumerate() {
        let o = if k == 0 { f64::NAN } else { orders[k - 1] };
        table.push(vec![
            ns.into(),
            errs[k].into(),
            o.into(),
            target.into(),
            tol.into(),
            contour.into(),
            conservative.into(),
            (2.0 * PI).into(),
            flux_tol.into(),
        ]);
    }
    order_checks(report, "pde.catenoid_order", &orders, target, tol);
    let &(_, contour, conservative) = rows.last().expect("at least one level");
    report.check(Check::lt("pde.catenoid_neck_flux", (contour - 2.0 * PI).abs(), flux_tol));
    report.check(Check::lt("pde.catenoid_conservative_flux", (conservative - 2.0 * PI).abs(), flux_tol));
    Ok(table)
}

pub fn run(p: &Params) -> Result<SuiteReport, SuiteError> {
    let mut report = SuiteReport::new("pde");
    let which = p.text("exact");
    if which != "catenoid" {
        let t = helicoid_orders(p, &mut report)?;
        report.table(t);
    }
    if which != "helicoid" {
        let t = catenoid_solves(p, &mut report)?;
        report.table(t);
    }
    Ok(report)
}
