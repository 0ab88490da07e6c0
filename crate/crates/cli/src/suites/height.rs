use std::f64::consts::{E, FRAC_PI_2, PI};
use std::sync::Arc;

use helicoid_lab::geometry::{ConformalMetric, CoverPoint};
use helicoid_lab::msegraph::exact::catenoid;
use helicoid_lab::msegraph::{
    height_bound, height_check, ring_bound, ring_gradient_search, solve_graph, Boundary, GraphDomain, GraphFunction,
    Hole, SolveOptions,
};
use num_complex::Complex64;
use rayon::prelude::*;

use super::SuiteError;
use crate::config::Params;
use crate::report::{Check, SuiteReport, Table};

/// Depth of the graphs with holes.
const DEPTH: f64 = 0.2;

struct Instance {
    name: String,
    domain: GraphDomain,
    /// Radii passed to the height estimate.
    radii: (f64, f64),
    /// Center and radius range of the ring search.
    ring: (Complex64, f64, f64),
}

struct Outcome {
    name: String,
    h: f64,
    phi: f64,
    bound: f64,
    ring_value: f64,
    ring_bound: f64,
    ring_radius: f64,
}

fn instances(p: &Params) -> Result<Vec<Instance>, SuiteError> {
    let ns = p.usize("height_ns");
    let mut out = Vec::new();
    let top = 6f64.acosh();
    out.push(Instance {
        name: "catenoid".into(),
        domain: GraphDomain::annulus(1.5, 6.0, ns, 32, ConformalMetric::euclidean())?
            .with_inner(Boundary::constant(1.5f64.acosh() - top))
            .with_outer(Boundary::constant(0.0)),
        radii: (1.5, 6.0),
        ring: (Complex64::new(0.0, 0.0), 2.0, 5.0),
    });
    let hole_center = CoverPoint::new(0.9, FRAC_PI_2)?;
    let metrics = [
        ("euclidean", ConformalMetric::euclidean()),
        ("sphere1", ConformalMetric::spherical(1.0)?),
        ("sphere3", ConformalMetric::spherical(3.0)?),
    ];
    for (label, m) in metrics {
        out.push(Instance {
            name: format!("two_hole_{label}"),
            domain: GraphDomain::annulus(0.2, 2.0, ns, 2 * ns, m)?
                .with_inner(Boundary::constant(-DEPTH))
                .with_hole(Hole::new(hole_center, 0.15, -DEPTH)?)?,
            radii: (0.2, 2.0),
            ring: (Complex64::new(0.0, 0.9), 0.2, 0.6),
        });
    }
    // A hole on the level curve |z − p| = 2λr of a neck of size r, which sits
    // at height r·acosh(2λ) below the surrounding graph.
    let lambda = p.float("lambda");
    let r = p.float("neck_radius");
    out.push(Instance {
        name: "neck_sphere1".into(),
        domain: GraphDomain::annulus(0.2, 2.0, ns, 2 * ns, ConformalMetric::spherical(1.0)?)?
            .with_inner(Boundary::constant(-DEPTH))
            .with_hole(Hole::new(hole_center, 2.0 * lambda * r, -DEPTH - r * (2.0 * lambda).acosh())?)?,
        radii: (0.2, 2.0),
        ring: (Complex64::new(0.0, 0.9), 0.2, 0.6),
    });
    Ok(out)
}

fn solve_instance(inst: &Instance) -> Result<Outcome, SuiteError> {
    let init = GraphFunction::zeros(Arc::new(inst.domain.clone()));
    let (f, _) = solve_graph(&init, &SolveOptions::default())?;
    let (r1, r2) = inst.radii;
    let rep = height_check(&f, r1, r2)?;
    let (center, r1p, r2p) = inst.ring;
    let ring = ring_gradient_search(&f, center, r1p, r2p)?;
    Ok(Outcome {
        name: inst.name.clone(),
        h: rep.h,
        phi: rep.phi,
        bound: rep.bound,
        ring_value: ring.value,
        ring_bound: ring_bound(rep.phi, r1, r2, r1p, r2p),
        ring_radius: ring.radius,
    })
}

/// The euclidean catenoid between |z| = 1 and |z| = e⁴ in closed form.
fn analytic_catenoid() -> Outcome {
    let r2 = E.powi(4);
    let phi = 2.0 * PI;
    let (r1p, r2p) = (E, E.powi(3));
    // ∮_{|z|=r} |∇f| ds = 2πr/√(r² − 1), decreasing in r.
    let ring_value = 2.0 * PI * r2p / (r2p * r2p - 1.0).sqrt();
    Outcome {
        name: "catenoid_analytic".into(),
        h: r2.acosh() - catenoid(1.0, Complex64::new(1.0, 0.0)),
        phi,
        bound: height_bound(phi, 1.0, r2),
        ring_value,
        ring_bound: ring_bound(phi, 1.0, r2, r1p, r2p),
        ring_radius: r2p,
    }
}

pub fn run(p: &Params) -> Result<SuiteReport, SuiteError> {
    let mut report = SuiteReport::new("height");
    let mut table = Table::new(
        "height",
        "depth h vs (√2/π)·φ·log(r2/r1) and the best ring integral vs its bound",
        &["instance", "h", "phi", "bound", "ring_value", "ring_bound", "ring_radius"],
    );
    let insts = instances(p)?;
    let solved: Vec<Result<Outcome, SuiteError>> = insts.par_iter().map(solve_instance).collect();
    let mut outcomes = vec![Ok(analytic_catenoid())];
    outcomes.extend(solved);
    let names = std::iter::once("catenoid_analytic".to_string()).chain(insts.iter().map(|i| i.name.clone()));
    for (name, o) in names.zip(outcomes) {
        match o {
            Ok(o) => {
                table.push(vec![
                    o.name.clone().into(),
                    o.h.into(),
                    o.phi.into(),
                    o.bound.into(),
                    o.ring_value.into(),
                    o.ring_bound.into(),
                    o.ring_radius.into(),
                ]);
                report.check(Check::le(format!("height.estimate[{}]", o.name), o.h, o.bound));
                report.check(Check::le(format!("height.ring[{}]", o.name), o.ring_value, o.ring_bound));
            }
            Err(e) => report.check(Check::failed(format!("height.estimate[{name}]"), e.to_string())),
        }
    }
    report.table(table);
    Ok(report)
}
