use std::f64::consts::{FRAC_PI_2, PI};
use std::sync::Arc;

use helicoid_lab::complexkit::{Contour, Orientation};
use helicoid_lab::flux::*;
use helicoid_lab::forces::{NeckCase, NeckConfiguration};
use helicoid_lab::geometry::{AnnularDomain, Circle, ConformalMetric, CoverPoint, KillingField, KillingKind};
use helicoid_lab::msegraph::exact::{catenoid, catenoid_gradient};
use helicoid_lab::msegraph::*;
use num_complex::Complex64;
use proptest::prelude::*;

const NODES: usize = 512;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn circle(center: Complex64, r: f64) -> Contour {
    Contour::ccw(center, r, NODES).unwrap()
}

fn sphere(r: f64) -> ConformalMetric {
    ConformalMetric::spherical(r).unwrap()
}

fn horizontal_fields(r: f64) -> [KillingField; 3] {
    [KillingKind::X, KillingKind::Y, KillingKind::E].map(|k| KillingField::new(k, r))
}

fn both(f: &impl GraphField, g: &Contour) -> (f64, f64) {
    (
        vertical_flux(f, g, FluxMethod::ExactIntegrand).unwrap().value,
        vertical_flux(f, g, FluxMethod::QuadraticExpansion).unwrap().value,
    )
}

fn analytic_catenoid(a: f64, center: Complex64) -> AnalyticGraph {
    AnalyticGraph::new(ConformalMetric::euclidean(), move |z| catenoid_gradient(a, z - center))
}

fn solve(d: GraphDomain) -> (GraphFunction, SolveReport) {
    solve_graph(&GraphFunction::zeros(Arc::new(d)), &SolveOptions::default()).unwrap()
}

fn two_hole(ns: usize, nt: usize) -> GraphDomain {
    GraphDomain::annulus(0.2, 2.0, ns, nt, sphere(1.0))
        .unwrap()
        .with_inner(Boundary::constant(-0.2))
        .with_hole(Hole::new(CoverPoint::new(0.9, FRAC_PI_2).unwrap(), 0.15, -0.2).unwrap())
        .unwrap()
}

#[test]
fn zero_and_constant_graphs_carry_no_flux() {
    for v in [0.0, 2.5] {
        let d = Arc::new(GraphDomain::annulus(0.5, 2.0, 32, 64, sphere(1.0)).unwrap());
        let f = GraphFunction::sample(d, |_| v);
        let g = circle(c(0.0, 0.0), 1.0);
        assert_eq!(both(&f, &g), (0.0, 0.0));
        for chi in horizontal_fields(1.0) {
            for m in [FluxMethod::ExactIntegrand, FluxMethod::QuadraticExpansion] {
                assert!(horizontal_flux(&f, chi, &g, m).unwrap().value.abs() < 1e-13);
            }
        }
    }
}

#[test]
fn catenoid_neck_flux_is_two_pi() {
    let f = analytic_catenoid(1.0, c(0.0, 0.0));
    for r in [1.2, 3.0, 10.0] {
        let (exact, expansion) = both(&f, &circle(c(0.0, 0.0), r));
        assert!((exact - 2.0 * PI).abs() < 1e-12, "r = {r}: {exact}");
        // Without 1/W the neck gradient is overcounted by r/√(r² − 1).
        let oracle = 2.0 * PI * r / (r * r - 1.0).sqrt();
        assert!((expansion - oracle).abs() < 1e-10);
    }
    // Any loop around the neck, not just centered circles.
    let (exact, _) = both(&f, &circle(c(0.4, -0.3), 2.0));
    assert!((exact - 2.0 * PI).abs() < 1e-9, "{exact}");
}

#[test]
fn logarithmic_graph_flux() {
    for k in [1e-1, 1e-2, 1e-3] {
        let f = AnalyticGraph::new(ConformalMetric::euclidean(), move |z| k / z.conj());
        let (exact, expansion) = both(&f, &circle(c(0.0, 0.0), 1.0));
        assert!((exact - 2.0 * PI * k / (1.0 + k * k).sqrt()).abs() < 1e-13);
        assert!((exact - 2.0 * PI * k).abs() <= 4.0 * k * k * k);
        assert!((expansion - 2.0 * PI * k).abs() < 1e-13);
    }
}

#[test]
fn linear_graph_has_no_chi_y_residue() {
    let eps = 1e-2;
    let f = AnalyticGraph::new(sphere(1.0), move |_| c(eps, 0.0));
    let g = circle(c(0.0, 0.0), 1.0);
    let chi = KillingField::new(KillingKind::Y, 1.0);
    let expansion = horizontal_flux(&f, chi, &g, FluxMethod::QuadraticExpansion).unwrap().value;
    assert!(expansion.abs() < 1e-15);
    let exact = horizontal_flux(&f, chi, &g, FluxMethod::ExactIntegrand).unwrap().value;
    assert!(exact.abs() < 1e-6);
}

#[test]
fn orientation_flips_sign() {
    let f = analytic_catenoid(1.0, c(0.0, 0.0));
    let ccw = Contour::new(c(0.0, 0.0), 2.0, Orientation::Ccw, NODES).unwrap();
    let cw = Contour::new(c(0.0, 0.0), 2.0, Orientation::Cw, NODES).unwrap();
    assert!((both(&f, &ccw).0 + both(&f, &cw).0).abs() < 1e-12);
}

#[test]
fn rejects_vertical_field_and_bad_contours() {
    let f = analytic_catenoid(1.0, c(0.0, 0.0));
    let g = circle(c(0.0, 0.0), 2.0);
    let xi = KillingField::new(KillingKind::Vertical, 1.0);
    assert!(matches!(horizontal_flux(&f, xi, &g, FluxMethod::ExactIntegrand), Err(FluxError::WrongFieldKind)));
    // Through the neck, where the gradient blows up.
    assert!(matches!(
        vertical_flux(&f, &circle(c(0.0, 0.0), 1.0), FluxMethod::ExactIntegrand),
        Err(FluxError::InvalidContour(_))
    ));
    let ring = AnnularDomain::new(Circle::new(c(0.0, 0.0), 3.0).unwrap(), vec![Circle::new(c(0.0, 0.0), 1.1).unwrap()])
        .unwrap();
    let bounded = f.on(ring);
    assert!(vertical_flux(&bounded, &g, FluxMethod::ExactIntegrand).is_ok());
    assert!(matches!(
        vertical_flux(&bounded, &circle(c(0.0, 0.0), 3.5), FluxMethod::ExactIntegrand),
        Err(FluxError::InvalidContour(_))
    ));

    let d = Arc::new(GraphDomain::annulus(1.0, 2.0, 32, 64, sphere(1.0)).unwrap());
    let grid = GraphFunction::zeros(d);
    // One grid cell near r = 1 is about 0.1 wide.
    assert!(vertical_flux(&grid, &circle(c(0.0, 0.0), 1.01), FluxMethod::ExactIntegrand).is_err());
    assert!(vertical_flux(&grid, &circle(c(0.0, 0.0), 1.5), FluxMethod::ExactIntegrand).is_ok());
    assert!(vertical_flux(&grid, &circle(c(1.5, 0.0), 0.2), FluxMethod::ExactIntegrand).is_ok());
    assert!(vertical_flux(&grid, &circle(c(0.0, 0.0), 2.5), FluxMethod::ExactIntegrand).is_err());
}

#[test]
fn solved_catenoid_flux_is_homology_invariant() {
    let domain = |ns| {
        GraphDomain::annulus(1.5, 6.0, ns, 64, ConformalMetric::euclidean())
            .unwrap()
            .with_inner(Boundary::dirichlet(|p| catenoid(1.0, p.planar())))
            .with_outer(Boundary::dirichlet(|p| catenoid(1.0, p.planar())))
    };
    let (coarse, _) = solve(domain(64));
    let (fine, _) = solve(domain(128));
    let loops = [circle(c(0.0, 0.0), 2.5), circle(c(0.0, 0.0), 4.5), circle(c(0.3, 0.2), 3.0)];
    let flux = |f: &GraphFunction, g| vertical_flux(f, g, FluxMethod::ExactIntegrand).unwrap().value;
    let grid_error = (flux(&fine, &loops[0]) - flux(&coarse, &loops[0])).abs();
    for g in &loops[1..] {
        let gap = (flux(&fine, g) - flux(&fine, &loops[0])).abs();
        assert!(gap <= 10.0 * grid_error, "gap {gap:e} vs grid error {grid_error:e}");
    }
    assert!((flux(&fine, &loops[0]) - 2.0 * PI).abs() < 1e-3);
}

#[test]
fn solved_two_hole_fluxes_are_homology_invariant() {
    let (coarse, _) = solve(two_hole(96, 192));
    let (fine, report) = solve(two_hole(192, 384));
    // Fluxes that vanish by symmetry have no grid error; what is left is the
    // unconverged part of Newton, bounded by the total cell imbalance.
    let solver_slack = report.unknowns as f64 * report.residual_norm;
    let hole = c(0.0, 0.9);
    let families = [
        (circle(hole, 0.25), circle(hole, 0.35)),
        (circle(c(0.0, 0.0), 0.45), circle(c(0.1, 0.0), 0.4)),
        (circle(c(0.0, 0.0), 1.5), circle(c(0.0, 0.1), 1.6)),
    ];
    let fields: Vec<Option<KillingField>> = std::iter::once(None).chain(horizontal_fields(1.0).map(Some)).collect();
    for (a, b) in &families {
        for chi in &fields {
            let flux = |f: &GraphFunction, g: &Contour| match chi {
                None => vertical_flux(f, g, FluxMethod::ExactIntegrand).unwrap().value,
                Some(k) => horizontal_flux(f, *k, g, FluxMethod::ExactIntegrand).unwrap().value,
            };
            let grid_error = [a, b].iter().map(|g| (flux(&fine, g) - flux(&coarse, g)).abs()).fold(0.0, f64::max);
            let gap = (flux(&fine, a) - flux(&fine, b)).abs();
            let tol = 10.0 * grid_error + solver_slack;
            assert!(gap <= tol, "{chi:?}: gap {gap:e} vs {grid_error:e} + {solver_slack:e}");
        }
    }
}

#[test]
fn expansion_defect_is_fourth_order_and_stable() {
    let g = |z: Complex64| (z * z).conj() + 0.5 / (z - c(0.0, 2.0)).conj() + c(0.3, -0.2);
    let base = AnalyticGraph::new(sphere(1.0), g);
    let gamma = circle(c(0.2, 0.1), 0.7);
    for chi in horizontal_fields(1.0) {
        let defects: Vec<ExpansionDefect> = [0.1, 0.05, 0.025, 0.0125]
            .iter()
            .map(|&e| expansion_defect(&base.scaled(e), chi, &gamma).unwrap())
            .collect();
        let k = stable_constant(&defects, 2.0);
        assert!(k.is_some(), "{chi:?}: {defects:?}");
        assert!(k.unwrap() < 10.0);

        // Refinement: the same graph sampled on finer grids.
        let grid_defects: Vec<ExpansionDefect> = [32, 64, 128]
            .iter()
            .map(|&n| {
                let d = Arc::new(GraphDomain::annulus(0.25, 1.5, n, 2 * n, sphere(1.0)).unwrap());
                let f = GraphFunction::sample(d, |p| {
                    let z = p.planar();
                    0.05 * ((z * z * z).re / 3.0 + 0.5 * (z - c(0.0, 2.0)).norm().ln() + 0.3 * z.re - 0.2 * z.im)
                });
                expansion_defect(&f, chi, &gamma).unwrap()
            })
            .collect();
        assert!(stable_constant(&grid_defects, 2.0).is_some(), "{chi:?}: {grid_defects:?}");
    }
}

/// f(z̄) = −f(z) as a closed-form gradient: f = ε(y + Im z³ + y|z|²).
fn odd_gradient(eps: f64) -> impl Fn(Complex64) -> Complex64 + Send + Sync + Copy {
    move |z: Complex64| {
        let (x, y) = (z.re, z.im);
        let fx = 6.0 * x * y + 2.0 * x * y;
        let fy = 1.0 + 3.0 * x * x - 3.0 * y * y + x * x + 3.0 * y * y;
        eps * c(fx, fy)
    }
}

#[test]
fn chi_y_flux_of_odd_graphs_vanishes_on_symmetric_loops() {
    let chi = KillingField::new(KillingKind::Y, 1.0);
    let f = AnalyticGraph::new(sphere(1.0), odd_gradient(0.1));
    let d = Arc::new(GraphDomain::annulus(0.2, 2.0, 64, 128, sphere(1.0)).unwrap());
    let sampled = GraphFunction::sample(d, |p| {
        let z = p.planar();
        0.1 * (z.im + (z * z * z).im + z.im * z.norm_sqr())
    });
    for g in [circle(c(0.0, 0.0), 1.0), circle(c(0.6, 0.0), 0.3), circle(c(-0.9, 0.0), 0.5)] {
        for m in [FluxMethod::ExactIntegrand, FluxMethod::QuadraticExpansion] {
            assert!(horizontal_flux(&f, chi, &g, m).unwrap().value.abs() < 1e-10);
            assert!(horizontal_flux(&sampled, chi, &g, m).unwrap().value.abs() < 1e-10);
        }
    }
    // The same graph does carry χ_Y flux across loops that are not
    // conjugation symmetric.
    let off = horizontal_flux(&f, chi, &circle(c(0.6, 0.4), 0.3), FluxMethod::ExactIntegrand).unwrap();
    assert!(off.value.abs() > 1e-6);
}

#[test]
fn neck_model_examples() {
    let cfg = NeckConfiguration::new(NeckCase::Case1, vec![0.5], vec![1.0], 0.0).unwrap();
    let v = neck_flux_model(&cfg, 0, 0.1, 1e-3).unwrap();
    assert!((v - 2.0 * PI * 1e-3 / 1e3f64.ln()).abs() < 1e-18);

    let cfg = NeckConfiguration::new(NeckCase::Case1, vec![0.5, 0.9], vec![0.0, 2.0], 0.0).unwrap();
    assert_eq!(neck_flux_model(&cfg, 0, 0.1, 1e-3).unwrap(), 0.0);
    assert!(matches!(neck_flux_model(&cfg, 1, 0.3, 1e-3), Err(FluxError::OverlappingNecks { .. })));
    assert!(matches!(neck_flux_model(&cfg, 0, 0.1, 1.5), Err(FluxError::InvalidPitch(_))));
    assert!(matches!(neck_flux_model(&cfg, 2, 0.1, 1e-3), Err(FluxError::Force(_))));

    let t = 1e-4;
    let merged = NeckConfiguration::new(NeckCase::Case1, vec![0.5], vec![3.5], 0.0).unwrap();
    let sum = cluster_flux(&[1.0, 2.5], t).unwrap();
    assert!((sum - neck_flux_model(&merged, 0, 0.1, t).unwrap()).abs() < 1e-18);
}

#[test]
fn result_records_method_and_contour() {
    let f = analytic_catenoid(1.0, c(0.0, 0.0));
    let r = vertical_flux(&f, &circle(c(0.0, 0.0), 2.0), FluxMethod::QuadraticExpansion).unwrap();
    assert_eq!(r.method, FluxMethod::QuadraticExpansion);
    assert_eq!(r.method.label(), "quadratic-expansion");
    assert!(r.contour.contains("r=2"));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn catenoid_flux_on_any_enclosing_circle(
        a in 0.2f64..2.0,
        cx in -1.0f64..1.0,
        cy in -1.0f64..1.0,
        ox in -0.5f64..0.5,
        oy in -0.5f64..0.5,
        extra in 0.2f64..3.0,
    ) {
        let center = c(cx, cy);
        let offset = c(ox, oy);
        let r = a + offset.norm() + extra;
        let f = analytic_catenoid(a, center);
        let g = Contour::ccw(center + offset, r, 2048).unwrap();
        let v = vertical_flux(&f, &g, FluxMethod::ExactIntegrand).unwrap().value;
        prop_assert!((v - 2.0 * PI * a).abs() < 1e-8 * (1.0 + a), "{v}");
    }

    #[test]
    fn expansion_is_quadratic_in_scale(e in 0.01f64..1.0) {
        let f = AnalyticGraph::new(sphere(1.0), odd_gradient(1.0));
        let g = circle(c(0.3, 0.4), 0.5);
        let chi = KillingField::new(KillingKind::X, 1.0);
        let one = horizontal_flux(&f, chi, &g, FluxMethod::QuadraticExpansion).unwrap().value;
        let scaled = horizontal_flux(&f.scaled(e), chi, &g, FluxMethod::QuadraticExpansion).unwrap().value;
        prop_assert!((scaled - e * e * one).abs() <= 1e-12 * (1.0 + one.abs()));
    }
}
