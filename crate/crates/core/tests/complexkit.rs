use std::f64::consts::PI;
use std::sync::Arc;

use approx::assert_abs_diff_eq;
use helicoid_lab::complexkit::*;
use helicoid_lab::geometry::{AnnularDomain, Circle};
use num_complex::Complex64;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn two_pi_i() -> Complex64 {
    c(0.0, 2.0 * PI)
}

#[test]
fn cauchy_examples() {
    let unit = Contour::ccw(c(0.0, 0.0), 1.0, 64).unwrap();
    let v = contour_integral(|z| 1.0 / z, &unit).unwrap();
    assert_abs_diff_eq!((v - two_pi_i()).norm(), 0.0, epsilon = 1e-14);
    let other = Contour::ccw(c(0.3, -2.0), 0.7, 64).unwrap();
    assert_abs_diff_eq!(contour_integral(|z| z * z, &other).unwrap().norm(), 0.0, epsilon = 1e-14);
    let cw = Contour::new(c(0.0, 0.0), 1.0, Orientation::Cw, 64).unwrap();
    let v = contour_integral(|z| 1.0 / z, &cw).unwrap();
    assert_abs_diff_eq!((v + two_pi_i()).norm(), 0.0, epsilon = 1e-14);
}

#[test]
fn log_pole_contour_example() {
    // ∮ dz/(log z − log 2) over C(2, 0.1) = 2πi·2
    let r = residue_numeric(c(2.0, 0.0), PoleOrder::One, Prefactor::One, 0.1, 256).unwrap();
    assert_abs_diff_eq!((r - c(2.0, 0.0)).norm(), 0.0, epsilon = 1e-12);
}

#[test]
fn nonfinite_sample_reports_node() {
    let unit = Contour::ccw(c(0.0, 0.0), 1.0, 16).unwrap();
    let err = contour_integral(|z| if z.re > 0.97 { c(f64::NAN, 0.0) } else { z }, &unit).unwrap_err();
    assert!(matches!(err, ComplexError::QuadratureFailure { .. }));
}

#[test]
fn adaptive_doubling_converges() {
    let circle = Contour::ccw(c(0.0, 0.0), 1.0, 8).unwrap();
    let r = contour_integral_adaptive(|z| (z * 3.0).exp() / (z - 0.5), &circle).unwrap();
    assert!(r.converged);
    let exact = two_pi_i() * 1.5f64.exp();
    assert!((r.value - exact).norm() < 1e-10);
    // Doubling changes an analytic integrand by less than 1e-10 once resolved.
    let a = contour_integral(|z| z.exp() / (z - 0.2), &circle.with_nodes(64)).unwrap();
    let b = contour_integral(|z| z.exp() / (z - 0.2), &circle.with_nodes(128)).unwrap();
    assert!((a - b).norm() < 1e-10);
}

#[test]
fn residue_closed_form_examples() {
    let two = c(2.0, 0.0);
    assert_eq!(residue_log_pole(two, PoleOrder::One, Prefactor::One).unwrap(), two);
    let r = residue_log_pole(two, PoleOrder::Two, Prefactor::Equatorial).unwrap();
    assert_abs_diff_eq!((r - c(-5.0 / 8.0, 0.0)).norm(), 0.0, epsilon = 1e-15);
    let r = residue_log_pole(c(0.0, 1.0), PoleOrder::Two, Prefactor::Equatorial).unwrap();
    assert_eq!(r.norm(), 0.0);
    assert!(residue_log_pole(c(0.0, 0.0), PoleOrder::One, Prefactor::One).is_err());
}

#[test]
fn residue_identities_on_random_poles() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut count = 0;
    while count < 50 {
        let p = Complex64::from_polar(rng.gen_range(0.2f64..5.0), rng.gen_range(-PI..PI));
        if (p - 1.0).norm() < 0.05 || (p + 1.0).norm() < 0.05 {
            continue;
        }
        count += 1;
        let eps = 0.3 * p.norm();
        for (order, pre) in [
            (PoleOrder::One, Prefactor::One),
            (PoleOrder::Two, Prefactor::One),
            (PoleOrder::One, Prefactor::Equatorial),
            (PoleOrder::Two, Prefactor::Equatorial),
        ] {
            let closed = residue_log_pole(p, order, pre).unwrap();
            let num = residue_numeric(p, order, pre, eps, 512).unwrap();
            assert!((closed - num).norm() < 1e-8, "p={p} {order:?} {pre:?}: {closed} vs {num}");
        }
    }
}

/// Dense midpoint rule for −(1/π)∬ g/(w−z) dA over the unit disk, skipping the
/// cell that contains z.
fn midpoint_area_oracle(g: impl Fn(Complex64) -> Complex64, z: Complex64, n: usize) -> Complex64 {
    let h = 2.0 / n as f64;
    let mut acc = c(0.0, 0.0);
    for i in 0..n {
        for j in 0..n {
            let w = c(-1.0 + (i as f64 + 0.5) * h, -1.0 + (j as f64 + 0.5) * h);
            if w.norm() >= 1.0 || ((w - z).re.abs() < h / 2.0 && (w - z).im.abs() < h / 2.0) {
                continue;
            }
            acc += g(w) / (w - z) * h * h;
        }
    }
    -acc / PI
}

#[test]
fn pompeiu_holomorphic_reduces_to_cauchy() {
    let disk = AnnularDomain::disk(c(0.0, 0.0), 1.0).unwrap();
    let z = c(0.3, 0.0);
    let v = pompeiu_eval(|w| w * w, |_| c(0.0, 0.0), &disk, z, &PompeiuOptions::default()).unwrap();
    assert_abs_diff_eq!((v - c(0.09, 0.0)).norm(), 0.0, epsilon = 1e-12);
}

#[test]
fn pompeiu_conjugate_on_unit_disk() {
    let disk = AnnularDomain::disk(c(0.0, 0.0), 1.0).unwrap();
    let opts = PompeiuOptions::default();
    for z in [c(0.0, 0.0), c(0.5, 0.0)] {
        let v = pompeiu_eval(|w| w.conj(), |_| c(1.0, 0.0), &disk, z, &opts).unwrap();
        assert_abs_diff_eq!((v - z.conj()).norm(), 0.0, epsilon = 1e-11);
        let area = pompeiu_area_term(|_| c(1.0, 0.0), &disk, z, &opts).unwrap();
        let oracle = midpoint_area_oracle(|_| c(1.0, 0.0), z, 1500);
        assert!((area - oracle).norm() < 5e-3, "{area} vs {oracle}");
    }
}

#[test]
fn pompeiu_with_holes_reproduces_f() {
    // f = w̄² + w, f_z̄ = 2w̄
    let dom = AnnularDomain::new(
        Circle::new(c(0.0, 0.0), 1.0).unwrap(),
        vec![Circle::new(c(0.4, 0.2), 0.15).unwrap(), Circle::new(c(-0.3, -0.4), 0.2).unwrap()],
    )
    .unwrap();
    let f = |w: Complex64| w.conj() * w.conj() + w;
    let g = |w: Complex64| 2.0 * w.conj();
    let opts = PompeiuOptions::default();
    for z in [c(0.0, 0.1), c(-0.5, 0.3), c(0.55, -0.2)] {
        let v = pompeiu_eval(f, g, &dom, z, &opts).unwrap();
        assert!((v - f(z)).norm() < 1e-10, "z={z}: {v} vs {}", f(z));
    }
}

#[test]
fn pompeiu_rejects_points_near_boundary() {
    let disk = AnnularDomain::disk(c(0.0, 0.0), 1.0).unwrap();
    let opts = PompeiuOptions::default();
    let err = pompeiu_eval(|w| w, |_| c(0.0, 0.0), &disk, c(0.999, 0.0), &opts).unwrap_err();
    assert!(matches!(err, ComplexError::NearBoundaryEvaluation { .. }));
}

fn annulus_with_hole() -> AnnularDomain {
    AnnularDomain::new(Circle::new(c(0.0, 0.0), 2.0).unwrap(), vec![Circle::new(c(0.5, 0.0), 0.2).unwrap()]).unwrap()
}

#[test]
fn laurent_atoms() {
    let dom = annulus_with_hole();
    let opts = LaurentOptions::default();
    let d = laurent_decompose(|z| 1.0 / (z - 0.5), None, &dom, &opts).unwrap();
    assert_abs_diff_eq!((d.minus_coeffs[0][0] - 1.0).norm(), 0.0, epsilon = 1e-13);
    assert!(d.minus_coeffs[0][1..].iter().all(|a| a.norm() < 1e-13));
    assert!(d.plus_coeffs.iter().all(|a| a.norm() < 1e-13));
    assert_eq!(d.area(c(1.0, 1.0)).unwrap(), c(0.0, 0.0));

    let d = laurent_decompose(|z| z + 1.0 / (z - 0.5), None, &dom, &opts).unwrap();
    assert_abs_diff_eq!((d.plus_coeffs[1] - 1.0).norm(), 0.0, epsilon = 1e-13);
    assert_abs_diff_eq!((d.minus_coeffs[0][0] - 1.0).norm(), 0.0, epsilon = 1e-13);
    assert!(d.plus_coeffs[0].norm() < 1e-13);
    assert!(d.plus_coeffs[2..].iter().all(|a| a.norm() < 1e-13));
}

#[test]
fn laurent_of_log_gradient() {
    let dom = annulus_with_hole();
    let uz = |z: Complex64| 0.5 / (z - 0.5);
    let d = laurent_decompose(uz, None, &dom, &LaurentOptions::default()).unwrap();
    assert_abs_diff_eq!((d.minus_coeffs[0][0] - 0.5).norm(), 0.0, epsilon = 1e-13);
    assert!(check_real_residue(|z| (z - 0.5).norm().ln(), &dom).unwrap() < 1e-10);
    assert!(check_real_residue(|z| (z * z * z).re, &dom).unwrap() < 1e-10);
    assert!(check_real_residue_with_gradient(uz, &dom).unwrap() < 1e-14);
}

#[test]
fn laurent_with_area_term_reconstructs_c1_function() {
    let dom = annulus_with_hole();
    let f = |z: Complex64| z.norm_sqr() + 1.0 / (z - 0.5);
    let g: Arc<dyn Fn(Complex64) -> Complex64 + Send + Sync> = Arc::new(|z: Complex64| z);
    let d = laurent_decompose(f, Some(g), &dom, &LaurentOptions::default()).unwrap();
    for z in [c(-1.0, 0.5), c(0.5, 0.6), c(1.2, -0.7)] {
        let v = d.evaluate(z).unwrap();
        assert!((v - f(z)).norm() < 1e-9, "z={z}: {v} vs {}", f(z));
    }
}

/// Random rational function with poles inside the holes and outside the
/// outer circle.
fn random_rational(rng: &mut ChaCha8Rng, dom: &AnnularDomain) -> Vec<(Complex64, Complex64, i32)> {
    let mut terms = Vec::new();
    for h in dom.holes() {
        for _ in 0..2 {
            let q = h.center + Complex64::from_polar(rng.gen_range(0.0..0.5) * h.radius, rng.gen_range(0.0..2.0 * PI));
            let a = c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
            terms.push((q, a, rng.gen_range(1..=2)));
        }
    }
    for _ in 0..2 {
        let q = Complex64::from_polar(rng.gen_range(1.6..3.0) * dom.outer().radius, rng.gen_range(0.0..2.0 * PI));
        let a = c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
        terms.push((q, a, 1));
    }
    terms
}

fn eval_rational(terms: &[(Complex64, Complex64, i32)], z: Complex64) -> Complex64 {
    terms.iter().map(|(q, a, k)| a / (z - q).powi(*k)).sum()
}

#[test]
fn laurent_reconstruction_on_random_rationals() {
    let dom = AnnularDomain::new(
        Circle::new(c(0.0, 0.0), 2.0).unwrap(),
        vec![Circle::new(c(0.5, 0.3), 0.25).unwrap(), Circle::new(c(-0.8, -0.4), 0.3).unwrap()],
    )
    .unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut worst: f64 = 0.0;
    for _ in 0..20 {
        let terms = random_rational(&mut rng, &dom);
        let d = laurent_decompose(|z| eval_rational(&terms, z), None, &dom, &LaurentOptions::default()).unwrap();
        for k in 0..40 {
            let z = Complex64::from_polar(0.3 + 1.2 * (k as f64 / 40.0), 0.77 * k as f64);
            if dom.boundary_distance(z) < 0.15 {
                continue;
            }
            let err = (d.evaluate(z).unwrap() - eval_rational(&terms, z)).norm();
            worst = worst.max(err);
        }
    }
    assert!(worst < 1e-9, "worst reconstruction error {worst}");
}

#[test]
fn truncation_usage_is_reported() {
    let dom = annulus_with_hole();
    let d = laurent_decompose(|z| 1.0 / (z - 0.5), None, &dom, &LaurentOptions::default()).unwrap();
    let (_, usage) = d.evaluate_with_usage(c(-1.0, 0.0)).unwrap();
    assert_eq!(usage.minus, vec![1]);
    assert_eq!(usage.plus, 0);
    assert_eq!(d.cutoff, DEFAULT_CUTOFF);
}

#[test]
fn conjugation_mirrors_coefficients() {
    let dom = AnnularDomain::new(Circle::new(c(0.1, 0.2), 2.0).unwrap(), vec![Circle::new(c(0.5, 0.4), 0.25).unwrap()])
        .unwrap();
    let f = |z: Complex64| z * z / (z - c(0.55, 0.45)) + (z * 0.3).exp();
    let g = |z: Complex64| f(z.conj()).conj();
    let opts = LaurentOptions::default();
    let a = laurent_decompose(f, None, &dom, &opts).unwrap();
    let b = laurent_decompose(g, None, &dom.conjugate(), &opts).unwrap();
    for (x, y) in a.plus_coeffs.iter().zip(&b.plus_coeffs) {
        assert!((x.conj() - y).norm() <= 1e-13 * (1.0 + x.norm()));
    }
    for (x, y) in a.minus_coeffs[0].iter().zip(&b.minus_coeffs[0]) {
        assert!((x.conj() - y).norm() <= 1e-13 * (1.0 + x.norm()));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn order_one_residue_is_the_pole(r in 0.2f64..5.0, t in -3.1f64..3.1) {
        let p = Complex64::from_polar(r, t);
        let num = residue_numeric(p, PoleOrder::One, Prefactor::One, 0.3 * r, 256).unwrap();
        prop_assert!((num - p).norm() < 1e-8 * (1.0 + r));
    }

    #[test]
    fn trapezoid_kills_polynomials(
        cx in -2.0f64..2.0, cy in -2.0f64..2.0, r in 0.1f64..3.0, k in 0i32..10,
    ) {
        let circle = Contour::ccw(c(cx, cy), r, 64).unwrap();
        let v = contour_integral(|z| z.powi(k), &circle).unwrap();
        prop_assert!(v.norm() < 1e-12 * (1.0 + (c(cx, cy).norm() + r).powi(k + 1)));
    }
}
