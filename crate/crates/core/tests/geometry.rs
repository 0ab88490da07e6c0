use std::f64::consts::{E, PI};

use approx::assert_abs_diff_eq;
use helicoid_lab::geometry::*;
use num_complex::Complex64;
use proptest::prelude::*;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

#[test]
fn cover_log_examples() {
    let p = CoverPoint::new(1.0, 0.0).unwrap();
    assert_eq!(cover_log(p), c(0.0, 0.0));
    let p = CoverPoint::new(1.0, 2.0 * PI).unwrap();
    assert_eq!(cover_log(p), c(0.0, 2.0 * PI));
    let p = CoverPoint::new(E, PI / 2.0).unwrap();
    assert_abs_diff_eq!(cover_log(p).re, 1.0, epsilon = 1e-15);
    assert_eq!(cover_log(p).im, PI / 2.0);
}

#[test]
fn modulus_must_be_positive() {
    assert!(CoverPoint::new(0.0, 1.0).is_err());
    assert!(CoverPoint::new(-1.0, 1.0).is_err());
    assert!(CoverPoint::new(f64::NAN, 1.0).is_err());
    assert!(CoverPoint::new(1.0, f64::INFINITY).is_err());
}

#[test]
fn involution_examples() {
    let p = CoverPoint::new(2.0, PI / 3.0).unwrap();
    let q = apply_involution(p, Involution::Conjugate);
    assert_eq!((q.modulus(), q.argument()), (2.0, -PI / 3.0));
    let q = apply_involution(p, Involution::Invert);
    assert_eq!((q.modulus(), q.argument()), (0.5, PI / 3.0));
    let fixed = CoverPoint::new(1.0, 5.0 * PI).unwrap();
    assert_eq!(apply_involution(fixed, Involution::Invert), fixed);
}

#[test]
fn killing_examples() {
    let y = KillingField::new(KillingKind::Y, 1.0);
    assert_eq!(killing_at(y, c(0.0, 0.0)), KillingValue::Horizontal(c(0.0, 0.5)));
    let r = 1.7;
    let e = KillingField::new(KillingKind::E, r);
    match killing_at(e, c(r, 0.0)) {
        KillingValue::Horizontal(v) => assert_abs_diff_eq!((v - c(0.0, 1.0)).norm(), 0.0, epsilon = 1e-15),
        KillingValue::Vertical => panic!("horizontal expected"),
    }
    let x = KillingField::new(KillingKind::X, r);
    let v = x.horizontal(c(0.0, r)).unwrap();
    assert_abs_diff_eq!(v.norm(), 0.0, epsilon = 1e-15);
    let xi = KillingField::new(KillingKind::Vertical, r);
    assert_eq!(killing_at(xi, c(0.3, 0.1)), KillingValue::Vertical);
}

#[test]
fn horizontal_fields_are_unit_on_their_great_circles() {
    let r = 2.5;
    let m = ConformalMetric::spherical(r).unwrap();
    let e = KillingField::new(KillingKind::E, r);
    let y = KillingField::new(KillingKind::Y, r);
    for k in 0..64 {
        let theta = 2.0 * PI * k as f64 / 64.0 + 0.1;
        let z = Complex64::from_polar(r, theta);
        assert_abs_diff_eq!(m.norm_at(z, e.horizontal(z).unwrap()), 1.0, epsilon = 1e-14);
        // χ_Y is tangent to the great circle through 0 and ∞ along the imaginary axis.
        let z = c(0.0, -20.0 + 40.0 * k as f64 / 63.0);
        assert_abs_diff_eq!(m.norm_at(z, y.horizontal(z).unwrap()), 1.0, epsilon = 1e-14);
    }
}

#[test]
fn spherical_factor_basics() {
    let m = ConformalMetric::spherical(3.0).unwrap();
    assert_eq!(m.factor(c(0.0, 0.0)), 2.0);
    assert!(ConformalMetric::spherical(0.0).is_err());
    let e = ConformalMetric::euclidean();
    assert_eq!(e.factor(c(5.0, -7.0)), 1.0);
    assert!(e.is_euclidean());
    assert!(e.equator_reflection(c(1.0, 0.0)).is_err());
}

#[test]
fn log_gradient_matches_finite_differences() {
    let m = ConformalMetric::spherical(1.3).unwrap();
    let z = c(0.4, -0.9);
    let h = 1e-5;
    let lx = (m.factor(z + h).ln() - m.factor(z - h).ln()) / (2.0 * h);
    let ly = (m.factor(z + c(0.0, h)).ln() - m.factor(z - c(0.0, h)).ln()) / (2.0 * h);
    let g = m.log_gradient(z);
    assert_abs_diff_eq!(g.re, lx, epsilon = 1e-9);
    assert_abs_diff_eq!(g.im, ly, epsilon = 1e-9);
}

#[test]
fn blowup_examples() {
    let b = blowup_map(1.0).unwrap();
    assert_abs_diff_eq!(b.apply(c(0.0, 1.0)).norm(), 0.0, epsilon = 1e-15);
    assert_abs_diff_eq!((b.apply(c(0.0, 0.0)) - c(0.0, -1.0)).norm(), 0.0, epsilon = 1e-15);
    let b = blowup_map(0.5).unwrap();
    assert_abs_diff_eq!(b.derivative(c(0.0, 1.0)).norm(), 1.0, epsilon = 1e-15);
    assert!(blowup_map(0.0).is_err());
    assert!(blowup_map(-2.0).is_err());
}

#[test]
fn moebius_normalization_and_inverse() {
    let m = MoebiusMap::new(c(2.0, 1.0), c(0.5, 0.0), c(0.0, 1.0), c(3.0, -1.0)).unwrap();
    let [a, b, cc, d] = m.coefficients();
    assert_abs_diff_eq!((a * d - b * cc - 1.0).norm(), 0.0, epsilon = 1e-14);
    let z = c(0.3, 0.7);
    let h = 1e-6;
    let fd = (m.apply(z + h) - m.apply(z - h)) / (2.0 * h);
    assert_abs_diff_eq!((fd - m.derivative(z)).norm(), 0.0, epsilon = 1e-8);
    assert!(MoebiusMap::new(c(1.0, 0.0), c(2.0, 0.0), c(2.0, 0.0), c(4.0, 0.0)).is_err());
}

#[test]
fn killing_transport_chain() {
    // φ_*χ_E = χ_X and then z ↦ iz carries χ_X to χ_Y.
    let r = 1.4;
    let e = KillingField::new(KillingKind::E, r);
    let x = KillingField::new(KillingKind::X, r);
    let y = KillingField::new(KillingKind::Y, r);
    let phi = MoebiusMap::equator_to_x(r);
    let rot = MoebiusMap::quarter_turn();
    for k in 0..100 {
        let t = k as f64 * 0.37;
        let z = c(1.5 * t.cos() * (0.3 + 0.01 * k as f64), 1.1 * (1.7 * t).sin());
        let (w, v) = phi.push_forward(|q| e.horizontal(q).unwrap(), z);
        assert!((v - x.horizontal(w).unwrap()).norm() < 1e-10 * (1.0 + v.norm()));
        let (w2, v2) = rot.push_forward(|q| x.horizontal(q).unwrap(), z);
        assert!((v2 - y.horizontal(w2).unwrap()).norm() < 1e-10 * (1.0 + v2.norm()));
    }
}

#[test]
fn domain_validation() {
    let outer = Circle::new(c(0.0, 0.0), 2.0).unwrap();
    let h1 = Circle::new(c(0.5, 0.0), 0.2).unwrap();
    let h2 = Circle::new(c(0.6, 0.0), 0.2).unwrap();
    assert!(AnnularDomain::new(outer, vec![h1, h2]).is_err());
    let far = Circle::new(c(1.9, 0.0), 0.2).unwrap();
    assert!(AnnularDomain::new(outer, vec![far]).is_err());
    let d = AnnularDomain::new(outer, vec![h1]).unwrap();
    assert!(d.contains(c(-1.0, 0.0)));
    assert!(!d.contains(c(0.5, 0.1)));
    assert_abs_diff_eq!(d.boundary_distance(c(0.5, 0.5)), 0.3, epsilon = 1e-15);
}

fn cover_point() -> impl Strategy<Value = CoverPoint> {
    (-6.0f64..6.0, -40.0f64..40.0).prop_map(|(s, a)| CoverPoint::new(s.exp(), a).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(10_000))]

    #[test]
    fn cover_log_round_trip(p in cover_point()) {
        let q = CoverPoint::from_log(cover_log(p)).unwrap();
        prop_assert!((q.modulus() - p.modulus()).abs() <= 1e-12 * p.modulus());
        prop_assert!((q.argument() - p.argument()).abs() <= 1e-12);
    }

    #[test]
    fn involutions_are_self_inverse(p in cover_point()) {
        prop_assert_eq!(p.conjugate().conjugate(), p);
        let q = p.invert().invert();
        prop_assert!((q.modulus() - p.modulus()).abs() <= 1e-15 * p.modulus());
        prop_assert_eq!(q.argument(), p.argument());
    }
}

proptest! {
    #[test]
    fn equator_reflection_is_an_isometry(
        r in 0.2f64..5.0,
        x in -10.0f64..10.0,
        y in -10.0f64..10.0,
    ) {
        let z = c(x, y);
        prop_assume!(z.norm() > 1e-3);
        let m = ConformalMetric::spherical(r).unwrap();
        let w = m.equator_reflection(z).unwrap();
        // |d(r²/z̄)/dz| = r²/|z|²
        let lhs = m.factor(w) * r * r / z.norm_sqr();
        prop_assert!((lhs - m.factor(z)).abs() <= 1e-12 * m.factor(z));
    }

    #[test]
    fn blowup_inverse_round_trip(mu in 0.01f64..10.0, x in -3.0f64..3.0, y in -3.0f64..3.0) {
        let z = c(x, y);
        prop_assume!((z - c(0.0, -1.0)).norm() > 1e-2);
        let b = blowup_map(mu).unwrap();
        let back = b.inverse_apply(b.apply(z));
        prop_assert!((back - z).norm() <= 1e-10 * (1.0 + z.norm()));
    }

    #[test]
    fn translation_tracks_argument_by_continuity(a in -30.0f64..30.0, m in 0.5f64..4.0, t in 0.0f64..std::f64::consts::TAU) {
        let p = CoverPoint::new(m, a).unwrap();
        let dz = Complex64::from_polar(0.9 * m, t);
        let q = p.translate(dz).unwrap();
        prop_assert!((q.planar() - (p.planar() + dz)).norm() <= 1e-12 * m * 4.0);
        prop_assert!((q.argument() - a).abs() < PI / 2.0);
    }
}
