use std::f64::consts::{E, PI};

use approx::assert_abs_diff_eq;
use helicoid_lab::forces::*;
use num_complex::Complex64;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn cfg(case: NeckCase, y: &[f64], c: &[f64]) -> NeckConfiguration {
    NeckConfiguration::new(case, y.to_vec(), c.to_vec(), 0.0).unwrap()
}

fn random_sorted(rng: &mut ChaCha8Rng, n: usize, lo: f64, hi: f64) -> Vec<f64> {
    loop {
        let mut y: Vec<f64> = (0..n).map(|_| rng.gen_range(lo..hi)).collect();
        y.sort_by(f64::total_cmp);
        if y.windows(2).all(|w| w[1] - w[0] > 0.05 * (hi - lo) / n as f64) {
            return y;
        }
    }
}

#[test]
fn kernel_antisymmetry_fuzz() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..100_000 {
        let x = 10f64.powf(rng.gen_range(-3.0..3.0));
        let y = 10f64.powf(rng.gen_range(-3.0..3.0));
        if x == y {
            continue;
        }
        assert_eq!(kernel_f(x, y).unwrap(), -kernel_f(y, x).unwrap());
    }
}

#[test]
fn kernel_value_and_sign() {
    // L = −1 ⇒ f = 2π²/(1 + π²)
    assert_abs_diff_eq!(kernel_f(1.0, E).unwrap(), 2.0 * PI * PI / (1.0 + PI * PI), epsilon = 1e-14);
    assert!(kernel_f(0.3, 2.0).unwrap() > 0.0);
    assert!(matches!(kernel_f(2.0, 2.0), Err(ForceError::CoincidentNecks(_))));
}

#[test]
fn case1_examples() {
    assert_abs_diff_eq!(force_case1(&cfg(NeckCase::Case1, &[1.0], &[1.0]), 0).unwrap(), 0.0, epsilon = 1e-15);
    // single neck below the equator: c²(1 − y²)/(1 + y²)
    let f = force_case1(&cfg(NeckCase::Case1, &[0.5], &[2.0]), 0).unwrap();
    assert_abs_diff_eq!(f, 4.0 * 0.75 / 1.25, epsilon = 1e-14);
    let two = cfg(NeckCase::Case1, &[0.5, 3.0], &[1.0, 0.7]);
    let expect = 0.75 / 1.25 + 0.7 * kernel_f(0.5, 3.0).unwrap();
    assert_abs_diff_eq!(force_case1(&two, 0).unwrap(), expect, epsilon = 1e-14);
}

#[test]
fn case2_examples() {
    assert_abs_diff_eq!(force_case2(&cfg(NeckCase::Case2, &[1.0], &[1.0]), 0).unwrap(), 1.0, epsilon = 1e-15);
    assert_eq!(force_case2(&cfg(NeckCase::Case2, &[1.0], &[0.0]), 0).unwrap(), 0.0);
    let two = cfg(NeckCase::Case2, &[1.0, E], &[1.0, 1.0]);
    assert_abs_diff_eq!(force_case2(&two, 0).unwrap(), 1.0 + 2.0 * PI * PI / (1.0 + PI * PI), epsilon = 1e-14);
}

#[test]
fn case3b_examples() {
    let two = cfg(NeckCase::Case3b, &[-0.5, 0.5], &[1.0, 1.0]);
    assert_abs_diff_eq!(force_case3b(&two, 0).unwrap(), PI, epsilon = 1e-15);
    assert_eq!(force_case3b(&two, 0).unwrap(), -force_case3b(&two, 1).unwrap());
    let zero = cfg(NeckCase::Case3b, &[-0.5, 0.5], &[1.0, 0.0]);
    assert_eq!(force_case3b(&zero, 0).unwrap(), 0.0);
}

#[test]
fn configuration_errors() {
    let e = NeckConfiguration::new(NeckCase::Case1, vec![1.0, 1.0], vec![1.0, 1.0], 0.0);
    assert!(matches!(e, Err(ForceError::CoincidentNecks(_))));
    let e = NeckConfiguration::new(NeckCase::Case1, vec![2.0, 1.0], vec![1.0, 1.0], 0.0);
    assert!(matches!(e, Err(ForceError::ClusterUnresolved)));
    let e = NeckConfiguration::new(NeckCase::Case3b, vec![-0.5], vec![1.0], 0.0);
    assert!(matches!(e, Err(ForceError::CaseHypothesisViolated(_))));
    let e = NeckConfiguration::new(NeckCase::Case2, vec![0.9], vec![1.0], 0.0);
    assert!(matches!(e, Err(ForceError::CaseHypothesisViolated(_))));
    let c = cfg(NeckCase::Case2, &[1.0], &[1.0]);
    assert!(matches!(force_case1(&c, 0), Err(ForceError::WrongCase { .. })));
    assert!(matches!(force_closed(&c, 3), Err(ForceError::IndexOutOfRange(3))));
    let c = cfg(NeckCase::Case1, &[0.5, 0.6], &[1.0, 1.0]);
    let max = max_contour_radius(&c, 0).unwrap();
    assert_abs_diff_eq!(max, 0.05, epsilon = 1e-15);
    assert!(matches!(force_via_contour(&c, 0, 0.06), Err(ForceError::InvalidRadius { .. })));
}

#[test]
fn equilibrium_contour_value_vanishes() {
    let c = cfg(NeckCase::Case1, &[1.0], &[1.0]);
    let f = force_via_contour(&c, 0, 0.25).unwrap();
    assert!(f.abs() < 1e-10, "{f}");
}

#[test]
fn route_equivalence_case1() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for k in 0..20 {
        let n = 1 + k % 4;
        let y: Vec<f64> = random_sorted(&mut rng, n, -1.5, 1.5).iter().map(|l| l.exp()).collect();
        let c: Vec<f64> = (0..n).map(|_| rng.gen_range(0.1..3.0)).collect();
        let c0 = rng.gen_range(0.0..2.0);
        let conf = NeckConfiguration::new(NeckCase::Case1, y, c, c0).unwrap();
        for i in 0..n {
            let eps = 0.5 * max_contour_radius(&conf, i).unwrap();
            let a = force_case1(&conf, i).unwrap();
            let b = force_via_contour(&conf, i, eps).unwrap();
            assert!((a - b).abs() < 1e-9, "trial {k} neck {i}: {a} vs {b}");
        }
    }
}

#[test]
fn route_equivalence_case2() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for k in 0..20 {
        let n = 1 + k % 4;
        let mut y: Vec<f64> = random_sorted(&mut rng, n, 0.2, 2.0).iter().map(|l| l.exp()).collect();
        y[0] = 1.0;
        let c: Vec<f64> = (0..n).map(|_| rng.gen_range(0.1..3.0)).collect();
        let conf = cfg(NeckCase::Case2, &y, &c);
        for i in 0..n {
            let eps = 0.5 * max_contour_radius(&conf, i).unwrap();
            let a = force_case2(&conf, i).unwrap();
            let b = force_via_contour(&conf, i, eps).unwrap();
            assert!((a - b).abs() < 1e-9, "trial {k} neck {i}: {a} vs {b}");
        }
    }
}

#[test]
fn route_equivalence_case3b() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for k in 0..20 {
        let n = 2 + k % 3;
        let mut y = random_sorted(&mut rng, n, -0.5, 0.5);
        y[0] = -0.5;
        y[n - 1] = 0.5;
        if y.windows(2).any(|w| w[1] - w[0] < 0.02) {
            continue;
        }
        let c: Vec<f64> = (0..n).map(|_| rng.gen_range(0.1..3.0)).collect();
        let conf = cfg(NeckCase::Case3b, &y, &c);
        for i in 0..n {
            let eps = 0.5 * max_contour_radius(&conf, i).unwrap();
            let a = force_case3b(&conf, i).unwrap();
            let b = force_via_contour(&conf, i, eps).unwrap();
            assert!((a - b).abs() < 1e-9, "trial {k} neck {i}: {a} vs {b}");
        }
    }
}

#[test]
fn hand_expansion_matches_quadrature() {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for k in 0..20 {
        let n = 1 + k % 4;
        let y: Vec<f64> = random_sorted(&mut rng, n, -1.5, 1.5).iter().map(|l| l.exp()).collect();
        let c: Vec<f64> = (0..n).map(|_| rng.gen_range(0.1..3.0)).collect();
        let conf = NeckConfiguration::new(NeckCase::Case1, y, c, rng.gen_range(0.0..2.0)).unwrap();
        for i in 0..n {
            let eps = 0.5 * max_contour_radius(&conf, i).unwrap();
            let a = hand_expansion_residue(&conf, i).unwrap();
            let b = numeric_residue_case1(&conf, i, eps).unwrap();
            assert!((a - b).norm() < 1e-9, "trial {k} neck {i}: {a} vs {b}");
        }
    }
}

#[test]
fn inversion_symmetric_forces_cancel() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for _ in 0..200 {
        let half = rng.gen_range(1..4);
        let low = random_sorted(&mut rng, half, -3.0, -0.1);
        let w: Vec<f64> = (0..half).map(|_| rng.gen_range(0.1..5.0)).collect();
        let mut y: Vec<f64> = low.iter().map(|l| l.exp()).collect();
        y.extend(low.iter().rev().map(|l| (-l).exp()));
        let mut c = w.clone();
        c.extend(w.iter().rev());
        let fv = force_vector(&cfg(NeckCase::Case1, &y, &c)).unwrap();
        let n = y.len();
        for i in 0..n {
            assert!((fv.forces[i] + fv.forces[n - 1 - i]).abs() < 1e-12);
        }
    }
}

#[test]
fn force_vector_matches_single_forces() {
    let conf = cfg(NeckCase::Case1, &[0.2, 0.9, 4.0], &[1.0, 2.0, 0.5]);
    let fv = force_vector(&conf).unwrap();
    for i in 0..3 {
        assert_abs_diff_eq!(fv.forces[i], force_case1(&conf, i).unwrap(), epsilon = 1e-14);
        let sum: f64 = fv.self_terms[i] + fv.pair[i].iter().sum::<f64>();
        assert_abs_diff_eq!(sum, fv.forces[i], epsilon = 1e-14);
    }
}

#[test]
fn scans_are_positive() {
    for (case, n) in [(NeckCase::Case1, 2), (NeckCase::Case2, 3), (NeckCase::Case3b, 3)] {
        let r = equilibrium_scan(ScanOptions::new(case, n, 10_000, 7)).unwrap();
        assert!(r.all_positive, "{case:?}: {}", r.min_margin);
        assert_eq!(r.trials.len(), 10_000);
        if case == NeckCase::Case2 {
            assert!(r.trials.iter().all(|t| t.margin >= t.weights[0] * t.weights[0]));
        }
        if case == NeckCase::Case1 {
            assert!(r.trials.iter().all(|t| t.positions[0] < 1.0));
        }
    }
}

#[test]
fn pinned_single_neck_is_equilibrium() {
    let opts = ScanOptions { pinned: Some(1.0), ..ScanOptions::new(NeckCase::Case1, 1, 50, 1) };
    let r = equilibrium_scan(opts).unwrap();
    assert_eq!(r.equilibria, 50);
    assert!(r.min_margin.abs() < 1e-12);
}

#[test]
fn scan_is_deterministic_and_validates() {
    let a = equilibrium_scan(ScanOptions::new(NeckCase::Case3b, 4, 300, 9)).unwrap();
    let b = equilibrium_scan(ScanOptions::new(NeckCase::Case3b, 4, 300, 9)).unwrap();
    assert_eq!(a, b);
    let c = equilibrium_scan(ScanOptions::new(NeckCase::Case3b, 4, 300, 10)).unwrap();
    assert_ne!(a.trials, c.trials);
    assert!(equilibrium_scan(ScanOptions::new(NeckCase::Case3b, 1, 10, 0)).is_err());
    assert!(equilibrium_scan(ScanOptions::new(NeckCase::Case1, 0, 10, 0)).is_err());
}

#[test]
fn cross_term_decays() {
    let conf = cfg(NeckCase::Case1, &[0.4, 2.5], &[1.0, 0.6]);
    let eps = 0.5 * max_contour_radius(&conf, 0).unwrap();
    let table = cross_term_decay(&conf, &[1e-3, 1e-4, 1e-6, 1e-8], eps, &TailModel::default()).unwrap();
    assert!(table.monotone, "{:?}", table.rows);
    assert!(table.final_force_error < 1e-6, "{}", table.final_force_error);
    assert!(table.rows[0].cross_ratio.abs() > 0.0);
    assert!(cross_term_decay(&conf, &[1e-4, 1e-3], eps, &TailModel::default()).is_err());
}

#[test]
fn pure_scaling_has_no_cross_term() {
    let conf = cfg(NeckCase::Case1, &[0.4, 2.5], &[1.0, 0.6]);
    let eps = 0.5 * max_contour_radius(&conf, 0).unwrap();
    let table = cross_term_decay(&conf, &[1e-2, 1e-4], eps, &TailModel { coeffs: vec![] }).unwrap();
    for r in &table.rows {
        assert!(r.cross_ratio.abs() < 1e-9 * r.quadratic_ratio.abs().max(1.0), "{r:?}");
    }
}

#[test]
fn residue_free_integrand() {
    for p in [Complex64::new(0.0, 0.5), Complex64::new(1.0, 2.0), Complex64::new(-3.0, 0.1)] {
        let v = residue_free_check(p, 0.5 * p.norm()).unwrap();
        assert!(v.norm() < 1e-12, "{v}");
    }
    assert!(residue_free_check(Complex64::new(0.0, 0.5), 0.6).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(2000))]

    #[test]
    fn case1_lowest_neck_below_equator_is_pushed(
        ly in proptest::collection::vec(-4.0f64..4.0, 1..6),
        c in proptest::collection::vec(0.01f64..100.0, 6),
        l1 in -4.0f64..-0.01,
    ) {
        let mut y: Vec<f64> = ly.iter().filter(|&&l| l > l1 + 1e-3).map(|l| l.exp()).collect();
        y.insert(0, l1.exp());
        y.sort_by(f64::total_cmp);
        y.dedup();
        let n = y.len();
        let conf = cfg(NeckCase::Case1, &y, &c[..n]);
        prop_assert!(force_case1(&conf, 0).unwrap() > 0.0);
    }

    #[test]
    fn case3b_forces_sum_to_zero(
        inner in proptest::collection::vec(-0.45f64..0.45, 0..4),
        c in proptest::collection::vec(0.01f64..10.0, 6),
    ) {
        let mut y = vec![-0.5, 0.5];
        y.extend(inner);
        y.sort_by(f64::total_cmp);
        y.dedup();
        let n = y.len();
        let fv = force_vector(&cfg(NeckCase::Case3b, &y, &c[..n])).unwrap();
        let scale: f64 = fv.forces.iter().map(|f| f.abs()).sum::<f64>().max(1.0);
        prop_assert!(fv.forces.iter().sum::<f64>().abs() < 1e-10 * scale);
        prop_assert!(fv.forces[0] > 0.0);
    }
}
