use std::f64::consts::{PI, TAU};

use circle_escape::arithmetic::{character_table, gcd};
use circle_escape::billiard::{
    beta_after, billiard_map, escape_count, HoleConfiguration, PhasePoint,
};
use circle_escape::mellin::MellinModel;
use circle_escape::montecarlo::estimate_survival;
use circle_escape::survival::{p_infinity_q_holes, p_infinity_rational, p_infinity_two_holes};
use circle_escape::zeta::{hurwitz_zeta_rational, riemann_zeta};
use num_complex::Complex;
use proptest::prelude::*;

fn point() -> impl Strategy<Value = PhasePoint<f64>> {
    (0.0..TAU, -1.5..1.5f64).prop_map(|(b, p)| PhasePoint::new(b, p).unwrap())
}

fn replay(p: PhasePoint<f64>, holes: &HoleConfiguration<f64>, cap: u64) -> Option<u64> {
    let mut b = p.beta;
    for k in 1..=cap {
        b = (b + PI - 2.0 * p.psi).rem_euclid(TAU);
        if holes
            .starts()
            .iter()
            .any(|&s| (b - s).rem_euclid(TAU) < holes.delta())
        {
            return Some(k);
        }
    }
    None
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn map_keeps_angle_and_wraps(p in point(), k in 1u64..200) {
        let mut q = p;
        for _ in 0..k {
            q = billiard_map(q);
        }
        prop_assert_eq!(q.psi, p.psi);
        prop_assert!((0.0..TAU).contains(&q.beta));
        let direct = beta_after(p, k);
        let gap = (q.beta - direct).rem_euclid(TAU);
        prop_assert!(gap.min(TAU - gap) < 1e-9);
    }

    #[test]
    fn escape_count_matches_replay(p in point(), theta in 0.5..5.5f64, delta in 0.05..0.8f64) {
        let holes = HoleConfiguration::two_holes(theta, delta).unwrap();
        let got = escape_count(p, &holes, 3000);
        // Points within rounding of a hole edge may legitimately disagree.
        let b = beta_after(p, got.bounces().unwrap_or(1));
        let near_edge = holes.starts().iter().any(|&s| {
            let x = (b - s).rem_euclid(TAU);
            x.min(TAU - x) < 1e-9 || (x - delta).abs() < 1e-9
        });
        if !near_edge {
            prop_assert_eq!(got.bounces(), replay(p, &holes, 3000));
        }
        if let Some(t) = got.time() {
            prop_assert!((t - 2.0 * p.psi.cos() * got.bounces().unwrap() as f64).abs() < 1e-12);
        }
    }

    #[test]
    fn wider_holes_survive_less(theta in 0.0..TAU, d in 0.01..1.5f64, grow in 1.01..2.0f64) {
        let small = p_infinity_two_holes(theta, d).unwrap().value;
        let big = p_infinity_two_holes(theta, d * grow).unwrap().value;
        prop_assert!(big <= small * (1.0 + 1e-12));
        prop_assert!(small >= 0.0);
    }

    #[test]
    fn mirror_symmetric(theta in 0.1..6.1f64, d in 0.01..1.0f64) {
        let a = p_infinity_two_holes(theta, d).unwrap().value;
        let b = p_infinity_two_holes(TAU - theta, d).unwrap().value;
        prop_assert!((a - b).abs() <= 1e-9 * a.max(1.0), "{} vs {}", a, b);
    }

    #[test]
    fn rational_path_matches_float_path(q in 2u64..13, r in 1u64..12, d in 0.02..0.5f64) {
        prop_assume!(r < q && gcd(r, q) == 1);
        let exact = p_infinity_rational(r, q, d).unwrap().value;
        let float = p_infinity_two_holes(TAU * r as f64 / q as f64, d).unwrap().value;
        prop_assert!((exact - float).abs() <= 1e-8 * exact.max(1.0), "{} vs {}", exact, float);
    }

    #[test]
    fn two_equal_holes_are_antipodal_pair(d in 0.01..1.5f64) {
        let a = p_infinity_q_holes(2, d).unwrap().value;
        let b = p_infinity_two_holes(PI, d).unwrap().value;
        prop_assert!((a - b).abs() <= 1e-12 * a.max(1.0));
    }

    #[test]
    fn zeta_conjugate_symmetry(re in -20.0..20.0f64, im in 0.5..150.0f64) {
        let s = Complex::new(re, im);
        let a = riemann_zeta(s).unwrap();
        let b = riemann_zeta(s.conj()).unwrap();
        prop_assert!((a - b.conj()).norm() <= 1e-12 * (1.0 + a.norm()));
    }

    #[test]
    fn hurwitz_distribution(q in 1u64..9, re in -6.0..6.0f64, im in -40.0..40.0f64) {
        let s = Complex::new(re, im);
        prop_assume!((s - Complex::new(1.0, 0.0)).norm() > 0.1);
        let mut sum = Complex::new(0.0, 0.0);
        for m in 1..=q {
            sum += hurwitz_zeta_rational(s, m, q, false).unwrap();
        }
        let rhs = Complex::new(q as f64, 0.0).powc(s) * riemann_zeta(s).unwrap();
        prop_assert!((sum - rhs).norm() <= 1e-9 * (1.0 + rhs.norm()), "{} vs {}", sum, rhs);
    }

    #[test]
    fn closed_form_matches_series(idx in 0usize..5, re in 1.2..6.0f64, im in -30.0..30.0f64) {
        let q = [1u64, 2, 3, 4, 6][idx];
        let s = Complex::new(re, im);
        let a = MellinModel::closed_form(q).unwrap().evaluate(s).unwrap();
        let b = MellinModel::character_series(u64::from(q > 1), q).unwrap().evaluate(s).unwrap();
        prop_assert!((a - b).norm() <= 1e-10 * a.norm().max(1e-300));
    }

    #[test]
    fn characters_are_unimodular_on_units(q in 1u64..60, n in 0i64..500) {
        let t = character_table(q);
        for chi in t.characters() {
            let v = chi.value::<f64>(n);
            if gcd(n.rem_euclid(q as i64) as u64, q) == 1 {
                prop_assert!((v.norm() - 1.0).abs() < 1e-12);
                prop_assert!((v * chi.conj_value::<f64>(n) - 1.0).norm() < 1e-12);
            } else {
                prop_assert_eq!(v, Complex::new(0.0, 0.0));
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn simulation_is_deterministic(seed in any::<u64>(), d in 0.2..1.0f64) {
        let holes = HoleConfiguration::one_hole(d).unwrap();
        let a = estimate_survival(&holes, 30.0, 20_000, seed, 8).unwrap();
        let pool = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
        let b = pool.install(|| estimate_survival(&holes, 30.0, 20_000, seed, 8).unwrap());
        prop_assert_eq!(a, b);
    }
}

#[test]
fn single_precision_kernels_track_double() {
    let a = p_infinity_two_holes(0.0f32, 0.3).unwrap().value as f64;
    let b = p_infinity_two_holes(0.0f64, 0.3).unwrap().value;
    assert!((a - b).abs() < 1e-4 * b);
    let z = riemann_zeta(Complex::new(2.0f32, 0.0)).unwrap();
    assert!((z.re as f64 - PI * PI / 6.0).abs() < 1e-5);
}
