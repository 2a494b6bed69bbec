use std::f64::consts::PI;
use std::time::Instant;

use baxterlab::whittaker::{
    gamma_c, ln_gamma, sklyanin_m, stade_check, whittaker_eval, QuadratureConfig, Scheme, StadeIdentity,
};
use num_complex::Complex64;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn rel(a: Complex64, b: Complex64) -> f64 {
    (a - b).norm() / b.norm()
}

fn real(v: &[f64]) -> Vec<Complex64> {
    v.iter().map(|&x| c(x, 0.0)).collect()
}

#[test]
fn euler_reflection() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for _ in 0..50 {
        let z = c(rng.gen_range(-5.0..5.0), rng.gen_range(-5.0..5.0));
        let v = gamma_c(z).unwrap() * gamma_c(1.0 - z).unwrap() * (PI * z).sin() / PI;
        assert!((v - 1.0).norm() < 1e-12, "z={z}: {v}");
    }
}

#[test]
fn gamma_decay_bracket() {
    // |Γ(x + iy)| e^{π|y|/2} |y|^{1/2 - x} → √(2π); the ratio stays in a narrow band
    let (mut lo, mut hi) = (f64::INFINITY, 0.0f64);
    for i in 0..=20 {
        for j in 0..=90 {
            let x = 1.0 + i as f64 / 20.0;
            let y = 5.0 + j as f64 * 0.5;
            for y in [y, -y] {
                let g = gamma_c(c(x, y)).unwrap().norm();
                let r = g * (PI * y.abs() / 2.0).exp() * y.abs().powf(0.5 - x);
                lo = lo.min(r);
                hi = hi.max(r);
            }
        }
    }
    assert!(hi / lo < 2.0, "bracket [{lo}, {hi}]");
    assert!(lo < (2.0 * PI).sqrt() && (2.0 * PI).sqrt() < hi * 1.01);
}

#[test]
fn sklyanin_rank_two_by_gamma() {
    let xi = [0.7, -0.3];
    let g = gamma_c(c(0.0, 1.0)).unwrap() * gamma_c(c(0.0, -1.0)).unwrap();
    let expected = 1.0 / (4.0 * PI * PI * 2.0) / g.re;
    assert!((sklyanin_m(&xi).unwrap() - expected).abs() < 1e-14 * expected);
}

#[test]
fn rank_two_schemes_agree() {
    let lam = real(&[0.5, -0.2]);
    let x = [0.3, -0.3];
    let base = QuadratureConfig::default().with_tol(1e-12, 1e-15);
    let a = whittaker_eval(&lam, &x, &base.with_scheme(Scheme::GaussLegendre)).unwrap();
    let b = whittaker_eval(&lam, &x, &base.with_scheme(Scheme::TanhSinh)).unwrap();
    assert!(rel(a.value, b.value) < 1e-8, "{} vs {}", a.value, b.value);
}

fn mirrored(x: &[f64]) -> Vec<f64> {
    x.iter().rev().map(|v| -v).collect()
}

#[test]
fn reflection_symmetry_rank_two_and_three() {
    let cfg = QuadratureConfig::default().with_tol(1e-11, 1e-14);
    let cases: [(&[f64], &[f64]); 2] = [
        (&[0.5, -0.2], &[0.3, -0.3]),
        (&[0.4, 0.1, -0.3], &[0.5, 0.0, -0.4]),
    ];
    for (lam, x) in cases {
        let start = Instant::now();
        let l = real(lam);
        let neg: Vec<Complex64> = l.iter().map(|z| -z).collect();
        let a = whittaker_eval(&l, x, &cfg).unwrap();
        let b = whittaker_eval(&neg, &mirrored(x), &cfg).unwrap();
        assert!(rel(a.value, b.value) < 1e-8, "N={}: {} vs {}", lam.len(), a.value, b.value);
        eprintln!("N={} reflection in {:?}, evals {}", lam.len(), start.elapsed(), a.evals);
    }
}

#[test]
fn permutation_invariance() {
    let cfg = QuadratureConfig::default().with_tol(1e-10, 1e-13);
    let x = [0.2, -0.1];
    let a = whittaker_eval(&real(&[0.6, -0.1]), &x, &cfg).unwrap();
    let b = whittaker_eval(&real(&[-0.1, 0.6]), &x, &cfg).unwrap();
    assert!(rel(a.value, b.value) < 1e-8);
    let x = [0.4, 0.0, -0.2];
    let a = whittaker_eval(&real(&[0.3, -0.2, 0.1]), &x, &cfg).unwrap();
    let b = whittaker_eval(&real(&[0.1, 0.3, -0.2]), &x, &cfg).unwrap();
    assert!(rel(a.value, b.value) < 1e-7, "{} vs {}", a.value, b.value);
}

#[test]
fn doubling_the_box_is_within_error() {
    let cfg = QuadratureConfig::default().with_tol(1e-10, 1e-13);
    let lam = real(&[0.5, -0.2]);
    let x = [0.3, -0.3];
    let a = whittaker_eval(&lam, &x, &cfg).unwrap();
    let b = whittaker_eval(&lam, &x, &cfg.with_half_width(24.0)).unwrap();
    assert!((a.value - b.value).norm() <= a.error.max(b.error) + 1e-14, "{} vs {}", a.value, b.value);
}

#[test]
fn stade_rank_two() {
    let cfg = QuadratureConfig::default().with_tol(1e-7, 1e-12);
    let lam = real(&[0.5, 0.2]);
    let nu = real(&[0.4, 0.3]);
    for which in [StadeIdentity::First, StadeIdentity::Second] {
        let start = Instant::now();
        let r = stade_check(1.0, &lam, &nu, which, &cfg, None).unwrap();
        eprintln!("{which:?}: rel {} in {:?}", r.rel_err, start.elapsed());
        assert!(r.pass, "{which:?}: rel {}", r.rel_err);
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 100, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn gamma_recurrence(re in -20.0f64..20.0, im in -20.0f64..20.0) {
        let z = c(re, im);
        prop_assume!(z.norm() <= 20.0 && (z - z.re.round()).norm() > 1e-3);
        let lhs = z * gamma_c(z).unwrap();
        let rhs = gamma_c(z + 1.0).unwrap();
        prop_assert!(rel(lhs, rhs) < 1e-12, "z={}: {} vs {}", z, lhs, rhs);
        let l = (ln_gamma(z + 1.0).unwrap() - ln_gamma(z).unwrap()).exp();
        prop_assert!(rel(l, z) < 1e-11);
    }
}
