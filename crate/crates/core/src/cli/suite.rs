//! The acceptance ladder: one list of reports per criterion, at full or reduced sizes.

use std::f64::consts::PI;

use num_complex::Complex64;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::baxter::{
    baxter_eigen_check, gamma_identity_check, kappa_forms, kappa_parity, lemma1_check, BaxterIdentity, TestFunction,
};
use crate::error::Result;
use crate::limits::{convergence_sweep, eq_exp_limit_check, term_limit_checks, DEFAULT_LADDER, DEFAULT_PRECISION};
use crate::noumi::{sample_point, verify_noumi};
use crate::qcore::rat;
use crate::report::{Value, VerificationReport};
use crate::symfunc::{
    eval_symmetric, macdonald_gram_schmidt, macdonald_triangular_eigen, partitions_of, qwhittaker_branch_eval, Partition,
    Signature,
};
use crate::whittaker::{gamma_c, stade_check, whittaker_eval, QuadratureConfig, StadeIdentity};

pub const CRITERIA: [(u8, &str); 8] = [
    (1, "Noumi eigenrelation, exact"),
    (2, "Macdonald constructions agree, exact"),
    (3, "Gamma identity and kappa parity"),
    (4, "Residue and contour forms of the operator agree"),
    (5, "Stade identities"),
    (6, "Dual Baxter eigenrelation"),
    (7, "Scaling limits"),
    (8, "Gamma function and Whittaker reflection"),
];

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn cfg(rel: f64, abs: f64) -> QuadratureConfig {
    QuadratureConfig::default().with_tol(rel, abs)
}

/// Rational in (0, 1) with denominator at most 100.
fn unit_rational(rng: &mut ChaCha8Rng) -> BigRational {
    let den = rng.gen_range(2..=100);
    rat(rng.gen_range(1..den), den)
}

/// Every `(λ, N)` with `|λ| <= max_size`, `ℓ(λ) <= N <= 3`, each with its own `(q, t)`.
fn grid(max_size: u32, seed: u64) -> Vec<(Partition, usize, BigRational, BigRational, u64)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    for size in 0..=max_size {
        for lam in partitions_of(size) {
            for n in lam.len().max(1)..=3 {
                let q = unit_rational(&mut rng);
                let t = unit_rational(&mut rng);
                out.push((lam.clone(), n, q, t, rng.gen()));
            }
        }
    }
    out
}

/// Gram–Schmidt against the triangular eigenproblem at `(q, t)`, and Gram–Schmidt at `t = 0` against
/// the branching sum, all exactly at sampled points.
pub fn macdonald_cross_check(
    lam: &Partition,
    n: usize,
    q: &BigRational,
    t: &BigRational,
    samples: usize,
    seed: u64,
) -> Result<VerificationReport> {
    let zero = rat(0, 1);
    let gs = macdonald_gram_schmidt(lam, q, t)?.restrict(n);
    let eig = macdonald_triangular_eigen(lam, n, q, t)?;
    let gs0 = macdonald_gram_schmidt(lam, q, &zero)?.restrict(n);
    let sig = Signature::from_partition(lam, n)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (mut lhs, mut rhs) = (Vec::new(), Vec::new());
    let mut mismatches = Vec::new();
    for _ in 0..samples {
        let z = sample_point(&mut rng, n);
        let a = eval_symmetric(&gs, &z)?;
        let b = eval_symmetric(&eig, &z)?;
        let a0 = eval_symmetric(&gs0, &z)?;
        let b0 = qwhittaker_branch_eval(&sig, &z, q)?;
        if a != b {
            mismatches.push(format!("eigen at {z:?}"));
        }
        if a0 != b0 {
            mismatches.push(format!("branching at {z:?}"));
        }
        lhs.extend([a, a0]);
        rhs.extend([b, b0]);
    }
    let all_zero = mismatches.is_empty();
    Ok(VerificationReport::new("macdonald-cross")
        .param("lambda", lam)
        .param("n", n)
        .param("q", q)
        .param("t", t)
        .param("samples", samples)
        .with_seed(seed)
        .exact(
            Value::from(lhs.iter().collect::<Vec<_>>()),
            Value::from(rhs.iter().collect::<Vec<_>>()),
            if all_zero { 0.0 } else { 1.0 },
            all_zero,
        )
        .diag("mismatches", mismatches))
}

/// `Γ(z)Γ(1-z) sin(πz)/π = 1` at `count` random points of the square `|Re z|, |Im z| < 5`.
pub fn euler_reflection_check(count: usize, seed: u64, tol: f64) -> Result<VerificationReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst = (0.0f64, c(1.0, 0.0), c(0.0, 0.0));
    for _ in 0..count {
        let z = c(rng.gen_range(-5.0..5.0), rng.gen_range(-5.0..5.0));
        let v = gamma_c(z)? * gamma_c(1.0 - z)? * (PI * z).sin() / PI;
        let e = (v - 1.0).norm();
        if e >= worst.0 {
            worst = (e, v, z);
        }
    }
    Ok(VerificationReport::new("euler-reflection")
        .param("count", count)
        .with_seed(seed)
        .compare(worst.1, c(1.0, 0.0), tol)
        .diag("worst_z", worst.2))
}

/// `|Γ(x+iy)| e^{π|y|/2} |y|^{1/2-x}` over `x ∈ [1, 2]`, `|y| ∈ [5, 50]` stays inside a bracket of
/// ratio below 2 that contains `√(2π)`.
pub fn gamma_decay_check() -> Result<VerificationReport> {
    let (mut lo, mut hi) = (f64::INFINITY, 0.0f64);
    for i in 0..=20 {
        for j in 0..=90 {
            let x = 1.0 + i as f64 / 20.0;
            let y = 5.0 + j as f64 * 0.5;
            for y in [y, -y] {
                let r = gamma_c(c(x, y))?.norm() * (PI * y.abs() / 2.0).exp() * y.abs().powf(0.5 - x);
                lo = lo.min(r);
                hi = hi.max(r);
            }
        }
    }
    let pass = hi / lo < 2.0 && lo <= (2.0 * PI).sqrt();
    let mut r = VerificationReport::new("gamma-decay").exact(Value::from(hi / lo), Value::from(2.0), 0.0, pass);
    r.tolerance = 2.0;
    Ok(r.diag("bracket", [lo, hi]))
}

/// `ψ_λ(x) = ψ_{-λ}(x')` with `x'_i = -x_{N-i+1}`.
pub fn whittaker_reflection_check(lam: &[Complex64], x: &[f64], cfg: &QuadratureConfig, tol: f64) -> Result<VerificationReport> {
    let neg: Vec<Complex64> = lam.iter().map(|z| -z).collect();
    let mirrored: Vec<f64> = x.iter().rev().map(|v| -v).collect();
    let a = whittaker_eval(lam, x, cfg)?;
    let b = whittaker_eval(&neg, &mirrored, cfg)?;
    Ok(VerificationReport::new("whittaker-reflection")
        .param("lambda", format!("{lam:?}"))
        .param("x", format!("{x:?}"))
        .compare(a.value, b.value, tol)
        .diag("quadrature_error", [a.error, b.error]))
}

/// `κ` in both forms on random `ν`: the forms agree and the value is even.
pub fn kappa_check(count: usize, seed: u64) -> Result<VerificationReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut bad = Vec::new();
    for _ in 0..count {
        let len = rng.gen_range(1..=5);
        let nu: Vec<i64> = (0..len).map(|_| rng.gen_range(0..20)).collect();
        let (a, b) = kappa_forms(&nu);
        if a != b || kappa_parity(&nu)? % 2 != 0 {
            bad.push(nu);
        }
    }
    let ok = bad.is_empty();
    Ok(VerificationReport::new("kappa-parity")
        .param("count", count)
        .with_seed(seed)
        .exact(Value::Missing, Value::Missing, bad.len() as f64, ok)
        .diag("failures", bad))
}

fn tag(reports: Vec<VerificationReport>, id: u8) -> Vec<VerificationReport> {
    reports.into_iter().map(|r| r.param("criterion", id)).collect()
}

/// Runs criterion `id`. `quick` shrinks grids and loosens nothing: every tolerance is the full one.
pub fn run_criterion(id: u8, quick: bool, seed: u64) -> Result<Vec<VerificationReport>> {
    let mut out = Vec::new();
    match id {
        1 | 2 => {
            let (size, order, samples) = if quick { (2, 2, 2) } else { (4, 4, 5) };
            for (lam, n, q, t, s) in grid(size, seed) {
                out.push(if id == 1 {
                    verify_noumi(&lam, n, &q, &t, order, samples, s)?
                } else {
                    macdonald_cross_check(&lam, n, &q, &t, samples, s)?
                });
            }
        }
        3 => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let per_case = if quick { 2 } else { 10 };
            for n in 1..=4usize {
                // every ν with entries at most 3; in quick mode only the constant ones
                let cases: Vec<Vec<u32>> = if quick {
                    (0..=3).map(|k| vec![k; n]).collect()
                } else {
                    (0..4u32.pow(n as u32))
                        .map(|mut k| {
                            (0..n)
                                .map(|_| {
                                    let d = k % 4;
                                    k /= 4;
                                    d
                                })
                                .collect()
                        })
                        .collect()
                };
                for nu in cases {
                    for _ in 0..per_case {
                        let r: Vec<Complex64> =
                            (0..n).map(|_| c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))).collect();
                        out.push(gamma_identity_check(&r, &nu, 1e-10)?);
                    }
                }
            }
            out.push(kappa_check(100, seed)?);
        }
        4 => {
            let w1 = [c(0.4, -0.3)];
            let r = lemma1_check(&TestFunction::Constant, &w1, 1.0, 1.0, 40, &cfg(1e-12, 1e-14), 1e-10)?;
            // both forms against e^{-u}
            let target = c((-1f64).exp(), 0.0);
            let closed: Vec<_> = [("residue", &r.lhs), ("contour", &r.rhs)]
                .into_iter()
                .map(|(form, v)| {
                    VerificationReport::new("lemma1-closed-form")
                        .param("form", form)
                        .param("u", 1.0)
                        .compare_abs(side(v), target, 1e-10)
                })
                .collect();
            out.push(r);
            out.extend(closed);
            let pole = TestFunction::ProductPole { b: 3.0, order: 8 };
            let w2 = [c(0.0, -2.0), c(1.0, -2.0)];
            let us: &[f64] = if quick { &[1.0] } else { &[1.0, 0.5] };
            for &u in us {
                out.push(lemma1_check(&pole, &w2, u, 2.5, 40, &cfg(1e-8, 1e-14), 1e-6)?);
            }
        }
        5 => {
            for which in [StadeIdentity::First, StadeIdentity::Second] {
                out.push(stade_check(1.0, &[c(0.7, 0.0)], &[c(0.6, 0.0)], which, &cfg(1e-11, 1e-14), Some(1e-8))?);
                if !quick {
                    let lam = [c(0.5, 0.0), c(0.2, 0.0)];
                    let nu = [c(0.4, 0.0), c(0.3, 0.0)];
                    out.push(stade_check(1.0, &lam, &nu, which, &cfg(1e-7, 1e-12), Some(1e-4))?);
                }
            }
        }
        6 => {
            for which in [BaxterIdentity::First, BaxterIdentity::Second] {
                out.push(baxter_eigen_check(&[c(0.3, 0.4)], 1.0, &[0.2], which, &cfg(1e-9, 1e-14), Some(1e-6))?);
                if !quick {
                    let w = [c(0.2, 0.5), c(-0.1, 0.6)];
                    out.push(baxter_eigen_check(&w, 1.0, &[0.4, -0.1], which, &cfg(1e-4, 1e-14), Some(1e-3))?);
                }
            }
        }
        7 => {
            out.push(eq_exp_limit_check(&DEFAULT_LADDER, 1.0, 0.0, 1)?);
            let w = [c(0.5, 0.0), c(-0.2, 0.0)];
            out.push(term_limit_checks(&DEFAULT_LADDER, [1, 0], w)?);
            out.push(term_limit_checks(&DEFAULT_LADDER, [2, 1], [c(1.0, 0.0), c(-1.0, 0.3)])?);
            let sweeps: &[[f64; 2]] = if quick { &[[0.5, -0.2]] } else { &[[0.5, -0.2], [0.4, -0.4]] };
            for w in sweeps {
                let w: Vec<Complex64> = w.iter().map(|&v| c(v, 0.0)).collect();
                let (r, _) = convergence_sweep(&DEFAULT_LADDER, &[0.3, -0.3], &w, DEFAULT_PRECISION, &cfg(1e-11, 1e-14))?;
                // the acceptance ladder asks for strict improvement on top of the factor-2 rule
                let strict = r.diagnostics.get("strictly_decreasing") == Some(&serde_json::Value::Bool(true));
                out.push(if strict { r } else { r.fail("error ladder is not strictly decreasing") });
            }
        }
        8 => {
            out.push(euler_reflection_check(50, seed, 1e-12)?);
            out.push(gamma_decay_check()?);
            let q = cfg(1e-11, 1e-14);
            out.push(whittaker_reflection_check(&[c(0.5, 0.0), c(-0.2, 0.0)], &[0.3, -0.3], &q, 1e-8)?);
            if !quick {
                let lam = [c(0.4, 0.0), c(0.1, 0.0), c(-0.3, 0.0)];
                out.push(whittaker_reflection_check(&lam, &[0.5, 0.0, -0.4], &q, 1e-8)?);
            }
        }
        _ => {
            return Err(crate::Error::Precondition(format!("no criterion {id}")));
        }
    }
    Ok(tag(out, id))
}

fn side(v: &Value) -> Complex64 {
    match *v {
        Value::Complex { re, im } => c(re, im),
        _ => c(f64::NAN, f64::NAN),
    }
}
