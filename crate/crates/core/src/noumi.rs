//! Noumi's q-integral operator, applied order by order in ζ, and the first Macdonald operator.

use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::qcore::{qbinomial_ratio_series, qpoch_finite, rational_to_f64, rat, Scalar, ZetaSeries};
use crate::report::{Value, VerificationReport};
use crate::symfunc::{
    compositions, d1_eigenvalue, eval_symmetric, macdonald_gram_schmidt, Partition, Signature,
    SymmetricPolynomial,
};

/// Coefficient of `ζ^{|ν|} ∏ T_{q,z_i}^{ν_i}` in the operator:
/// `∏_{i<j} (q^{ν_i} z_i - q^{ν_j} z_j)/(z_i - z_j) · ∏_{i,j} (t z_i/z_j; q)_{ν_i} / (q z_i/z_j; q)_{ν_i}`.
pub fn noumi_coeff<S: Scalar>(nu: &[u32], z: &[S], q: &S, t: &S) -> Result<S> {
    let n = z.len();
    if nu.len() != n {
        return Err(Error::Arity {
            expected: n,
            got: nu.len(),
        });
    }
    if let Some(j) = z.iter().position(Scalar::is_zero) {
        return Err(Error::ZeroCoordinate(j));
    }
    let mut acc = S::one();
    for i in 0..n {
        for j in i + 1..n {
            let den = z[i].clone() - z[j].clone();
            if den.is_zero() {
                return Err(Error::Coincident(i, j));
            }
            let num = q.powi(nu[i] as i64) * z[i].clone() - q.powi(nu[j] as i64) * z[j].clone();
            acc = acc * num / den;
        }
    }
    for i in 0..n {
        let k = nu[i] as usize;
        if k == 0 {
            continue;
        }
        for j in 0..n {
            let ratio = z[i].clone() / z[j].clone();
            let den = qpoch_finite(&(q.clone() * ratio.clone()), q, k);
            if den.is_zero() {
                return Err(Error::PochhammerPole(i, j));
            }
            acc = acc * qpoch_finite(&(t.clone() * ratio), q, k) / den;
        }
    }
    Ok(acc)
}

/// `Σ_{|ν| = k} noumi_coeff(ν) f(q^ν z)` for `k = 0..=order`, with `ν` in lexicographic order.
pub fn apply_noumi<S, F>(f: F, z: &[S], q: &S, t: &S, order: usize) -> Result<ZetaSeries<S>>
where
    S: Scalar,
    F: Fn(&[S]) -> Result<S>,
{
    let mut coeffs = Vec::with_capacity(order + 1);
    for k in 0..=order {
        let mut total = S::zero();
        for nu in compositions(k as u32, z.len()) {
            let c = noumi_coeff(&nu, z, q, t)?;
            let shifted: Vec<S> = z
                .iter()
                .zip(&nu)
                .map(|(zi, &e)| zi.clone() * q.powi(e as i64))
                .collect();
            total = total + c * f(&shifted)?;
        }
        coeffs.push(total);
    }
    Ok(ZetaSeries::new(coeffs))
}

/// `∏_i (q^{λ_i} t^{N+1-i} ζ; q)_∞ / (q^{λ_i} t^{N-i} ζ; q)_∞` through `ζ^order`.
pub fn noumi_eigenvalue_series<S: Scalar>(sig: &Signature, q: &S, t: &S, order: usize) -> Result<ZetaSeries<S>> {
    let n = sig.len();
    let mut acc = ZetaSeries::one(order);
    for (i, &l) in sig.parts().iter().enumerate() {
        let b = q.powi(l) * t.powi((n - 1 - i) as i64);
        let a = b.clone() * t.clone();
        acc = acc.mul(&qbinomial_ratio_series(&a, &b, q, order)?)?;
    }
    Ok(acc)
}

/// `D¹ f(z) = Σ_i ∏_{j≠i} (t z_i - z_j)/(z_i - z_j) f(z_1, .., q z_i, .., z_N)`.
pub fn d1_apply<S, F>(f: F, z: &[S], q: &S, t: &S) -> Result<S>
where
    S: Scalar,
    F: Fn(&[S]) -> Result<S>,
{
    let n = z.len();
    let mut total = S::zero();
    for i in 0..n {
        let mut c = S::one();
        for j in (0..n).filter(|&j| j != i) {
            let den = z[i].clone() - z[j].clone();
            if den.is_zero() {
                return Err(Error::Coincident(i.min(j), i.max(j)));
            }
            c = c * (t.clone() * z[i].clone() - z[j].clone()) / den;
        }
        let mut shifted = z.to_vec();
        shifted[i] = shifted[i].clone() * q.clone();
        total = total + c * f(&shifted)?;
    }
    Ok(total)
}

/// Rational point with pairwise-distinct non-zero entries, numerators and denominators at most 100.
pub fn sample_point(rng: &mut ChaCha8Rng, n: usize) -> Vec<BigRational> {
    loop {
        let z: Vec<BigRational> = (0..n)
            .map(|_| rat(rng.gen_range(-100..=100), rng.gen_range(1..=100)))
            .collect();
        let distinct = (0..n).all(|i| (i + 1..n).all(|j| z[i] != z[j]));
        if distinct && z.iter().all(|x| !Scalar::is_zero(x)) {
            return z;
        }
    }
}

const MAX_DRAWS_PER_SAMPLE: usize = 100;

fn macdonald_in(lam: &Partition, n: usize, q: &BigRational, t: &BigRational) -> Result<SymmetricPolynomial<BigRational>> {
    if lam.len() > n {
        return Err(Error::Precondition(format!("{lam} has more than {n} parts")));
    }
    Ok(macdonald_gram_schmidt(lam, q, t)?.restrict(n))
}

/// Checks `𝔑^ζ P_λ = (eigenvalue series) · P_λ` coefficientwise in exact arithmetic at sampled points.
pub fn verify_noumi(
    lam: &Partition,
    n: usize,
    q: &BigRational,
    t: &BigRational,
    order: usize,
    samples: usize,
    seed: u64,
) -> Result<VerificationReport> {
    let p = macdonald_in(lam, n, q, t)?;
    let sig = Signature::from_partition(lam, n)?;
    let eig = noumi_eigenvalue_series(&sig, q, t, order)?;
    let f = |x: &[BigRational]| eval_symmetric(&p, x);

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut residuals: Vec<Vec<String>> = Vec::with_capacity(samples);
    let mut first: Option<(Vec<BigRational>, Vec<BigRational>)> = None;
    let mut max_res = 0.0f64;
    let mut rejected = 0usize;
    for _ in 0..samples {
        let mut draws = 0;
        let (z, lhs) = loop {
            let z = sample_point(&mut rng, n);
            match apply_noumi(f, &z, q, t, order) {
                Ok(s) => break (z, s),
                Err(Error::PochhammerPole(..)) if draws < MAX_DRAWS_PER_SAMPLE => {
                    draws += 1;
                    rejected += 1;
                }
                Err(e) => return Err(e),
            }
        };
        let rhs = eig.scale(&f(&z)?);
        let diff = lhs.sub(&rhs)?;
        max_res = diff
            .coeffs()
            .iter()
            .fold(max_res, |m, c| m.max(rational_to_f64(c).abs()));
        residuals.push(diff.coeffs().iter().map(ToString::to_string).collect());
        if first.is_none() {
            first = Some((lhs.into_coeffs(), rhs.into_coeffs()));
        }
    }
    let all_zero = residuals.iter().flatten().all(|r| r == "0");
    let (l, r) = first.unwrap_or_default();
    Ok(VerificationReport::new("verify-noumi")
        .param("lambda", lam)
        .param("n", n)
        .param("q", q)
        .param("t", t)
        .param("order", order)
        .param("samples", samples)
        .with_seed(seed)
        .exact(Value::from(l.iter().collect::<Vec<_>>()), Value::from(r.iter().collect::<Vec<_>>()), max_res, all_zero)
        .diag("residuals", residuals)
        .diag("rejected_points", rejected))
}

/// Checks `D¹ P_λ = (Σ_i q^{λ_i} t^{N-i}) P_λ` exactly at sampled points.
pub fn macdonald_d1_check(
    lam: &Partition,
    n: usize,
    q: &BigRational,
    t: &BigRational,
    samples: usize,
    seed: u64,
) -> Result<VerificationReport> {
    let p = macdonald_in(lam, n, q, t)?;
    let e = d1_eigenvalue(lam, n, q, t);
    let f = |x: &[BigRational]| eval_symmetric(&p, x);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut lhs_all = Vec::with_capacity(samples);
    let mut rhs_all = Vec::with_capacity(samples);
    for _ in 0..samples {
        let z = sample_point(&mut rng, n);
        lhs_all.push(d1_apply(f, &z, q, t)?);
        rhs_all.push(e.clone() * f(&z)?);
    }
    let max_res = lhs_all
        .iter()
        .zip(&rhs_all)
        .map(|(a, b)| rational_to_f64(&(a.clone() - b.clone())).abs())
        .fold(0.0, f64::max);
    let all_zero = lhs_all == rhs_all;
    Ok(VerificationReport::new("verify-d1")
        .param("lambda", lam)
        .param("n", n)
        .param("q", q)
        .param("t", t)
        .param("samples", samples)
        .with_seed(seed)
        .exact(Value::from(lhs_all.iter().collect::<Vec<_>>()), Value::from(rhs_all.iter().collect::<Vec<_>>()), max_res, all_zero)
        .diag("eigenvalue", e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: &[u32]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    #[test]
    fn coefficient_examples() {
        let (q, t) = (rat(1, 3), rat(1, 5));
        let z = [rat(2, 1), rat(-3, 7)];
        assert_eq!(noumi_coeff(&[0, 0], &z, &q, &t).unwrap(), rat(1, 1));
        // N = 1: (t;q)_n/(q;q)_n
        for k in 0..4 {
            let c = noumi_coeff(&[k], &[rat(5, 3)], &q, &t).unwrap();
            assert_eq!(c, qpoch_finite(&t, &q, k as usize) / qpoch_finite(&q, &q, k as usize));
        }
    }

    #[test]
    fn coefficient_against_naive_loops() {
        let (q, t) = (rat(2, 7), rat(3, 5));
        let (z1, z2) = (rat(3, 2), rat(-5, 4));
        let one = rat(1, 1);
        // ν = (1, 0): cross ratio (q z1 - z2)/(z1 - z2); only i = 1 carries Pochhammer factors
        let cross = (q.clone() * z1.clone() - z2.clone()) / (z1.clone() - z2.clone());
        let f11 = (one.clone() - t.clone()) / (one.clone() - q.clone());
        let r = z1.clone() / z2.clone();
        let f12 = (one.clone() - t.clone() * r.clone()) / (one - q.clone() * r);
        let expected = cross * f11 * f12;
        assert_eq!(noumi_coeff(&[1, 0], &[z1, z2], &q, &t).unwrap(), expected);
    }

    #[test]
    fn poles_are_rejected() {
        let (q, t) = (rat(1, 2), rat(1, 3));
        assert_eq!(
            noumi_coeff(&[0, 1], &[rat(1, 1), rat(1, 1)], &q, &t).unwrap_err(),
            Error::Coincident(0, 1)
        );
        // q z_2/z_1 = 1 when z_1 = z_2/2
        assert_eq!(
            noumi_coeff(&[0, 1], &[rat(1, 1), rat(2, 1)], &q, &t).unwrap_err(),
            Error::PochhammerPole(1, 0)
        );
    }

    #[test]
    fn constant_function_series() {
        let (q, t) = (rat(1, 3), rat(1, 5));
        let s = apply_noumi(|_: &[BigRational]| Ok(rat(1, 1)), &[rat(2, 1)], &q, &t, 2).unwrap();
        let expected: Vec<BigRational> = (0..3)
            .map(|k| qpoch_finite(&t, &q, k) / qpoch_finite(&q, &q, k))
            .collect();
        assert_eq!(s.coeffs(), expected.as_slice());
        let s0 = apply_noumi(|x: &[BigRational]| Ok(x[0].clone() * x[1].clone()), &[rat(2, 1), rat(3, 1)], &q, &t, 0)
            .unwrap();
        assert_eq!(s0.coeffs(), &[rat(6, 1)]);
    }

    #[test]
    fn eigenvalue_series_examples() {
        let (q, t) = (rat(1, 3), rat(1, 5));
        let s = noumi_eigenvalue_series(&Signature::new(vec![0]).unwrap(), &q, &t, 1).unwrap();
        let one = rat(1, 1);
        assert_eq!(s.coeff(1).clone(), (one.clone() - t.clone()) / (one - q.clone()));
        let s = noumi_eigenvalue_series(&Signature::new(vec![2, 1]).unwrap(), &q, &t, 0).unwrap();
        assert_eq!(s, ZetaSeries::one(0));
        // t = 0, λ = 0: only the last factor survives, giving 1/(ζ;q)_∞
        let zero = rat(0, 1);
        let s = noumi_eigenvalue_series(&Signature::new(vec![0, 0, 0]).unwrap(), &q, &zero, 3).unwrap();
        let inv = qbinomial_ratio_series(&zero, &rat(1, 1), &q, 3).unwrap();
        assert_eq!(s, inv);
    }

    #[test]
    fn verify_noumi_examples() {
        let (q, t) = (rat(1, 3), rat(1, 5));
        let r = verify_noumi(&p(&[1]), 2, &q, &t, 2, 3, 1).unwrap();
        assert!(r.pass, "{r:?}");
        assert_eq!(r.abs_err, 0.0);
        let r = verify_noumi(&p(&[]), 1, &q, &t, 4, 3, 2).unwrap();
        assert!(r.pass);
        let r = verify_noumi(&p(&[2, 1]), 2, &q, &rat(0, 1), 3, 3, 3).unwrap();
        assert!(r.pass);
    }

    #[test]
    fn d1_examples() {
        let (q, t) = (rat(1, 3), rat(1, 5));
        assert!(macdonald_d1_check(&p(&[1]), 2, &q, &t, 5, 4).unwrap().pass);
        let r = macdonald_d1_check(&p(&[]), 3, &q, &t, 3, 4).unwrap();
        assert!(r.pass);
        assert_eq!(r.diagnostics["eigenvalue"], "31/25");
        assert!(macdonald_d1_check(&p(&[2, 1]), 3, &q, &t, 5, 4).unwrap().pass);
    }

    #[test]
    fn monomial_is_not_an_eigenfunction() {
        let (q, t) = (rat(1, 3), rat(1, 5));
        let m2 = SymmetricPolynomial::monomial(p(&[2]), 2).unwrap();
        let f = |x: &[BigRational]| eval_symmetric(&m2, x);
        let z = [rat(2, 1), rat(3, 1)];
        let lhs = apply_noumi(f, &z, &q, &t, 2).unwrap();
        let eig = noumi_eigenvalue_series(&Signature::new(vec![2, 0]).unwrap(), &q, &t, 2).unwrap();
        assert_ne!(lhs, eig.scale(&f(&z).unwrap()));
    }
}
