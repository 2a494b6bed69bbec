use super::scalar::Scalar;
use super::series::ZetaSeries;
use crate::error::{Error, Result};

const MAX_FACTORS: usize = 2_000_000;

/// `(a; q)_n = ∏_{k=0}^{n-1} (1 - a q^k)`.
pub fn qpoch_finite<S: Scalar>(a: &S, q: &S, n: usize) -> S {
    let mut acc = S::one();
    let mut aq = a.clone();
    for _ in 0..n {
        acc = acc * (S::one() - aq.clone());
        aq = aq * q.clone();
    }
    acc
}

/// Truncated infinite q-Pochhammer product.
#[derive(Clone, Debug, PartialEq)]
pub struct InfiniteProduct<S> {
    pub value: S,
    /// Number of factors multiplied in.
    pub factors: usize,
    /// Set when some factor `1 - a q^k` vanished exactly; `value` is then exactly zero.
    pub exact_zero: bool,
}

/// Smallest `K` such that the neglected tail `∏_{k>=K}(1 - a q^k)` has relative size below `tol`.
///
/// Uses `|log ∏_{k>=K}(1 - x_k)| <= Σ_{k>=K} |a||q|^k / (1 - |a||q|^K)`, which sums to
/// `|a||q|^K / ((1 - |q|)(1 - |a||q|^K))`.
pub fn qpoch_truncation(a_abs: f64, q_abs: f64, tol: f64) -> Result<usize> {
    if !(q_abs < 1.0) {
        return Err(Error::NotContracting(q_abs));
    }
    if a_abs == 0.0 {
        return Ok(0);
    }
    let bound = tol.min(0.5) / 2.0;
    let mut x = a_abs;
    for k in 0..MAX_FACTORS {
        if x < 0.5 {
            let tail = x / ((1.0 - q_abs) * (1.0 - x));
            if tail <= bound {
                return Ok(k);
            }
        }
        x *= q_abs;
        if x == 0.0 {
            return Ok(k + 1);
        }
    }
    Err(Error::TruncationBudget {
        tol,
        max_terms: MAX_FACTORS,
    })
}

/// `(a; q)_∞` to relative accuracy `tol`.
pub fn qpoch_infinite<S: Scalar>(a: &S, q: &S, tol: f64) -> Result<InfiniteProduct<S>> {
    let k = qpoch_truncation(a.magnitude(), q.magnitude(), tol)?;
    let mut acc = S::one();
    let mut aq = a.clone();
    for i in 0..k {
        let factor = S::one() - aq.clone();
        if factor.is_zero() {
            return Ok(InfiniteProduct {
                value: S::zero(),
                factors: i + 1,
                exact_zero: true,
            });
        }
        acc = acc * factor;
        aq = aq * q.clone();
    }
    Ok(InfiniteProduct {
        value: acc,
        factors: k,
        exact_zero: false,
    })
}

/// Coefficients of `(aζ; q)_∞ / (bζ; q)_∞` through `ζ^order`.
///
/// The q-binomial theorem gives `Σ_n (a/b; q)_n / (q; q)_n · b^n ζ^n`; the numerator is expanded
/// as `(a/b; q)_n b^n = ∏_{k<n} (b - a q^k)`, which needs no division by `b` and reduces to the
/// expansion of `(aζ; q)_∞` when `b = 0`.
pub fn qbinomial_ratio_series<S: Scalar>(a: &S, b: &S, q: &S, order: usize) -> Result<ZetaSeries<S>> {
    if !(q.magnitude() < 1.0) {
        return Err(Error::NotContracting(q.magnitude()));
    }
    let mut coeffs = Vec::with_capacity(order + 1);
    let mut num = S::one();
    let mut den = S::one();
    let mut qk = S::one();
    coeffs.push(S::one());
    for n in 1..=order {
        num = num * (b.clone() - a.clone() * qk.clone());
        qk = qk * q.clone();
        den = den * (S::one() - qk.clone());
        coeffs.push(num.clone() / den.clone());
        debug_assert_eq!(n + 1, coeffs.len());
    }
    Ok(ZetaSeries::new(coeffs))
}
