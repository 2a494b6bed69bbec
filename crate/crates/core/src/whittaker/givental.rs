//! Whittaker functions as integrals over triangular patterns.

use num_complex::Complex64;

use super::quadrature::{integrate, QuadResult, QuadratureConfig};
use crate::error::{Error, Result};

pub const MAX_RANK: usize = 3;

/// Coupling sums beyond this make `e^{ℱ}` underflow; such subtrees are skipped.
const NEGLIGIBLE_COUPLING: f64 = 800.0;

/// Triangular array `x_{k,i}`, `1 ≤ i ≤ k ≤ N`, stored by rows; the last row is the argument `x`.
#[derive(Clone, Debug, PartialEq)]
pub struct GiventalPattern {
    rows: Vec<Vec<f64>>,
}

impl GiventalPattern {
    pub fn new(rows: Vec<Vec<f64>>) -> Result<Self> {
        for (k, row) in rows.iter().enumerate() {
            if row.len() != k + 1 {
                return Err(Error::Precondition(format!(
                    "row {} of a pattern needs {} entries, got {}",
                    k + 1,
                    k + 1,
                    row.len()
                )));
            }
        }
        Ok(Self { rows })
    }

    /// Pattern with top row `x` and every interior entry set to `fill`.
    pub fn with_top(x: &[f64], fill: f64) -> Self {
        let n = x.len();
        let mut rows: Vec<Vec<f64>> = (1..n).map(|k| vec![fill; k]).collect();
        rows.push(x.to_vec());
        Self { rows }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<f64>] {
        &self.rows
    }

    /// `x_{k,i}` with 1-based indices.
    pub fn get(&self, k: usize, i: usize) -> f64 {
        self.rows[k - 1][i - 1]
    }

    pub fn set(&mut self, k: usize, i: usize, v: f64) {
        self.rows[k - 1][i - 1] = v;
    }
}

/// `Σ_{k<N} Σ_i (e^{x_{k,i} - x_{k+1,i}} + e^{x_{k+1,i+1} - x_{k,i}})` restricted to rows `k ≥ from`.
fn coupling(rows: &[Vec<f64>], from: usize) -> f64 {
    let mut s = 0.0;
    for k in from.max(1)..rows.len() {
        let (lower, upper) = (&rows[k - 1], &rows[k]);
        for i in 0..lower.len() {
            s += (lower[i] - upper[i]).exp() + (upper[i + 1] - lower[i]).exp();
        }
    }
    s
}

/// `ℱ_λ(X) = i Σ_k λ_k (Σ_i x_{k,i} - Σ_i x_{k-1,i}) - coupling(X)`.
pub fn givental_action(lam: &[Complex64], pattern: &GiventalPattern) -> Complex64 {
    let rows = pattern.rows();
    let mut phase = Complex64::new(0.0, 0.0);
    let mut prev = 0.0;
    for (k, row) in rows.iter().enumerate() {
        let sum: f64 = row.iter().sum();
        phase += lam[k] * (sum - prev);
        prev = sum;
    }
    Complex64::i() * phase - coupling(rows, 1)
}

/// `ψ_λ(x)`: the pattern integral of `e^{ℱ_λ}` over the interior rows, for `N ≤ 3`.
///
/// Each interior variable `x_{k,i}` ranges over `[x_{k+1,i+1} - L, x_{k+1,i} + L]`, outside of which
/// one of its two couplings exceeds `e^L`.
pub fn whittaker_eval(lam: &[Complex64], x: &[f64], cfg: &QuadratureConfig) -> Result<QuadResult> {
    let n = x.len();
    if lam.len() != n {
        return Err(Error::Arity {
            expected: n,
            got: lam.len(),
        });
    }
    if n == 0 || n > MAX_RANK {
        return Err(Error::CapExceeded {
            what: "rank",
            cap: MAX_RANK,
            got: n,
        });
    }
    // integration order: row N-1 left to right, then row N-2, ...
    let vars: Vec<(usize, usize)> = (1..n).rev().flat_map(|k| (1..=k).map(move |i| (k, i))).collect();
    let mut pattern = GiventalPattern::with_top(x, 0.0);
    let (value, error, evals) = integrate_from(lam, &mut pattern, &vars, 0, cfg)?;
    Ok(QuadResult { value, error, evals })
}

fn integrate_from(
    lam: &[Complex64],
    pattern: &mut GiventalPattern,
    vars: &[(usize, usize)],
    idx: usize,
    cfg: &QuadratureConfig,
) -> Result<(Complex64, f64, usize)> {
    let Some(&(k, i)) = vars.get(idx) else {
        return Ok((givental_action(lam, pattern).exp(), 0.0, 1));
    };
    let l = cfg.half_width;
    let lo = pattern.get(k + 1, i + 1) - l;
    let hi = pattern.get(k + 1, i) + l;
    let last_in_row = i == k;
    let child = cfg.with_tol(cfg.rel_tol / 10.0, cfg.abs_tol / (10.0 * (hi - lo)));
    let mut evals = 0;
    let r = integrate(cfg, lo, hi, |y| {
        pattern.set(k, i, y);
        if last_in_row && coupling(pattern.rows(), k) > NEGLIGIBLE_COUPLING {
            return Ok((Complex64::new(0.0, 0.0), 0.0));
        }
        let (v, e, n) = integrate_from(lam, pattern, vars, idx + 1, &child)?;
        evals += n;
        Ok((v, e))
    })?;
    Ok((r.value, r.error, evals.max(r.evals)))
}
