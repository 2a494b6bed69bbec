//! The dual Baxter eigenrelations for Whittaker functions.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::report::VerificationReport;
use crate::whittaker::{integrate, ln_gamma, ln_inv_gamma_pair, whittaker_eval, QuadResult, QuadratureConfig};

pub const EIGEN_MAX_RANK: usize = 2;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum BaxterIdentity {
    /// `e^{-u e^{x_1}} ψ_{-w}(x)`, integrated against `ψ_ξ(x)`.
    First,
    /// `e^{-u e^{-x_N}} ψ_w(x)`, integrated against `ψ_{-ξ}(x)`.
    Second,
}

fn default_tolerance(n: usize) -> f64 {
    if n == 1 {
        1e-6
    } else {
        1e-3
    }
}

/// Left side, with `ψ` from the pattern integral.
pub fn baxter_lhs(w: &[Complex64], u: f64, x: &[f64], which: BaxterIdentity, cfg: &QuadratureConfig) -> Result<QuadResult> {
    let n = x.len();
    let (cutoff, lam): (f64, Vec<Complex64>) = match which {
        BaxterIdentity::First => ((-u * x[0].exp()).exp(), w.iter().map(|z| -z).collect()),
        BaxterIdentity::Second => ((-u * (-x[n - 1]).exp()).exp(), w.to_vec()),
    };
    let r = whittaker_eval(&lam, x, cfg)?;
    Ok(QuadResult {
        value: r.value * cutoff,
        error: r.error * cutoff,
        evals: r.evals,
    })
}

/// `∫_{[-T,T]^N} m_N(ξ) u^{iΣ_j(w_j + ξ_j)} ∏_{i,j} Γ(-iξ_i - i w_j) ψ_{±ξ}(x) dξ`, without checking
/// that the Gamma factors stay off their poles. `T` is taken from the `e^{-π|ξ|/2}` decay of the
/// Gamma factors and the matching decay of `ψ` in the spread of `ξ`.
pub fn baxter_rhs(w: &[Complex64], u: f64, x: &[f64], which: BaxterIdentity, cfg: &QuadratureConfig) -> Result<QuadResult> {
    let n = w.len();
    let i = Complex64::i();
    let ln_u = u.ln();
    let factorial: f64 = (1..=n).map(|k| k as f64).product();
    let ln_norm = -(n as f64) * (2.0 * PI).ln() - factorial.ln();
    let t = 2.0 / PI * ((1.0 / cfg.rel_tol).ln() + 1e3f64.ln()) + 4.0;
    let sign = match which {
        BaxterIdentity::First => 1.0,
        BaxterIdentity::Second => -1.0,
    };
    let psi_cfg = cfg.with_tol(1e-9, 1e-11);
    let integrand = |xi: &[f64]| -> Result<(Complex64, f64)> {
        let mut l = Complex64::new(ln_norm, 0.0);
        for p in 0..n {
            for q in p + 1..n {
                // 1/(Γ(iξ_p - iξ_q) Γ(iξ_q - iξ_p))
                l += ln_inv_gamma_pair(i * (xi[p] - xi[q]));
            }
        }
        for p in 0..n {
            l += ln_u * i * (w[p] + xi[p]);
            for q in 0..n {
                l += ln_gamma(-i * xi[p] - i * w[q])?;
            }
        }
        let weight = l.exp();
        if !weight.is_finite() || weight.norm() == 0.0 {
            return Ok((Complex64::new(0.0, 0.0), 0.0));
        }
        let lam: Vec<Complex64> = xi.iter().map(|&v| Complex64::new(sign * v, 0.0)).collect();
        let psi = whittaker_eval(&lam, x, &psi_cfg)?;
        Ok((weight * psi.value, weight.norm() * psi.error))
    };
    if n == 0 || n > EIGEN_MAX_RANK {
        return Err(Error::CapExceeded {
            what: "rank",
            cap: EIGEN_MAX_RANK,
            got: n,
        });
    }
    // midpoint sum on a coarse grid: only the scale of the answer is needed, to turn the relative
    // target into absolute ones for the inner integrals
    let grid: usize = if n == 1 { 256 } else { 48 };
    let step = 2.0 * t / grid as f64;
    let mut rough = Complex64::new(0.0, 0.0);
    let mut coarse_evals = 0;
    for k in 0..grid.pow(n as u32) {
        let xi: Vec<f64> = (0..n)
            .map(|d| -t + step * ((k / grid.pow(d as u32)) % grid) as f64 + 0.5 * step)
            .collect();
        rough += integrand(&xi)?.0 * step.powi(n as i32);
        coarse_evals += 1;
    }
    let abs_tol = cfg.abs_tol.max(0.1 * cfg.rel_tol * rough.norm());
    let outer = cfg.with_tol(cfg.rel_tol, abs_tol);
    let mut r = if n == 1 {
        integrate(&outer, -t, t, |a| integrand(&[a]))?
    } else {
        let inner = cfg.with_tol(cfg.rel_tol / 10.0, abs_tol / (20.0 * t));
        integrate(&outer, -t, t, |a| {
            let r = integrate(&inner, -t, t, |b| integrand(&[a, b]))?;
            Ok((r.value, r.error))
        })?
    };
    r.evals += coarse_evals;
    Ok(r)
}

/// Compares both sides of the eigenrelation. The Gamma factors `Γ(-iξ_i - i w_j)` have real part
/// `Im w_j` along the real `ξ` line, so the integral representation needs `Im w_j > 0`.
pub fn baxter_eigen_check(
    w: &[Complex64],
    u: f64,
    x: &[f64],
    which: BaxterIdentity,
    cfg: &QuadratureConfig,
    tol: Option<f64>,
) -> Result<VerificationReport> {
    let n = w.len();
    if x.len() != n {
        return Err(Error::Arity { expected: n, got: x.len() });
    }
    if n == 0 || n > EIGEN_MAX_RANK {
        return Err(Error::CapExceeded {
            what: "rank",
            cap: EIGEN_MAX_RANK,
            got: n,
        });
    }
    if !(u > 0.0) {
        return Err(Error::Precondition(format!("u must be positive, got {u}")));
    }
    if let Some(wj) = w.iter().find(|z| z.im <= 0.0) {
        return Err(Error::Precondition(format!("Im w_j must be positive, got {wj}")));
    }
    let lhs = baxter_lhs(w, u, x, which, &cfg.with_tol(1e-10, 1e-13))?;
    let rhs = baxter_rhs(w, u, x, which, cfg)?;
    let id = match which {
        BaxterIdentity::First => "baxter-first",
        BaxterIdentity::Second => "baxter-second",
    };
    Ok(VerificationReport::new(id)
        .param("w", format!("{w:?}"))
        .param("u", u)
        .param("x", format!("{x:?}"))
        .compare(lhs.value, rhs.value, tol.unwrap_or_else(|| default_tolerance(n)))
        .diag("lhs_quadrature_error", lhs.error)
        .diag("rhs_quadrature_error", rhs.error)
        .diag("rhs_evals", rhs.evals))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn rank_one_closed_form() {
        let cfg = QuadratureConfig::default().with_tol(1e-9, 1e-12);
        let w = c(0.3, 0.4);
        let x = 0.2;
        let i = Complex64::i();
        let second = (-(-x as f64).exp()).exp() * (i * w * x).exp();
        let r = baxter_rhs(&[w], 1.0, &[x], BaxterIdentity::Second, &cfg).unwrap();
        assert!((r.value - second).norm() < 1e-8 * second.norm(), "{} vs {second}", r.value);
        let first = (-(x as f64).exp()).exp() * (-i * w * x).exp();
        let r = baxter_rhs(&[w], 1.0, &[x], BaxterIdentity::First, &cfg).unwrap();
        assert!((r.value - first).norm() < 1e-8 * first.norm(), "{} vs {first}", r.value);
    }

    #[test]
    fn lower_half_plane_gives_the_complementary_integral() {
        // for -1 < Im w < 0 the real line passes the first pole of Γ(-iξ - iw) on the other
        // side, and the integral picks up e^{iwx}(e^{-u e^{-x}} - 1) instead
        let cfg = QuadratureConfig::default().with_tol(1e-9, 1e-12);
        let w = c(0.3, -0.4);
        let x = 0.2;
        let i = Complex64::i();
        let expected = ((-(-x as f64).exp()).exp() - 1.0) * (i * w * x).exp();
        let r = baxter_rhs(&[w], 1.0, &[x], BaxterIdentity::Second, &cfg).unwrap();
        assert!((r.value - expected).norm() < 1e-8 * expected.norm(), "{} vs {expected}", r.value);
        assert!(baxter_eigen_check(&[w], 1.0, &[x], BaxterIdentity::Second, &cfg, None).is_err());
    }
}
