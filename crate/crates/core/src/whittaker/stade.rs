//! Stade's integral of a product of two Whittaker functions against an exponential cutoff.

use num_complex::Complex64;
use serde::Serialize;

use super::gamma::gamma_c;
use super::givental::whittaker_eval;
use super::quadrature::{integrate, QuadratureConfig};
use crate::error::{Error, Result};
use crate::report::VerificationReport;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum StadeIdentity {
    /// `∫ e^{-u e^{x_1}} ψ_{-iλ}(x) ψ_{-iν}(x) dx`.
    First,
    /// `∫ e^{-u e^{-x_N}} ψ_{iλ}(x) ψ_{iν}(x) dx`.
    Second,
}

pub const STADE_MAX_RANK: usize = 2;

/// `u^{-Σ_j(λ_j + ν_j)} ∏_{i,j} Γ(λ_i + ν_j)`.
pub fn stade_rhs(u: f64, lam: &[Complex64], nu: &[Complex64]) -> Result<Complex64> {
    let total: Complex64 = lam.iter().chain(nu).sum();
    let mut v = Complex64::new(u, 0.0).powc(-total);
    for l in lam {
        for n in nu {
            v *= gamma_c(l + n)?;
        }
    }
    Ok(v)
}

fn default_tolerance(n: usize) -> f64 {
    if n == 1 {
        1e-8
    } else {
        1e-4
    }
}

/// Compares the cutoff integral against the Gamma product. The integration box is chosen from
/// the growth rates `Re Σ(λ + ν)` (all coordinates together) and `min Re λ + min Re ν` (spread
/// between coordinates) so that the neglected mass is below `cfg.rel_tol`.
pub fn stade_check(
    u: f64,
    lam: &[Complex64],
    nu: &[Complex64],
    which: StadeIdentity,
    cfg: &QuadratureConfig,
    tol: Option<f64>,
) -> Result<VerificationReport> {
    let n = lam.len();
    if nu.len() != n {
        return Err(Error::Arity {
            expected: n,
            got: nu.len(),
        });
    }
    if n == 0 || n > STADE_MAX_RANK {
        return Err(Error::CapExceeded {
            what: "rank",
            cap: STADE_MAX_RANK,
            got: n,
        });
    }
    if !(u > 0.0) {
        return Err(Error::Precondition(format!("u must be positive, got {u}")));
    }
    for l in lam {
        for m in nu {
            if (l + m).re <= 0.0 {
                return Err(Error::Precondition(format!("Re(λ_i + ν_j) must be positive, got {}", l + m)));
            }
        }
    }

    let tail = (1.0 / cfg.rel_tol).ln() + 5.0;
    let total_rate: f64 = lam.iter().chain(nu).map(|z| z.re).sum();
    let min_rate = lam.iter().map(|z| z.re).fold(f64::INFINITY, f64::min)
        + nu.iter().map(|z| z.re).fold(f64::INFINITY, f64::min);
    let lo = -tail / total_rate;
    let hi = (60.0 / u).ln();
    let spread = tail / min_rate;
    let l = cfg.half_width;

    // the second identity is the first one after x -> x' = (-x_N, ..., -x_1) and λ -> -λ
    let sign = match which {
        StadeIdentity::First => Complex64::new(0.0, -1.0),
        StadeIdentity::Second => Complex64::new(0.0, 1.0),
    };
    let lam_s: Vec<Complex64> = lam.iter().map(|z| sign * z).collect();
    let nu_s: Vec<Complex64> = nu.iter().map(|z| sign * z).collect();
    let psi_cfg = cfg.with_tol(cfg.rel_tol / 10.0, cfg.abs_tol / 10.0);
    let mut evals = 0usize;
    let mut integrand = |x: &[f64]| -> Result<(Complex64, f64)> {
        let cutoff = match which {
            StadeIdentity::First => (-u * x[0].exp()).exp(),
            StadeIdentity::Second => (-u * (-x[n - 1]).exp()).exp(),
        };
        if cutoff == 0.0 {
            return Ok((Complex64::new(0.0, 0.0), 0.0));
        }
        let a = whittaker_eval(&lam_s, x, &psi_cfg)?;
        let b = whittaker_eval(&nu_s, x, &psi_cfg)?;
        evals += a.evals + b.evals;
        let v = a.value * b.value * cutoff;
        let e = (a.error * b.value.norm() + b.error * a.value.norm()) * cutoff;
        Ok((v, e))
    };

    let (outer_lo, outer_hi) = match which {
        StadeIdentity::First => (lo, hi),
        StadeIdentity::Second => (-hi, -lo),
    };
    let lhs = if n == 1 {
        integrate(cfg, outer_lo, outer_hi, |x| integrand(&[x]))?
    } else {
        let inner_cfg = cfg.with_tol(cfg.rel_tol / 10.0, cfg.abs_tol / (10.0 * (outer_hi - outer_lo)));
        integrate(cfg, outer_lo, outer_hi, |s| {
            let (a, b) = match which {
                StadeIdentity::First => (s - spread, s + l),
                StadeIdentity::Second => (s - l, s + spread),
            };
            let r = integrate(&inner_cfg, a, b, |t| match which {
                StadeIdentity::First => integrand(&[s, t]),
                StadeIdentity::Second => integrand(&[t, s]),
            })?;
            Ok((r.value, r.error))
        })?
    };
    let rhs = stade_rhs(u, lam, nu)?;
    let id = match which {
        StadeIdentity::First => "stade-first",
        StadeIdentity::Second => "stade-second",
    };
    Ok(VerificationReport::new(id)
        .param("u", u)
        .param("lambda", format!("{lam:?}"))
        .param("nu", format!("{nu:?}"))
        .param("n", n)
        .compare(lhs.value, rhs, tol.unwrap_or_else(|| default_tolerance(n)))
        .diag("quadrature_error", lhs.error)
        .diag("box", [outer_lo, outer_hi, spread, l])
        .diag("inner_evals", evals))
}
