//! The Gamma-function identity behind the residue computation, and the parity of κ.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::report::VerificationReport;
use crate::whittaker::gamma_c;

/// `∏_{i≠j} Γ(r_j - r_i - ν_j) / Γ(r_i - r_j - ν_i + ν_j)`.
pub fn gamma_identity_lhs(r: &[Complex64], nu: &[u32]) -> Result<Complex64> {
    let n = r.len();
    let mut v = Complex64::new(1.0, 0.0);
    for i in 0..n {
        for j in (0..n).filter(|&j| j != i) {
            let (ni, nj) = (nu[i] as f64, nu[j] as f64);
            v *= gamma_c(r[j] - r[i] - nj)? / gamma_c(r[i] - r[j] - ni + nj)?;
        }
    }
    Ok(v)
}

/// `∏_{i<j} (r_j - r_i - ν_j + ν_i)/(r_j - r_i) · Γ(1 + r_i - r_j) Γ(1 + r_j - r_i)
///  / (Γ(1 + ν_j + r_i - r_j) Γ(1 + ν_i + r_j - r_i))`.
pub fn gamma_identity_rhs(r: &[Complex64], nu: &[u32]) -> Result<Complex64> {
    let n = r.len();
    let mut v = Complex64::new(1.0, 0.0);
    for i in 0..n {
        for j in i + 1..n {
            let (ni, nj) = (nu[i] as f64, nu[j] as f64);
            let d = r[j] - r[i];
            if d.norm() == 0.0 {
                return Err(Error::Coincident(i, j));
            }
            v *= (d - nj + ni) / d;
            v *= gamma_c(1.0 - d)? * gamma_c(1.0 + d)?;
            v /= gamma_c(1.0 + nj - d)? * gamma_c(1.0 + ni + d)?;
        }
    }
    Ok(v)
}

pub fn gamma_identity_check(r: &[Complex64], nu: &[u32], tol: f64) -> Result<VerificationReport> {
    if r.len() != nu.len() {
        return Err(Error::Arity {
            expected: r.len(),
            got: nu.len(),
        });
    }
    let lhs = gamma_identity_lhs(r, nu)?;
    let rhs = gamma_identity_rhs(r, nu)?;
    Ok(VerificationReport::new("gamma-identity")
        .param("r", format!("{r:?}"))
        .param("nu", format!("{nu:?}"))
        .compare(lhs, rhs, tol))
}

/// `κ = Σ_{i<j}(ν_i - ν_j) + Σ_{i≠j}(ν_i - 2ν_j)`, computed as a double sum and as `2 Σ_m (1 - m) ν_m`.
pub fn kappa_forms(nu: &[i64]) -> (i64, i64) {
    let n = nu.len();
    let mut double = 0;
    for i in 0..n {
        for j in 0..n {
            if i < j {
                double += nu[i] - nu[j];
            }
            if i != j {
                double += nu[i] - 2 * nu[j];
            }
        }
    }
    let closed = 2 * nu
        .iter()
        .enumerate()
        .map(|(m, &v)| (1 - (m as i64 + 1)) * v)
        .sum::<i64>();
    (double, closed)
}

/// `κ`, after checking that both forms agree and that it is even.
pub fn kappa_parity(nu: &[i64]) -> Result<i64> {
    let (double, closed) = kappa_forms(nu);
    if double != closed || double % 2 != 0 {
        return Err(Error::Precondition(format!(
            "κ forms disagree or are odd: {double} vs {closed}"
        )));
    }
    Ok(double)
}
