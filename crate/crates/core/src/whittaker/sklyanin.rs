use std::f64::consts::PI;

use num_complex::Complex64;

use super::gamma::rgamma;
use crate::error::{Error, Result};

fn factorial(n: usize) -> f64 {
    (1..=n).map(|k| k as f64).product()
}

fn check_distinct<T: PartialEq>(xi: &[T]) -> Result<()> {
    for i in 0..xi.len() {
        for j in i + 1..xi.len() {
            if xi[i] == xi[j] {
                return Err(Error::Coincident(i, j));
            }
        }
    }
    Ok(())
}

/// `m_N(ξ) = (2π)^{-N} (N!)^{-1} ∏_{i≠j} Γ(iξ_i - iξ_j)^{-1}`.
pub fn sklyanin_m(xi: &[f64]) -> Result<f64> {
    check_distinct(xi)?;
    let n = xi.len();
    let mut prod = Complex64::new(1.0, 0.0);
    for i in 0..n {
        for j in (0..n).filter(|&j| j != i) {
            prod *= rgamma(Complex64::new(0.0, xi[i] - xi[j]));
        }
    }
    Ok(prod.re / ((2.0 * PI).powi(n as i32) * factorial(n)))
}

/// `s_N(ξ) = (2πi)^{-N} (N!)^{-1} ∏_{i≠j} Γ(ξ_i - ξ_j)^{-1}`.
pub fn sklyanin_s(xi: &[Complex64]) -> Result<Complex64> {
    check_distinct(xi)?;
    let n = xi.len();
    let mut prod = Complex64::new(1.0, 0.0);
    for i in 0..n {
        for j in (0..n).filter(|&j| j != i) {
            prod *= rgamma(xi[i] - xi[j]);
        }
    }
    Ok(prod / ((Complex64::new(0.0, 2.0 * PI)).powi(n as i32) * factorial(n)))
}
