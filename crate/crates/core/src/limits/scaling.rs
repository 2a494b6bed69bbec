//! The ε-scaling that takes `t = 0` Macdonald polynomials to Whittaker functions.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::qcore::{big_to_f64, HighPrecComplex};
use crate::symfunc::{qwhittaker_branch_eval, Signature};

pub const DEFAULT_PRECISION: u32 = 256;
pub const MAX_PRECISION: u32 = 4096;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ScalingPoint {
    pub epsilon: f64,
    pub x: Vec<f64>,
    pub w: Vec<Complex64>,
    pub u: f64,
}

impl ScalingPoint {
    pub fn new(epsilon: f64, x: Vec<f64>, w: Vec<Complex64>, u: f64) -> Result<Self> {
        if !(epsilon > 0.0 && epsilon < 1.0) {
            return Err(Error::Precondition(format!("ε must lie in (0, 1), got {epsilon}")));
        }
        if x.is_empty() {
            return Err(Error::Precondition("need N >= 1".into()));
        }
        if w.len() != x.len() {
            return Err(Error::Arity {
                expected: x.len(),
                got: w.len(),
            });
        }
        Ok(Self { epsilon, x, w, u })
    }

    pub fn n(&self) -> usize {
        self.x.len()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ScaledImage {
    pub q: f64,
    pub lam: Signature,
    pub lam_raw: Vec<f64>,
    pub z: Vec<Complex64>,
    pub zeta: f64,
}

/// `λ_k = (N - 2k + 1) ε^{-1} ln(1/ε) + ε^{-1} x_k`, before rounding.
pub fn raw_lambda(epsilon: f64, x: &[f64]) -> Vec<f64> {
    let n = x.len() as f64;
    let log_term = (1.0 / epsilon).ln() / epsilon;
    x.iter()
        .enumerate()
        .map(|(k, xk)| (n - 2.0 * (k as f64 + 1.0) + 1.0) * log_term + xk / epsilon)
        .collect()
}

/// `q = e^{-ε}`, `λ` rounded to the nearest integers, `z_k = e^{iεw_k}`, `ζ = -uε^N`.
pub fn scaling_map(p: &ScalingPoint) -> Result<ScaledImage> {
    let eps = p.epsilon;
    let lam_raw = raw_lambda(eps, &p.x);
    let rounded: Vec<i64> = lam_raw.iter().map(|v| v.round() as i64).collect();
    let lam = Signature::new(rounded)?;
    let z = p.w.iter().map(|w| (Complex64::i() * eps * w).exp()).collect();
    Ok(ScaledImage {
        q: (-eps).exp(),
        lam,
        lam_raw,
        z,
        zeta: -p.u * eps.powi(p.n() as i32),
    })
}

/// `A(ε) = -π²/(6ε) - ½ ln(ε/2π)`, the exponent that makes `ψ^ε` converge.
pub fn a_eps(epsilon: f64) -> f64 {
    -PI * PI / (6.0 * epsilon) - 0.5 * (epsilon / (2.0 * PI)).ln()
}

/// `-π²/(6ε) - ε^{-1} ln(ε/2π)`, with the coefficient of the logarithm taken literally as `ε^{-1}`.
pub fn a_eps_literal(epsilon: f64) -> f64 {
    -PI * PI / (6.0 * epsilon) - (epsilon / (2.0 * PI)).ln() / epsilon
}

/// `ln` of the prefactor `ε^{N(N-1)/2} e^{N(N-1)/2 · A(ε)}`.
pub fn ln_prefactor(epsilon: f64, n: usize) -> f64 {
    let k = (n * (n - 1) / 2) as f64;
    k * (epsilon.ln() + a_eps(epsilon))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ScaledValue {
    pub value: Complex64,
    pub ln_abs_p: f64,
    pub ln_prefactor: f64,
    pub precision: u32,
}

/// `ψ^ε_w(x) = ε^{N(N-1)/2} e^{N(N-1)/2 · A(ε)} P_λ(z; q, 0)` with `P_λ` summed over interlacing
/// patterns at `precision` bits. The prefactor is applied in log-magnitude form.
pub fn scaled_qwhittaker_at(p: &ScalingPoint, precision: u32) -> Result<ScaledValue> {
    let n = p.n();
    if n > 3 {
        return Err(Error::CapExceeded {
            what: "rank",
            cap: 3,
            got: n,
        });
    }
    let img = scaling_map(p)?;
    let eps = p.epsilon;
    let q = HighPrecComplex::from_f64(-eps, 0.0, precision).exp();
    let z: Vec<HighPrecComplex> = p
        .w
        .iter()
        .map(|w| HighPrecComplex::from_f64(-eps * w.im, eps * w.re, precision).exp())
        .collect();
    let pv = qwhittaker_branch_eval(&img.lam, &z, &q)?;
    let abs = pv.abs_big();
    if abs.is_zero() || !pv.is_finite() {
        return Err(Error::Precision(precision));
    }
    let ln_abs_p = big_to_f64(&HighPrecComplex::ln_real(&abs, precision));
    let phase = (pv / HighPrecComplex::real(abs, precision)).to_complex64();
    let ln_prefactor = ln_prefactor(eps, n);
    Ok(ScaledValue {
        value: phase * (ln_abs_p + ln_prefactor).exp(),
        ln_abs_p,
        ln_prefactor,
        precision,
    })
}

/// `scaled_qwhittaker_at`, doubling the precision until two successive values agree to `1e-12`.
pub fn scaled_qwhittaker(p: &ScalingPoint, precision: u32) -> Result<ScaledValue> {
    let mut bits = precision.max(64);
    let mut prev = scaled_qwhittaker_at(p, bits).ok();
    while bits < MAX_PRECISION {
        bits *= 2;
        let cur = match scaled_qwhittaker_at(p, bits) {
            Ok(v) => v,
            Err(Error::Precision(_)) => continue,
            Err(e) => return Err(e),
        };
        if let Some(prev) = &prev {
            if (cur.value - prev.value).norm() <= 1e-12 * cur.value.norm() {
                return Ok(cur);
            }
        }
        prev = Some(cur);
    }
    Err(Error::Precision(bits))
}
