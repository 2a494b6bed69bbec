//! Complex Gamma function: Lanczos approximation with reflection.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};

const LANCZOS_G: f64 = 7.0;
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

fn is_pole(z: Complex64) -> bool {
    z.im == 0.0 && z.re <= 0.0 && z.re.fract() == 0.0
}

/// Lanczos series `A_g(z)` and `t = z + g + 1/2` for the shifted argument `z - 1`.
fn lanczos_parts(z: Complex64) -> (Complex64, Complex64) {
    let z = z - 1.0;
    let mut a = Complex64::new(LANCZOS[0], 0.0);
    for (k, &c) in LANCZOS.iter().enumerate().skip(1) {
        a += c / (z + k as f64);
    }
    (a, z + LANCZOS_G + 0.5)
}

/// `ln sin(πz)` on some branch, without overflow for large `|Im z|`.
fn ln_sin_pi(z: Complex64) -> Complex64 {
    let i = Complex64::i();
    if z.im.abs() < 10.0 {
        return (z * PI).sin().ln();
    }
    // sin(πz) = (e^{iπz} - e^{-iπz}) / (2i); factor out the dominant exponential
    if z.im > 0.0 {
        -i * PI * z + (1.0 - (2.0 * PI * i * z).exp()).ln() + (i / 2.0).ln()
    } else {
        i * PI * z + (1.0 - (-2.0 * PI * i * z).exp()).ln() - (2.0 * i).ln()
    }
}

/// `Γ(z)`; rejects the poles at non-positive integers.
pub fn gamma_c(z: Complex64) -> Result<Complex64> {
    if is_pole(z) {
        return Err(Error::GammaPole(format!("{z}")));
    }
    if z.re < 0.5 {
        // Γ(z) Γ(1 - z) = π / sin(πz)
        return Ok(PI / ((PI * z).sin() * gamma_c(1.0 - z)?));
    }
    let (a, t) = lanczos_parts(z);
    Ok((2.0 * PI).sqrt() * t.powc(z - 0.5) * (-t).exp() * a)
}

/// `ln Γ(z)` on a branch that need not be principal; `exp(ln_gamma(z)) = Γ(z)`.
pub fn ln_gamma(z: Complex64) -> Result<Complex64> {
    if is_pole(z) {
        return Err(Error::GammaPole(format!("{z}")));
    }
    if z.re < 0.5 {
        return Ok(PI.ln() - ln_sin_pi(z) - ln_gamma(1.0 - z)?);
    }
    let (a, t) = lanczos_parts(z);
    Ok(0.5 * (2.0 * PI).ln() + (z - 0.5) * t.ln() - t + a.ln())
}

/// `ln(1 / (Γ(z) Γ(-z))) = ln(-z sin(πz) / π)`; the pair is entire and vanishes at `z = 0`.
pub fn ln_inv_gamma_pair(z: Complex64) -> Complex64 {
    if z.re == 0.0 && z.im == 0.0 {
        return Complex64::new(f64::NEG_INFINITY, 0.0);
    }
    (-z).ln() + ln_sin_pi(z) - PI.ln()
}

/// `1/Γ(z)`, entire: zero at the poles of `Γ`.
pub fn rgamma(z: Complex64) -> Complex64 {
    if is_pole(z) {
        return Complex64::new(0.0, 0.0);
    }
    if z.re < 0.5 {
        let g = gamma_c(1.0 - z).expect("Re(1 - z) > 1/2");
        return (PI * z).sin() * g / PI;
    }
    1.0 / gamma_c(z).expect("Re z >= 1/2")
}
