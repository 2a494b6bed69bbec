//! Complex numbers over arbitrary-precision binary floats.
//!
//! Each value carries its working precision in bits; binary operations run at the larger of
//! the two operand precisions, so small exact constants (`zero`, `one`, integers) mix freely
//! with high-precision values.

use std::cell::RefCell;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use astro_float::{BigFloat, Consts, Radix, RoundingMode, Sign};
use num_complex::Complex64;
use num_rational::BigRational;

use super::scalar::Scalar;

pub const MIN_PRECISION: u32 = 64;

const RM: RoundingMode = RoundingMode::ToEven;

thread_local! {
    static CONSTS: RefCell<Consts> = RefCell::new(Consts::new().expect("astro-float constants cache"));
}

fn with_consts<T>(f: impl FnOnce(&mut Consts) -> T) -> T {
    CONSTS.with(|cc| f(&mut cc.borrow_mut()))
}

#[derive(Clone)]
pub struct HighPrecComplex {
    re: BigFloat,
    im: BigFloat,
    precision: u32,
}

impl HighPrecComplex {
    pub fn from_f64(re: f64, im: f64, precision: u32) -> Self {
        let p = precision.max(MIN_PRECISION);
        Self {
            re: BigFloat::from_f64(re, p as usize),
            im: BigFloat::from_f64(im, p as usize),
            precision: p,
        }
    }

    pub fn from_complex(z: Complex64, precision: u32) -> Self {
        Self::from_f64(z.re, z.im, precision)
    }

    pub fn real(x: BigFloat, precision: u32) -> Self {
        let p = precision.max(MIN_PRECISION);
        Self {
            re: x,
            im: BigFloat::from_f64(0.0, p as usize),
            precision: p,
        }
    }

    pub fn from_rational(r: &BigRational, precision: u32) -> Self {
        let p = precision.max(MIN_PRECISION) as usize;
        let (num, den) = with_consts(|cc| {
            (
                BigFloat::parse(&r.numer().to_string(), Radix::Dec, p, RM, cc),
                BigFloat::parse(&r.denom().to_string(), Radix::Dec, p, RM, cc),
            )
        });
        Self::real(num.div(&den, p, RM), p as u32)
    }

    pub fn precision(&self) -> u32 {
        self.precision
    }

    /// Re-rounds both components to `precision` bits.
    pub fn with_precision(&self, precision: u32) -> Self {
        let p = precision.max(MIN_PRECISION);
        let mut out = self.clone();
        let _ = out.re.set_precision(p as usize, RM);
        let _ = out.im.set_precision(p as usize, RM);
        out.precision = p;
        out
    }

    pub fn re_big(&self) -> &BigFloat {
        &self.re
    }

    pub fn im_big(&self) -> &BigFloat {
        &self.im
    }

    pub fn pi(precision: u32) -> BigFloat {
        with_consts(|cc| cc.pi(precision.max(MIN_PRECISION) as usize, RM))
    }

    pub fn to_complex64(&self) -> Complex64 {
        Complex64::new(big_to_f64(&self.re), big_to_f64(&self.im))
    }

    pub fn is_finite(&self) -> bool {
        !(self.re.is_nan() || self.im.is_nan() || self.re.is_inf() || self.im.is_inf())
    }

    /// `exp(x)` for a real high-precision `x`.
    pub fn exp_real(x: &BigFloat, precision: u32) -> BigFloat {
        with_consts(|cc| x.exp(precision as usize, RM, cc))
    }

    /// Natural log of a positive real.
    pub fn ln_real(x: &BigFloat, precision: u32) -> BigFloat {
        with_consts(|cc| x.ln(precision as usize, RM, cc))
    }

    /// Complex exponential.
    pub fn exp(&self) -> Self {
        let p = self.precision as usize;
        let (m, c, s) = with_consts(|cc| {
            (
                self.re.exp(p, RM, cc),
                self.im.cos(p, RM, cc),
                self.im.sin(p, RM, cc),
            )
        });
        Self {
            re: m.mul(&c, p, RM),
            im: m.mul(&s, p, RM),
            precision: self.precision,
        }
    }

    /// `|z|` as a high-precision real.
    pub fn abs_big(&self) -> BigFloat {
        let p = self.precision as usize;
        let n = self
            .re
            .mul(&self.re, p, RM)
            .add(&self.im.mul(&self.im, p, RM), p, RM);
        n.sqrt(p, RM)
    }

    fn prec_of(&self, other: &Self) -> usize {
        self.precision.max(other.precision) as usize
    }
}

/// Converts a BigFloat to the nearest-ish double (truncated to 128 mantissa bits first).
pub fn big_to_f64(x: &BigFloat) -> f64 {
    if x.is_nan() {
        return f64::NAN;
    }
    if x.is_inf_pos() {
        return f64::INFINITY;
    }
    if x.is_inf_neg() {
        return f64::NEG_INFINITY;
    }
    if x.is_zero() {
        return 0.0;
    }
    let Some((words, _, sign, exponent, _)) = x.as_raw_parts() else {
        return f64::NAN;
    };
    let n = words.len();
    let top = words[n - 1] as f64;
    let next = if n >= 2 { words[n - 2] as f64 } else { 0.0 };
    // mantissa is 0.m with the top word holding the leading bits
    let mantissa = (top + next / 18446744073709551616.0) / 18446744073709551616.0;
    let v = ldexp(mantissa, exponent as i64);
    if sign == Sign::Neg {
        -v
    } else {
        v
    }
}

fn ldexp(mut x: f64, mut e: i64) -> f64 {
    while e > 1000 {
        x *= 2f64.powi(1000);
        e -= 1000;
        if x.is_infinite() {
            return x;
        }
    }
    while e < -1000 {
        x *= 2f64.powi(-1000);
        e += 1000;
        if x == 0.0 {
            return x;
        }
    }
    x * 2f64.powi(e as i32)
}

impl fmt::Debug for HighPrecComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let z = self.to_complex64();
        write!(f, "HighPrecComplex({} + {}i @{}b)", z.re, z.im, self.precision)
    }
}

impl fmt::Display for HighPrecComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) + ({})i", self.re, self.im)
    }
}

impl PartialEq for HighPrecComplex {
    fn eq(&self, other: &Self) -> bool {
        self.re == other.re && self.im == other.im
    }
}

impl Add for HighPrecComplex {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        let p = self.prec_of(&o);
        Self {
            re: self.re.add(&o.re, p, RM),
            im: self.im.add(&o.im, p, RM),
            precision: p as u32,
        }
    }
}

impl Sub for HighPrecComplex {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        let p = self.prec_of(&o);
        Self {
            re: self.re.sub(&o.re, p, RM),
            im: self.im.sub(&o.im, p, RM),
            precision: p as u32,
        }
    }
}

impl Mul for HighPrecComplex {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        let p = self.prec_of(&o);
        let ac = self.re.mul(&o.re, p, RM);
        let bd = self.im.mul(&o.im, p, RM);
        let ad = self.re.mul(&o.im, p, RM);
        let bc = self.im.mul(&o.re, p, RM);
        Self {
            re: ac.sub(&bd, p, RM),
            im: ad.add(&bc, p, RM),
            precision: p as u32,
        }
    }
}

impl Div for HighPrecComplex {
    type Output = Self;
    fn div(self, o: Self) -> Self {
        let p = self.prec_of(&o);
        if o.im.is_zero() {
            return Self {
                re: self.re.div(&o.re, p, RM),
                im: self.im.div(&o.re, p, RM),
                precision: p as u32,
            };
        }
        let den = o.re.mul(&o.re, p, RM).add(&o.im.mul(&o.im, p, RM), p, RM);
        let re = self
            .re
            .mul(&o.re, p, RM)
            .add(&self.im.mul(&o.im, p, RM), p, RM);
        let im = self
            .im
            .mul(&o.re, p, RM)
            .sub(&self.re.mul(&o.im, p, RM), p, RM);
        Self {
            re: re.div(&den, p, RM),
            im: im.div(&den, p, RM),
            precision: p as u32,
        }
    }
}

impl Neg for HighPrecComplex {
    type Output = Self;
    fn neg(self) -> Self {
        Self {
            re: self.re.neg(),
            im: self.im.neg(),
            precision: self.precision,
        }
    }
}

impl Scalar for HighPrecComplex {
    fn zero() -> Self {
        Self::from_f64(0.0, 0.0, MIN_PRECISION)
    }
    fn one() -> Self {
        Self::from_f64(1.0, 0.0, MIN_PRECISION)
    }
    fn from_int(n: i64) -> Self {
        let p = MIN_PRECISION as usize;
        Self {
            re: BigFloat::from_i64(n, p),
            im: BigFloat::from_f64(0.0, p),
            precision: MIN_PRECISION,
        }
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
    fn magnitude(&self) -> f64 {
        big_to_f64(&self.abs_big())
    }
}
