use serde::Serialize;

use super::scalar::Scalar;
use crate::error::{Error, Result};

/// Power series in the formal variable ζ, truncated at an inclusive order.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ZetaSeries<S> {
    coeffs: Vec<S>,
}

impl<S: Scalar> ZetaSeries<S> {
    /// Builds a series from coefficients `c_0..=c_M`. An empty vector is treated as the
    /// order-0 zero series.
    pub fn new(mut coeffs: Vec<S>) -> Self {
        if coeffs.is_empty() {
            coeffs.push(S::zero());
        }
        Self { coeffs }
    }

    pub fn one(order: usize) -> Self {
        let mut coeffs = vec![S::zero(); order + 1];
        coeffs[0] = S::one();
        Self { coeffs }
    }

    pub fn zero(order: usize) -> Self {
        Self {
            coeffs: vec![S::zero(); order + 1],
        }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[S] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> &S {
        &self.coeffs[k]
    }

    pub fn into_coeffs(self) -> Vec<S> {
        self.coeffs
    }

    fn check_order(&self, other: &Self) -> Result<()> {
        if self.order() != other.order() {
            return Err(Error::OrderMismatch {
                left: self.order(),
                right: other.order(),
            });
        }
        Ok(())
    }

    /// Cauchy product truncated at the shared order.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        let m = self.order();
        let coeffs = (0..=m)
            .map(|k| {
                (0..=k).fold(S::zero(), |acc, j| {
                    acc + self.coeffs[j].clone() * other.coeffs[k - j].clone()
                })
            })
            .collect();
        Ok(Self { coeffs })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        Ok(Self {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a.clone() - b.clone())
                .collect(),
        })
    }

    pub fn scale(&self, c: &S) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|a| a.clone() * c.clone()).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Scalar::is_zero)
    }

    /// Evaluates the truncated series at a point.
    pub fn eval(&self, zeta: &S) -> S {
        self.coeffs
            .iter()
            .rev()
            .fold(S::zero(), |acc, c| acc * zeta.clone() + c.clone())
    }
}

/// Product of several series of the same order; the empty product is `1`.
pub fn zeta_series_product<S: Scalar>(order: usize, factors: &[ZetaSeries<S>]) -> Result<ZetaSeries<S>> {
    factors
        .iter()
        .try_fold(ZetaSeries::one(order), |acc, f| acc.mul(f))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qcore::scalar::rat;
    use num_rational::BigRational;

    fn series(v: &[i64]) -> ZetaSeries<BigRational> {
        ZetaSeries::new(v.iter().map(|&x| rat(x, 1)).collect())
    }

    #[test]
    fn identity_and_square() {
        assert_eq!(series(&[1, 0, 0]).mul(&series(&[1, 0, 0])).unwrap(), series(&[1, 0, 0]));
        assert_eq!(series(&[1, 1, 0]).mul(&series(&[1, 1, 0])).unwrap(), series(&[1, 2, 1]));
    }

    #[test]
    fn truncates_at_order() {
        assert_eq!(series(&[1, 1]).mul(&series(&[1, 1])).unwrap(), series(&[1, 2]));
    }

    #[test]
    fn order_mismatch_is_an_error() {
        let err = series(&[1, 0]).mul(&series(&[1, 0, 0])).unwrap_err();
        assert_eq!(err, Error::OrderMismatch { left: 1, right: 2 });
    }

    #[test]
    fn horner_eval() {
        let s = series(&[1, 2, 3]);
        assert_eq!(s.eval(&rat(1, 2)), rat(1, 1) + rat(1, 1) + rat(3, 4));
    }
}
