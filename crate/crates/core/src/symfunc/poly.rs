//! Sparse multivariate polynomials, just enough to apply difference operators symbolically.

use std::collections::BTreeMap;

use super::partition::Partition;
use super::symmetric::distinct_permutations;
use crate::error::{Error, Result};
use crate::qcore::Scalar;

#[derive(Clone, Debug, PartialEq)]
pub struct Poly<S> {
    terms: BTreeMap<Vec<u32>, S>,
    nvars: usize,
}

impl<S: Scalar> Poly<S> {
    pub fn zero(nvars: usize) -> Self {
        Self {
            terms: BTreeMap::new(),
            nvars,
        }
    }

    pub fn constant(c: S, nvars: usize) -> Self {
        let mut p = Self::zero(nvars);
        p.add_term(vec![0; nvars], c);
        p
    }

    /// `c·z_i`.
    pub fn var(i: usize, c: S, nvars: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        let mut p = Self::zero(nvars);
        p.add_term(e, c);
        p
    }

    /// Full monomial expansion of `m_μ`.
    pub fn monomial_symmetric(mu: &Partition, nvars: usize) -> Self {
        let mut p = Self::zero(nvars);
        if mu.len() <= nvars {
            for alpha in distinct_permutations(&mu.padded(nvars)) {
                p.add_term(alpha, S::one());
            }
        }
        p
    }

    pub fn add_term(&mut self, exponent: Vec<u32>, c: S) {
        let updated = match self.terms.remove(&exponent) {
            Some(old) => old + c,
            None => c,
        };
        if !updated.is_zero() {
            self.terms.insert(exponent, updated);
        }
    }

    pub fn coefficient(&self, exponent: &[u32]) -> S {
        self.terms.get(exponent).cloned().unwrap_or_else(S::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &S)> {
        self.terms.iter()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), -c.clone());
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.nvars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.add_term(e, ca.clone() * cb.clone());
            }
        }
        out
    }

    /// Applies the q-shift `z_i ↦ q z_i`.
    pub fn q_shift(&self, i: usize, q: &S) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.clone(), c.clone() * q.powi(e[i] as i64)))
                .collect(),
            nvars: self.nvars,
        }
    }

    /// Exact quotient by `(z_a - z_b)`; fails if the division leaves a remainder.
    pub fn div_difference(&self, a: usize, b: usize) -> Result<Self> {
        let mut rem = self.clone();
        let mut quot = Self::zero(self.nvars);
        loop {
            // term of highest degree in z_a; ties broken by the map order
            let Some((e, c)) = rem
                .terms
                .iter()
                .max_by_key(|(e, _)| e[a])
                .map(|(e, c)| (e.clone(), c.clone()))
            else {
                return Ok(quot);
            };
            if e[a] == 0 {
                return Err(Error::NotDivisible(a, b));
            }
            let mut lowered = e.clone();
            lowered[a] -= 1;
            let mut swapped = lowered.clone();
            swapped[b] += 1;
            quot.add_term(lowered, c.clone());
            rem.add_term(e, -c.clone());
            rem.add_term(swapped, c);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qcore::rat;
    use num_rational::BigRational;

    #[test]
    fn division_by_difference() {
        // z0^2 - z1^2 = (z0 - z1)(z0 + z1)
        let mut p = Poly::<BigRational>::zero(2);
        p.add_term(vec![2, 0], rat(1, 1));
        p.add_term(vec![0, 2], rat(-1, 1));
        let q = p.div_difference(0, 1).unwrap();
        let expected = Poly::var(0, rat(1, 1), 2).add(&Poly::var(1, rat(1, 1), 2));
        assert_eq!(q, expected);
    }

    #[test]
    fn non_divisible_is_reported() {
        let p = Poly::var(0, rat(1, 1), 2);
        assert_eq!(p.div_difference(0, 1).unwrap_err(), Error::NotDivisible(0, 1));
    }

    #[test]
    fn q_shift_scales_by_degree() {
        let p = Poly::<BigRational>::monomial_symmetric(&Partition::new(vec![2, 1]).unwrap(), 2);
        let s = p.q_shift(0, &rat(1, 2));
        assert_eq!(s.coefficient(&[2, 1]), rat(1, 4));
        assert_eq!(s.coefficient(&[1, 2]), rat(1, 2));
    }
}
