use std::collections::BTreeMap;

use super::partition::Partition;
use crate::error::{Error, Result};
use crate::qcore::Scalar;

/// Symmetric polynomial in `nvars` variables, stored in the monomial-symmetric basis.
#[derive(Clone, Debug, PartialEq)]
pub struct SymmetricPolynomial<S> {
    terms: BTreeMap<Partition, S>,
    nvars: usize,
}

impl<S: Scalar> SymmetricPolynomial<S> {
    pub fn zero(nvars: usize) -> Self {
        Self {
            terms: BTreeMap::new(),
            nvars,
        }
    }

    /// The monomial symmetric polynomial `m_λ`.
    pub fn monomial(lam: Partition, nvars: usize) -> Result<Self> {
        let mut out = Self::zero(nvars);
        out.add_term(lam, S::one())?;
        Ok(out)
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    /// Adds `c · m_μ`, dropping the entry if it cancels to zero.
    pub fn add_term(&mut self, mu: Partition, c: S) -> Result<()> {
        if mu.len() > self.nvars {
            return Err(Error::Precondition(format!(
                "{mu} has more than {} parts",
                self.nvars
            )));
        }
        let updated = match self.terms.remove(&mu) {
            Some(old) => old + c,
            None => c,
        };
        if !updated.is_zero() {
            self.terms.insert(mu, updated);
        }
        Ok(())
    }

    pub fn coefficient(&self, mu: &Partition) -> S {
        self.terms.get(mu).cloned().unwrap_or_else(S::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Partition, &S)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Specializes to `n` variables: every `m_μ` with more than `n` parts vanishes.
    pub fn restrict(&self, n: usize) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .filter(|(mu, _)| mu.len() <= n)
                .map(|(mu, c)| (mu.clone(), c.clone()))
                .collect(),
            nvars: n,
        }
    }

    pub fn eval(&self, z: &[S]) -> Result<S> {
        eval_symmetric(self, z)
    }
}

/// Distinct permutations of `v`, in increasing lexicographic order.
pub fn distinct_permutations(v: &[u32]) -> Vec<Vec<u32>> {
    let mut cur = v.to_vec();
    cur.sort_unstable();
    let mut out = vec![cur.clone()];
    loop {
        // next lexicographic permutation
        let n = cur.len();
        if n < 2 {
            return out;
        }
        let mut i = n - 1;
        while i > 0 && cur[i - 1] >= cur[i] {
            i -= 1;
        }
        if i == 0 {
            return out;
        }
        let mut j = n - 1;
        while cur[j] <= cur[i - 1] {
            j -= 1;
        }
        cur.swap(i - 1, j);
        cur[i..].reverse();
        out.push(cur.clone());
    }
}

/// `m_μ(z)`: sum of `z^α` over the distinct rearrangements `α` of `μ` padded to `len(z)`.
pub fn monomial_eval<S: Scalar>(mu: &Partition, z: &[S]) -> Result<S> {
    if mu.len() > z.len() {
        return Ok(S::zero());
    }
    let mut total = S::zero();
    for alpha in distinct_permutations(&mu.padded(z.len())) {
        let term = alpha
            .iter()
            .zip(z)
            .filter(|(&e, _)| e > 0)
            .fold(S::one(), |acc, (&e, zi)| acc * zi.powi(e as i64));
        total = total + term;
    }
    Ok(total)
}

/// Evaluates a symmetric polynomial at a point.
pub fn eval_symmetric<S: Scalar>(f: &SymmetricPolynomial<S>, z: &[S]) -> Result<S> {
    if z.len() != f.nvars() {
        return Err(Error::Arity {
            expected: f.nvars(),
            got: z.len(),
        });
    }
    f.terms().try_fold(S::zero(), |acc, (mu, c)| {
        Ok(acc + c.clone() * monomial_eval(mu, z)?)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qcore::rat;
    use num_rational::BigRational;

    fn p(v: &[u32]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    #[test]
    fn monomial_values() {
        let z = [rat(2, 1), rat(3, 1)];
        let m1 = SymmetricPolynomial::<BigRational>::monomial(p(&[1]), 2).unwrap();
        let m11 = SymmetricPolynomial::<BigRational>::monomial(p(&[1, 1]), 2).unwrap();
        assert_eq!(m1.eval(&z).unwrap(), rat(5, 1));
        assert_eq!(m11.eval(&z).unwrap(), rat(6, 1));
        let m21 = monomial_eval(&p(&[2, 1]), &[rat(1, 1), rat(2, 1), rat(3, 1)]).unwrap();
        // 1*2*(1+2) + 1*3*(1+3) + 2*3*(2+3) = 6 + 12 + 30
        assert_eq!(m21, rat(48, 1));
    }

    #[test]
    fn too_many_parts_vanish_and_arity_is_checked() {
        assert_eq!(monomial_eval(&p(&[1, 1, 1]), &[rat(1, 1), rat(2, 1)]).unwrap(), rat(0, 1));
        let m1 = SymmetricPolynomial::<BigRational>::monomial(p(&[1]), 2).unwrap();
        assert_eq!(
            m1.eval(&[rat(1, 1)]).unwrap_err(),
            Error::Arity { expected: 2, got: 1 }
        );
    }

    #[test]
    fn permutations_are_distinct() {
        assert_eq!(distinct_permutations(&[1, 0, 1]).len(), 3);
        assert_eq!(distinct_permutations(&[2, 1, 0]).len(), 6);
        assert_eq!(distinct_permutations(&[]).len(), 1);
    }

    #[test]
    fn cancelling_terms_are_not_stored() {
        let mut f = SymmetricPolynomial::<BigRational>::monomial(p(&[2]), 2).unwrap();
        f.add_term(p(&[2]), rat(-1, 1)).unwrap();
        assert!(f.is_empty());
    }
}
