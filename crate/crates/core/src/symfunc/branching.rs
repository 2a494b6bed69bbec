//! `P_λ(z; q, 0)` by the interlacing branching rule.

use std::collections::HashMap;

use super::partition::Signature;
use crate::error::{Error, Result};
use crate::qcore::Scalar;

struct Tables<S> {
    poch: Vec<S>,
    inv_poch: Vec<S>,
    /// `powers[k][d] = z_k^d`.
    powers: Vec<Vec<S>>,
}

/// Evaluates `P_sig(z; q, t = 0)` for a signature that may have negative parts.
///
/// `P_λ(z_1..z_n) = Σ_μ ∏_{i<n} [λ_i - λ_{i+1} choose λ_i - μ_i]_q · z_n^{|λ|-|μ|} · P_μ(z_1..z_{n-1})`
/// over `μ` interlacing `λ`; a negative last part is removed first by the shift
/// `P_{sig + c}(z) = (∏ z_i)^c P_sig(z)`.
pub fn qwhittaker_branch_eval<S: Scalar>(sig: &Signature, z: &[S], q: &S) -> Result<S> {
    let n = sig.len();
    if z.len() != n {
        return Err(Error::Arity {
            expected: n,
            got: z.len(),
        });
    }
    if n == 0 {
        return Ok(S::one());
    }
    let last = sig.parts()[n - 1];
    let (lam, shift) = if last < 0 {
        (sig.shift(-last), -last)
    } else {
        (sig.clone(), 0)
    };
    if shift > 0 {
        if let Some(i) = z.iter().position(Scalar::is_zero) {
            return Err(Error::ZeroCoordinate(i));
        }
    }
    let parts = lam.parts();
    let top = parts[0] as usize;
    let spread = (parts[0] - parts[n - 1]) as usize;

    let mut poch = Vec::with_capacity(spread + 1);
    let mut acc = S::one();
    let mut qk = S::one();
    poch.push(acc.clone());
    for _ in 0..spread {
        qk = qk * q.clone();
        acc = acc * (S::one() - qk.clone());
        poch.push(acc.clone());
    }
    let inv_poch = poch
        .iter()
        .map(|p| {
            if p.is_zero() {
                Err(Error::Precondition("(q;q)_k vanishes; q must not be a root of unity".into()))
            } else {
                Ok(S::one() / p.clone())
            }
        })
        .collect::<Result<Vec<_>>>()?;
    let powers = z
        .iter()
        .map(|zi| {
            let mut row = Vec::with_capacity(top + 1);
            let mut p = S::one();
            row.push(p.clone());
            for _ in 0..top {
                p = p * zi.clone();
                row.push(p.clone());
            }
            row
        })
        .collect();
    let tables = Tables {
        poch,
        inv_poch,
        powers,
    };

    let mut memo = HashMap::new();
    let value = branch(parts, &tables, &mut memo);
    if shift == 0 {
        return Ok(value);
    }
    let prod = z.iter().fold(S::one(), |a, zi| a * zi.clone());
    Ok(value / prod.powi(shift))
}

fn branch<S: Scalar>(lam: &[i64], tables: &Tables<S>, memo: &mut HashMap<Vec<i64>, S>) -> S {
    let n = lam.len();
    if n == 1 {
        return tables.powers[0][lam[0] as usize].clone();
    }
    if let Some(v) = memo.get(lam) {
        return v.clone();
    }
    let size: i64 = lam.iter().sum();
    let mut mu: Vec<i64> = lam[1..].to_vec();
    let mut total = S::zero();
    loop {
        let mut w = S::one();
        for i in 0..n - 1 {
            w = w
                * tables.poch[(lam[i] - lam[i + 1]) as usize].clone()
                * tables.inv_poch[(lam[i] - mu[i]) as usize].clone()
                * tables.inv_poch[(mu[i] - lam[i + 1]) as usize].clone();
        }
        let deg = (size - mu.iter().sum::<i64>()) as usize;
        let inner = branch(&mu, tables, memo);
        total = total + w * tables.powers[n - 1][deg].clone() * inner;

        // next interlacing μ, odometer style with μ_i ∈ [λ_{i+1}, λ_i]
        let mut i = 0;
        loop {
            if i == n - 1 {
                memo.insert(lam.to_vec(), total.clone());
                return total;
            }
            if mu[i] < lam[i] {
                mu[i] += 1;
                break;
            }
            mu[i] = lam[i + 1];
            i += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qcore::rat;

    #[test]
    fn degree_one_is_elementary() {
        let z = [rat(2, 1), rat(3, 5), rat(-1, 4)];
        let sig = Signature::new(vec![1, 0, 0]).unwrap();
        let v = qwhittaker_branch_eval(&sig, &z, &rat(1, 3)).unwrap();
        assert_eq!(v, rat(2, 1) + rat(3, 5) + rat(-1, 4));
    }

    #[test]
    fn one_variable_is_a_monomial() {
        let sig = Signature::new(vec![5]).unwrap();
        let v = qwhittaker_branch_eval(&sig, &[rat(2, 3)], &rat(1, 2)).unwrap();
        assert_eq!(v, rat(32, 243));
    }

    #[test]
    fn two_variable_degree_two() {
        // P_(2)(z;q,0) = m_(2) + (1+q) m_(1,1)
        let q = rat(1, 3);
        let (a, b) = (rat(2, 1), rat(5, 7));
        let sig = Signature::new(vec![2, 0]).unwrap();
        let v = qwhittaker_branch_eval(&sig, &[a.clone(), b.clone()], &q).unwrap();
        let expected = a.clone() * a.clone() + b.clone() * b.clone() + (rat(1, 1) + q) * a * b;
        assert_eq!(v, expected);
    }

    #[test]
    fn negative_parts_use_the_shift() {
        let q = rat(2, 5);
        let z = [rat(3, 2), rat(-4, 3)];
        let base = qwhittaker_branch_eval(&Signature::new(vec![2, 0]).unwrap(), &z, &q).unwrap();
        let neg = qwhittaker_branch_eval(&Signature::new(vec![1, -1]).unwrap(), &z, &q).unwrap();
        assert_eq!(neg * z[0].clone() * z[1].clone(), base);
        let err = qwhittaker_branch_eval(&Signature::new(vec![0, -1]).unwrap(), &[rat(0, 1), rat(1, 1)], &q)
            .unwrap_err();
        assert_eq!(err, Error::ZeroCoordinate(0));
    }
}
