//! Macdonald polynomials `P_λ(z; q, t)` by Gram–Schmidt and by the first difference operator.

use std::collections::BTreeMap;

use super::partition::{dominance_leq, partitions_of, partitions_of_len, Partition};
use super::poly::Poly;
use super::symmetric::SymmetricPolynomial;
use crate::error::{Error, Result};
use crate::qcore::Scalar;

/// Combinatorial limits on construction.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MacdonaldCaps {
    pub max_degree: u32,
    pub max_vars: usize,
}

impl Default for MacdonaldCaps {
    fn default() -> Self {
        Self {
            max_degree: 6,
            max_vars: 4,
        }
    }
}

impl MacdonaldCaps {
    fn check(&self, lam: &Partition, n: Option<usize>) -> Result<()> {
        if lam.size() > self.max_degree {
            return Err(Error::CapExceeded {
                what: "degree",
                cap: self.max_degree as usize,
                got: lam.size() as usize,
            });
        }
        if let Some(n) = n {
            if n > self.max_vars {
                return Err(Error::CapExceeded {
                    what: "variables",
                    cap: self.max_vars,
                    got: n,
                });
            }
        }
        Ok(())
    }
}

/// Number of ways to distribute the parts of `rho` into the slots of `mu` so that slot `j`
/// receives total `mu_j`; this is the coefficient of `m_μ` in `p_ρ`.
fn power_sum_count(rho: &[u32], slots: &mut [u32]) -> u64 {
    let Some((&first, rest)) = rho.split_first() else {
        return u64::from(slots.iter().all(|&s| s == 0));
    };
    let mut total = 0;
    for j in 0..slots.len() {
        if slots[j] >= first {
            slots[j] -= first;
            total += power_sum_count(rest, slots);
            slots[j] += first;
        }
    }
    total
}

/// Solves `a x = b` by exact Gaussian elimination; `None` if `a` is singular.
pub fn solve_linear<S: Scalar>(mut a: Vec<Vec<S>>, mut b: Vec<S>) -> Option<Vec<S>> {
    let n = b.len();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, pivot);
        b.swap(col, pivot);
        for r in col + 1..n {
            if a[r][col].is_zero() {
                continue;
            }
            let f = a[r][col].clone() / a[col][col].clone();
            for c in col..n {
                let v = a[r][c].clone() - f.clone() * a[col][c].clone();
                a[r][c] = v;
            }
            let v = b[r].clone() - f * b[col].clone();
            b[r] = v;
        }
    }
    let mut x = vec![S::zero(); n];
    for r in (0..n).rev() {
        let mut acc = b[r].clone();
        for c in r + 1..n {
            acc = acc - a[r][c].clone() * x[c].clone();
        }
        x[r] = acc / a[r][r].clone();
    }
    Some(x)
}

/// Change of basis between monomial and power-sum symmetric functions of one degree.
struct PowerSumBasis<S> {
    parts: Vec<Partition>,
    /// `m_to_p[μ][ρ]`: coefficient of `p_ρ` in `m_μ`.
    m_to_p: Vec<Vec<S>>,
}

impl<S: Scalar> PowerSumBasis<S> {
    fn new(n: u32) -> Result<Self> {
        let parts = partitions_of(n);
        let k = parts.len();
        // p_to_m[ρ][μ]; m_to_p is its inverse, obtained column by column
        let p_to_m: Vec<Vec<S>> = parts
            .iter()
            .map(|rho| {
                parts
                    .iter()
                    .map(|mu| {
                        let mut slots = mu.parts().to_vec();
                        S::from_int(power_sum_count(rho.parts(), &mut slots) as i64)
                    })
                    .collect()
            })
            .collect();
        // m_μ = Σ_ρ X[μ][ρ] p_ρ with X · P = I, i.e. Pᵀ Xᵀ = I
        let pt: Vec<Vec<S>> = (0..k)
            .map(|i| (0..k).map(|j| p_to_m[j][i].clone()).collect())
            .collect();
        let mut m_to_p = vec![vec![S::zero(); k]; k];
        for mu in 0..k {
            let e: Vec<S> = (0..k).map(|i| if i == mu { S::one() } else { S::zero() }).collect();
            let col = solve_linear(pt.clone(), e)
                .ok_or_else(|| Error::SingularGram("power-sum transition".into()))?;
            for (rho, v) in col.into_iter().enumerate() {
                m_to_p[mu][rho] = v;
            }
        }
        Ok(Self { parts, m_to_p })
    }

    fn index(&self, mu: &Partition) -> usize {
        self.parts.iter().position(|p| p == mu).expect("partition of this degree")
    }

    /// `⟨p_ρ, p_ρ⟩ = z_ρ ∏_i (1 - q^{ρ_i}) / (1 - t^{ρ_i})`.
    fn norms(&self, q: &S, t: &S) -> Result<Vec<S>> {
        self.parts
            .iter()
            .map(|rho| {
                let mut v = S::from_int(rho.z_factor() as i64);
                for &r in rho.parts() {
                    let den = S::one() - t.powi(r as i64);
                    if den.is_zero() {
                        return Err(Error::SingularGram(format!("1 - t^{r} vanishes")));
                    }
                    v = v * (S::one() - q.powi(r as i64)) / den;
                }
                Ok(v)
            })
            .collect()
    }

    fn m_inner(&self, a: usize, b: usize, norms: &[S]) -> S {
        (0..self.parts.len()).fold(S::zero(), |acc, r| {
            acc + self.m_to_p[a][r].clone() * self.m_to_p[b][r].clone() * norms[r].clone()
        })
    }
}

/// The `(q,t)` power-sum inner product of two symmetric functions given in the monomial basis.
pub fn qt_inner_product<S: Scalar>(
    f: &SymmetricPolynomial<S>,
    g: &SymmetricPolynomial<S>,
    q: &S,
    t: &S,
) -> Result<S> {
    let mut by_degree: BTreeMap<u32, (Vec<(Partition, S)>, Vec<(Partition, S)>)> = BTreeMap::new();
    for (mu, c) in f.terms() {
        by_degree.entry(mu.size()).or_default().0.push((mu.clone(), c.clone()));
    }
    for (mu, c) in g.terms() {
        by_degree.entry(mu.size()).or_default().1.push((mu.clone(), c.clone()));
    }
    let mut total = S::zero();
    for (n, (fs, gs)) in by_degree {
        if fs.is_empty() || gs.is_empty() {
            continue;
        }
        let basis = PowerSumBasis::<S>::new(n)?;
        let norms = basis.norms(q, t)?;
        for (a, ca) in &fs {
            for (b, cb) in &gs {
                let ip = basis.m_inner(basis.index(a), basis.index(b), &norms);
                total = total + ca.clone() * cb.clone() * ip;
            }
        }
    }
    Ok(total)
}

/// `P_λ` with the default caps, stored with `|λ|` variables (every partition of `|λ|` fits).
pub fn macdonald_gram_schmidt<S: Scalar>(lam: &Partition, q: &S, t: &S) -> Result<SymmetricPolynomial<S>> {
    macdonald_gram_schmidt_capped(lam, q, t, MacdonaldCaps::default())
}

pub fn macdonald_gram_schmidt_capped<S: Scalar>(
    lam: &Partition,
    q: &S,
    t: &S,
    caps: MacdonaldCaps,
) -> Result<SymmetricPolynomial<S>> {
    caps.check(lam, None)?;
    let n = lam.size();
    let nvars = (n as usize).max(1);
    let basis = PowerSumBasis::<S>::new(n)?;
    let norms = basis.norms(q, t)?;
    let lower: Vec<usize> = basis
        .parts
        .iter()
        .enumerate()
        .filter(|(_, mu)| *mu != lam && dominance_leq(mu, lam).unwrap_or(false))
        .map(|(i, _)| i)
        .collect();
    let top = basis.index(lam);
    let gram: Vec<Vec<S>> = lower
        .iter()
        .map(|&a| lower.iter().map(|&b| basis.m_inner(a, b, &norms)).collect())
        .collect();
    let rhs: Vec<S> = lower.iter().map(|&a| -basis.m_inner(a, top, &norms)).collect();
    let coeffs = solve_linear(gram, rhs)
        .ok_or_else(|| Error::SingularGram(format!("Gram matrix below {lam}")))?;

    let mut out = SymmetricPolynomial::monomial(lam.clone(), nvars)?;
    for (&i, c) in lower.iter().zip(coeffs) {
        out.add_term(basis.parts[i].clone(), c)?;
    }
    Ok(out)
}

/// `V · D¹ f = Σ_i B_i · T_{q,z_i} f` with `V` the Vandermonde product; returns the `B_i`.
fn d1_numerators<S: Scalar>(n: usize, t: &S) -> Vec<Poly<S>> {
    let diff = |a: usize, b: usize, ca: S| Poly::var(a, ca, n).sub(&Poly::var(b, S::one(), n));
    (0..n)
        .map(|i| {
            let sign = if i % 2 == 0 { S::one() } else { -S::one() };
            let mut b = Poly::constant(sign, n);
            for j in (0..n).filter(|&j| j != i) {
                b = b.mul(&diff(i, j, t.clone()));
            }
            for j in (0..n).filter(|&j| j != i) {
                for k in (j + 1..n).filter(|&k| k != i) {
                    b = b.mul(&diff(j, k, S::one()));
                }
            }
            b
        })
        .collect()
}

/// `D¹ m_μ` in `n` variables, as a polynomial.
fn d1_on_monomial<S: Scalar>(mu: &Partition, n: usize, q: &S, numerators: &[Poly<S>]) -> Result<Poly<S>> {
    let m = Poly::monomial_symmetric(mu, n);
    let mut acc = Poly::zero(n);
    for (i, b) in numerators.iter().enumerate() {
        acc = acc.add(&b.mul(&m.q_shift(i, q)));
    }
    for j in 0..n {
        for k in j + 1..n {
            acc = acc.div_difference(j, k)?;
        }
    }
    Ok(acc)
}

/// `P_λ` in `n` variables as the eigenvector of `D¹` with leading term `m_λ`.
pub fn macdonald_triangular_eigen<S: Scalar>(
    lam: &Partition,
    n: usize,
    q: &S,
    t: &S,
) -> Result<SymmetricPolynomial<S>> {
    macdonald_triangular_eigen_capped(lam, n, q, t, MacdonaldCaps::default())
}

pub fn macdonald_triangular_eigen_capped<S: Scalar>(
    lam: &Partition,
    n: usize,
    q: &S,
    t: &S,
    caps: MacdonaldCaps,
) -> Result<SymmetricPolynomial<S>> {
    caps.check(lam, Some(n))?;
    if lam.len() > n {
        return Err(Error::Precondition(format!(
            "{lam} has more than {n} parts"
        )));
    }
    // decreasing lexicographic order: whatever D¹ maps a basis element to comes earlier
    let basis: Vec<Partition> = partitions_of_len(lam.size(), n)
        .into_iter()
        .filter(|mu| dominance_leq(mu, lam).unwrap_or(false))
        .collect();
    let numerators = d1_numerators(n, t);
    // column μ of the operator: d[μ][ν] = coefficient of m_ν in D¹ m_μ
    let d: Vec<Vec<S>> = basis
        .iter()
        .map(|mu| {
            let img = d1_on_monomial(mu, n, q, &numerators)?;
            Ok(basis.iter().map(|nu| img.coefficient(&nu.padded(n))).collect())
        })
        .collect::<Result<_>>()?;

    let eig = d[0][0].clone();
    let mut c = vec![S::zero(); basis.len()];
    c[0] = S::one();
    for v in 1..basis.len() {
        let gap = eig.clone() - d[v][v].clone();
        if gap.is_zero() {
            return Err(Error::Degenerate {
                lam: lam.to_string(),
                mu: basis[v].to_string(),
            });
        }
        let mut acc = S::zero();
        for u in 0..v {
            acc = acc + d[u][v].clone() * c[u].clone();
        }
        c[v] = acc / gap;
    }

    let mut out = SymmetricPolynomial::zero(n);
    for (mu, coef) in basis.into_iter().zip(c) {
        out.add_term(mu, coef)?;
    }
    Ok(out)
}

/// `Σ_i q^{λ_i} t^{n-i}`, the `D¹` eigenvalue of `P_λ` in `n` variables.
pub fn d1_eigenvalue<S: Scalar>(lam: &Partition, n: usize, q: &S, t: &S) -> S {
    (0..n).fold(S::zero(), |acc, i| {
        acc + q.powi(lam.part(i) as i64) * t.powi((n - 1 - i) as i64)
    })
}
