use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};

/// Weakly decreasing tuple of non-negative integers; trailing zeros are dropped.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Partition(Vec<u32>);

impl Partition {
    pub fn new(parts: Vec<u32>) -> Result<Self> {
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::NotWeaklyDecreasing(
                parts.iter().map(|&p| p as i64).collect(),
            ));
        }
        let mut parts = parts;
        while parts.last() == Some(&0) {
            parts.pop();
        }
        Ok(Self(parts))
    }

    pub fn empty() -> Self {
        Self(Vec::new())
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    /// Number of non-zero parts.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn size(&self) -> u32 {
        self.0.iter().sum()
    }

    /// `i`-th part with implicit trailing zeros.
    pub fn part(&self, i: usize) -> u32 {
        self.0.get(i).copied().unwrap_or(0)
    }

    /// Parts padded with zeros to length `n` (`n >= len`).
    pub fn padded(&self, n: usize) -> Vec<u32> {
        (0..n).map(|i| self.part(i)).collect()
    }

    /// Multiplicity-weighted `z_λ = ∏_i i^{m_i} m_i!`.
    pub fn z_factor(&self) -> u64 {
        let mut z = 1u64;
        let mut i = 0;
        while i < self.0.len() {
            let v = self.0[i];
            let mut m = 0u64;
            while i < self.0.len() && self.0[i] == v {
                m += 1;
                i += 1;
                z *= v as u64 * m;
            }
        }
        z
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(u32::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Weakly decreasing integer tuple of fixed length; negative entries allowed.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Signature(Vec<i64>);

impl Signature {
    pub fn new(parts: Vec<i64>) -> Result<Self> {
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::NotWeaklyDecreasing(parts));
        }
        Ok(Self(parts))
    }

    pub fn from_partition(p: &Partition, n: usize) -> Result<Self> {
        if p.len() > n {
            return Err(Error::Precondition(format!(
                "partition {p} has more than {n} parts"
            )));
        }
        Ok(Self(p.padded(n).into_iter().map(i64::from).collect()))
    }

    pub fn parts(&self) -> &[i64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn size(&self) -> i64 {
        self.0.iter().sum()
    }

    /// Adds `c` to every entry.
    pub fn shift(&self, c: i64) -> Self {
        Self(self.0.iter().map(|&p| p + c).collect())
    }

    /// The partition obtained when every part is non-negative.
    pub fn to_partition(&self) -> Option<Partition> {
        if self.0.iter().any(|&p| p < 0) {
            return None;
        }
        Partition::new(self.0.iter().map(|&p| p as u32).collect()).ok()
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(i64::to_string).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

/// `μ ≤ λ` in dominance order.
pub fn dominance_leq(mu: &Partition, lam: &Partition) -> Result<bool> {
    if mu.size() != lam.size() {
        return Err(Error::SizeMismatch {
            left: mu.size(),
            right: lam.size(),
        });
    }
    let n = mu.len().max(lam.len());
    let (mut sm, mut sl) = (0u32, 0u32);
    for i in 0..n {
        sm += mu.part(i);
        sl += lam.part(i);
        if sm > sl {
            return Ok(false);
        }
    }
    Ok(true)
}

/// All partitions of `n`, in decreasing lexicographic order: `(n)` first, `(1^n)` last.
///
/// Lexicographic order refines dominance, so every partition dominated by `λ` appears after it.
pub fn partitions_of(n: u32) -> Vec<Partition> {
    fn go(remaining: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if remaining == 0 {
            out.push(Partition(cur.clone()));
            return;
        }
        for p in (1..=max.min(remaining)).rev() {
            cur.push(p);
            go(remaining - p, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}

/// Partitions of `n` with at most `max_len` parts, in decreasing lexicographic order.
pub fn partitions_of_len(n: u32, max_len: usize) -> Vec<Partition> {
    partitions_of(n)
        .into_iter()
        .filter(|p| p.len() <= max_len)
        .collect()
}

/// Weak compositions of `k` into `n` parts, in increasing lexicographic order.
pub fn compositions(k: u32, n: usize) -> Vec<Vec<u32>> {
    fn go(remaining: u32, slots: usize, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if slots == 1 {
            cur.push(remaining);
            out.push(cur.clone());
            cur.pop();
            return;
        }
        for v in 0..=remaining {
            cur.push(v);
            go(remaining - v, slots - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if n == 0 {
        if k == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    go(k, n, &mut Vec::new(), &mut out);
    out
}
