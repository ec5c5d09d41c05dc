//! Weighted partitions `a |- n` (exponent vectors with `sum j a_j = n`),
//! multinomial coefficients, and the partition-sum forms of the
//! all-ones Fibonacci and Lucas branches.
//!
//! The partition sums are only defined for positive weight (zero for the
//! Fibonacci count). Several representations index summands below that
//! range when `n` is small; such summands take the exact branch value from
//! the recurrence backend, so the closed forms hold for every `n >= 1`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::sequences::{kso_fib, kso_lucas, lucas_kth_fib_expansion};
use crate::{CoefficientVector, Error, Result};

/// Exponent vector `(a_1..a_k)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WeightedPartition {
    parts: Vec<u32>,
}

impl WeightedPartition {
    pub fn new(parts: Vec<u32>) -> Self {
        Self { parts }
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    /// `sum j a_j`.
    pub fn weight(&self) -> u64 {
        self.parts.iter().zip(1u64..).map(|(&a, j)| a as u64 * j).sum()
    }

    /// `|a| = sum a_j`.
    pub fn size(&self) -> u64 {
        self.parts.iter().map(|&a| a as u64).sum()
    }
}

/// All `a |- n` with parts at most `k`, in lexicographic order of
/// `(a_1, ..., a_k)`. Negative weights have no partitions.
pub fn enumerate_partitions(n: i64, k: usize) -> Vec<WeightedPartition> {
    let mut out = Vec::new();
    if n < 0 || k == 0 {
        return out;
    }
    let mut parts = vec![0u32; k];
    descend(&mut parts, 0, n as u64, &mut out);
    out
}

fn descend(parts: &mut [u32], pos: usize, rem: u64, out: &mut Vec<WeightedPartition>) {
    let j = pos as u64 + 1;
    if pos + 1 == parts.len() {
        if rem % j == 0 {
            parts[pos] = (rem / j) as u32;
            out.push(WeightedPartition::new(parts.to_vec()));
        }
        return;
    }
    for a in 0..=rem / j {
        parts[pos] = a as u32;
        descend(parts, pos + 1, rem - a * j, out);
    }
    parts[pos] = 0;
}

/// `|a|! / (a_1! ... a_k!)`, as a product of binomials.
pub fn multinomial(a: &WeightedPartition) -> BigInt {
    let mut total = 0u64;
    let mut acc = BigInt::one();
    for &p in a.parts() {
        for s in 1..=p as u64 {
            acc = acc * BigInt::from(total + s) / BigInt::from(s);
        }
        total += p as u64;
    }
    acc
}

fn binomial(n: i64, s: i64) -> BigInt {
    if s < 0 || n < s {
        return BigInt::zero();
    }
    (0..s).fold(BigInt::one(), |acc, j| acc * BigInt::from(n - j) / BigInt::from(j + 1))
}

/// Sum of multinomials over `a |- w` (number of compositions of `w` into
/// parts `<= k`); this is `F_{k,w}(1, ..., 1)` and zero for `w < 0`.
pub fn fib_partition_sum(k: usize, w: i64) -> BigInt {
    enumerate_partitions(w, k).iter().map(multinomial).sum()
}

/// `weight * multinomial(a) / |a|`, which must divide exactly.
fn weighted_term(a: &WeightedPartition, weight: u64, w: i64) -> Result<BigInt> {
    let (q, r) = (multinomial(a) * BigInt::from(weight)).div_rem(&BigInt::from(a.size()));
    if r.is_zero() {
        Ok(q)
    } else {
        Err(Error::NonIntegralSum(format!("term {:?} of weight {w} has remainder {r}", a.parts())))
    }
}

/// `sum_{a |- w} (w / |a|) multinomial(a)` for `w >= 1`: the power sum
/// `G_{k,w}(1, ..., 1)`. Every term is checked to be integral. Weight 0
/// gives `k` and negative weights give 0, as for `G_{k,w}`.
pub fn lucas_partition_sum(k: usize, w: i64) -> Result<BigInt> {
    if w <= 0 {
        return Ok(if w == 0 { BigInt::from(k) } else { BigInt::zero() });
    }
    enumerate_partitions(w, k).iter().map(|a| weighted_term(a, w as u64, w)).sum()
}

/// `sum_{m |- w} (m_k / |m|) multinomial(m)` for `w >= 1`: compositions of
/// `w` ending in the part `k`. Every term is checked to be integral.
pub fn last_part_weighted_sum(k: usize, w: i64) -> Result<BigInt> {
    enumerate_partitions(w, k)
        .iter()
        .filter(|m| m.parts()[k - 1] > 0)
        .map(|m| weighted_term(m, m.parts()[k - 1] as u64, w))
        .sum()
}

fn check(k: usize, i: usize) -> Result<CoefficientVector> {
    let ones = CoefficientVector::ones(k)?;
    if i == 0 || i > k {
        return Err(Error::InvalidBranch { branch: i, order: k });
    }
    Ok(ones)
}

fn check_n(n: i64) -> Result<()> {
    if n < 1 {
        return Err(Error::IndexOutOfDomain { index: n, min: 1 });
    }
    Ok(())
}

/// Summand `f^k_{k,idx}` by partition count when `idx >= 1 - k`, by the
/// recurrence below that.
fn fib_atom(ones: &CoefficientVector, idx: i64) -> Result<BigInt> {
    let k = ones.order();
    if idx > 1 - k as i64 {
        Ok(fib_partition_sum(k, idx - 1))
    } else {
        kso_fib(ones, k, idx)
    }
}

/// Summand `f^k_{k,idx}` by the last-part weighted sum when `idx >= 1`.
fn last_part_atom(ones: &CoefficientVector, idx: i64) -> Result<BigInt> {
    let k = ones.order();
    if idx >= 1 {
        last_part_weighted_sum(k, idx + k as i64 - 1)
    } else {
        kso_fib(ones, k, idx)
    }
}

/// Summand `l^k_{k,idx}` by the weighted sum when `idx >= 1`.
fn lucas_atom(ones: &CoefficientVector, idx: i64) -> Result<BigInt> {
    let k = ones.order();
    if idx >= 1 {
        lucas_partition_sum(k, idx)
    } else {
        kso_lucas(k, k, idx)
    }
}

fn lucas_by_kth_fib(
    ones: &CoefficientVector,
    i: usize,
    n: i64,
    atom: impl Fn(&CoefficientVector, i64) -> Result<BigInt>,
) -> Result<BigInt> {
    let mut s = BigInt::zero();
    for (c, idx) in lucas_kth_fib_expansion(ones.order(), i, n)? {
        s += BigInt::from(c) * atom(ones, idx)?;
    }
    Ok(s)
}

/// `f^i_{k,n}` (all-ones, `n >= 1`) as sums of multinomials:
/// `a |- n` for `i = 1`, `a |- n - m` over `m = 1..=k-i+1` for `1 < i < k`,
/// and `a |- n - 1` for `i = k`.
pub fn fib_combinatorial(k: usize, i: usize, n: i64) -> Result<BigInt> {
    check(k, i)?;
    check_n(n)?;
    Ok(if i == 1 {
        fib_partition_sum(k, n)
    } else if i < k {
        (1..=(k - i + 1) as i64).map(|m| fib_partition_sum(k, n - m)).sum()
    } else {
        fib_partition_sum(k, n - 1)
    })
}

/// `f^k_{k,n-shift}` via the sum over `m |- n - shift + k - 1` weighted by
/// `m_k / |m|`; needs `0 <= shift <= n - 1`.
pub fn fib_by_last_part_weight(k: usize, n: i64, shift: i64) -> Result<BigInt> {
    CoefficientVector::ones(k)?;
    if shift < 0 || shift > n - 1 {
        return Err(Error::IndexOutOfDomain { index: shift, min: 0 });
    }
    last_part_weighted_sum(k, n - shift + k as i64 - 1)
}

/// `l^i_{k,n}` from the `w / |a|` weighted partition sums of the last
/// Lucas branch: `l^k_{n-1}` for `i = 1`, `sum_{m=1}^{i} l^k_{n-m}` for
/// `1 < i < k`, `l^k_n` for `i = k`.
pub fn lucas_by_weighted_partitions(k: usize, i: usize, n: i64) -> Result<BigInt> {
    let ones = check(k, i)?;
    check_n(n)?;
    if i == 1 {
        lucas_atom(&ones, n - 1)
    } else if i < k {
        let mut s = BigInt::zero();
        for m in 1..=i as i64 {
            s += lucas_atom(&ones, n - m)?;
        }
        Ok(s)
    } else {
        lucas_atom(&ones, n)
    }
}

/// `l^i_{k,n}` as `j`-weighted sums of plain multinomial sums
/// (`sum_j j sum_{a |- n-1-j}` and its shifted variants).
pub fn lucas_by_partition_counts(k: usize, i: usize, n: i64) -> Result<BigInt> {
    let ones = check(k, i)?;
    check_n(n)?;
    lucas_by_kth_fib(&ones, i, n, fib_atom)
}

/// `l^i_{k,n}` as `j`-weighted sums of last-part weighted partition sums.
pub fn lucas_by_last_part_weight(k: usize, i: usize, n: i64) -> Result<BigInt> {
    let ones = check(k, i)?;
    check_n(n)?;
    lucas_by_kth_fib(&ones, i, n, last_part_atom)
}

/// Ordinary Lucas `l_n = sum_{j=1}^{2} j sum_{s} C(n-j-s, s)`, `n >= 1`.
pub fn lucas2_binomial(n: i64) -> Result<BigInt> {
    check_n(n)?;
    let mut total = BigInt::zero();
    for j in 1..=2i64 {
        let top = Integer::div_ceil(&(n - j), &2);
        let inner: BigInt = (0..=top).map(|s| binomial(n - j - s, s)).sum();
        total += BigInt::from(j) * inner;
    }
    Ok(total)
}
