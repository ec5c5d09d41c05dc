//! Recurrence engines for the four integer families.
//!
//! * kSOkF `f^i_{k,n}`: `k` branches of `f_n = c_1 f_(n-1) + ... + c_k f_(n-k)`
//!   seeded with `f^i_n = [i = 1 - n]` on `1-k <= n <= 0`.
//! * kSOkL `l^i_{k,n}`: the all-ones recurrence seeded from the Lucas
//!   boundary table on `1-k <= n <= 0`.
//! * GOkF `f_{k,n}`: seeded `0, ..., 0, 1, 1` on `1 <= n <= k`.
//! * GOkL `l_{k,n}`: seeded `-1, ..., -1, k` on `1-k <= n <= 0`.
//!
//! Indices below the seed window are reached by solving the recurrence for
//! its lowest term ("backward extension"); this requires `c_k` to divide
//! exactly, which always holds for the all-ones families.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::recurrence::Recurrence;
use crate::{CoefficientVector, Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    /// k sequences of generalized order-k Fibonacci numbers.
    Ksokf,
    /// k sequences of generalized order-k Lucas numbers.
    Ksokl,
    /// Generalized order-k Fibonacci numbers (single sequence).
    Gokf,
    /// Generalized order-k Lucas numbers (single sequence).
    Gokl,
}

impl Family {
    pub const ALL: [Family; 4] = [Family::Ksokf, Family::Ksokl, Family::Gokf, Family::Gokl];

    pub fn name(self) -> &'static str {
        match self {
            Family::Ksokf => "ksokf",
            Family::Ksokl => "ksokl",
            Family::Gokf => "gokf",
            Family::Gokl => "gokl",
        }
    }

    pub fn has_branches(self) -> bool {
        matches!(self, Family::Ksokf | Family::Ksokl)
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "ksokf" => Ok(Family::Ksokf),
            "ksokl" => Ok(Family::Ksokl),
            "gokf" => Ok(Family::Gokf),
            "gokl" => Ok(Family::Gokl),
            other => Err(format!("unknown family `{other}`")),
        }
    }
}

/// Family, order, branch and coefficients of one integer sequence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SequenceSpec {
    family: Family,
    branch: usize,
    coefficients: CoefficientVector,
}

impl SequenceSpec {
    /// Branch-indexed Fibonacci family with arbitrary coefficients.
    pub fn ksokf(coefficients: CoefficientVector, branch: usize) -> Result<Self> {
        check_branch(coefficients.order(), branch)?;
        Ok(Self { family: Family::Ksokf, branch, coefficients })
    }

    pub fn ksokl(k: usize, branch: usize) -> Result<Self> {
        let coefficients = CoefficientVector::ones(k)?;
        check_branch(k, branch)?;
        Ok(Self { family: Family::Ksokl, branch, coefficients })
    }

    pub fn gokf(k: usize) -> Result<Self> {
        let coefficients = CoefficientVector::ones(k)?;
        Ok(Self { family: Family::Gokf, branch: k, coefficients })
    }

    pub fn gokl(k: usize) -> Result<Self> {
        let coefficients = CoefficientVector::ones(k)?;
        Ok(Self { family: Family::Gokl, branch: k, coefficients })
    }

    /// All-ones spec for any family; `branch` is ignored for single sequences.
    pub fn new(family: Family, k: usize, branch: usize) -> Result<Self> {
        match family {
            Family::Ksokf => Self::ksokf(CoefficientVector::ones(k)?, branch),
            Family::Ksokl => Self::ksokl(k, branch),
            Family::Gokf => Self::gokf(k),
            Family::Gokl => Self::gokl(k),
        }
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn order(&self) -> usize {
        self.coefficients.order()
    }

    pub fn branch(&self) -> usize {
        self.branch
    }

    pub fn coefficients(&self) -> &CoefficientVector {
        &self.coefficients
    }

    /// First index of the seed window. Smaller indices are either
    /// backward-extended or (for GOkF) out of domain.
    pub fn window_start(&self) -> i64 {
        match self.family {
            Family::Gokf => 1,
            _ => 1 - self.order() as i64,
        }
    }

    fn recurrence(&self) -> Recurrence<'_> {
        let k = self.order();
        let seed = match self.family {
            Family::Ksokf => fib_boundary(k, self.branch),
            Family::Ksokl => lucas_boundary(k, self.branch),
            Family::Gokf => {
                (1..=k as i64).map(|n| if n >= k as i64 - 1 { BigInt::one() } else { BigInt::zero() }).collect()
            }
            Family::Gokl => lucas_boundary(k, k),
        };
        Recurrence::new(&self.coefficients, self.window_start(), seed)
    }

    /// Whether `n` falls below the seed window.
    pub fn is_extended(&self, n: i64) -> bool {
        n < self.window_start()
    }

    pub fn value(&self, n: i64) -> Result<BigInt> {
        if self.family == Family::Gokf && n < 1 {
            return Err(Error::IndexOutOfDomain { index: n, min: 1 });
        }
        self.recurrence().value(n)
    }
}

fn check_branch(k: usize, branch: usize) -> Result<()> {
    if k < 2 {
        return Err(Error::InvalidOrder(k));
    }
    if branch == 0 || branch > k {
        return Err(Error::InvalidBranch { branch, order: k });
    }
    Ok(())
}

/// `f^i_n` on `1-k..=0`: one exactly where `i = 1 - n`.
fn fib_boundary(k: usize, i: usize) -> Vec<BigInt> {
    (1 - k as i64..=0).map(|n| if i as i64 == 1 - n { BigInt::one() } else { BigInt::zero() }).collect()
}

/// `l^i_n` on `1-k..=0`.
pub(crate) fn lucas_boundary_value(k: usize, i: usize, n: i64) -> BigInt {
    let (k, i) = (k as i64, i as i64);
    let gap = i - n;
    let v = if gap < k {
        -i
    } else if gap == k {
        -2 * n + i
    } else {
        k - i - 1
    };
    BigInt::from(v)
}

fn lucas_boundary(k: usize, i: usize) -> Vec<BigInt> {
    (1 - k as i64..=0).map(|n| lucas_boundary_value(k, i, n)).collect()
}

/// `f^i_{k,n}` for coefficients `c` (order taken from `c`).
pub fn kso_fib(c: &CoefficientVector, branch: usize, n: i64) -> Result<BigInt> {
    SequenceSpec::ksokf(c.clone(), branch)?.value(n)
}

/// `l^i_{k,n}` (all-ones coefficients).
pub fn kso_lucas(k: usize, branch: usize, n: i64) -> Result<BigInt> {
    SequenceSpec::ksokl(k, branch)?.value(n)
}

/// Miles' `f_{k,n}`, defined for `n >= 1`.
pub fn gok_fib(k: usize, n: i64) -> Result<BigInt> {
    SequenceSpec::gokf(k)?.value(n)
}

/// `l_{k,n}`, extended backwards below `1-k`.
pub fn gok_lucas(k: usize, n: i64) -> Result<BigInt> {
    gok_lucas_with(k, n, true)
}

/// `l_{k,n}`; with `allow_extension = false` indices below `1-k` are errors.
pub fn gok_lucas_with(k: usize, n: i64, allow_extension: bool) -> Result<BigInt> {
    let spec = SequenceSpec::gokl(k)?;
    if !allow_extension && spec.is_extended(n) {
        return Err(Error::IndexOutOfDomain { index: n, min: spec.window_start() });
    }
    spec.value(n)
}

/// `l^i_{k,n}` written as `sum coef * f^k_{k,index}` (all-ones), returned as
/// `(coef, index)` pairs: with `inner(b) = sum_{j=1}^{k} j f^k_{k,b-j}`,
/// branch 1 is `inner(n)`, branch `1 < i < k` is `sum_{m=1}^{i} inner(n-m+1)`
/// and branch `k` is `inner(n+1)`.
pub fn lucas_kth_fib_expansion(k: usize, i: usize, n: i64) -> Result<Vec<(i64, i64)>> {
    check_branch(k, i)?;
    let inner = |base: i64| (1..=k as i64).map(move |j| (j, base - j));
    Ok(if i == 1 {
        inner(n).collect()
    } else if i < k {
        (1..=i as i64).flat_map(|m| inner(n - m + 1)).collect()
    } else {
        inner(n + 1).collect()
    })
}

/// One row of a [`sequence_table`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TableRow {
    pub index: i64,
    pub value: BigInt,
    /// The value lies below the seed window and came from backward extension.
    pub extended: bool,
}

/// Contiguous values on `lo..=hi` computed in one pass.
pub fn sequence_table(spec: &SequenceSpec, lo: i64, hi: i64) -> Result<Vec<TableRow>> {
    if spec.family == Family::Gokf && lo < 1 {
        return Err(Error::IndexOutOfDomain { index: lo, min: 1 });
    }
    let values = spec.recurrence().table(lo, hi)?;
    Ok(values
        .into_iter()
        .zip(lo..)
        .map(|(value, index)| TableRow { index, value, extended: spec.is_extended(index) })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ones(k: usize) -> CoefficientVector {
        CoefficientVector::ones(k).unwrap()
    }

    fn big(v: i64) -> BigInt {
        BigInt::from(v)
    }

    fn values(rows: &[TableRow]) -> Vec<i64> {
        use num_traits::ToPrimitive;
        rows.iter().map(|r| r.value.to_i64().unwrap()).collect()
    }

    #[test]
    fn kso_fib_examples() {
        assert_eq!(kso_fib(&ones(2), 2, 0).unwrap(), big(0));
        assert_eq!(kso_fib(&ones(2), 2, 5).unwrap(), big(5));
        assert_eq!(kso_fib(&ones(4), 4, 3).unwrap(), big(2));
        assert_eq!(kso_fib(&ones(4), 4, 0).unwrap(), big(0));
    }

    #[test]
    fn kso_lucas_examples() {
        assert_eq!(kso_lucas(3, 2, -1).unwrap(), big(4));
        assert_eq!(kso_lucas(3, 2, 3).unwrap(), big(4));
        assert_eq!(kso_lucas(2, 2, 4).unwrap(), big(7));
    }

    #[test]
    fn gok_examples() {
        assert_eq!(gok_fib(3, 2).unwrap(), big(1));
        assert_eq!(gok_fib(3, 1).unwrap(), big(0));
        assert_eq!(gok_fib(2, 6).unwrap(), big(8));
        assert_eq!(gok_lucas(4, 0).unwrap(), big(4));
        assert_eq!(gok_lucas(2, 1).unwrap(), big(1));
        assert_eq!(gok_lucas(3, 3).unwrap(), big(7));
    }

    #[test]
    fn argument_errors() {
        assert_eq!(kso_lucas(1, 1, 0), Err(Error::InvalidOrder(1)));
        assert_eq!(kso_lucas(3, 0, 0), Err(Error::InvalidBranch { branch: 0, order: 3 }));
        assert_eq!(kso_lucas(3, 4, 0), Err(Error::InvalidBranch { branch: 4, order: 3 }));
        assert_eq!(gok_fib(3, 0), Err(Error::IndexOutOfDomain { index: 0, min: 1 }));
        assert_eq!(gok_lucas_with(3, -3, false), Err(Error::IndexOutOfDomain { index: -3, min: -2 }));
        assert!(gok_lucas_with(3, -2, false).is_ok());
        let no_tail = CoefficientVector::from_i64(&[1, 1, 0]).unwrap();
        assert!(matches!(kso_fib(&no_tail, 1, -3), Err(Error::NonInvertibleRecurrence(_))));
        assert!(kso_fib(&no_tail, 1, 10).is_ok());
    }

    #[test]
    fn table_examples() {
        let rows = sequence_table(&SequenceSpec::ksokl(3, 2).unwrap(), -2, 3).unwrap();
        assert_eq!(values(&rows), [0, 4, -2, 2, 4, 4]);
        assert!(rows.iter().all(|r| !r.extended));

        let rows = sequence_table(&SequenceSpec::gokf(2).unwrap(), 1, 5).unwrap();
        assert_eq!(values(&rows), [1, 1, 2, 3, 5]);

        let rows = sequence_table(&SequenceSpec::ksokl(2, 2).unwrap(), 0, 0).unwrap();
        assert_eq!(values(&rows), [2]);

        let rows = sequence_table(&SequenceSpec::ksokl(2, 2).unwrap(), -3, -1).unwrap();
        assert_eq!(values(&rows), [-4, 3, -1]);
        assert_eq!(rows.iter().map(|r| r.extended).collect::<Vec<_>>(), [true, true, false]);
    }

    #[test]
    fn classical_reductions() {
        let (mut fa, mut fb) = (big(0), big(1));
        let (mut la, mut lb) = (big(2), big(1));
        for n in 0..=30 {
            assert_eq!(kso_fib(&ones(2), 2, n).unwrap(), fa);
            assert_eq!(kso_lucas(2, 2, n).unwrap(), la);
            (fa, fb) = (fb.clone(), fa + fb);
            (la, lb) = (lb.clone(), la + lb);
        }
    }

    #[test]
    fn last_branch_matches_single_sequences() {
        for k in 2..=6usize {
            for n in 1..=30 {
                assert_eq!(kso_fib(&ones(k), k, n).unwrap(), gok_fib(k, k as i64 + n - 2).unwrap());
            }
            for n in 1 - k as i64..=30 {
                assert_eq!(kso_lucas(k, k, n).unwrap(), gok_lucas(k, n).unwrap());
            }
        }
    }

    #[test]
    fn kth_fib_expansion_reproduces_lucas_branches() {
        for k in 2..=6usize {
            for i in 1..=k {
                for n in -8..=30 {
                    let terms = lucas_kth_fib_expansion(k, i, n).unwrap();
                    let sum: BigInt =
                        terms.iter().map(|&(c, idx)| BigInt::from(c) * kso_fib(&ones(k), k, idx).unwrap()).sum();
                    assert_eq!(sum, kso_lucas(k, i, n).unwrap(), "k={k} i={i} n={n}");
                }
            }
        }
    }

    #[test]
    fn general_coefficients() {
        // Pell numbers: 0, 1, 2, 5, 12, 29
        let pell = CoefficientVector::pell(2).unwrap();
        let rows = sequence_table(&SequenceSpec::ksokf(pell, 2).unwrap(), 0, 5).unwrap();
        assert_eq!(values(&rows), [0, 1, 2, 5, 12, 29]);
    }
}
