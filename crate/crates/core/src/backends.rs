//! Exact evaluation of any family through a chosen backend.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;

use crate::matrices::{companion, l_tilde_0, mat_power};
use crate::partitions::{fib_combinatorial, fib_partition_sum, lucas_by_weighted_partitions, lucas_partition_sum};
use crate::sequences::SequenceSpec;
use crate::{Error, Family, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Backend {
    /// Sliding-window recurrence.
    Recurrence,
    /// Powers of the companion matrix applied to the boundary window.
    MatrixPower,
    /// Weighted partition sums (all-ones, `n >= 1`).
    Partition,
}

impl Backend {
    pub const ALL: [Backend; 3] = [Backend::Recurrence, Backend::MatrixPower, Backend::Partition];

    pub fn name(self) -> &'static str {
        match self {
            Backend::Recurrence => "recurrence",
            Backend::MatrixPower => "matrix",
            Backend::Partition => "partition",
        }
    }
}

impl fmt::Display for Backend {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Backend {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "recurrence" => Ok(Backend::Recurrence),
            "matrix" => Ok(Backend::MatrixPower),
            "partition" => Ok(Backend::Partition),
            other => Err(format!("unknown backend `{other}`")),
        }
    }
}

/// Value of `spec` at index `n` through `backend`.
///
/// The matrix backend reads the entry from `A^N` (or `A^N L~_0`) with
/// `N = max(idx, 0)` and row `N - idx`, so it covers every index from the
/// start of the boundary window upwards. The partition backend needs
/// all-ones coefficients and `n >= 1`.
pub fn evaluate(spec: &SequenceSpec, n: i64, backend: Backend) -> Result<BigInt> {
    match backend {
        Backend::Recurrence => spec.value(n),
        Backend::MatrixPower => by_matrix(spec, n),
        Backend::Partition => by_partitions(spec, n),
    }
}

fn by_matrix(spec: &SequenceSpec, n: i64) -> Result<BigInt> {
    let k = spec.order();
    // (branch, branch index) of the entry to read
    let (branch, idx) = match spec.family() {
        Family::Ksokf | Family::Ksokl => (spec.branch(), n),
        Family::Gokf => {
            if n < 1 {
                return Err(Error::IndexOutOfDomain { index: n, min: 1 });
            }
            (k, n - k as i64 + 2)
        }
        Family::Gokl => (k, n),
    };
    let lowest = 1 - k as i64;
    if idx < lowest {
        return Err(Error::IndexOutOfDomain { index: n, min: n - idx + lowest });
    }
    let power = idx.max(0);
    let row = (power - idx) as usize;
    let a = mat_power(&companion(spec.coefficients()), power as u64)?;
    let window = match spec.family() {
        Family::Ksokf | Family::Gokf => a,
        Family::Ksokl | Family::Gokl => a.mul(&l_tilde_0(k)?)?,
    };
    Ok(window[(row, branch - 1)].clone())
}

fn by_partitions(spec: &SequenceSpec, n: i64) -> Result<BigInt> {
    let k = spec.order();
    if !spec.coefficients().is_all_ones() {
        return Err(Error::UnsupportedCoefficients);
    }
    if n < 1 {
        return Err(Error::IndexOutOfDomain { index: n, min: 1 });
    }
    match spec.family() {
        Family::Ksokf => fib_combinatorial(k, spec.branch(), n),
        Family::Ksokl => lucas_by_weighted_partitions(k, spec.branch(), n),
        // f_{k,n} = f^k_{k,n-k+2} = F_{k,n-k+1}(1, ..., 1)
        Family::Gokf => Ok(fib_partition_sum(k, n - k as i64 + 1)),
        Family::Gokl => lucas_partition_sum(k, n),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::CoefficientVector;

    #[test]
    fn backends_agree_on_small_grid() {
        for family in Family::ALL {
            for k in 2..=4 {
                for i in 1..=k {
                    let spec = SequenceSpec::new(family, k, i).unwrap();
                    for n in 1..=12 {
                        let r = evaluate(&spec, n, Backend::Recurrence).unwrap();
                        assert_eq!(evaluate(&spec, n, Backend::MatrixPower).unwrap(), r, "{family} k={k} i={i} n={n}");
                        assert_eq!(evaluate(&spec, n, Backend::Partition).unwrap(), r, "{family} k={k} i={i} n={n}");
                    }
                }
            }
        }
    }

    #[test]
    fn matrix_backend_covers_boundary_window() {
        let spec = SequenceSpec::ksokl(3, 2).unwrap();
        for n in -2..=0 {
            assert_eq!(evaluate(&spec, n, Backend::MatrixPower).unwrap(), spec.value(n).unwrap());
        }
        assert!(evaluate(&spec, -3, Backend::MatrixPower).is_err());
    }

    #[test]
    fn partition_backend_limits() {
        let pell = SequenceSpec::ksokf(CoefficientVector::pell(2).unwrap(), 1).unwrap();
        assert_eq!(evaluate(&pell, 3, Backend::Partition), Err(Error::UnsupportedCoefficients));
        let spec = SequenceSpec::gokl(3).unwrap();
        assert!(evaluate(&spec, 0, Backend::Partition).is_err());
        // matrix backend handles general coefficients
        assert_eq!(evaluate(&pell, 3, Backend::MatrixPower).unwrap(), pell.value(3).unwrap());
    }
}
