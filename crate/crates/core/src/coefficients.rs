use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::{Error, Result};

/// The constants `t_1..t_k` of the core polynomial
/// `x^k - t_1 x^(k-1) - ... - t_k`, which double as the recurrence
/// coefficients `c_1..c_k`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CoefficientVector(Vec<BigInt>);

impl CoefficientVector {
    pub fn new(values: Vec<BigInt>) -> Result<Self> {
        if values.len() < 2 {
            return Err(Error::InvalidOrder(values.len()));
        }
        Ok(Self(values))
    }

    pub fn from_i64(values: &[i64]) -> Result<Self> {
        Self::new(values.iter().map(|&v| BigInt::from(v)).collect())
    }

    /// `t_1 = ... = t_k = 1`.
    pub fn ones(k: usize) -> Result<Self> {
        Self::new(vec![BigInt::one(); k])
    }

    /// `t_1 = 2`, remaining ones (order-k Pell).
    pub fn pell(k: usize) -> Result<Self> {
        let mut c = Self::ones(k)?;
        c.0[0] = BigInt::from(2);
        Ok(c)
    }

    pub fn order(&self) -> usize {
        self.0.len()
    }

    pub fn values(&self) -> &[BigInt] {
        &self.0
    }

    /// `t_j` with 1-based `j`; zero beyond the order.
    pub fn get(&self, j: usize) -> BigInt {
        if j == 0 || j > self.0.len() {
            BigInt::zero()
        } else {
            self.0[j - 1].clone()
        }
    }

    pub fn last(&self) -> &BigInt {
        &self.0[self.0.len() - 1]
    }

    pub fn is_all_ones(&self) -> bool {
        self.0.iter().all(One::is_one)
    }

    pub fn to_f64(&self) -> Vec<f64> {
        use num_traits::ToPrimitive;
        self.0.iter().map(|v| v.to_f64().unwrap_or(f64::NAN)).collect()
    }
}

impl fmt::Display for CoefficientVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (j, v) in self.0.iter().enumerate() {
            if j > 0 {
                f.write_str(",")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

impl FromStr for CoefficientVector {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        let values = s
            .split(',')
            .map(|p| p.trim().parse::<BigInt>().map_err(|e| format!("bad coefficient `{p}`: {e}")))
            .collect::<std::result::Result<Vec<_>, _>>()?;
        Self::new(values).map_err(|e| e.to_string())
    }
}
