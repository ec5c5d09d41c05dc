//! Sliding-window evaluation of `x_n = c_1 x_(n-1) + ... + c_k x_(n-k)`.

use std::collections::VecDeque;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use crate::{CoefficientVector, Error, Result};

/// A linear recurrence pinned by `k` consecutive seed values starting at
/// index `start`.
#[derive(Debug, Clone)]
pub(crate) struct Recurrence<'a> {
    coeffs: &'a CoefficientVector,
    start: i64,
    seed: Vec<BigInt>,
}

/// `k` consecutive values ending at index `top`, oldest first.
struct Window {
    top: i64,
    values: VecDeque<BigInt>,
}

impl<'a> Recurrence<'a> {
    pub(crate) fn new(coeffs: &'a CoefficientVector, start: i64, seed: Vec<BigInt>) -> Self {
        debug_assert_eq!(coeffs.order(), seed.len());
        Self { coeffs, start, seed }
    }

    fn window(&self) -> Window {
        Window { top: self.start + self.seed.len() as i64 - 1, values: self.seed.iter().cloned().collect() }
    }

    fn step_forward(&self, w: &mut Window) {
        let k = self.seed.len();
        let next =
            self.coeffs.values().iter().enumerate().fold(BigInt::zero(), |acc, (j, c)| acc + c * &w.values[k - 1 - j]);
        w.values.pop_front();
        w.values.push_back(next);
        w.top += 1;
    }

    /// Solves the recurrence at the window's top for the term just below it.
    fn step_backward(&self, w: &mut Window) -> Result<()> {
        let k = self.seed.len();
        let c = self.coeffs.values();
        let lead = self.coeffs.last();
        if lead.is_zero() {
            return Err(Error::NonInvertibleRecurrence("last coefficient is zero".into()));
        }
        let mut rest = w.values[k - 1].clone();
        for j in 1..k {
            rest -= &c[j - 1] * &w.values[k - 1 - j];
        }
        let (q, r) = rest.div_rem(lead);
        if !r.is_zero() {
            return Err(Error::NonInvertibleRecurrence(format!(
                "value below index {} is not an integer (division by {lead})",
                w.top + 1 - k as i64
            )));
        }
        w.values.pop_back();
        w.values.push_front(q);
        w.top -= 1;
        Ok(())
    }

    fn bottom(w: &Window) -> i64 {
        w.top + 1 - w.values.len() as i64
    }

    /// Value at index `n`, running backwards when `n < start`.
    pub(crate) fn value(&self, n: i64) -> Result<BigInt> {
        let mut w = self.window();
        while n > w.top {
            self.step_forward(&mut w);
        }
        while n < Self::bottom(&w) {
            self.step_backward(&mut w)?;
        }
        Ok(w.values[(n - Self::bottom(&w)) as usize].clone())
    }

    /// Values on `lo..=hi` from a single backward-then-forward pass.
    pub(crate) fn table(&self, lo: i64, hi: i64) -> Result<Vec<BigInt>> {
        let mut w = self.window();
        while lo < Self::bottom(&w) {
            self.step_backward(&mut w)?;
        }
        while w.top < lo {
            self.step_forward(&mut w);
        }
        let mut out = Vec::with_capacity((hi - lo + 1).max(0) as usize);
        let mut n = lo;
        while n <= hi {
            while w.top < n {
                self.step_forward(&mut w);
            }
            out.push(w.values[(n - Self::bottom(&w)) as usize].clone());
            n += 1;
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fib() -> CoefficientVector {
        CoefficientVector::ones(2).unwrap()
    }

    #[test]
    fn forward_and_backward_fibonacci() {
        let c = fib();
        let r = Recurrence::new(&c, 0, vec![BigInt::from(0), BigInt::from(1)]);
        assert_eq!(r.value(10).unwrap(), BigInt::from(55));
        // F(-n) = (-1)^(n+1) F(n)
        assert_eq!(r.value(-5).unwrap(), BigInt::from(5));
        assert_eq!(r.value(-6).unwrap(), BigInt::from(-8));
    }

    #[test]
    fn table_matches_pointwise() {
        let c = CoefficientVector::from_i64(&[1, 2, -1]).unwrap();
        let r = Recurrence::new(&c, -2, vec![BigInt::from(3), BigInt::from(-1), BigInt::from(2)]);
        let t = r.table(-9, 12).unwrap();
        for (off, v) in t.iter().enumerate() {
            assert_eq!(*v, r.value(-9 + off as i64).unwrap());
        }
        assert!(r.table(4, 3).unwrap().is_empty());
    }

    #[test]
    fn backward_needs_invertible_tail() {
        let c = CoefficientVector::from_i64(&[1, 0]).unwrap();
        let r = Recurrence::new(&c, 0, vec![BigInt::from(1), BigInt::from(1)]);
        assert!(matches!(r.value(-1), Err(Error::NonInvertibleRecurrence(_))));

        let c = CoefficientVector::from_i64(&[1, 2]).unwrap();
        let r = Recurrence::new(&c, 0, vec![BigInt::from(0), BigInt::from(1)]);
        // 1 = 1*0 + 2*x has no integer solution
        assert!(matches!(r.value(-1), Err(Error::NonInvertibleRecurrence(_))));
    }
}
