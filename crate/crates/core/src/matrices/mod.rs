//! Companion matrices, the `F~_n` / `L~_n` windows and windows of the
//! doubly infinite orbit matrices.
//!
//! Two transposed companion forms appear and are kept apart:
//!
//! * [`companion`] (coefficient row on top, identity below it) drives the
//!   branch windows: `F~_(n+1) = A F~_n` and `L~_(n+1) = A L~_n`.
//! * [`orbit_companion`] (identity on the superdiagonal, reversed
//!   coefficients in the bottom row) acts on row vectors from the right and
//!   generates the orbit windows and the trace property
//!   `tr(A^n) = G_{k,n}(t)`.

mod exact;

pub use exact::{mat_power, ExactMatrix};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::sequences::{lucas_boundary_value, sequence_table, SequenceSpec};
use crate::{CoefficientVector, Error, Result};

/// `k x k` matrix with `c_1..c_k` in the first row and the identity on the
/// subdiagonal.
pub fn companion(c: &CoefficientVector) -> ExactMatrix {
    let k = c.order();
    ExactMatrix::from_fn(k, k, |r, col| {
        if r == 0 {
            c.values()[col].clone()
        } else if col + 1 == r {
            BigInt::one()
        } else {
            BigInt::zero()
        }
    })
}

/// `k x k` matrix with ones on the superdiagonal and `t_k, ..., t_1` in the
/// bottom row.
pub fn orbit_companion(t: &CoefficientVector) -> ExactMatrix {
    let k = t.order();
    ExactMatrix::from_fn(k, k, |r, col| {
        if r + 1 == k {
            t.get(k - col)
        } else if col == r + 1 {
            BigInt::one()
        } else {
            BigInt::zero()
        }
    })
}

fn branch_window(spec_for: impl Fn(usize) -> Result<SequenceSpec>, k: usize, n: i64) -> Result<ExactMatrix> {
    let mut m = ExactMatrix::zeros(k, k);
    for i in 1..=k {
        let rows = sequence_table(&spec_for(i)?, n - k as i64 + 1, n)?;
        for (r, row) in rows.into_iter().rev().enumerate() {
            m.set(r, i - 1, row.value);
        }
    }
    Ok(m)
}

/// `F~_n`: entry `(r, i-1)` is `f^i_{k,n-r}`.
pub fn f_tilde(c: &CoefficientVector, n: i64) -> Result<ExactMatrix> {
    branch_window(|i| SequenceSpec::ksokf(c.clone(), i), c.order(), n)
}

/// `L~_n`: entry `(r, i-1)` is `l^i_{k,n-r}`.
pub fn l_tilde(k: usize, n: i64) -> Result<ExactMatrix> {
    branch_window(|i| SequenceSpec::ksokl(k, i), k, n)
}

/// The explicit Lucas boundary matrix `L~_0`.
///
/// Row `r`, column `c` (both 0-based): `-(c+1)` left of the antidiagonal,
/// `k + r` on it, `k - c - 2` to its right.
pub fn l_tilde_0(k: usize) -> Result<ExactMatrix> {
    if k < 2 {
        return Err(Error::InvalidOrder(k));
    }
    let k = k as i64;
    Ok(ExactMatrix::from_fn(k as usize, k as usize, |r, c| {
        let (r, c) = (r as i64, c as i64);
        let anti = k - 1 - r;
        BigInt::from(match c.cmp(&anti) {
            std::cmp::Ordering::Less => -(c + 1),
            std::cmp::Ordering::Equal => k + r,
            std::cmp::Ordering::Greater => k - c - 2,
        })
    }))
}

/// Boundary window of the Lucas branches, straight from the boundary table.
pub fn lucas_boundary_window(k: usize) -> Result<ExactMatrix> {
    if k < 2 {
        return Err(Error::InvalidOrder(k));
    }
    Ok(ExactMatrix::from_fn(k, k, |r, c| lucas_boundary_value(k, c + 1, -(r as i64))))
}

/// Rows `row_lo..=row_hi` of an orbit matrix under [`orbit_companion`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InfiniteMatrixWindow {
    pub k: usize,
    pub t: CoefficientVector,
    pub row_lo: i64,
    pub row_hi: i64,
    pub entries: ExactMatrix,
}

impl InfiniteMatrixWindow {
    /// Row with orbit index `n`.
    pub fn row(&self, n: i64) -> Option<&[BigInt]> {
        (self.row_lo..=self.row_hi).contains(&n).then(|| self.entries.row((n - self.row_lo) as usize))
    }

    pub fn right_column(&self) -> Vec<BigInt> {
        self.entries.row_iter().map(|r| r[self.k - 1].clone()).collect()
    }
}

/// `v A_(k)`.
fn orbit_forward(t: &CoefficientVector, v: &[BigInt]) -> Vec<BigInt> {
    let k = v.len();
    let tail = &v[k - 1];
    (0..k)
        .map(|j| {
            let carry = tail * t.get(k - j);
            if j == 0 {
                carry
            } else {
                &v[j - 1] + carry
            }
        })
        .collect()
}

/// `w A_(k)^-1`, exact over the integers or an error.
fn orbit_backward(t: &CoefficientVector, w: &[BigInt]) -> Result<Vec<BigInt>> {
    let k = w.len();
    let tk = t.last();
    if tk.is_zero() {
        return Err(Error::NonInvertibleRecurrence("t_k = 0, orbit matrix is singular".into()));
    }
    let (tail, rem) = w[0].div_rem(tk);
    if !rem.is_zero() {
        return Err(Error::NonInvertibleRecurrence(format!("{} is not divisible by t_k = {tk}", w[0])));
    }
    let mut v: Vec<BigInt> = (0..k - 1).map(|j| &w[j + 1] - &tail * t.get(k - 1 - j)).collect();
    v.push(tail);
    Ok(v)
}

fn orbit_window(
    t: &CoefficientVector,
    anchor_index: i64,
    anchor: Vec<BigInt>,
    row_lo: i64,
    row_hi: i64,
) -> Result<InfiniteMatrixWindow> {
    let k = t.order();
    if row_lo > row_hi {
        return Err(Error::DimensionMismatch(format!("empty row range {row_lo}..{row_hi}")));
    }
    let mut v = anchor;
    let mut at = anchor_index;
    while at > row_lo {
        v = orbit_backward(t, &v)?;
        at -= 1;
    }
    while at < row_lo {
        v = orbit_forward(t, &v);
        at += 1;
    }
    let mut rows = Vec::with_capacity((row_hi - row_lo + 1) as usize);
    loop {
        let next = (at < row_hi).then(|| orbit_forward(t, &v));
        rows.push(v);
        match next {
            Some(n) => {
                v = n;
                at += 1;
            }
            None => break,
        }
    }
    Ok(InfiniteMatrixWindow { k, t: t.clone(), row_lo, row_hi, entries: ExactMatrix::from_rows(rows)? })
}

/// Coefficients of `P'(x)` from `x^0` up: `(-t_(k-1), ..., -(k-1) t_1, k)`.
pub fn derivative_vector(t: &CoefficientVector) -> Vec<BigInt> {
    let k = t.order();
    (0..k).map(|p| if p + 1 == k { BigInt::from(k) } else { -BigInt::from(p + 1) * t.get(k - 1 - p) }).collect()
}

/// Window of the Lucas orbit matrix; row 0 is the derivative vector, and
/// the right column of row `n >= 0` is `G_{k,n}(t)`.
pub fn d_infty_window(t: &CoefficientVector, row_lo: i64, row_hi: i64) -> Result<InfiniteMatrixWindow> {
    orbit_window(t, 0, derivative_vector(t), row_lo, row_hi)
}

/// Window of the Fibonacci orbit matrix; rows `1-k..=0` form the identity
/// and the right column of row `n` is `F_{k,n}(t)`.
pub fn a_infty_window(t: &CoefficientVector, row_lo: i64, row_hi: i64) -> Result<InfiniteMatrixWindow> {
    let k = t.order();
    let mut e_k = vec![BigInt::zero(); k];
    e_k[k - 1] = BigInt::one();
    orbit_window(t, 0, e_k, row_lo, row_hi)
}

/// `S_(0), ..., S_(n)` with `S_(m) = t_1 S_(m-1) + ... + t_k S_(m-k)`.
fn complete_schur(t: &CoefficientVector, n: usize) -> Vec<BigInt> {
    let mut s = Vec::with_capacity(n + 1);
    s.push(BigInt::one());
    for m in 1..=n {
        let v = (1..=m.min(t.order())).fold(BigInt::zero(), |acc, j| acc + t.get(j) * &s[m - j]);
        s.push(v);
    }
    s
}

/// Hook Schur function `S_(n-r, 1^r) = (-1)^r sum_{j=r+1}^{n} t_j S_(n-j)`,
/// with `t_j = 0` past the order.
pub fn hook_schur(t: &CoefficientVector, n: u64, r: u64) -> Result<BigInt> {
    if r > n {
        return Err(Error::IndexOutOfDomain { index: n as i64, min: r as i64 });
    }
    if n == 0 {
        return Ok(BigInt::one());
    }
    let n = n as usize;
    let s = complete_schur(t, n);
    let sum = (r as usize + 1..=n.min(t.order())).fold(BigInt::zero(), |acc, j| acc + t.get(j) * &s[n - j]);
    Ok(if r % 2 == 1 { -sum } else { sum })
}

/// `A_(k)^n` assembled entrywise from hook Schur functions: entry
/// `(p, j)` is `(-1)^(k-1-j) S_(m, 1^(k-1-j))` with `m = n - k + 1 + p`.
/// Needs `n >= k - 1` so every shape is a partition.
pub fn orbit_power_from_hooks(t: &CoefficientVector, n: u64) -> Result<ExactMatrix> {
    let k = t.order() as u64;
    if n + 1 < k {
        return Err(Error::IndexOutOfDomain { index: n as i64, min: k as i64 - 1 });
    }
    let mut out = ExactMatrix::zeros(k as usize, k as usize);
    for p in 0..k {
        let m = n + 1 - k + p;
        for j in 0..k {
            let r = k - 1 - j;
            let s = hook_schur(t, m + r, r)?;
            out.set(p as usize, j as usize, if r % 2 == 1 { -s } else { s });
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sequences::kso_fib;

    fn ones(k: usize) -> CoefficientVector {
        CoefficientVector::ones(k).unwrap()
    }

    fn m(rows: &[&[i64]]) -> ExactMatrix {
        ExactMatrix::from_i64_rows(rows).unwrap()
    }

    #[test]
    fn companion_examples() {
        assert_eq!(companion(&ones(2)), m(&[&[1, 1], &[1, 0]]));
        assert_eq!(companion(&ones(3)), m(&[&[1, 1, 1], &[1, 0, 0], &[0, 1, 0]]));
        assert_eq!(companion(&CoefficientVector::pell(2).unwrap()), m(&[&[2, 1], &[1, 0]]));
        let t = CoefficientVector::from_i64(&[5, 6, 7]).unwrap();
        assert_eq!(orbit_companion(&t), m(&[&[0, 1, 0], &[0, 0, 1], &[7, 6, 5]]));
    }

    #[test]
    fn mat_power_examples() {
        let a = companion(&ones(2));
        assert_eq!(mat_power(&a, 0).unwrap(), ExactMatrix::identity(2));
        assert_eq!(mat_power(&a, 5).unwrap(), m(&[&[8, 5], &[5, 3]]));
        let a3 = companion(&ones(3));
        assert_eq!(mat_power(&a3, 1).unwrap(), a3);
    }

    #[test]
    fn f_tilde_examples() {
        assert_eq!(f_tilde(&ones(2), 1).unwrap(), m(&[&[1, 1], &[1, 0]]));
        assert_eq!(f_tilde(&ones(2), 0).unwrap(), ExactMatrix::identity(2));
        assert_eq!(f_tilde(&ones(3), 2).unwrap(), mat_power(&companion(&ones(3)), 2).unwrap());
    }

    #[test]
    fn f_tilde_is_companion_power_for_general_coefficients() {
        let c = CoefficientVector::from_i64(&[2, -1, 3]).unwrap();
        let a = companion(&c);
        for n in 0..12 {
            assert_eq!(f_tilde(&c, n).unwrap(), mat_power(&a, n as u64).unwrap());
        }
    }

    #[test]
    fn l_tilde_0_examples() {
        assert_eq!(l_tilde_0(2).unwrap(), m(&[&[-1, 2], &[3, -1]]));
        assert_eq!(l_tilde_0(3).unwrap(), m(&[&[-1, -2, 3], &[-1, 4, -1], &[5, 0, -1]]));
        assert_eq!(l_tilde_0(4).unwrap().row(0), m(&[&[-1, -2, -3, 4]]).row(0));
        assert_eq!(l_tilde_0(1), Err(Error::InvalidOrder(1)));
    }

    #[test]
    fn l_tilde_0_matches_boundary_table() {
        for k in 2..=8 {
            assert_eq!(l_tilde_0(k).unwrap(), lucas_boundary_window(k).unwrap());
            assert_eq!(l_tilde(k, 0).unwrap(), l_tilde_0(k).unwrap());
        }
    }

    #[test]
    fn l_tilde_examples() {
        assert_eq!(l_tilde(2, 0).unwrap(), m(&[&[-1, 2], &[3, -1]]));
        let l3 = l_tilde(2, 3).unwrap();
        assert_eq!((l3[(0, 1)].clone(), l3[(1, 1)].clone()), (BigInt::from(4), BigInt::from(3)));
    }

    #[test]
    fn d_window_examples() {
        let w = d_infty_window(&ones(4), -3, 0).unwrap();
        assert_eq!(w.entries, m(&[&[7, 1, 0, -1], &[-1, 6, 0, -1], &[-1, -2, 5, -1], &[-1, -2, -3, 4]]));
        let w = d_infty_window(&ones(2), 0, 1).unwrap();
        assert_eq!(w.entries, m(&[&[-1, 2], &[2, 1]]));
        assert_eq!(w.row(1).unwrap()[1], BigInt::from(1));
        assert!(w.row(2).is_none());
    }

    #[test]
    fn a_window_examples() {
        let w = a_infty_window(&ones(3), -2, 1).unwrap();
        assert_eq!(w.entries, m(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1], &[1, 1, 1]]));
        let w = a_infty_window(&ones(2), 1, 2).unwrap();
        assert_eq!(w.entries, m(&[&[1, 1], &[1, 2]]));
    }

    #[test]
    fn windows_need_invertible_tail_to_go_up() {
        let t = CoefficientVector::from_i64(&[1, 0]).unwrap();
        assert!(d_infty_window(&t, 0, 4).is_ok());
        assert!(matches!(d_infty_window(&t, -1, 0), Err(Error::NonInvertibleRecurrence(_))));
        let t = CoefficientVector::from_i64(&[1, 2]).unwrap();
        assert!(matches!(a_infty_window(&t, -3, 0), Err(Error::NonInvertibleRecurrence(_))));
    }

    #[test]
    fn orbit_rows_follow_the_action() {
        let t = CoefficientVector::from_i64(&[2, -1, 1]).unwrap();
        let a = orbit_companion(&t);
        for w in [d_infty_window(&t, -6, 8).unwrap(), a_infty_window(&t, -6, 8).unwrap()] {
            for n in w.row_lo..w.row_hi {
                assert_eq!(a.vec_mul(w.row(n).unwrap()).unwrap(), w.row(n + 1).unwrap());
            }
        }
    }

    #[test]
    fn hook_schur_examples() {
        let t = ones(3);
        assert_eq!(hook_schur(&t, 1, 0).unwrap(), BigInt::one());
        assert_eq!(hook_schur(&t, 4, 0).unwrap(), kso_fib(&t, 1, 4).unwrap());
        assert_eq!(hook_schur(&t, 3, 2).unwrap(), BigInt::one());
        assert_eq!(hook_schur(&t, 0, 0).unwrap(), BigInt::one());
        assert!(matches!(hook_schur(&t, 2, 3), Err(Error::IndexOutOfDomain { .. })));
        // S_(1,1) = -t_2 S_(0) = -1
        assert_eq!(hook_schur(&t, 2, 1).unwrap(), BigInt::from(-1));
    }

    #[test]
    fn hook_first_row_is_first_fibonacci_branch() {
        for k in 2..=5 {
            for n in 0..20 {
                assert_eq!(hook_schur(&ones(k), n, 0).unwrap(), kso_fib(&ones(k), 1, n as i64).unwrap());
            }
        }
    }

    #[test]
    fn hook_display_sign_convention_matches_orbit_powers() {
        let presets = [
            CoefficientVector::from_i64(&[1, 1, 1]).unwrap(),
            CoefficientVector::from_i64(&[2, -3, 5]).unwrap(),
            CoefficientVector::from_i64(&[1, 2, 3, 4]).unwrap(),
        ];
        for t in &presets {
            let a = orbit_companion(t);
            for n in t.order() as u64 - 1..12 {
                assert_eq!(orbit_power_from_hooks(t, n).unwrap(), mat_power(&a, n).unwrap(), "t={t} n={n}");
            }
        }
    }
}
