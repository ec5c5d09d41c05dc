//! Generalized Fibonacci polynomials `F_{k,n}(t)` and Lucas polynomials
//! `G_{k,n}(t)` in the variables `t_1..t_k`, by recursion and by
//! weighted partition sums.

mod sparse;

pub use sparse::{PolynomialJson, SparsePolynomial, TermJson};

use std::collections::VecDeque;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::partitions::{enumerate_partitions, multinomial};
use crate::{CoefficientVector, Error, Result};

fn check_order(k: usize) -> Result<()> {
    if k < 2 {
        Err(Error::InvalidOrder(k))
    } else {
        Ok(())
    }
}

/// `F_{k,n}(t)`: `F_0 = 1`, `F_n = t_1 F_(n-1) + ... + t_k F_(n-k)`, zero
/// for negative `n`.
pub fn fib_poly(k: usize, n: i64) -> Result<SparsePolynomial> {
    check_order(k)?;
    if n < 0 {
        return Ok(SparsePolynomial::zero(k));
    }
    // window[0] = F_(m-1), window[1] = F_(m-2), ...
    let mut window: VecDeque<SparsePolynomial> = VecDeque::with_capacity(k);
    window.push_back(SparsePolynomial::constant(k, 1));
    for _ in 0..n {
        let mut next = SparsePolynomial::zero(k);
        for (j, prev) in window.iter().enumerate() {
            next.add_assign(&prev.mul_var(j + 1));
        }
        window.push_front(next);
        window.truncate(k);
    }
    Ok(window.pop_front().expect("window is never empty"))
}

/// `G_{k,n}(t)`, the power sums of the roots of the core polynomial:
/// `G_0 = k`, and for `n >= 1`
/// `G_n = t_1 G_(n-1) + ... + t_(n-1) G_1 + n t_n` while `n <= k`,
/// `G_n = t_1 G_(n-1) + ... + t_k G_(n-k)` afterwards.
pub fn lucas_poly(k: usize, n: i64) -> Result<SparsePolynomial> {
    check_order(k)?;
    if n < 0 {
        return Ok(SparsePolynomial::zero(k));
    }
    let mut window: VecDeque<SparsePolynomial> = VecDeque::with_capacity(k);
    window.push_back(SparsePolynomial::constant(k, k as i64));
    for m in 1..=n as usize {
        let mut next = SparsePolynomial::zero(k);
        // window[j-1] = G_(m-j); G_0 enters only through the n t_n term
        for (j, prev) in (1..m).zip(window.iter()) {
            next.add_assign(&prev.mul_var(j));
        }
        if m <= k {
            next.add_assign(&SparsePolynomial::variable(k, m).scale(&BigInt::from(m)));
        }
        window.push_front(next);
        window.truncate(k);
    }
    Ok(window.pop_front().expect("window is never empty"))
}

/// `F_{k,n}(t) = sum_{a |- n} multinomial(a) t^a`.
pub fn fib_poly_partition(k: usize, n: i64) -> Result<SparsePolynomial> {
    check_order(k)?;
    SparsePolynomial::from_terms(
        k,
        enumerate_partitions(n, k).into_iter().map(|a| {
            let c = multinomial(&a);
            (a.parts().to_vec(), c)
        }),
    )
}

/// `G_{k,n}(t) = sum_{a |- n} (n / |a|) multinomial(a) t^a` for `n >= 1`;
/// `G_{k,0} = k`. Each weighted coefficient is formed as an exact rational
/// and must be integral.
pub fn lucas_poly_partition(k: usize, n: i64) -> Result<SparsePolynomial> {
    check_order(k)?;
    if n <= 0 {
        return lucas_poly(k, n);
    }
    let mut p = SparsePolynomial::zero(k);
    for a in enumerate_partitions(n, k) {
        let c = BigRational::new(BigInt::from(n), BigInt::from(a.size())) * BigRational::from(multinomial(&a));
        if !c.is_integer() {
            return Err(Error::NonIntegralCoefficient(format!("{c} at {:?}", a.parts())));
        }
        p.add_term(a.parts().to_vec(), c.to_integer());
    }
    Ok(p)
}

/// `F_{2,n}(t) = sum_{j=0}^{ceil(n/2)} (-1)^j C(n-j, j) t_1^(n-2j) (-t_2)^j`,
/// with `C(a, b) = 0` for `a < b`.
pub fn fib2_combinatorial(n: i64) -> Result<SparsePolynomial> {
    let mut p = SparsePolynomial::zero(2);
    if n < 0 {
        return Ok(p);
    }
    for j in 0..=(n + 1) / 2 {
        if n - j < j {
            continue;
        }
        let c = (0..j).fold(BigInt::from(1), |acc, s| acc * BigInt::from(n - j - s) / BigInt::from(s + 1));
        // (-1)^j from the sum cancels (-1)^j from (-t_2)^j
        p.add_term(vec![(n - 2 * j) as u32, j as u32], c);
    }
    Ok(p)
}

pub fn eval_poly(p: &SparsePolynomial, t: &CoefficientVector) -> Result<BigInt> {
    p.eval(t)
}

/// `G_{k,n} - k F_{k,n} + sum_{j=2}^{k} (k-j+1) t_(j-1) F_{k,n+1-j}`, which
/// vanishes identically.
pub fn lucas_fib_poly_residual(k: usize, n: i64) -> Result<SparsePolynomial> {
    let mut r = lucas_poly(k, n)?.sub(&fib_poly(k, n)?.scale(&BigInt::from(k)));
    for j in 2..=k {
        let f = fib_poly(k, n + 1 - j as i64)?;
        r.add_assign(&f.mul_var(j - 1).scale(&BigInt::from(k - j + 1)));
    }
    Ok(r)
}
