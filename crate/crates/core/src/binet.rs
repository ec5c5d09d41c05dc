//! Floating-point Binet evaluation.
//!
//! With `lambda_1..lambda_k` the (distinct) roots of
//! `P(x) = x^k - t_1 x^(k-1) - ... - t_k`,
//!
//! * `f^k_{k,n} = t_k sum_i lambda_i^(n+k-2) / P'(lambda_i)` (power-sum form),
//! * `f^k_{k,n} = det(W_n) / det(V)` where row `i` of `V` is
//!   `(lambda_i^(k-1), ..., lambda_i, 1)` and `W_n` replaces the last column
//!   by `lambda_i^(n+k-1)` (Vandermonde form),
//!
//! and Lucas branches follow from [`lucas_kth_fib_expansion`].

use std::f64::consts::PI;

use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::sequences::lucas_kth_fib_expansion;
use crate::{CoefficientVector, Error, Result};

pub const MAX_ITERATIONS: usize = 200;
pub const STEP_TOLERANCE: f64 = 1e-14;
pub const DEFAULT_INDEX_CAP: i64 = 200;

const EPS: f64 = f64::EPSILON;

/// Roots of the core polynomial.
#[derive(Debug, Clone, PartialEq)]
pub struct RootSet {
    pub k: usize,
    pub roots: Vec<Complex64>,
    /// `max |P(lambda_i)|`.
    pub residual_bound: f64,
    /// Smallest pairwise distance between the computed roots.
    pub separation: f64,
    /// Decided exactly from `gcd(P, P')`, not from `separation`.
    pub distinct: bool,
}

impl RootSet {
    pub fn require_distinct(&self) -> Result<()> {
        if self.distinct {
            Ok(())
        } else {
            Err(Error::RepeatedRoots { separation: self.separation })
        }
    }
}

/// Approximation with a propagated absolute error estimate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ApproxValue {
    pub value: f64,
    pub abs_error_estimate: f64,
    /// Imaginary part left after summing conjugate pairs.
    pub imag_residue: f64,
}

/// Monic coefficients, highest degree first: `[1, -t_1, ..., -t_k]`.
fn monic(t: &[f64]) -> Vec<f64> {
    std::iter::once(1.0).chain(t.iter().map(|v| -v)).collect()
}

/// `(p(z), p'(z), p''(z))` by Horner.
fn horner(a: &[f64], z: Complex64) -> (Complex64, Complex64, Complex64) {
    let zero = Complex64::new(0.0, 0.0);
    let (mut p, mut d1, mut d2) = (zero, zero, zero);
    for &c in a {
        d2 = d2 * z + d1 * 2.0;
        d1 = d1 * z + p;
        p = p * z + c;
    }
    (p, d1, d2)
}

/// Whether `P` is squarefree, i.e. `gcd(P, P')` is constant over the rationals.
pub fn has_distinct_roots(t: &CoefficientVector) -> bool {
    // highest degree first
    let p: Vec<BigRational> = std::iter::once(BigRational::from_integer(1.into()))
        .chain(t.values().iter().map(|v| BigRational::from_integer(-v)))
        .collect();
    let deg = p.len() - 1;
    let dp: Vec<BigRational> =
        p[..deg].iter().enumerate().map(|(j, c)| c * BigRational::from_integer((deg - j).into())).collect();
    poly_gcd_degree(p, dp) == 0
}

fn trim(mut a: Vec<BigRational>) -> Vec<BigRational> {
    while a.len() > 1 && a[0].is_zero() {
        a.remove(0);
    }
    a
}

/// Degree of `gcd(a, b)` by the Euclidean algorithm (coefficients highest first).
fn poly_gcd_degree(a: Vec<BigRational>, b: Vec<BigRational>) -> usize {
    let (mut a, mut b) = (trim(a), trim(b));
    while !(b.len() == 1 && b[0].is_zero()) {
        // a mod b
        let mut r = a.clone();
        while r.len() >= b.len() && !(r.len() == 1 && r[0].is_zero()) {
            let f = &r[0] / &b[0];
            for (j, bj) in b.iter().enumerate() {
                let v = &r[j] - &f * bj;
                r[j] = v;
            }
            r.remove(0);
            if r.is_empty() {
                r.push(BigRational::zero());
            }
            r = trim(r);
            if r.len() < b.len() {
                break;
            }
        }
        a = b;
        b = r;
    }
    if a.len() == 1 && !a[0].abs().is_zero() {
        0
    } else {
        a.len() - 1
    }
}

/// Aberth–Ehrlich simultaneous iteration for the roots of `P`.
pub fn core_roots(t: &CoefficientVector) -> Result<RootSet> {
    let k = t.order();
    let tf = t.to_f64();
    if tf.last().is_some_and(|&v| v == 0.0) {
        // zero is a root; Binet weights with negative powers are undefined
        return Err(Error::NonInvertibleRecurrence("t_k = 0".into()));
    }
    let a = monic(&tf);
    let max_coef = tf.iter().fold(1.0f64, |m, v| m.max(v.abs()));
    let radius = 1.0 + tf.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    let mut z: Vec<Complex64> =
        (0..k).map(|j| Complex64::from_polar(radius, 2.0 * PI * j as f64 / k as f64 + 0.4)).collect();

    let mut converged = false;
    for _ in 0..MAX_ITERATIONS {
        let mut max_step = 0.0f64;
        for i in 0..k {
            let (p, dp, _) = horner(&a, z[i]);
            if p.norm() == 0.0 {
                continue;
            }
            let ratio = p / dp;
            let repulsion: Complex64 = (0..k).filter(|&j| j != i).map(|j| (z[i] - z[j]).inv()).sum();
            let step = ratio / (Complex64::new(1.0, 0.0) - ratio * repulsion);
            z[i] -= step;
            max_step = max_step.max(step.norm() / z[i].norm().max(1.0));
        }
        if max_step < STEP_TOLERANCE {
            converged = true;
            break;
        }
    }
    let residual_bound = z.iter().map(|&r| horner(&a, r).0.norm()).fold(0.0, f64::max);
    if !converged || residual_bound > 1e-12 * (1.0 + max_coef) {
        return Err(Error::NoConvergence { iterations: MAX_ITERATIONS });
    }
    let mut separation = f64::INFINITY;
    for i in 0..k {
        for j in i + 1..k {
            separation = separation.min((z[i] - z[j]).norm());
        }
    }
    // real roots first by descending real part, then conjugate pairs
    z.sort_by(|x, y| y.re.total_cmp(&x.re).then(y.im.total_cmp(&x.im)));
    Ok(RootSet { k, roots: z, residual_bound, separation, distinct: has_distinct_roots(t) })
}

/// Determinant by LU with partial pivoting.
fn det(mut m: Vec<Vec<Complex64>>) -> Complex64 {
    let n = m.len();
    let mut d = Complex64::new(1.0, 0.0);
    for col in 0..n {
        let pivot = (col..n).max_by(|&a, &b| m[a][col].norm().total_cmp(&m[b][col].norm())).unwrap_or(col);
        if m[pivot][col].norm() == 0.0 {
            return Complex64::new(0.0, 0.0);
        }
        if pivot != col {
            m.swap(pivot, col);
            d = -d;
        }
        let p = m[col][col];
        d *= p;
        let (upper, lower) = m.split_at_mut(col + 1);
        let pivot_row = &upper[col];
        for row in lower.iter_mut() {
            let f = row[col] / p;
            if f.norm() == 0.0 {
                continue;
            }
            for (x, &v) in row[col..].iter_mut().zip(&pivot_row[col..]) {
                *x -= f * v;
            }
        }
    }
    d
}

fn hadamard(m: &[Vec<Complex64>]) -> f64 {
    m.iter().map(|row| row.iter().map(|v| v.norm_sqr()).sum::<f64>().sqrt()).product()
}

/// Binet and Vandermonde evaluators sharing one root computation.
#[derive(Debug, Clone)]
pub struct BinetEngine {
    t: CoefficientVector,
    tk: f64,
    roots: RootSet,
    /// `(P'(lambda_i), P''(lambda_i))`.
    derivs: Vec<(Complex64, Complex64)>,
    vandermonde: Vec<Vec<Complex64>>,
    det_v: Complex64,
    cap: i64,
}

impl BinetEngine {
    pub fn new(t: &CoefficientVector) -> Result<Self> {
        let roots = core_roots(t)?;
        roots.require_distinct()?;
        let k = t.order();
        let a = monic(&t.to_f64());
        let derivs = roots
            .roots
            .iter()
            .map(|&r| {
                let (_, d1, d2) = horner(&a, r);
                (d1, d2)
            })
            .collect();
        let vandermonde: Vec<Vec<Complex64>> =
            roots.roots.iter().map(|&r| (0..k).map(|p| r.powi((k - 1 - p) as i32)).collect()).collect();
        let det_v = det(vandermonde.clone());
        if det_v.norm() < 1e-13 * hadamard(&vandermonde) {
            return Err(Error::IllConditioned(format!("|det V| = {:e}", det_v.norm())));
        }
        Ok(Self { t: t.clone(), tk: t.to_f64()[k - 1], roots, derivs, vandermonde, det_v, cap: DEFAULT_INDEX_CAP })
    }

    pub fn ones(k: usize) -> Result<Self> {
        Self::new(&CoefficientVector::ones(k)?)
    }

    /// Largest `|n|` accepted before [`Error::RangeExceeded`].
    pub fn with_cap(mut self, cap: i64) -> Self {
        self.cap = cap;
        self
    }

    pub fn roots(&self) -> &RootSet {
        &self.roots
    }

    pub fn order(&self) -> usize {
        self.t.order()
    }

    fn check_range(&self, n: i64) -> Result<()> {
        if n.abs() > self.cap {
            Err(Error::RangeExceeded { n, cap: self.cap })
        } else {
            Ok(())
        }
    }

    /// Error contributed by root inaccuracy to `sum_i c_i(lambda_i)` where
    /// `c_i` has logarithmic derivative `dlog_i`.
    fn root_error(&self, i: usize, term: f64, dlog: f64) -> f64 {
        let delta = self.roots.residual_bound.max(EPS) / self.derivs[i].0.norm();
        term * delta * dlog
    }

    /// `t_k sum_i lambda_i^e / P'(lambda_i)` with `e = n + k - 2`.
    fn power_sum(&self, n: i64) -> (Complex64, f64) {
        let e = n + self.order() as i64 - 2;
        let mut sum = Complex64::new(0.0, 0.0);
        let mut err = 0.0;
        for (i, &r) in self.roots.roots.iter().enumerate() {
            let (d1, d2) = self.derivs[i];
            let term = r.powi(e as i32) / d1 * self.tk;
            sum += term;
            let mag = term.norm();
            let dlog = e.unsigned_abs() as f64 / r.norm() + (d2 / d1).norm();
            err += mag * (e.unsigned_abs() as f64 + 8.0) * EPS + self.root_error(i, mag, dlog);
        }
        (sum, 4.0 * err)
    }

    /// `det(W_n) / det(V)`.
    fn vandermonde_ratio(&self, n: i64) -> (Complex64, f64) {
        let k = self.order();
        let e = n + k as i64 - 1;
        let mut w = self.vandermonde.clone();
        let mut root_err = 0.0;
        for (i, row) in w.iter_mut().enumerate() {
            let r = self.roots.roots[i];
            row[k - 1] = r.powi(e as i32);
            let (d1, d2) = self.derivs[i];
            let term = (r.powi((e - 1) as i32) / d1 * self.tk).norm();
            let dlog = e.unsigned_abs() as f64 / r.norm() + (d2 / d1).norm();
            root_err += self.root_error(i, term, dlog);
        }
        let num = det(w.clone());
        let ratio = num / self.det_v;
        let rounding = 8.0 * (k * k) as f64 * EPS * (hadamard(&w) + ratio.norm() * hadamard(&self.vandermonde))
            / self.det_v.norm();
        (ratio, rounding + 4.0 * root_err)
    }

    fn finish(sum: Complex64, est: f64) -> Result<ApproxValue> {
        let imag = sum.im.abs();
        if imag > 1e-8 * sum.re.abs() + 1e-12 && imag > est {
            return Err(Error::IllConditioned(format!("imaginary residue {imag:e} for value {:e}", sum.re)));
        }
        Ok(ApproxValue { value: sum.re, abs_error_estimate: est, imag_residue: imag })
    }

    /// `f^k_{k,n}` by the power-sum Binet form.
    pub fn fib(&self, n: i64) -> Result<ApproxValue> {
        self.check_range(n)?;
        let (s, e) = self.power_sum(n);
        Self::finish(s, e)
    }

    /// `f^k_{k,n}` by the Vandermonde determinant ratio.
    pub fn vandermonde_fib(&self, n: i64) -> Result<ApproxValue> {
        self.check_range(n)?;
        let (s, e) = self.vandermonde_ratio(n);
        Self::finish(s, e)
    }

    fn lucas_with(&self, i: usize, n: i64, atom: impl Fn(i64) -> (Complex64, f64)) -> Result<ApproxValue> {
        if !self.t.is_all_ones() {
            return Err(Error::UnsupportedCoefficients);
        }
        self.check_range(n)?;
        let mut sum = Complex64::new(0.0, 0.0);
        let mut est = 0.0;
        for (c, idx) in lucas_kth_fib_expansion(self.order(), i, n)? {
            let (v, e) = atom(idx);
            sum += v * c as f64;
            est += e * c.unsigned_abs() as f64;
        }
        Self::finish(sum, est)
    }

    /// `l^i_{k,n}` from power-sum atoms (all-ones coefficients only).
    pub fn lucas(&self, i: usize, n: i64) -> Result<ApproxValue> {
        self.lucas_with(i, n, |idx| self.power_sum(idx))
    }

    /// `l^i_{k,n}` from Vandermonde ratios (all-ones coefficients only).
    pub fn vandermonde_lucas(&self, i: usize, n: i64) -> Result<ApproxValue> {
        self.lucas_with(i, n, |idx| self.vandermonde_ratio(idx))
    }
}

pub fn binet_fib(k: usize, n: i64) -> Result<ApproxValue> {
    BinetEngine::ones(k)?.fib(n)
}

pub fn vandermonde_fib(k: usize, n: i64) -> Result<ApproxValue> {
    BinetEngine::ones(k)?.vandermonde_fib(n)
}

pub fn binet_lucas(k: usize, i: usize, n: i64) -> Result<ApproxValue> {
    BinetEngine::ones(k)?.lucas(i, n)
}

pub fn vandermonde_lucas(k: usize, i: usize, n: i64) -> Result<ApproxValue> {
    BinetEngine::ones(k)?.vandermonde_lucas(i, n)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol * b.abs().max(1.0)
    }

    fn real_roots(rs: &RootSet) -> Vec<f64> {
        rs.roots.iter().filter(|r| r.im.abs() < 1e-12).map(|r| r.re).collect()
    }

    /// Largest real root of `x^k - sum t_j x^(k-j)` on `[1, 1 + max t]`.
    fn bisect(t: &[f64]) -> f64 {
        let p = |x: f64| {
            t.iter().enumerate().fold(x.powi(t.len() as i32), |acc, (j, c)| acc - c * x.powi((t.len() - 1 - j) as i32))
        };
        let (mut lo, mut hi) = (1.0, 1.0 + t.iter().cloned().fold(0.0, f64::max));
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if p(mid) > 0.0 {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        lo
    }

    #[test]
    fn golden_ratio_pair() {
        let rs = core_roots(&CoefficientVector::ones(2).unwrap()).unwrap();
        let mut r = real_roots(&rs);
        r.sort_by(f64::total_cmp);
        assert!(close(r[0], (1.0 - 5f64.sqrt()) / 2.0, 1e-14));
        assert!(close(r[1], (1.0 + 5f64.sqrt()) / 2.0, 1e-14));
        assert!(rs.distinct);
    }

    #[test]
    fn tribonacci_constant() {
        let rs = core_roots(&CoefficientVector::ones(3).unwrap()).unwrap();
        let r = real_roots(&rs);
        assert_eq!(r.len(), 1);
        assert!(close(r[0], bisect(&[1.0, 1.0, 1.0]), 1e-13));
        assert!(close(r[0], 1.8392867552, 1e-10));
        let complex: Vec<_> = rs.roots.iter().filter(|z| z.im.abs() > 1e-6).collect();
        assert_eq!(complex.len(), 2);
        assert!((complex[0].conj() - complex[1]).norm() < 1e-12);
    }

    #[test]
    fn pell_roots() {
        let rs = core_roots(&CoefficientVector::pell(2).unwrap()).unwrap();
        let mut r = real_roots(&rs);
        r.sort_by(f64::total_cmp);
        assert!(close(r[0], 1.0 - 2f64.sqrt(), 1e-14));
        assert!(close(r[1], 1.0 + 2f64.sqrt(), 1e-14));
    }

    #[test]
    fn repeated_roots_are_refused() {
        // x^2 - 2x + 1
        let t = CoefficientVector::from_i64(&[2, -1]).unwrap();
        let rs = core_roots(&t).unwrap();
        assert!(!rs.distinct);
        assert!(!has_distinct_roots(&CoefficientVector::from_i64(&[3, -3, 1]).unwrap()));
        assert!(!has_distinct_roots(&CoefficientVector::from_i64(&[0, 2, 0, -1]).unwrap()));
        assert!(has_distinct_roots(&CoefficientVector::from_i64(&[0, 1, 0, 1]).unwrap()));
        assert!(has_distinct_roots(&CoefficientVector::ones(6).unwrap()));
        assert!(matches!(BinetEngine::new(&t), Err(Error::RepeatedRoots { .. })));
    }

    #[test]
    fn vieta_relations() {
        for t in [
            CoefficientVector::ones(5).unwrap(),
            CoefficientVector::from_i64(&[1, 2, 3, 4]).unwrap(),
            CoefficientVector::pell(3).unwrap(),
        ] {
            let rs = core_roots(&t).unwrap();
            let k = t.order();
            let tf = t.to_f64();
            let sum: Complex64 = rs.roots.iter().sum();
            let prod: Complex64 = rs.roots.iter().product();
            let sign = if k % 2 == 1 { 1.0 } else { -1.0 };
            assert!((sum - tf[0]).norm() < 1e-10);
            assert!((prod - sign * tf[k - 1]).norm() < 1e-10);
        }
    }

    #[test]
    fn binet_examples() {
        assert!(close(binet_fib(2, 5).unwrap().value, 5.0, 1e-12));
        assert!(binet_fib(2, 0).unwrap().value.abs() < 1e-12);
        assert!(close(binet_fib(3, 10).unwrap().value, 149.0, 1e-10));
        assert!(close(vandermonde_fib(2, 5).unwrap().value, 5.0, 1e-12));
        assert!(close(vandermonde_fib(2, 1).unwrap().value, 1.0, 1e-12));
        // f^4_{4,12} = 773
        assert!(close(vandermonde_fib(4, 12).unwrap().value, 773.0, 1e-9));
    }

    #[test]
    fn binet_lucas_examples() {
        assert!(close(binet_lucas(2, 2, 4).unwrap().value, 7.0, 1e-12));
        assert!(close(binet_lucas(3, 2, 3).unwrap().value, 4.0, 1e-12));
        assert!(close(binet_lucas(2, 2, 0).unwrap().value, 2.0, 1e-12));
        assert!(close(vandermonde_lucas(2, 2, 3).unwrap().value, 4.0, 1e-12));
        // l^1_{2,1} = l^2_{2,0} = 2
        assert!(close(vandermonde_lucas(2, 1, 1).unwrap().value, 2.0, 1e-12));
        assert!(close(vandermonde_lucas(3, 3, 0).unwrap().value, 3.0, 1e-12));
    }

    #[test]
    fn range_and_coefficient_guards() {
        assert_eq!(binet_fib(2, 201), Err(Error::RangeExceeded { n: 201, cap: 200 }));
        let e = BinetEngine::ones(2).unwrap().with_cap(10);
        assert!(matches!(e.fib(11), Err(Error::RangeExceeded { .. })));
        let pell = BinetEngine::new(&CoefficientVector::pell(2).unwrap()).unwrap();
        assert_eq!(pell.lucas(2, 3), Err(Error::UnsupportedCoefficients));
        // Pell numbers 0, 1, 2, 5, 12, 29
        assert!(close(pell.fib(5).unwrap().value, 29.0, 1e-12));
        assert!(close(pell.vandermonde_fib(5).unwrap().value, 29.0, 1e-12));
        assert_eq!(binet_lucas(3, 4, 1), Err(Error::InvalidBranch { branch: 4, order: 3 }));
    }

    #[test]
    fn determinant_of_known_matrix() {
        let c = |re: f64| Complex64::new(re, 0.0);
        let m = vec![vec![c(0.0), c(2.0), c(1.0)], vec![c(1.0), c(1.0), c(0.0)], vec![c(3.0), c(0.0), c(4.0)]];
        assert!((det(m) - c(-11.0)).norm() < 1e-12);
    }
}
