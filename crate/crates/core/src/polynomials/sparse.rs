use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Pow, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::{CoefficientVector, Error, Result};

/// Exponent vector ordered by total degree, then lexicographically.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
struct Monomial(Vec<u32>);

impl Monomial {
    fn degree(&self) -> u64 {
        self.0.iter().map(|&e| e as u64).sum()
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Polynomial in `t_1..t_k` with integer coefficients; zero coefficients
/// are never stored.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SparsePolynomial {
    k: usize,
    terms: BTreeMap<Monomial, BigInt>,
}

impl SparsePolynomial {
    pub fn zero(k: usize) -> Self {
        Self { k, terms: BTreeMap::new() }
    }

    pub fn constant(k: usize, c: impl Into<BigInt>) -> Self {
        let mut p = Self::zero(k);
        p.add_term(vec![0; k], c.into());
        p
    }

    /// `t_j` with 1-based `j`.
    pub fn variable(k: usize, j: usize) -> Self {
        let mut exp = vec![0; k];
        exp[j - 1] = 1;
        let mut p = Self::zero(k);
        p.add_term(exp, BigInt::one());
        p
    }

    /// Builds from `(exponents, coefficient)` pairs, merging duplicates.
    pub fn from_terms(k: usize, terms: impl IntoIterator<Item = (Vec<u32>, BigInt)>) -> Result<Self> {
        let mut p = Self::zero(k);
        for (exp, c) in terms {
            if exp.len() != k {
                return Err(Error::DimensionMismatch(format!("exponent of length {} in {k} variables", exp.len())));
            }
            p.add_term(exp, c);
        }
        Ok(p)
    }

    pub fn nvars(&self) -> usize {
        self.k
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Coefficient of `t^exp` (zero when absent).
    pub fn coefficient(&self, exp: &[u32]) -> BigInt {
        self.terms.get(&Monomial(exp.to_vec())).cloned().unwrap_or_default()
    }

    /// Terms in descending graded-lex order.
    pub fn terms(&self) -> impl Iterator<Item = (&[u32], &BigInt)> {
        self.terms.iter().rev().map(|(m, c)| (m.0.as_slice(), c))
    }

    pub fn add_term(&mut self, exp: Vec<u32>, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let key = Monomial(exp);
        let slot = self.terms.entry(key.clone()).or_insert_with(BigInt::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn add_assign(&mut self, other: &SparsePolynomial) {
        debug_assert_eq!(self.k, other.k);
        for (m, c) in &other.terms {
            self.add_term(m.0.clone(), c.clone());
        }
    }

    pub fn sub(&self, other: &SparsePolynomial) -> SparsePolynomial {
        let mut out = self.clone();
        out.add_assign(&other.scale(&BigInt::from(-1)));
        out
    }

    pub fn scale(&self, s: &BigInt) -> SparsePolynomial {
        if s.is_zero() {
            return Self::zero(self.k);
        }
        Self { k: self.k, terms: self.terms.iter().map(|(m, c)| (m.clone(), c * s)).collect() }
    }

    /// `t_j * self` (1-based `j`).
    pub fn mul_var(&self, j: usize) -> SparsePolynomial {
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mut e = m.0.clone();
                e[j - 1] += 1;
                (Monomial(e), c.clone())
            })
            .collect();
        Self { k: self.k, terms }
    }

    /// Exact value at `t`.
    pub fn eval(&self, t: &CoefficientVector) -> Result<BigInt> {
        if t.order() != self.k {
            return Err(Error::DimensionMismatch(format!("{} values for {} variables", t.order(), self.k)));
        }
        Ok(self
            .terms
            .iter()
            .map(|(m, c)| {
                m.0.iter()
                    .zip(t.values())
                    .fold(c.clone(), |acc, (&e, v)| if e == 0 { acc } else { acc * Pow::pow(v, e) })
            })
            .sum())
    }

    pub fn to_json(&self) -> PolynomialJson {
        PolynomialJson {
            k: self.k,
            terms: self.terms().map(|(e, c)| TermJson { exp: e.to_vec(), coef: c.to_string() }).collect(),
        }
    }

    pub fn from_json(json: &PolynomialJson) -> Result<Self> {
        let terms = json
            .terms
            .iter()
            .map(|t| {
                t.coef
                    .parse::<BigInt>()
                    .map(|c| (t.exp.clone(), c))
                    .map_err(|e| Error::DimensionMismatch(format!("bad coefficient `{}`: {e}", t.coef)))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_terms(json.k, terms)
    }
}

/// Wire form: `{"k": int, "terms": [{"exp": [..], "coef": "decimal"}]}`,
/// terms in descending graded-lex order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolynomialJson {
    pub k: usize,
    pub terms: Vec<TermJson>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub exp: Vec<u32>,
    pub coef: String,
}

/// `4*t1^2*t2 - t3 + 2`.
impl fmt::Display for SparsePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (n, (exp, c)) in self.terms().enumerate() {
            let mag = c.abs();
            match (n, c.is_negative()) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let vars: Vec<String> = exp
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(j, &e)| if e == 1 { format!("t{}", j + 1) } else { format!("t{}^{e}", j + 1) })
                .collect();
            if vars.is_empty() {
                write!(f, "{mag}")?;
            } else {
                if !mag.is_one() {
                    write!(f, "{mag}*")?;
                }
                f.write_str(&vars.join("*"))?;
            }
        }
        Ok(())
    }
}
