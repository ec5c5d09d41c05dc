//! Registry of the relations between the families, checked exactly over
//! parameter grids.
//!
//! Every side is evaluated through the recurrence (or the symbolic
//! recurrence for polynomials), so a failure points at the formula and not
//! at an alternative backend. Matrix and polynomial identities compare
//! flattened entry vectors.

use std::cell::Cell;
use std::time::Instant;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Serialize, Serializer};

use crate::matrices::{f_tilde, l_tilde, l_tilde_0, lucas_boundary_window, mat_power, orbit_companion};
use crate::partitions::{
    fib_by_last_part_weight, fib_combinatorial, fib_partition_sum, last_part_weighted_sum, lucas2_binomial,
    lucas_by_last_part_weight, lucas_by_partition_counts, lucas_by_weighted_partitions, lucas_partition_sum,
};
use crate::polynomials::{fib_poly, lucas_poly, SparsePolynomial};
use crate::sequences::lucas_kth_fib_expansion;
use crate::{CoefficientVector, Error, ExactMatrix, Result, SequenceSpec};

/// Inclusive integer range; empty when `lo > hi`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Span {
    pub lo: i64,
    pub hi: i64,
}

impl Span {
    pub const fn new(lo: i64, hi: i64) -> Self {
        Span { lo, hi }
    }

    pub const fn point(v: i64) -> Self {
        Span { lo: v, hi: v }
    }

    pub fn is_empty(&self) -> bool {
        self.lo > self.hi
    }

    pub fn contains_span(&self, other: &Span) -> bool {
        other.is_empty() || (self.lo <= other.lo && other.hi <= self.hi)
    }

    pub fn iter(&self) -> impl Iterator<Item = i64> {
        self.lo..=self.hi
    }

    fn cap(self, hi: Option<i64>) -> Span {
        match hi {
            Some(h) => Span::new(self.lo, self.hi.min(h)),
            None => self,
        }
    }
}

impl Serialize for Span {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        [self.lo, self.hi].serialize(s)
    }
}

/// Which branch indices an identity ranges over.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Branches {
    /// The identity has no branch parameter.
    Unused,
    /// `1 <= i <= k`.
    All,
    /// `1 <= i <= k - 1`.
    BelowOrder,
}

impl Branches {
    fn upper(self, k: i64) -> i64 {
        match self {
            Branches::Unused => 0,
            Branches::All => k,
            Branches::BelowOrder => k - 1,
        }
    }
}

/// One grid point. Unused parameters are `None`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Params {
    pub k: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub i: Option<usize>,
    pub n: i64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub m: Option<i64>,
}

impl Params {
    pub fn new(k: usize, i: Option<usize>, n: i64, m: Option<i64>) -> Self {
        Params { k, i, n, m }
    }

    fn branch(&self) -> usize {
        self.i.unwrap_or(self.k)
    }

    fn shift(&self) -> i64 {
        self.m.unwrap_or(0)
    }

    fn sort_key(&self) -> (usize, i64, usize, i64) {
        (self.k, self.n, self.i.unwrap_or(0), self.m.unwrap_or(0))
    }
}

/// Default parameter grid of an identity, plus an optional side condition
/// tying the parameters together.
#[derive(Debug, Clone, Copy)]
pub struct Domain {
    pub k: Span,
    pub branches: Branches,
    pub n: Span,
    pub m: Option<Span>,
    /// Human-readable side condition, empty if none.
    pub condition: &'static str,
    filter: Option<fn(&Params) -> bool>,
}

impl Domain {
    const fn new(k: Span, branches: Branches, n: Span) -> Self {
        Domain { k, branches, n, m: None, condition: "", filter: None }
    }

    const fn with_m(mut self, m: Span) -> Self {
        self.m = Some(m);
        self
    }

    const fn when(mut self, condition: &'static str, filter: fn(&Params) -> bool) -> Self {
        self.condition = condition;
        self.filter = Some(filter);
        self
    }

    fn admits(&self, p: &Params) -> bool {
        self.filter.map_or(true, |f| f(p))
    }
}

/// Evaluation context; records whether any value came from the backward
/// extension.
#[derive(Debug, Default)]
pub struct EvalContext {
    extension_used: Cell<bool>,
}

impl EvalContext {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn extension_used(&self) -> bool {
        self.extension_used.get()
    }

    fn value(&self, spec: Result<SequenceSpec>, n: i64) -> Result<BigInt> {
        let spec = spec?;
        if spec.is_extended(n) {
            self.extension_used.set(true);
        }
        spec.value(n)
    }

    /// `f^i_{k,n}` with all-ones coefficients.
    pub fn fib(&self, k: usize, i: usize, n: i64) -> Result<BigInt> {
        self.value(CoefficientVector::ones(k).and_then(|c| SequenceSpec::ksokf(c, i)), n)
    }

    /// `l^i_{k,n}`.
    pub fn lucas(&self, k: usize, i: usize, n: i64) -> Result<BigInt> {
        self.value(SequenceSpec::ksokl(k, i), n)
    }

    pub fn gok_fib(&self, k: usize, n: i64) -> Result<BigInt> {
        self.value(SequenceSpec::gokf(k), n)
    }

    pub fn gok_lucas(&self, k: usize, n: i64) -> Result<BigInt> {
        self.value(SequenceSpec::gokl(k), n)
    }
}

type Side = fn(&EvalContext, &Params) -> Result<Vec<BigInt>>;

#[derive(Clone, Copy)]
pub struct IdentityDescriptor {
    pub id: &'static str,
    /// The relation in plain notation.
    pub statement: &'static str,
    pub domain: Domain,
    lhs: Side,
    rhs: Side,
}

impl std::fmt::Debug for IdentityDescriptor {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("IdentityDescriptor")
            .field("id", &self.id)
            .field("statement", &self.statement)
            .field("domain", &self.domain)
            .finish()
    }
}

impl IdentityDescriptor {
    /// Both sides at one point.
    pub fn evaluate(&self, ctx: &EvalContext, p: &Params) -> Result<(Vec<BigInt>, Vec<BigInt>)> {
        Ok(((self.lhs)(ctx, p)?, (self.rhs)(ctx, p)?))
    }
}

/// A comparison that did not match. Single values serialize as a string,
/// vectors as an array of strings.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Failure {
    pub params: Params,
    #[serde(serialize_with = "values_json")]
    pub lhs: Vec<BigInt>,
    #[serde(serialize_with = "values_json")]
    pub rhs: Vec<BigInt>,
}

fn values_json<S: Serializer>(v: &[BigInt], s: S) -> std::result::Result<S::Ok, S::Error> {
    if v.len() == 1 {
        v[0].to_string().serialize(s)
    } else {
        v.iter().map(|x| x.to_string()).collect::<Vec<_>>().serialize(s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GridSummary {
    pub k: Span,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub i: Option<Span>,
    pub n: Span,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub m: Option<Span>,
    pub points: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IdentityReport {
    pub id: String,
    pub grid: GridSummary,
    pub pass: bool,
    pub failures: Vec<Failure>,
    pub extension_used: bool,
    pub ms: u64,
}

/// Requested grid; `None` falls back to the identity's default range.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct GridRequest {
    pub k: Option<Span>,
    pub i: Option<Span>,
    pub n: Option<Span>,
    pub m: Option<Span>,
}

/// Caps applied to every default grid by [`sweep`].
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SweepConfig {
    pub k_max: Option<i64>,
    pub n_max: Option<i64>,
    pub m_max: Option<i64>,
    /// Restrict to these ids; `None` runs the whole registry.
    pub ids: Option<Vec<String>>,
}

fn one(v: BigInt) -> Result<Vec<BigInt>> {
    Ok(vec![v])
}

fn int(v: i64) -> BigInt {
    BigInt::from(v)
}

fn flatten(m: &ExactMatrix) -> Vec<BigInt> {
    m.entries().to_vec()
}

/// Exponents followed by the coefficient, term by term in graded-lex order.
fn flatten_poly(p: &SparsePolynomial) -> Vec<BigInt> {
    let mut out = Vec::new();
    for (exp, c) in p.terms() {
        out.extend(exp.iter().map(|&e| BigInt::from(e)));
        out.push(c.clone());
    }
    out
}

/// `k f^k_{n+1} - sum_{j=2}^{k} (k-j+1) f^k_{n+2-j}`, the building block of
/// the Lucas-from-Fibonacci relations.
fn lucas_last_by_fib_difference(ctx: &EvalContext, k: usize, n: i64) -> Result<BigInt> {
    let mut s = int(k as i64) * ctx.fib(k, k, n + 1)?;
    for j in 2..=k as i64 {
        s -= int(k as i64 - j + 1) * ctx.fib(k, k, n + 2 - j)?;
    }
    Ok(s)
}

/// `sum_{j=1}^{k} j f^k_{n+1-j}`.
fn lucas_last_by_weighted_fib(ctx: &EvalContext, k: usize, n: i64) -> Result<BigInt> {
    let mut s = BigInt::zero();
    for j in 1..=k as i64 {
        s += int(j) * ctx.fib(k, k, n + 1 - j)?;
    }
    Ok(s)
}

/// Applies `g(b)` to the last-branch argument(s) selected by the branch:
/// `g(n-1)` for `i = 1`, `sum_{m=1}^{i} g(n-m)` for `1 < i < k`, `g(n)` for `i = k`.
fn by_branch(k: usize, i: usize, n: i64, mut g: impl FnMut(i64) -> Result<BigInt>) -> Result<BigInt> {
    if i == 1 {
        g(n - 1)
    } else if i < k {
        let mut s = BigInt::zero();
        for m in 1..=i as i64 {
            s += g(n - m)?;
        }
        Ok(s)
    } else {
        g(n)
    }
}

fn triangular(x: i64) -> i64 {
    x * (x + 1) / 2
}

/// Coefficient `d_j` of the direct expansion of `l^i` in `f^k`.
fn direct_coefficient(j: i64, i: i64, k: i64) -> i64 {
    if j <= i {
        triangular(j)
    } else if j < k {
        triangular(j) - triangular(j - i)
    } else {
        triangular(k) - triangular(j - i)
    }
}

/// The summands of the addition formula for `l^i_{k,n+m}`, one per
/// `j = 1..=k+i-1`: `l^k_{m-j}` times a window sum of `f^t_{k,n}` over
/// `t = 1..=j`, `j-i+1..=j`, or `j-i+1..=k`.
pub fn addition_terms(ctx: &EvalContext, k: usize, i: usize, n: i64, m: i64) -> Result<Vec<BigInt>> {
    if k < 2 {
        return Err(Error::InvalidOrder(k));
    }
    if i == 0 || i >= k {
        return Err(Error::InvalidBranch { branch: i, order: k });
    }
    let (ki, ii) = (k as i64, i as i64);
    let mut terms = Vec::with_capacity(k + i - 1);
    for j in 1..ki + ii {
        let (lo, hi) = if j <= ii {
            (1, j)
        } else if j <= ki {
            (j - ii + 1, j)
        } else {
            (j - ii + 1, ki)
        };
        let mut window = BigInt::zero();
        for t in lo..=hi {
            window += ctx.fib(k, t as usize, n)?;
        }
        terms.push(ctx.lucas(k, k, m - j)? * window);
    }
    Ok(terms)
}

/// `sum_{(c, idx)} c * atom(idx)` over the expansion of `l^i` in `f^k`.
fn expansion_sum(k: usize, i: usize, n: i64, mut atom: impl FnMut(i64) -> Result<BigInt>) -> Result<BigInt> {
    let mut s = BigInt::zero();
    for (c, idx) in lucas_kth_fib_expansion(k, i, n)? {
        s += int(c) * atom(idx)?;
    }
    Ok(s)
}

fn l_branch(ctx: &EvalContext, p: &Params) -> Result<Vec<BigInt>> {
    one(ctx.lucas(p.k, p.branch(), p.n)?)
}

fn l_last(ctx: &EvalContext, p: &Params) -> Result<Vec<BigInt>> {
    one(ctx.lucas(p.k, p.k, p.n)?)
}

fn coefficient_presets(k: usize) -> Vec<CoefficientVector> {
    let mut two = vec![1i64; k];
    two[0] = 2;
    let ramp: Vec<i64> = (1..=k as i64).collect();
    vec![
        CoefficientVector::ones(k).expect("order checked by domain"),
        CoefficientVector::from_i64(&two).expect("order checked by domain"),
        CoefficientVector::from_i64(&ramp).expect("order checked by domain"),
    ]
}

fn literal_condition(p: &Params) -> bool {
    let i = p.branch();
    i == p.k || p.n > i as i64
}

fn shift_condition(p: &Params) -> bool {
    p.shift() < p.n
}

const SMALL_K: Span = Span::new(2, 6);
const N40: Span = Span::new(0, 40);
const PARTITION_K: Span = Span::new(2, 5);
const PARTITION_N: Span = Span::new(1, 25);

/// Every registered identity, in a fixed order.
pub fn registry() -> Vec<IdentityDescriptor> {
    vec![
        IdentityDescriptor {
            id: "thm-2.6",
            statement: "l^k_{k,n} = k f^k_{k,n+1} - sum_{j=2}^{k} (k-j+1) f^k_{k,n+2-j}",
            domain: Domain::new(SMALL_K, Branches::Unused, N40),
            lhs: l_last,
            rhs: |ctx, p| one(lucas_last_by_fib_difference(ctx, p.k, p.n)?),
        },
        IdentityDescriptor {
            id: "thm-2.6-gok",
            statement: "l_{k,n} = k f_{k,n+k-1} - sum_{j=2}^{k} (k-j+1) f_{k,n+k-j} (single sequences)",
            domain: Domain::new(SMALL_K, Branches::Unused, Span::new(1, 40)),
            lhs: |ctx, p| one(ctx.gok_lucas(p.k, p.n)?),
            rhs: |ctx, p| {
                let k = p.k as i64;
                let mut s = int(k) * ctx.gok_fib(p.k, p.n + k - 1)?;
                for j in 2..=k {
                    s -= int(k - j + 1) * ctx.gok_fib(p.k, p.n + k - j)?;
                }
                one(s)
            },
        },
        IdentityDescriptor {
            id: "gok-fib-index",
            statement: "f^k_{k,n} = f_{k,n+k-2}",
            domain: Domain::new(SMALL_K, Branches::Unused, Span::new(1, 40)),
            lhs: |ctx, p| one(ctx.fib(p.k, p.k, p.n)?),
            rhs: |ctx, p| one(ctx.gok_fib(p.k, p.n + p.k as i64 - 2)?),
        },
        IdentityDescriptor {
            id: "gok-lucas-branch",
            statement: "l^k_{k,n} = l_{k,n}",
            domain: Domain::new(SMALL_K, Branches::Unused, Span::new(-10, 40)),
            lhs: l_last,
            rhs: |ctx, p| one(ctx.gok_lucas(p.k, p.n)?),
        },
        IdentityDescriptor {
            id: "ex-2.5-k2",
            statement: "l^2_{2,n} = 2 f^2_{2,n+1} - f^2_{2,n}",
            domain: Domain::new(Span::point(2), Branches::Unused, Span::new(-10, 40)),
            lhs: l_last,
            rhs: |ctx, p| one(int(2) * ctx.fib(2, 2, p.n + 1)? - ctx.fib(2, 2, p.n)?),
        },
        IdentityDescriptor {
            id: "ex-2.5-k3",
            statement: "l^3_{3,n} = 3 f^3_{3,n+1} - 2 f^3_{3,n} - f^3_{3,n-1}",
            domain: Domain::new(Span::point(3), Branches::Unused, Span::new(-10, 40)),
            lhs: l_last,
            rhs: |ctx, p| {
                one(int(3) * ctx.fib(3, 3, p.n + 1)? - int(2) * ctx.fib(3, 3, p.n)? - ctx.fib(3, 3, p.n - 1)?)
            },
        },
        IdentityDescriptor {
            id: "thm-2.7",
            statement: "G_{k,n}(t) = k F_{k,n}(t) - sum_{j=2}^{k} (k-j+1) t_{j-1} F_{k,n+1-j}(t)",
            domain: Domain::new(Span::new(2, 4), Branches::Unused, Span::new(0, 12)),
            lhs: |_, p| Ok(flatten_poly(&lucas_poly(p.k, p.n)?)),
            rhs: |_, p| {
                let mut r = fib_poly(p.k, p.n)?.scale(&int(p.k as i64));
                for j in 2..=p.k {
                    let f = fib_poly(p.k, p.n + 1 - j as i64)?;
                    r = r.sub(&f.mul_var(j - 1).scale(&int((p.k - j + 1) as i64)));
                }
                Ok(flatten_poly(&r))
            },
        },
        IdentityDescriptor {
            id: "thm-2.8",
            statement: "l^k_{k,n} = sum_{j=1}^{k} j f^k_{k,n+1-j}",
            domain: Domain::new(SMALL_K, Branches::Unused, N40),
            lhs: l_last,
            rhs: |ctx, p| one(lucas_last_by_weighted_fib(ctx, p.k, p.n)?),
        },
        IdentityDescriptor {
            id: "lemma-2.9",
            statement: "l^i_{k,n} = l^k_{k,n-1} (i=1); sum_{m=1}^{i} l^k_{k,n-m} (1<i<k); l^k_{k,n} (i=k)",
            domain: Domain::new(SMALL_K, Branches::All, N40),
            lhs: l_branch,
            rhs: |ctx, p| one(by_branch(p.k, p.branch(), p.n, |b| ctx.lucas(p.k, p.k, b))?),
        },
        IdentityDescriptor {
            id: "thm-2.10-i",
            statement: "l^i_{k,n} = sum_{j=1}^{k+i-1} d_j f^k_{k,n-j}, d_j = T(j) (j<=i), T(j)-T(j-i) (i<j<k), T(k)-T(j-i) (j>=k), T(x) = x(x+1)/2",
            domain: Domain::new(Span::new(3, 6), Branches::All, N40),
            lhs: l_branch,
            rhs: |ctx, p| {
                let (k, i) = (p.k as i64, p.branch() as i64);
                let mut s = BigInt::zero();
                for j in 1..k + i {
                    s += int(direct_coefficient(j, i, k)) * ctx.fib(p.k, p.k, p.n - j)?;
                }
                one(s)
            },
        },
        IdentityDescriptor {
            id: "thm-2.10-ii",
            statement: "l^i_{k,n} = branch sum of k f^k_{k,b+1} - sum_{j=2}^{k} (k-j+1) f^k_{k,b+2-j}",
            domain: Domain::new(SMALL_K, Branches::All, N40),
            lhs: l_branch,
            rhs: |ctx, p| one(by_branch(p.k, p.branch(), p.n, |b| lucas_last_by_fib_difference(ctx, p.k, b))?),
        },
        IdentityDescriptor {
            id: "thm-2.10-iii",
            statement: "l^i_{k,n} = branch sum of sum_{j=1}^{k} j f^k_{k,b+1-j}",
            domain: Domain::new(SMALL_K, Branches::All, N40),
            lhs: l_branch,
            rhs: |ctx, p| one(by_branch(p.k, p.branch(), p.n, |b| lucas_last_by_weighted_fib(ctx, p.k, b))?),
        },
        IdentityDescriptor {
            id: "thm-2.12-addition",
            statement: "l^i_{k,n+m} = sum_{j=1}^{k+i-1} l^k_{k,m-j} * (window sum of f^t_{k,n})",
            domain: Domain::new(Span::new(2, 5), Branches::BelowOrder, Span::new(0, 15)).with_m(Span::new(0, 15)),
            lhs: |ctx, p| one(ctx.lucas(p.k, p.branch(), p.n + p.shift())?),
            rhs: |ctx, p| one(addition_terms(ctx, p.k, p.branch(), p.n, p.shift())?.into_iter().sum()),
        },
        IdentityDescriptor {
            id: "fib-branch-relation",
            statement: "f^i_{k,n} = sum_{m=1}^{k-i+1} f^k_{k,n-m+1}",
            domain: Domain::new(SMALL_K, Branches::All, Span::new(-10, 40)),
            lhs: |ctx, p| one(ctx.fib(p.k, p.branch(), p.n)?),
            rhs: |ctx, p| {
                let mut s = BigInt::zero();
                for m in 1..=(p.k - p.branch() + 1) as i64 {
                    s += ctx.fib(p.k, p.k, p.n - m + 1)?;
                }
                one(s)
            },
        },
        IdentityDescriptor {
            id: "lemma-2.3",
            statement: "L~_0 has -(c+1) left of the antidiagonal, k+r on it, k-c-2 right of it",
            domain: Domain::new(SMALL_K, Branches::Unused, Span::point(0)),
            lhs: |_, p| Ok(flatten(&lucas_boundary_window(p.k)?)),
            rhs: |_, p| Ok(flatten(&l_tilde_0(p.k)?)),
        },
        IdentityDescriptor {
            id: "lemma-2.4",
            statement: "L~_n = F~_n L~_0",
            domain: Domain::new(Span::new(2, 5), Branches::Unused, Span::new(0, 30)),
            lhs: |_, p| Ok(flatten(&l_tilde(p.k, p.n)?)),
            rhs: |_, p| {
                let ones = CoefficientVector::ones(p.k)?;
                Ok(flatten(&f_tilde(&ones, p.n)?.mul(&l_tilde_0(p.k)?)?))
            },
        },
        IdentityDescriptor {
            id: "trace-lucas-poly",
            statement: "tr(A_(k)^n) = G_{k,n}(t) for t in {(1,..,1), (2,1,..,1), (1,2,..,k)}",
            domain: Domain::new(Span::new(2, 4), Branches::Unused, Span::new(0, 15)),
            lhs: |_, p| {
                coefficient_presets(p.k)
                    .iter()
                    .map(|t| mat_power(&orbit_companion(t), p.n as u64)?.trace())
                    .collect()
            },
            rhs: |_, p| {
                let g = lucas_poly(p.k, p.n)?;
                coefficient_presets(p.k).iter().map(|t| g.eval(t)).collect()
            },
        },
        IdentityDescriptor {
            id: "eq-2.8",
            statement: "f^i_{k,n} = sum_{a |- n} C(|a|; a) (i=1); sum_{m=1}^{k-i+1} sum_{a |- n-m} C(|a|; a) (1<i<k); sum_{a |- n-1} C(|a|; a) (i=k)",
            domain: Domain::new(PARTITION_K, Branches::All, PARTITION_N),
            lhs: |ctx, p| one(ctx.fib(p.k, p.branch(), p.n)?),
            rhs: |_, p| one(fib_combinatorial(p.k, p.branch(), p.n)?),
        },
        IdentityDescriptor {
            id: "lemma-2.16",
            statement: "f^k_{k,n-s} = sum_{m |- n-s+k-1} (m_k/|m|) C(|m|; m), 0 <= s <= n-1 (s is the m parameter)",
            domain: Domain::new(PARTITION_K, Branches::Unused, PARTITION_N)
                .with_m(Span::new(0, 24))
                .when("m <= n - 1", shift_condition),
            lhs: |ctx, p| one(ctx.fib(p.k, p.k, p.n - p.shift())?),
            rhs: |_, p| one(fib_by_last_part_weight(p.k, p.n, p.shift())?),
        },
        IdentityDescriptor {
            id: "cor-2.17",
            statement: "l^i_{k,n} = j-weighted sums of sum_{m |- w} (m_k/|m|) C(|m|; m), as printed",
            domain: Domain::new(PARTITION_K, Branches::All, PARTITION_N).when("n > i unless i = k", literal_condition),
            lhs: l_branch,
            rhs: |_, p| one(expansion_sum(p.k, p.branch(), p.n, |idx| last_part_weighted_sum(p.k, idx + p.k as i64 - 1))?),
        },
        IdentityDescriptor {
            id: "cor-2.17-all-n",
            statement: "as cor-2.17, with summands below the partition range taken from the boundary",
            domain: Domain::new(PARTITION_K, Branches::All, PARTITION_N),
            lhs: l_branch,
            rhs: |_, p| one(lucas_by_last_part_weight(p.k, p.branch(), p.n)?),
        },
        IdentityDescriptor {
            id: "cor-2.18",
            statement: "l^i_{k,n} = branch sum of sum_{a |- b} (b/|a|) C(|a|; a), as printed",
            domain: Domain::new(PARTITION_K, Branches::All, PARTITION_N).when("n > i unless i = k", literal_condition),
            lhs: l_branch,
            rhs: |_, p| one(by_branch(p.k, p.branch(), p.n, |b| lucas_partition_sum(p.k, b))?),
        },
        IdentityDescriptor {
            id: "cor-2.18-all-n",
            statement: "as cor-2.18, with summands below the partition range taken from the boundary",
            domain: Domain::new(PARTITION_K, Branches::All, PARTITION_N),
            lhs: l_branch,
            rhs: |_, p| one(lucas_by_weighted_partitions(p.k, p.branch(), p.n)?),
        },
        IdentityDescriptor {
            id: "cor-2.19",
            statement: "l^i_{k,n} = j-weighted sums of sum_{a |- w} C(|a|; a), as printed",
            domain: Domain::new(PARTITION_K, Branches::All, PARTITION_N).when("n > i unless i = k", literal_condition),
            lhs: l_branch,
            rhs: |_, p| one(expansion_sum(p.k, p.branch(), p.n, |idx| Ok(fib_partition_sum(p.k, idx - 1)))?),
        },
        IdentityDescriptor {
            id: "cor-2.19-all-n",
            statement: "as cor-2.19, with summands below the partition range taken from the boundary",
            domain: Domain::new(PARTITION_K, Branches::All, PARTITION_N),
            lhs: l_branch,
            rhs: |_, p| one(lucas_by_partition_counts(p.k, p.branch(), p.n)?),
        },
        IdentityDescriptor {
            id: "cor-2.20",
            statement: "l_n = sum_{j=1}^{2} j sum_{s=0}^{ceil((n-j)/2)} C(n-j-s, s)",
            domain: Domain::new(Span::point(2), Branches::Unused, Span::new(1, 40)),
            lhs: l_last,
            rhs: |_, p| one(lucas2_binomial(p.n)?),
        },
    ]
}

pub fn find(id: &str) -> Result<IdentityDescriptor> {
    registry().into_iter().find(|d| d.id == id).ok_or_else(|| Error::UnknownIdentity(id.to_string()))
}

fn resolve(name: &str, req: Option<Span>, default: Span) -> Result<Span> {
    match req {
        None => Ok(default),
        Some(s) if default.contains_span(&s) => Ok(s),
        Some(s) => Err(Error::DomainViolation(format!(
            "{name} range {}..{} outside {}..{}",
            s.lo, s.hi, default.lo, default.hi
        ))),
    }
}

struct Grid {
    k: Span,
    i: Option<Span>,
    n: Span,
    m: Option<Span>,
}

fn resolve_grid(d: &IdentityDescriptor, req: &GridRequest) -> Result<Grid> {
    let k = resolve("k", req.k, d.domain.k)?;
    let n = resolve("n", req.n, d.domain.n)?;
    let m = match (d.domain.m, req.m) {
        (None, Some(_)) => return Err(Error::DomainViolation(format!("{} takes no m parameter", d.id))),
        (None, None) => None,
        (Some(def), r) => Some(resolve("m", r, def)?),
    };
    let i = match (d.domain.branches, req.i) {
        (Branches::Unused, Some(_)) => return Err(Error::DomainViolation(format!("{} takes no i parameter", d.id))),
        (Branches::Unused, None) => None,
        (b, None) => Some(Span::new(1, b.upper(k.hi))),
        (b, Some(s)) => Some(resolve("i", Some(s), Span::new(1, b.upper(k.hi)))?),
    };
    Ok(Grid { k, i, n, m })
}

fn points(d: &IdentityDescriptor, g: &Grid) -> Vec<Params> {
    let mut out = Vec::new();
    for k in g.k.iter() {
        let branches: Vec<Option<usize>> = match g.i {
            None => vec![None],
            Some(s) => {
                let top = s.hi.min(d.domain.branches.upper(k));
                (s.lo..=top).map(|i| Some(i as usize)).collect()
            }
        };
        for i in branches {
            for n in g.n.iter() {
                let shifts: Vec<Option<i64>> = match g.m {
                    None => vec![None],
                    Some(s) => s.iter().map(Some).collect(),
                };
                for m in shifts {
                    let p = Params::new(k as usize, i, n, m);
                    if d.domain.admits(&p) {
                        out.push(p);
                    }
                }
            }
        }
    }
    out.sort_by_key(Params::sort_key);
    out
}

fn run(d: &IdentityDescriptor, g: Grid) -> Result<IdentityReport> {
    let start = Instant::now();
    let ctx = EvalContext::new();
    let pts = points(d, &g);
    let mut failures = Vec::new();
    for p in &pts {
        let (lhs, rhs) = d.evaluate(&ctx, p)?;
        if lhs != rhs {
            failures.push(Failure { params: *p, lhs, rhs });
        }
    }
    Ok(IdentityReport {
        id: d.id.to_string(),
        grid: GridSummary { k: g.k, i: g.i, n: g.n, m: g.m, points: pts.len() },
        pass: failures.is_empty(),
        failures,
        extension_used: ctx.extension_used(),
        ms: start.elapsed().as_millis() as u64,
    })
}

/// Checks one identity exhaustively on the requested grid.
pub fn check(id: &str, grid: &GridRequest) -> Result<IdentityReport> {
    let d = find(id)?;
    let g = resolve_grid(&d, grid)?;
    run(&d, g)
}

/// One grid point with both sides.
pub type PointValues = (Params, Vec<BigInt>, Vec<BigInt>);

/// Both sides at every point of the requested grid, in report order.
pub fn evaluate_grid(id: &str, grid: &GridRequest) -> Result<Vec<PointValues>> {
    let d = find(id)?;
    let g = resolve_grid(&d, grid)?;
    let ctx = EvalContext::new();
    points(&d, &g).into_iter().map(|p| d.evaluate(&ctx, &p).map(|(l, r)| (p, l, r))).collect()
}

/// Runs the (optionally restricted) registry on the capped default grids.
/// Identities whose capped grid has no points are left out. Descriptors
/// are evaluated in parallel; the report order follows the registry.
pub fn sweep(config: &SweepConfig) -> Result<Vec<IdentityReport>> {
    let mut chosen = Vec::new();
    for d in registry() {
        if let Some(ids) = &config.ids {
            if !ids.iter().any(|id| id == d.id) {
                continue;
            }
        }
        let grid = Grid {
            k: d.domain.k.cap(config.k_max),
            i: match d.domain.branches {
                Branches::Unused => None,
                b => Some(Span::new(1, b.upper(d.domain.k.hi))),
            },
            n: d.domain.n.cap(config.n_max),
            m: d.domain.m.map(|m| m.cap(config.m_max)),
        };
        if !points(&d, &grid).is_empty() {
            chosen.push((d, grid));
        }
    }
    if let Some(ids) = &config.ids {
        for id in ids {
            find(id)?;
        }
    }
    let results: Vec<Result<IdentityReport>> = std::thread::scope(|scope| {
        let handles: Vec<_> = chosen.into_iter().map(|(d, g)| scope.spawn(move || run(&d, g))).collect();
        handles.into_iter().map(|h| h.join().expect("identity worker panicked")).collect()
    });
    results.into_iter().collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    fn point(k: i64, i: Option<i64>, n: i64, m: Option<i64>) -> GridRequest {
        GridRequest { k: Some(Span::point(k)), i: i.map(Span::point), n: Some(Span::point(n)), m: m.map(Span::point) }
    }

    #[test]
    fn registry_ids_are_unique_and_plentiful() {
        let reg = registry();
        let ids: HashSet<_> = reg.iter().map(|d| d.id).collect();
        assert_eq!(ids.len(), reg.len());
        assert!(reg.len() >= 14);
        assert!(ids.contains("thm-2.6"));
        assert!(ids.contains("thm-2.12-addition"));
    }

    #[test]
    fn addition_terms_match_worked_example() {
        let ctx = EvalContext::new();
        let terms = addition_terms(&ctx, 5, 3, 3, 4).unwrap();
        let expected: Vec<BigInt> = [28, 24, 12, 55, -9, -5, -2].iter().map(|&v| int(v)).collect();
        assert_eq!(terms, expected);
        assert_eq!(terms.iter().sum::<BigInt>(), int(103));
        // l^5 down to index -3 stays inside the boundary window
        assert!(!ctx.extension_used());
    }

    #[test]
    fn direct_expansion_example() {
        let ctx = EvalContext::new();
        let d = find("thm-2.10-iii").unwrap();
        let (l, r) = d.evaluate(&ctx, &Params::new(4, Some(3), 4, None)).unwrap();
        assert_eq!(l, vec![int(11)]);
        assert_eq!(r, vec![int(11)]);
        let report = check("thm-2.10-iii", &point(4, Some(3), 4, None)).unwrap();
        assert!(report.pass);
        assert_eq!(report.grid.points, 1);
    }

    #[test]
    fn weighted_fib_relation_on_small_grid() {
        let req = GridRequest { k: Some(Span::new(2, 4)), n: Some(Span::new(0, 20)), ..Default::default() };
        let report = check("thm-2.8", &req).unwrap();
        assert!(report.pass);
        assert_eq!(report.grid.points, 63);
    }

    #[test]
    fn addition_formula_single_point() {
        let report = check("thm-2.12-addition", &point(5, Some(3), 3, Some(4))).unwrap();
        assert!(report.pass);
        assert!(!report.extension_used);
        let report = check("thm-2.12-addition", &point(5, Some(4), 3, Some(0))).unwrap();
        assert!(report.pass);
        assert!(report.extension_used);
    }

    #[test]
    fn grid_values_cover_requested_points() {
        let req = GridRequest { k: Some(Span::point(5)), ..Default::default() };
        let rows = evaluate_grid("thm-2.12-addition", &req).unwrap();
        assert_eq!(rows.len(), 4 * 16 * 16);
        let (_, l, r) = rows.iter().find(|(p, _, _)| p.i == Some(3) && p.n == 3 && p.m == Some(4)).unwrap();
        assert_eq!((l[0].clone(), r[0].clone()), (int(103), int(103)));
    }

    #[test]
    fn errors() {
        assert!(matches!(check("thm-9.9", &GridRequest::default()), Err(Error::UnknownIdentity(_))));
        let bad_k = GridRequest { k: Some(Span::point(2)), ..Default::default() };
        assert!(matches!(check("thm-2.10-i", &bad_k), Err(Error::DomainViolation(_))));
        assert!(matches!(check("thm-2.6", &point(3, Some(1), 2, None)), Err(Error::DomainViolation(_))));
        assert!(matches!(check("thm-2.12-addition", &point(3, Some(3), 2, Some(1))), Err(Error::DomainViolation(_))));
    }

    #[test]
    fn literal_condition_excludes_small_indices() {
        let p = Params::new(4, Some(3), 3, None);
        assert!(!literal_condition(&p));
        assert!(literal_condition(&Params::new(4, Some(3), 4, None)));
        assert!(literal_condition(&Params::new(4, Some(4), 1, None)));
    }

    #[test]
    fn failures_are_reported_not_raised() {
        // the printed corollary fails at n = i for a middle branch
        let d = find("cor-2.19").unwrap();
        let ctx = EvalContext::new();
        let (l, r) = d.evaluate(&ctx, &Params::new(4, Some(3), 3, None)).unwrap();
        assert_ne!(l, r);
    }

    #[test]
    fn empty_sweep() {
        let cfg = SweepConfig { k_max: Some(1), ..Default::default() };
        assert!(sweep(&cfg).unwrap().is_empty());
    }

    #[test]
    fn order_two_sweep_passes() {
        let cfg = SweepConfig { k_max: Some(2), n_max: Some(15), m_max: Some(6), ids: None };
        let reports = sweep(&cfg).unwrap();
        assert!(!reports.is_empty());
        assert!(!reports.iter().any(|r| r.id == "thm-2.10-i"));
        for r in &reports {
            assert!(r.pass, "{} failed: {:?}", r.id, r.failures.first());
        }
    }

    #[test]
    fn report_json_shape() {
        let mut report = check("ex-2.5-k2", &GridRequest::default()).unwrap();
        report.ms = 0;
        let v: serde_json::Value = serde_json::to_value(&report).unwrap();
        for key in ["id", "grid", "pass", "failures", "extension_used", "ms"] {
            assert!(v.get(key).is_some(), "missing {key}");
        }
        assert_eq!(v["grid"]["k"], serde_json::json!([2, 2]));
    }
}
