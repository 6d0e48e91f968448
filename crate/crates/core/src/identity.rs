//! Rascal identities as executable `(lhs, rhs)` pairs, with a grid verifier.
//!
//! Left sides are computed from Rascal numbers supplied by a [`Counts`]
//! source: either the closed form or a brute-force [`AscentCensus`]. Right
//! sides are evaluated from their own formulas and never consult `R`.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use itertools::Itertools;
use num_bigint::BigInt;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::binomial::{binomial, factorial, falling_factorial, pow2};
use crate::enumerate::AscentCensus;
use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::number::closed_gen;
use crate::scalar::{div_exact, with_fallback};

const MAX_SUBSET_GROUND: i64 = 24;

/// Source of the quantities a left side is built from.
pub trait Counts: Sync {
    /// `R^{(j)}_{n,k}`.
    fn rascal(&self, n: i64, k: i64, j: u32) -> Result<BigInt>;
    /// Binary words of length `n` with `k` ones, i.e. `C(n, k)`.
    fn words(&self, n: i64, k: i64) -> Result<BigInt>;
}

/// Closed forms, with `i128` arithmetic falling back to `BigInt`.
#[derive(Debug, Clone, Copy, Default)]
pub struct Formula;

impl Counts for Formula {
    fn rascal(&self, n: i64, k: i64, j: u32) -> Result<BigInt> {
        with_fallback(|| closed_gen::<i128>(n, k, j), || closed_gen::<BigInt>(n, k, j))
    }

    fn words(&self, n: i64, k: i64) -> Result<BigInt> {
        with_fallback(|| binomial::<i128>(n, k), || binomial::<BigInt>(n, k))
    }
}

/// Counts read off an exhaustive census of binary words.
#[derive(Debug, Clone)]
pub struct Oracle(pub AscentCensus);

impl Oracle {
    fn lookup(&self, v: Option<u64>, n: i64) -> Result<BigInt> {
        v.map(BigInt::from)
            .ok_or_else(|| Error::limit("oracle word length", n.max(0) as u64, self.0.max_len() as u64))
    }
}

impl Counts for Oracle {
    fn rascal(&self, n: i64, k: i64, j: u32) -> Result<BigInt> {
        self.lookup(self.0.count(n, k, j), n)
    }

    fn words(&self, n: i64, k: i64) -> Result<BigInt> {
        self.lookup(self.0.with_ones(n, k), n)
    }
}

/// How a verifier computes left sides.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LhsMode {
    Formula,
    Oracle,
}

impl fmt::Display for LhsMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            LhsMode::Formula => "formula",
            LhsMode::Oracle => "oracle",
        })
    }
}

/// Which right side: as printed, or corrected against the oracle.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Variant {
    Printed,
    Corrected,
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Variant::Printed => "printed",
            Variant::Corrected => "corrected",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Param {
    pub name: &'static str,
    pub min: i64,
}

const fn p(name: &'static str, min: i64) -> Param {
    Param { name, min }
}

type Lhs = fn(&[i64], &dyn Counts) -> Result<BigInt>;
type Rhs = fn(&[i64]) -> Result<BigInt>;

/// A registered identity. Parameter values are passed positionally in the
/// order of [`Identity::params`].
pub struct Identity {
    name: &'static str,
    anchor: &'static str,
    domain: &'static str,
    params: &'static [Param],
    valid: fn(&[i64]) -> bool,
    // largest row index a cell is considered to reach, for row-bounded grids
    row: fn(&[i64]) -> i64,
    max_len: fn(&[i64]) -> i64,
    lhs: Lhs,
    rhs: &'static [(Variant, Rhs)],
    default_grid: fn(i64) -> Grid,
}

impl fmt::Debug for Identity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Identity")
            .field("name", &self.name)
            .finish_non_exhaustive()
    }
}

impl Identity {
    pub fn name(&self) -> &'static str {
        self.name
    }

    /// Where the identity is stated, with a short quotation.
    pub fn anchor(&self) -> &'static str {
        self.anchor
    }

    pub fn domain(&self) -> &'static str {
        self.domain
    }

    pub fn params(&self) -> &'static [Param] {
        self.params
    }

    pub fn variants(&self) -> impl Iterator<Item = Variant> {
        self.rhs.iter().map(|&(v, _)| v)
    }

    /// The variant that decides pass/fail: the corrected one when present.
    pub fn effective_variant(&self) -> Variant {
        self.rhs.last().expect("every identity has a right side").0
    }

    /// The declared minimum of every parameter, which is always in the domain.
    pub fn smallest_cell(&self) -> Vec<i64> {
        self.params.iter().map(|p| p.min).collect()
    }

    pub fn default_grid(&self, n_max: i64) -> Grid {
        (self.default_grid)(n_max)
    }

    pub fn in_domain(&self, cell: &[i64]) -> bool {
        cell.len() == self.params.len() && cell.iter().zip(self.params).all(|(&v, p)| v >= p.min) && (self.valid)(cell)
    }

    /// Longest word an oracle needs for this cell.
    pub fn max_len(&self, cell: &[i64]) -> i64 {
        (self.max_len)(cell)
    }

    fn check(&self, cell: &[i64]) -> Result<()> {
        if self.in_domain(cell) {
            Ok(())
        } else {
            Err(Error::domain(format!(
                "{} is outside the domain of {} ({})",
                fmt_cell(self.params, cell),
                self.name,
                self.domain
            )))
        }
    }

    pub fn lhs(&self, cell: &[i64], counts: &dyn Counts) -> Result<BigInt> {
        self.check(cell)?;
        (self.lhs)(cell, counts)
    }

    pub fn rhs(&self, variant: Variant, cell: &[i64]) -> Result<BigInt> {
        self.check(cell)?;
        let (_, f) = self
            .rhs
            .iter()
            .find(|(v, _)| *v == variant)
            .ok_or_else(|| Error::domain(format!("{} has no {variant} variant", self.name)))?;
        f(cell)
    }

    /// Resolves named parameters into a positional cell.
    pub fn cell(&self, named: &[(&str, i64)]) -> Result<Vec<i64>> {
        if let Some((extra, _)) = named.iter().find(|(n, _)| self.params.iter().all(|p| p.name != *n)) {
            return Err(Error::domain(format!("{} has no parameter {extra}", self.name)));
        }
        self.params
            .iter()
            .map(|p| {
                named
                    .iter()
                    .find(|(n, _)| *n == p.name)
                    .map(|&(_, v)| v)
                    .ok_or_else(|| Error::domain(format!("{} needs parameter {}", self.name, p.name)))
            })
            .collect()
    }

    /// Every in-domain cell of `grid`, in lexicographic order.
    pub fn cells(&self, grid: &Grid, limits: &Limits) -> Result<Vec<Vec<i64>>> {
        let ranges: Vec<(i64, i64)> = self
            .params
            .iter()
            .map(|p| {
                grid.range(p.name)
                    .ok_or_else(|| Error::domain(format!("grid for {} must bound {}", self.name, p.name)))
            })
            .collect::<Result<_>>()?;
        if let Some(r) = grid
            .ranges
            .iter()
            .find(|r| self.params.iter().all(|p| p.name != r.name))
        {
            return Err(Error::domain(format!("{} has no parameter {}", self.name, r.name)));
        }
        let rect = ranges
            .iter()
            .map(|&(lo, hi)| (hi - lo + 1).max(0) as u64)
            .try_fold(1u64, u64::checked_mul)
            .unwrap_or(u64::MAX);
        limits.check_cells(rect)?;
        Ok(ranges
            .into_iter()
            .map(|(lo, hi)| lo..=hi)
            .multi_cartesian_product()
            .filter(|cell| self.in_domain(cell) && grid.row_max.is_none_or(|m| (self.row)(cell) <= m))
            .collect())
    }
}

fn fmt_cell(params: &[Param], cell: &[i64]) -> String {
    params
        .iter()
        .zip(cell)
        .map(|(p, v)| format!("{}={v}", p.name))
        .join(" ")
}

/// Inclusive bound on one parameter.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParamRange {
    pub name: String,
    pub lo: i64,
    pub hi: i64,
}

/// A rectangle of parameter values, optionally cut to cells whose largest
/// row index is at most `row_max`. Written `n=0..=16 j=0..=4 row<=16`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Grid {
    pub ranges: Vec<ParamRange>,
    pub row_max: Option<i64>,
}

impl Grid {
    pub fn new() -> Self {
        Grid::default()
    }

    pub fn with(mut self, name: &str, lo: i64, hi: i64) -> Self {
        self.ranges.retain(|r| r.name != name);
        self.ranges.push(ParamRange {
            name: name.to_string(),
            lo,
            hi,
        });
        self
    }

    pub fn with_row_max(mut self, row_max: i64) -> Self {
        self.row_max = Some(row_max);
        self
    }

    pub fn range(&self, name: &str) -> Option<(i64, i64)> {
        self.ranges.iter().find(|r| r.name == name).map(|r| (r.lo, r.hi))
    }
}

impl fmt::Display for Grid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = self
            .ranges
            .iter()
            .map(|r| format!("{}={}..={}", r.name, r.lo, r.hi))
            .collect();
        if let Some(m) = self.row_max {
            parts.push(format!("row<={m}"));
        }
        f.write_str(&parts.join(" "))
    }
}

impl FromStr for Grid {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = |reason: &str| Error::Parse {
            input: s.to_string(),
            reason: reason.to_string(),
        };
        let int = |t: &str| t.trim().parse::<i64>().map_err(|e| bad(&e.to_string()));
        let mut grid = Grid::new();
        for token in s.split_whitespace() {
            if let Some(m) = token.strip_prefix("row<=") {
                grid.row_max = Some(int(m)?);
            } else if let Some((name, span)) = token.split_once('=') {
                let (lo, hi) = span.split_once("..=").ok_or_else(|| bad("expected name=lo..=hi"))?;
                grid = grid.with(name, int(lo)?, int(hi)?);
            } else {
                return Err(bad("expected name=lo..=hi or row<=N"));
            }
        }
        Ok(grid)
    }
}

mod bigint_string {
    use num_bigint::BigInt;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &BigInt, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(v)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigInt, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Failure {
    pub params: BTreeMap<String, i64>,
    #[serde(with = "bigint_string")]
    pub lhs: BigInt,
    #[serde(with = "bigint_string")]
    pub rhs: BigInt,
}

/// Outcome of one variant over one grid.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdentityReport {
    pub identity: String,
    pub variant: Variant,
    /// Whether this variant decides the identity's status.
    pub effective: bool,
    pub lhs_mode: LhsMode,
    pub grid: String,
    pub cells: u64,
    pub failures: Vec<Failure>,
    pub elapsed_ms: Option<u64>,
}

impl IdentityReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VerifyOptions {
    pub mode: LhsMode,
    /// Record wall-clock time in the report, which makes output nondeterministic.
    pub timing: bool,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            mode: LhsMode::Formula,
            timing: false,
        }
    }
}

pub fn list_identities() -> &'static [Identity] {
    &REGISTRY
}

pub fn identity(name: &str) -> Result<&'static Identity> {
    REGISTRY
        .iter()
        .find(|i| i.name == name)
        .ok_or_else(|| Error::UnknownIdentity(name.to_string()))
}

/// Both sides of `name` at the named parameters, using the closed form for
/// the left side and the printed right side.
pub fn evaluate(name: &str, params: &[(&str, i64)]) -> Result<(BigInt, BigInt)> {
    let id = identity(name)?;
    let cell = id.cell(params)?;
    Ok((id.lhs(&cell, &Formula)?, id.rhs(Variant::Printed, &cell)?))
}

/// Builds the counts source for `mode` large enough for every cell.
pub fn counts_for(mode: LhsMode, max_len: i64, limits: &Limits) -> Result<Box<dyn Counts>> {
    Ok(match mode {
        LhsMode::Formula => Box::new(Formula),
        LhsMode::Oracle => Box::new(Oracle(AscentCensus::build(max_len.max(0) as usize, limits)?)),
    })
}

/// Evaluates every cell of `grid` and returns one report per variant,
/// printed first. Failures are sorted by parameter tuple.
pub fn verify_range(name: &str, grid: &Grid, opts: &VerifyOptions, limits: &Limits) -> Result<Vec<IdentityReport>> {
    let start = Instant::now();
    let id = identity(name)?;
    let cells = id.cells(grid, limits)?;
    let max_len = cells.iter().map(|c| id.max_len(c)).max().unwrap_or(0);
    let counts = counts_for(opts.mode, max_len, limits)?;
    let evaluated: Vec<(Vec<i64>, BigInt, Vec<BigInt>)> = cells
        .into_par_iter()
        .map(|cell| {
            let lhs = id.lhs(&cell, counts.as_ref())?;
            let rhs = id.variants().map(|v| id.rhs(v, &cell)).collect::<Result<Vec<_>>>()?;
            Ok((cell, lhs, rhs))
        })
        .collect::<Result<_>>()?;
    let elapsed_ms = opts.timing.then(|| start.elapsed().as_millis() as u64);
    let effective = id.effective_variant();
    Ok(id
        .variants()
        .enumerate()
        .map(|(i, variant)| {
            let mut failing: Vec<&(Vec<i64>, BigInt, Vec<BigInt>)> =
                evaluated.iter().filter(|(_, lhs, rhs)| *lhs != rhs[i]).collect();
            failing.sort_by(|a, b| a.0.cmp(&b.0));
            IdentityReport {
                identity: id.name.to_string(),
                variant,
                effective: variant == effective,
                lhs_mode: opts.mode,
                grid: grid.to_string(),
                cells: evaluated.len() as u64,
                failures: failing
                    .into_iter()
                    .map(|(cell, lhs, rhs)| Failure {
                        params: id
                            .params
                            .iter()
                            .map(|p| p.name.to_string())
                            .zip(cell.iter().copied())
                            .collect(),
                        lhs: lhs.clone(),
                        rhs: rhs[i].clone(),
                    })
                    .collect(),
                elapsed_ms,
            }
        })
        .collect())
}

/// Whether the effective variant among `reports` passed.
pub fn effective_passed(reports: &[IdentityReport]) -> bool {
    reports.iter().filter(|r| r.effective).all(IdentityReport::passed)
}

fn big(v: i64) -> BigInt {
    BigInt::from(v)
}

fn sign(e: i64) -> BigInt {
    if e.rem_euclid(2) == 0 {
        BigInt::one()
    } else {
        -BigInt::one()
    }
}

fn level(j: i64) -> Result<u32> {
    u32::try_from(j).map_err(|_| Error::domain(format!("ascent bound {j} out of range")))
}

fn c(n: i64, k: i64) -> Result<BigInt> {
    Formula.words(n, k)
}

fn pow2_big(e: i64) -> Result<BigInt> {
    pow2::<BigInt>(u32::try_from(e).map_err(|_| Error::domain(format!("exponent {e} out of range")))?)
}

fn row(counts: &dyn Counts, n: i64, j: u32) -> Result<Vec<BigInt>> {
    (0..=n).map(|k| counts.rascal(n, k, j)).collect()
}

fn row_total(counts: &dyn Counts, n: i64, j: u32) -> Result<BigInt> {
    Ok(row(counts, n, j)?.into_iter().sum())
}

fn alternating(values: Vec<BigInt>) -> BigInt {
    values
        .into_iter()
        .enumerate()
        .map(|(k, v)| if k % 2 == 0 { v } else { -v })
        .sum()
}

fn product_minus_one(counts: &dyn Counts, n: i64, m: i64) -> Result<BigInt> {
    (1..=m).try_fold(BigInt::one(), |acc, k| Ok(acc * (counts.rascal(n, k, 1)? - 1)))
}

fn product_rhs(n: i64, m: i64) -> Result<BigInt> {
    Ok(factorial::<BigInt>(m)? * falling_factorial::<BigInt>(n - 1, m)?)
}

fn row_sum_lhs(a: &[i64], counts: &dyn Counts) -> Result<BigInt> {
    row_total(counts, a[0], 1)
}

fn row_sum_rhs(a: &[i64]) -> Result<BigInt> {
    Ok(c(a[0] + 1, 3)? + a[0] + 1)
}

fn col_sum_lhs(a: &[i64], counts: &dyn Counts) -> Result<BigInt> {
    let (k, r) = (a[0], a[1]);
    (0..=r).map(|i| counts.rascal(k + i, k, 1)).sum()
}

fn col_sum_rhs(a: &[i64]) -> Result<BigInt> {
    let (k, r) = (a[0], a[1]);
    Ok(big(k) * c(r + 1, 2)? + r + 1)
}

fn weighted_lhs(a: &[i64], counts: &dyn Counts) -> Result<BigInt> {
    let n = a[0];
    (0..=n).map(|k| Ok(counts.words(n, k)? * counts.rascal(n, k, 1)?)).sum()
}

/// `2^{n-s} C(n,2) + 2^n`; the first term vanishes below `n = 2`.
fn weighted_rhs(n: i64, shift: i64) -> Result<BigInt> {
    let first = if n < 2 {
        BigInt::zero()
    } else {
        pow2_big(n - shift)? * c(n, 2)?
    };
    Ok(first + pow2_big(n)?)
}

fn weighted_printed(a: &[i64]) -> Result<BigInt> {
    weighted_rhs(a[0], 2)
}

fn weighted_corrected(a: &[i64]) -> Result<BigInt> {
    weighted_rhs(a[0], 1)
}

fn triangle_lhs(a: &[i64], counts: &dyn Counts) -> Result<BigInt> {
    let n = a[0];
    (1..=n)
        .flat_map(|i| (1..i).map(move |j| (i, j)))
        .map(|(i, j)| counts.rascal(i, j, 1))
        .sum()
}

fn triangle_rhs(a: &[i64]) -> Result<BigInt> {
    Ok(c(a[0] + 2, 4)? + c(a[0], 2)?)
}

fn alt_binomial_lhs(a: &[i64], counts: &dyn Counts) -> Result<BigInt> {
    let (r, n, k) = (a[0], a[1], a[2]);
    (0..=r)
        .map(|i| Ok(sign(r - i) * counts.words(r, i)? * counts.rascal(n + i, k, 1)?))
        .sum()
}

fn zero(_: &[i64]) -> Result<BigInt> {
    Ok(BigInt::zero())
}

fn alt_row_lhs(a: &[i64], counts: &dyn Counts) -> Result<BigInt> {
    Ok(alternating(row(counts, a[0], 1)?))
}

fn alt_row_rhs(a: &[i64]) -> Result<BigInt> {
    let n = a[0];
    Ok(if n % 2 == 1 { BigInt::zero() } else { big(1 - n / 2) })
}

fn product_lhs(a: &[i64], counts: &dyn Counts) -> Result<BigInt> {
    product_minus_one(counts, a[0], a[1])
}

fn product_formula_rhs(a: &[i64]) -> Result<BigInt> {
    product_rhs(a[0], a[1])
}

fn subset_ie_lhs(a: &[i64], counts: &dyn Counts) -> Result<BigInt> {
    let (n, m) = (a[0], a[1]);
    if m > MAX_SUBSET_GROUND {
        return Err(Error::limit(
            "inclusion-exclusion ground set",
            m as u64,
            MAX_SUBSET_GROUND as u64,
        ));
    }
    let values: Vec<BigInt> = (1..=m).map(|i| counts.rascal(n, i, 1)).collect::<Result<_>>()?;
    let mut total = BigInt::zero();
    for mask in 0u32..1 << m {
        let term: BigInt = values
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, v)| v)
            .product();
        if (m - i64::from(mask.count_ones())) % 2 == 0 {
            total += term;
        } else {
            total -= term;
        }
    }
    Ok(total)
}

fn binom_corollary_lhs(a: &[i64], counts: &dyn Counts) -> Result<BigInt> {
    let (n, m) = (a[0], a[1]);
    let f = factorial::<BigInt>(m)?;
    div_exact(&product_minus_one(counts, n, m)?, &(&f * &f))
}

fn binom_corollary_rhs(a: &[i64]) -> Result<BigInt> {
    c(a[0] - 1, a[1])
}

fn gen_row_lhs(a: &[i64], counts: &dyn Counts) -> Result<BigInt> {
    row_total(counts, a[0], level(a[1])?)
}

fn gen_row_rhs(a: &[i64]) -> Result<BigInt> {
    let (n, j) = (a[0], a[1]);
    (0..=2 * j + 1).map(|i| c(n, i)).sum()
}

fn half_pow2_lhs(a: &[i64], counts: &dyn Counts) -> Result<BigInt> {
    row_total(counts, 4 * a[0] + 3, level(a[0])?)
}

fn half_pow2_rhs(a: &[i64]) -> Result<BigInt> {
    pow2_big(4 * a[0] + 2)
}

fn forward_diff_lhs(a: &[i64], counts: &dyn Counts) -> Result<BigInt> {
    let (n, j) = (a[0], a[1]);
    let order = 2 * j + 1;
    let lvl = level(j)?;
    (0..=order)
        .map(|i| Ok(sign(order - i) * c(order, i)? * row_total(counts, n + i, lvl)?))
        .sum()
}

fn one(_: &[i64]) -> Result<BigInt> {
    Ok(BigInt::one())
}

fn gen_alt_row_lhs(a: &[i64], counts: &dyn Counts) -> Result<BigInt> {
    Ok(alternating(row(counts, a[0], level(a[1])?)?))
}

fn gen_alt_row_rhs(a: &[i64]) -> Result<BigInt> {
    let (n, j) = (a[0], a[1]);
    if n % 2 == 1 {
        return Ok(BigInt::zero());
    }
    // C(-1, j) = (-1)^j by convention, used only here
    let b = if n == 0 { sign(j) } else { c(n / 2 - 1, j)? };
    Ok(sign(j) * b)
}

fn always(_: &[i64]) -> bool {
    true
}

fn m_le_n(a: &[i64]) -> bool {
    a[1] <= a[0]
}

fn k_le_n(a: &[i64]) -> bool {
    a[2] <= a[1]
}

fn first(a: &[i64]) -> i64 {
    a[0]
}

fn second(a: &[i64]) -> i64 {
    a[1]
}

fn k_plus_r(a: &[i64]) -> i64 {
    a[0] + a[1]
}

fn n_plus_r(a: &[i64]) -> i64 {
    a[1] + a[0]
}

fn half_row(a: &[i64]) -> i64 {
    4 * a[0] + 3
}

fn diff_len(a: &[i64]) -> i64 {
    a[0] + 2 * a[1] + 1
}

const J_CAP: i64 = 4;
const R_CAP: i64 = 5;
const SUBSET_M_CAP: i64 = 10;

fn grid_n(n_max: i64) -> Grid {
    Grid::new().with("n", 0, n_max)
}

fn grid_n2(n_max: i64) -> Grid {
    Grid::new().with("n", 2, n_max)
}

fn grid_col(n_max: i64) -> Grid {
    Grid::new().with("k", 0, n_max).with("r", 0, n_max).with_row_max(n_max)
}

fn grid_alt_binomial(n_max: i64) -> Grid {
    Grid::new().with("r", 2, R_CAP).with("n", 0, n_max).with("k", 0, n_max)
}

fn grid_nm(n_max: i64) -> Grid {
    Grid::new().with("n", 1, n_max).with("m", 1, n_max)
}

fn grid_subset_ie(n_max: i64) -> Grid {
    Grid::new().with("n", 1, n_max).with("m", 1, n_max.min(SUBSET_M_CAP))
}

fn grid_nj(n_max: i64) -> Grid {
    Grid::new().with("n", 0, n_max).with("j", 0, J_CAP)
}

fn grid_half(n_max: i64) -> Grid {
    Grid::new().with("j", 0, (n_max - 3).div_euclid(4)).with_row_max(n_max)
}

static REGISTRY: [Identity; 13] = [
    Identity {
        name: "row_sum",
        anchor: "Row Sum theorem, \"\\binom{n+1}{3} + n+1\"",
        domain: "n >= 0",
        params: &[p("n", 0)],
        valid: always,
        row: first,
        max_len: first,
        lhs: row_sum_lhs,
        rhs: &[(Variant::Printed, row_sum_rhs)],
        default_grid: grid_n,
    },
    Identity {
        name: "col_sum",
        anchor: "Column Sum theorem, \"k\\binom{r+1}{2} + r + 1\"",
        domain: "k >= 0, r >= 0",
        params: &[p("k", 0), p("r", 0)],
        valid: always,
        row: k_plus_r,
        max_len: k_plus_r,
        lhs: col_sum_lhs,
        rhs: &[(Variant::Printed, col_sum_rhs)],
        default_grid: grid_col,
    },
    Identity {
        name: "weighted_row_sum",
        anchor: "Binomial-Weighted Row Sum, \"2^{n-2}\\binom{n}{2} + 2^{n}\"",
        domain: "n >= 0",
        params: &[p("n", 0)],
        valid: always,
        row: first,
        max_len: first,
        lhs: weighted_lhs,
        rhs: &[
            (Variant::Printed, weighted_printed),
            (Variant::Corrected, weighted_corrected),
        ],
        default_grid: grid_n,
    },
    Identity {
        name: "triangle_sum",
        anchor: "triangle sum theorem, \"\\binom{n+2}{4} + \\binom{n}{2}\"",
        domain: "n >= 2",
        params: &[p("n", 2)],
        valid: always,
        row: first,
        max_len: first,
        lhs: triangle_lhs,
        rhs: &[(Variant::Printed, triangle_rhs)],
        default_grid: grid_n2,
    },
    Identity {
        name: "alt_binomial",
        anchor: "alternating theorem, \"(-1)^{r-j}\\binom{r}{j}R_{n+j,k} = 0\"",
        domain: "r >= 2, 0 <= k <= n",
        params: &[p("r", 2), p("n", 0), p("k", 0)],
        valid: k_le_n,
        row: second,
        max_len: n_plus_r,
        lhs: alt_binomial_lhs,
        rhs: &[(Variant::Printed, zero)],
        default_grid: grid_alt_binomial,
    },
    Identity {
        name: "alt_row_sum",
        anchor: "Alternating Row Sum, \"1 - \\frac{n}{2}\"",
        domain: "n >= 0",
        params: &[p("n", 0)],
        valid: always,
        row: first,
        max_len: first,
        lhs: alt_row_lhs,
        rhs: &[(Variant::Printed, alt_row_rhs)],
        default_grid: grid_n,
    },
    Identity {
        name: "product_formula",
        anchor: "product theorem, \"m! (n-1) \\downarrow_{m}\"",
        domain: "1 <= m <= n",
        params: &[p("n", 1), p("m", 1)],
        valid: m_le_n,
        row: first,
        max_len: first,
        lhs: product_lhs,
        rhs: &[(Variant::Printed, product_formula_rhs)],
        default_grid: grid_nm,
    },
    Identity {
        name: "subset_ie",
        anchor: "product theorem, \"\\sum_{S \\subseteq [m]} (-1)^{m-|S|} \\prod_{i \\in S} R_{n,i}\"",
        domain: "1 <= m <= n, S ranging over subsets of {1..m}",
        params: &[p("n", 1), p("m", 1)],
        valid: m_le_n,
        row: first,
        max_len: first,
        lhs: subset_ie_lhs,
        rhs: &[(Variant::Printed, product_formula_rhs)],
        default_grid: grid_subset_ie,
    },
    Identity {
        name: "binom_corollary",
        anchor: "product corollary, \"\\binom{n-1}{m}\"",
        domain: "1 <= m <= n",
        params: &[p("n", 1), p("m", 1)],
        valid: m_le_n,
        row: first,
        max_len: first,
        lhs: binom_corollary_lhs,
        rhs: &[(Variant::Printed, binom_corollary_rhs)],
        default_grid: grid_nm,
    },
    Identity {
        name: "gen_row_sum",
        anchor: "Generalized Row Sum, \"\\sum_{k=0}^{2j+1} \\binom{n}{k}\"",
        domain: "n >= 0, j >= 0",
        params: &[p("n", 0), p("j", 0)],
        valid: always,
        row: first,
        max_len: first,
        lhs: gen_row_lhs,
        rhs: &[(Variant::Printed, gen_row_rhs)],
        default_grid: grid_nj,
    },
    Identity {
        name: "half_pow2",
        anchor: "half-row corollary, \"2^{4j+2}\"",
        domain: "j >= 0",
        params: &[p("j", 0)],
        valid: always,
        row: half_row,
        max_len: half_row,
        lhs: half_pow2_lhs,
        rhs: &[(Variant::Printed, half_pow2_rhs)],
        default_grid: grid_half,
    },
    Identity {
        name: "forward_diff",
        anchor: "forward difference corollary, \"forward difference operator with respect\"",
        domain: "n >= 0, j >= 0",
        params: &[p("n", 0), p("j", 0)],
        valid: always,
        row: first,
        max_len: diff_len,
        lhs: forward_diff_lhs,
        rhs: &[(Variant::Printed, one)],
        default_grid: grid_nj,
    },
    Identity {
        name: "gen_alt_row_sum",
        anchor: "generalized alternating row sum, \"(-1)^{j} \\binom{n/2 - 1}{j}\"",
        domain: "n >= 0, j >= 0, with C(-1, j) = (-1)^j",
        params: &[p("n", 0), p("j", 0)],
        valid: always,
        row: first,
        max_len: first,
        lhs: gen_alt_row_lhs,
        rhs: &[(Variant::Printed, gen_alt_row_rhs)],
        default_grid: grid_nj,
    },
];

#[cfg(test)]
mod tests {
    use super::*;

    fn ev(name: &str, params: &[(&str, i64)]) -> (i64, i64) {
        let (l, r) = evaluate(name, params).unwrap();
        (l.try_into().unwrap(), r.try_into().unwrap())
    }

    #[test]
    fn spec_examples() {
        assert_eq!(ev("row_sum", &[("n", 6)]), (42, 42));
        assert_eq!(ev("alt_row_sum", &[("n", 6)]), (-2, -2));
        assert_eq!(ev("triangle_sum", &[("n", 2)]), (2, 2));
        assert_eq!(ev("product_formula", &[("n", 4), ("m", 2)]), (12, 12));
        assert_eq!(ev("weighted_row_sum", &[("n", 2)]), (6, 5));
        assert_eq!(ev("weighted_row_sum", &[("n", 3)]), (20, 14));
    }

    #[test]
    fn registry_shape() {
        let ids = list_identities();
        assert_eq!(ids.len(), 13);
        assert!(ids.iter().map(Identity::name).all_unique());
        for id in ids {
            let cell = id.smallest_cell();
            assert!(id.in_domain(&cell), "{}", id.name());
            id.lhs(&cell, &Formula).unwrap();
            for v in id.variants() {
                id.rhs(v, &cell).unwrap();
            }
        }
    }

    #[test]
    fn domain_and_name_errors() {
        assert!(matches!(evaluate("nope", &[]), Err(Error::UnknownIdentity(_))));
        assert!(matches!(evaluate("row_sum", &[]), Err(Error::DomainViolation(_))));
        assert!(matches!(
            evaluate("row_sum", &[("n", -1)]),
            Err(Error::DomainViolation(_))
        ));
        assert!(matches!(
            evaluate("row_sum", &[("n", 1), ("q", 1)]),
            Err(Error::DomainViolation(_))
        ));
        assert!(matches!(
            evaluate("product_formula", &[("n", 2), ("m", 3)]),
            Err(Error::DomainViolation(_))
        ));
    }

    #[test]
    fn grid_round_trip() {
        let g: Grid = "n=0..=16 j=0..=4 row<=16".parse().unwrap();
        assert_eq!(g.to_string(), "n=0..=16 j=0..=4 row<=16");
        assert_eq!(g.range("j"), Some((0, 4)));
        assert!("n=0..16".parse::<Grid>().is_err());
    }

    #[test]
    fn gen_row_sum_cells() {
        let reps = verify_range(
            "gen_row_sum",
            &Grid::new().with("n", 0, 30).with("j", 0, 4),
            &VerifyOptions::default(),
            &Limits::default(),
        )
        .unwrap();
        assert_eq!(reps.len(), 1);
        assert_eq!(reps[0].cells, 155);
        assert!(reps[0].passed());
    }

    #[test]
    fn half_pow2_small() {
        let id = identity("half_pow2").unwrap();
        let grid = id.default_grid(16);
        assert_eq!(grid.range("j"), Some((0, 3)));
        let opts = VerifyOptions {
            mode: LhsMode::Oracle,
            timing: false,
        };
        let reps = verify_range("half_pow2", &grid, &opts, &Limits::default()).unwrap();
        assert!(reps[0].passed());
        assert_eq!(reps[0].cells, 4);
    }

    #[test]
    fn weighted_variants() {
        let reps = verify_range(
            "weighted_row_sum",
            &Grid::new().with("n", 0, 8),
            &VerifyOptions::default(),
            &Limits::default(),
        )
        .unwrap();
        let printed = &reps[0];
        assert_eq!(printed.variant, Variant::Printed);
        assert!(!printed.effective);
        assert_eq!(printed.failures.len(), 7);
        assert_eq!(printed.failures[0].params["n"], 2);
        assert_eq!(
            (printed.failures[0].lhs.clone(), printed.failures[0].rhs.clone()),
            (big(6), big(5))
        );
        assert!(reps[1].passed() && reps[1].effective);
        assert!(effective_passed(&reps));
    }

    #[test]
    fn too_many_cells() {
        let limits = Limits {
            max_cells: 10,
            ..Limits::default()
        };
        let r = verify_range(
            "row_sum",
            &Grid::new().with("n", 0, 100),
            &VerifyOptions::default(),
            &limits,
        );
        assert!(matches!(r, Err(Error::ResourceLimit { .. })));
    }
}
