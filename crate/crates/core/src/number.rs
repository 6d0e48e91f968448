//! Rascal numbers `R_{n,k}` and their generalization `R^{(j)}_{n,k}`.
//!
//! `R^{(j)}_{n,k}` counts binary words of length `n` with exactly `k` ones and
//! at most `j` ascents; `R_{n,k} = R^{(1)}_{n,k}`. Four independent routes
//! are provided:
//!
//! * [`Method::Closed`]: `k(n-k) + 1`, or `sum_{i<=j} C(k,i) C(n-k,i)` for general `j`;
//! * [`Method::Multiplicative`]: the quotient recurrence
//!   `R_{n,k} = (R_{n-1,k} R_{n-1,k-1} + 1) / R_{n-2,k-1}` (only `j = 1`), with
//!   every division checked for exactness;
//! * [`Method::Linear`]: the additive recurrence
//!   `R^{(j)}_{n,k} = R^{(j)}_{n-1,k} + R^{(j)}_{n-1,k-1} - R^{(j)}_{n-2,k-1} + R^{(j-1)}_{n-2,k-1}`
//!   memoized in a [`LinearTable`];
//! * [`Method::Enumeration`]: counting the structured word generator.
//!
//! Every query outside the triangle (`n < 0`, `k < 0` or `k > n`) is 0.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::binomial::binomial;
use crate::enumerate::words_with_ascents;
use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::scalar::{add, div_exact, lift, lift_u64, mul, sub, with_fallback, Scalar};

pub use crate::binomial::falling_factorial;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Closed,
    Multiplicative,
    Linear,
    Enumeration,
}

impl Method {
    pub const ALL: [Method; 4] = [
        Method::Closed,
        Method::Multiplicative,
        Method::Linear,
        Method::Enumeration,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Method::Closed => "closed",
            Method::Multiplicative => "multiplicative",
            Method::Linear => "linear",
            Method::Enumeration => "enumeration",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Method::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| Error::Parse {
                input: s.to_string(),
                reason: "expected one of closed, multiplicative, linear, enumeration".into(),
            })
    }
}

/// A single `(n, k, j)` lookup together with the route used to answer it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RascalQuery {
    pub n: i64,
    pub k: i64,
    pub j: u32,
    pub method: Method,
}

impl RascalQuery {
    pub fn new(n: i64, k: i64) -> Self {
        RascalQuery {
            n,
            k,
            j: 1,
            method: Method::Closed,
        }
    }

    pub fn with_j(mut self, j: u32) -> Self {
        self.j = j;
        self
    }

    pub fn with_method(mut self, method: Method) -> Self {
        self.method = method;
        self
    }

    pub fn evaluate<T: Scalar>(&self, limits: &Limits) -> Result<T> {
        rascal_gen_value_with(self.n, self.k, self.j, self.method, limits)
    }

    /// Evaluates on the checked 128-bit path, redoing the work with `BigInt`
    /// only if that overflowed.
    pub fn evaluate_exact(&self, limits: &Limits) -> Result<BigInt> {
        with_fallback(|| self.evaluate::<i128>(limits), || self.evaluate::<BigInt>(limits))
    }
}

fn in_triangle(n: i64, k: i64) -> bool {
    n >= 0 && k >= 0 && k <= n
}

/// `R_{n,k}` by the chosen route, with default resource limits.
pub fn rascal_value<T: Scalar>(n: i64, k: i64, method: Method) -> Result<T> {
    rascal_gen_value_with(n, k, 1, method, &Limits::default())
}

/// `R^{(j)}_{n,k}` by the chosen route, with default resource limits.
pub fn rascal_gen_value<T: Scalar>(n: i64, k: i64, j: u32, method: Method) -> Result<T> {
    rascal_gen_value_with(n, k, j, method, &Limits::default())
}

pub fn rascal_gen_value_with<T: Scalar>(n: i64, k: i64, j: u32, method: Method, limits: &Limits) -> Result<T> {
    match method {
        Method::Closed => closed_gen(n, k, j),
        Method::Multiplicative if j == 1 => multiplicative(n, k),
        Method::Multiplicative => Err(Error::domain(format!(
            "the multiplicative recurrence only covers j = 1, got j = {j}"
        ))),
        Method::Linear => {
            if !in_triangle(n, k) {
                return Ok(T::zero());
            }
            limits.check_rows(n as usize)?;
            let table = LinearTable::build(n as usize, j)?;
            Ok(table.get(n, k, j).expect("table covers the query"))
        }
        Method::Enumeration => enumeration(n, k, j, limits),
    }
}

/// `k (n - k) + 1` inside the triangle.
pub fn closed<T: Scalar>(n: i64, k: i64) -> Result<T> {
    if !in_triangle(n, k) {
        return Ok(T::zero());
    }
    let interior = mul(&lift::<T>(k)?, &lift(n - k)?)?;
    add(&interior, &T::one())
}

/// `sum_{i=0}^{j} C(k, i) C(n-k, i)` inside the triangle.
pub fn closed_gen<T: Scalar>(n: i64, k: i64, j: u32) -> Result<T> {
    if !in_triangle(n, k) {
        return Ok(T::zero());
    }
    if j == 1 {
        return closed(n, k);
    }
    let top = i64::from(j).min(k).min(n - k);
    (0..=top).try_fold(T::zero(), |acc, i| {
        let term = mul(&binomial::<T>(k, i)?, &binomial(n - k, i)?)?;
        add(&acc, &term)
    })
}

/// Rows `0..=n_max` of the quotient recurrence, truncated to columns `0..=k_max`.
///
/// The boundary `k = 0`, `k = n` is 1; every interior cell is a division that
/// must come out exact, and an [`Error::InexactDivision`] here would mean the
/// recurrence itself is wrong.
pub fn multiplicative_rows<T: Scalar>(n_max: usize, k_max: usize) -> Result<Vec<Vec<T>>> {
    let mut rows: Vec<Vec<T>> = Vec::with_capacity(n_max + 1);
    for r in 0..=n_max {
        let width = r.min(k_max) + 1;
        let mut row = Vec::with_capacity(width);
        for c in 0..width {
            if c == 0 || c == r {
                row.push(T::one());
                continue;
            }
            let numerator = add(&mul(&rows[r - 1][c], &rows[r - 1][c - 1])?, &T::one())?;
            row.push(div_exact(&numerator, &rows[r - 2][c - 1])?);
        }
        rows.push(row);
    }
    Ok(rows)
}

fn multiplicative<T: Scalar>(n: i64, k: i64) -> Result<T> {
    if !in_triangle(n, k) {
        return Ok(T::zero());
    }
    let rows = multiplicative_rows::<T>(n as usize, k as usize)?;
    Ok(rows[n as usize][k as usize].clone())
}

fn enumeration<T: Scalar>(n: i64, k: i64, j: u32, limits: &Limits) -> Result<T> {
    if !in_triangle(n, k) {
        return Ok(T::zero());
    }
    limits.check_word_len(n as usize)?;
    lift_u64(words_with_ascents(n as usize, k as usize, j).count() as u64)
}

/// Memoized triangles `R^{(i)}_{n,k}` for `0 <= i <= j_max`, `0 <= n <= n_max`,
/// filled by the additive recurrence.
///
/// Built once, then read-only; share it freely across threads.
#[derive(Debug, Clone)]
pub struct LinearTable<T> {
    n_max: usize,
    j_max: u32,
    // levels[i][n][k]; levels past n_max / 2 would repeat the binomial triangle
    levels: Vec<Vec<Vec<T>>>,
}

impl<T: Scalar> LinearTable<T> {
    pub fn build(n_max: usize, j_max: u32) -> Result<Self> {
        let stored = (j_max as usize).min(n_max / 2);
        let mut levels: Vec<Vec<Vec<T>>> = Vec::with_capacity(stored + 1);
        levels.push((0..=n_max).map(|n| vec![T::one(); n + 1]).collect());
        for j in 1..=stored {
            let below = &levels[j - 1];
            let mut rows: Vec<Vec<T>> = Vec::with_capacity(n_max + 1);
            for n in 0..=n_max {
                if n < 2 {
                    rows.push(vec![T::one(); n + 1]);
                    continue;
                }
                let at = |rows: &Vec<Vec<T>>, n: usize, k: i64| -> T {
                    if k < 0 || k as usize > n {
                        T::zero()
                    } else {
                        rows[n][k as usize].clone()
                    }
                };
                let mut row = Vec::with_capacity(n + 1);
                for k in 0..=n as i64 {
                    let mut v = add(&at(&rows, n - 1, k), &at(&rows, n - 1, k - 1))?;
                    v = sub(&v, &at(&rows, n - 2, k - 1))?;
                    v = add(&v, &at(below, n - 2, k - 1))?;
                    row.push(v);
                }
                rows.push(row);
            }
            levels.push(rows);
        }
        Ok(LinearTable { n_max, j_max, levels })
    }

    pub fn n_max(&self) -> usize {
        self.n_max
    }

    pub fn j_max(&self) -> u32 {
        self.j_max
    }

    /// `None` when `(n, j)` lies beyond what was built; 0 outside the triangle.
    pub fn get(&self, n: i64, k: i64, j: u32) -> Option<T> {
        if j > self.j_max || n > self.n_max as i64 {
            return None;
        }
        if !in_triangle(n, k) {
            return Some(T::zero());
        }
        let level = (j as usize).min(self.levels.len() - 1);
        Some(self.levels[level][n as usize][k as usize].clone())
    }

    pub fn row(&self, n: usize, j: u32) -> Option<&[T]> {
        if j > self.j_max || n > self.n_max {
            return None;
        }
        let level = (j as usize).min(self.levels.len() - 1);
        Some(&self.levels[level][n])
    }
}

/// Number of words in `B_k(n)` that start with at least `l` ones and end with
/// at least `u` zeros, which is `R_{n-u-l, k-l}`.
pub fn prefix_suffix_count<T: Scalar>(n: i64, k: i64, l: i64, u: i64) -> Result<T> {
    if l < 0 || u < 0 {
        return Err(Error::domain(format!(
            "prefix and suffix lengths must be >= 0, got ({l}, {u})"
        )));
    }
    closed(n - u - l, k - l)
}

/// `R^{(j)}_{n,k} R^{(j)}_{n-2,k-1} - R^{(j)}_{n-1,k} R^{(j)}_{n-1,k-1}`.
pub fn e_defect<T: Scalar>(n: i64, k: i64, j: u32) -> Result<T> {
    let r = |n, k| closed_gen::<T>(n, k, j);
    let lhs = mul(&r(n, k)?, &r(n - 2, k - 1)?)?;
    let rhs = mul(&r(n - 1, k)?, &r(n - 1, k - 1)?)?;
    sub(&lhs, &rhs)
}

/// Rows `0..=n_max` of the `j`-th generalized triangle.
pub fn triangle_rows<T: Scalar>(n_max: usize, j: u32, limits: &Limits) -> Result<Vec<Vec<T>>> {
    limits.check_rows(n_max)?;
    let table = LinearTable::<T>::build(n_max, j)?;
    Ok((0..=n_max)
        .map(|n| table.row(n, j).expect("row within table").to_vec())
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(n: i64, k: i64, method: Method) -> i64 {
        rascal_value(n, k, method).unwrap()
    }

    fn gv(n: i64, k: i64, j: u32, method: Method) -> i64 {
        rascal_gen_value(n, k, j, method).unwrap()
    }

    #[test]
    fn value_examples() {
        assert_eq!(v(6, 3, Method::Closed), 10);
        assert_eq!(v(6, 4, Method::Multiplicative), 9);
        assert_eq!(v(5, 2, Method::Linear), 7);
        for m in Method::ALL {
            assert_eq!(v(3, 5, m), 0);
            assert_eq!(v(-1, 0, m), 0);
            assert_eq!(v(4, -2, m), 0);
        }
    }

    #[test]
    fn gen_value_examples() {
        assert_eq!(gv(4, 2, 1, Method::Closed), 5);
        assert_eq!(gv(5, 2, 0, Method::Closed), 1);
        assert_eq!(gv(6, 3, 2, Method::Closed), 19);
        assert_eq!(gv(6, 3, 2, Method::Linear), 19);
        assert_eq!(gv(6, 3, 2, Method::Enumeration), 19);
        assert!(rascal_gen_value::<i64>(6, 3, 2, Method::Multiplicative).is_err());
    }

    #[test]
    fn boundary_is_one() {
        for n in 0..12 {
            for m in Method::ALL {
                assert_eq!(v(n, 0, m), 1);
                assert_eq!(v(n, n, m), 1);
            }
        }
    }

    #[test]
    fn enumeration_respects_cap() {
        let limits = Limits::default();
        let q = RascalQuery::new(21, 3).with_method(Method::Enumeration);
        assert!(matches!(q.evaluate::<i64>(&limits), Err(Error::ResourceLimit { .. })));
        let raised = Limits {
            max_word_len: 21,
            ..limits
        };
        assert_eq!(q.evaluate::<i64>(&raised).unwrap(), 3 * 18 + 1);
    }

    #[test]
    fn exact_fallback_matches_bigint() {
        let q = RascalQuery::new(300, 150).with_j(150);
        let exact = q.evaluate_exact(&Limits::default()).unwrap();
        assert!(q.evaluate::<i128>(&Limits::default()).is_err());
        assert_eq!(exact, binomial::<BigInt>(300, 150).unwrap());
    }

    #[test]
    fn falling_factorial_and_prefix_suffix() {
        assert_eq!(falling_factorial::<i64>(3, 2).unwrap(), 6);
        assert_eq!(prefix_suffix_count::<i64>(6, 3, 1, 1).unwrap(), 5);
        assert_eq!(prefix_suffix_count::<i64>(6, 4, 2, 1).unwrap(), 3);
        assert_eq!(prefix_suffix_count::<i64>(7, 3, 0, 0).unwrap(), v(7, 3, Method::Closed));
        assert!(prefix_suffix_count::<i64>(6, 3, -1, 0).is_err());
    }

    #[test]
    fn e_defect_examples() {
        assert_eq!(e_defect::<i64>(6, 3, 1).unwrap(), 1);
        assert_eq!(e_defect::<i64>(6, 3, 2).unwrap(), 14);
        for n in 2..10 {
            for j in 0..4 {
                assert_eq!(e_defect::<i64>(n, 0, j).unwrap(), 0);
            }
        }
    }

    #[test]
    fn triangle_examples() {
        let rows = triangle_rows::<i64>(6, 1, &Limits::default()).unwrap();
        assert_eq!(rows[6], vec![1, 6, 9, 10, 9, 6, 1]);
        assert_eq!(rows[4], vec![1, 4, 5, 4, 1]);
        let zero = triangle_rows::<i64>(2, 0, &Limits::default()).unwrap();
        assert_eq!(zero, vec![vec![1], vec![1, 1], vec![1, 1, 1]]);
        let two = triangle_rows::<i64>(4, 2, &Limits::default()).unwrap();
        assert_eq!(two[4], vec![1, 4, 6, 4, 1]);
        let limits = Limits {
            max_rows: 3,
            ..Limits::default()
        };
        assert!(triangle_rows::<i64>(4, 1, &limits).is_err());
    }

    #[test]
    fn method_names_round_trip() {
        for m in Method::ALL {
            assert_eq!(m.name().parse::<Method>().unwrap(), m);
        }
        assert!("fast".parse::<Method>().is_err());
    }
}
