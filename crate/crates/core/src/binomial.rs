//! Binomial coefficients, factorials and falling factorials over any [`Scalar`].

use crate::error::{Error, Result};
use crate::scalar::{div_exact, lift, mul, Scalar};

/// `C(n, k)`, zero when `k < 0`, `n < 0` or `k > n`.
///
/// Negative upper arguments are treated as empty ground sets. The one place that
/// needs `C(-1, j) = (-1)^j` handles it explicitly.
pub fn binomial<T: Scalar>(n: i64, k: i64) -> Result<T> {
    if n < 0 || k < 0 || k > n {
        return Ok(T::zero());
    }
    let k = k.min(n - k);
    let mut acc = T::one();
    for i in 0..k {
        acc = mul(&acc, &lift(n - i)?)?;
        acc = div_exact(&acc, &lift(i + 1)?)?;
    }
    Ok(acc)
}

pub fn factorial<T: Scalar>(n: i64) -> Result<T> {
    if n < 0 {
        return Err(Error::domain(format!("factorial of negative {n}")));
    }
    (1..=n).try_fold(T::one(), |acc, i| mul(&acc, &lift(i)?))
}

/// `(n)↓k = n (n-1) ... (n-k+1)`; 1 when `k = 0` and 0 when `k > n`.
pub fn falling_factorial<T: Scalar>(n: i64, k: i64) -> Result<T> {
    if n < 0 || k < 0 {
        return Err(Error::domain(format!(
            "falling factorial needs n, k >= 0, got ({n}, {k})"
        )));
    }
    if k > n {
        return Ok(T::zero());
    }
    (1..=k).try_fold(T::one(), |acc, i| mul(&acc, &lift(n - i + 1)?))
}

pub fn pow2<T: Scalar>(e: u32) -> Result<T> {
    let two: T = lift(2)?;
    (0..e).try_fold(T::one(), |acc, _| mul(&acc, &two))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    #[test]
    fn pascal_rule_small() {
        for n in 1..30i64 {
            for k in 1..n {
                let lhs: i64 = binomial(n, k).unwrap();
                let rhs: i64 = binomial::<i64>(n - 1, k).unwrap() + binomial::<i64>(n - 1, k - 1).unwrap();
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn binomial_conventions() {
        assert_eq!(binomial::<i64>(4, 5).unwrap(), 0);
        assert_eq!(binomial::<i64>(4, -1).unwrap(), 0);
        assert_eq!(binomial::<i64>(-1, 2).unwrap(), 0);
        assert_eq!(binomial::<i64>(0, 0).unwrap(), 1);
    }

    #[test]
    fn falling_factorial_examples() {
        assert_eq!(falling_factorial::<i64>(3, 2).unwrap(), 6);
        assert_eq!(falling_factorial::<i64>(9, 0).unwrap(), 1);
        assert_eq!(falling_factorial::<i64>(2, 5).unwrap(), 0);
        assert!(falling_factorial::<i64>(-1, 2).is_err());
    }

    #[test]
    fn big_values_need_bigint() {
        assert!(binomial::<i64>(200, 100).is_err());
        let c: BigInt = binomial(200, 100).unwrap();
        assert_eq!(
            c.to_string(),
            "90548514656103281165404177077484163874504589675413336841320"
        );
        assert_eq!(pow2::<BigInt>(130).unwrap(), BigInt::from(1) << 130);
    }
}
