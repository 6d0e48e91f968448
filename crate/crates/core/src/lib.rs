//! Rascal numbers `R_{n,k} = k(n-k) + 1` and their generalization
//! `R^{(j)}_{n,k}`, the binary words and ascent sequences they count, the maps
//! between those families and a verifier for identities among them.
//!
//! Arithmetic is generic over [`Scalar`], implemented for `i64`, `i128` and
//! `BigInt`. Fixed-width types report overflow as an error rather than
//! wrapping; [`scalar::with_fallback`] retries in `BigInt`.

pub mod bijection;
pub mod binomial;
pub mod enumerate;
pub mod error;
pub mod identity;
pub mod limits;
pub mod number;
pub mod scalar;
pub mod word;

pub use num_bigint::BigInt;

pub use error::{Error, Result};
pub use limits::Limits;
pub use number::{rascal_gen_value, rascal_value, Method, RascalQuery};
pub use scalar::Scalar;
pub use word::{BinaryWord, GenWord, Pattern};

/// Exact integers, used wherever a result may grow without bound.
pub type ExactInt = BigInt;
/// The fast fixed-width path tried before falling back to [`ExactInt`].
pub type FastInt = i128;
/// Small values such as word counts at enumerable sizes.
pub type SmallInt = i64;
