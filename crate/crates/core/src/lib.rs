//! Exact computations around homogeneous Dirac and Euler operators on
//! equal-rank symmetric pairs: root-system combinatorics, Weyl groups,
//! formal characters, cyclotomic values of characters at torsion elements,
//! elliptic orbital integrals and von Neumann index formulas.
//!
//! Everything is exact: weights and form values are rationals, character
//! multiplicities are integers, evaluations at finite-order group elements
//! are elements of cyclotomic fields. No floating point enters any result
//! (approximations are available only through explicitly named `*_approx`
//! accessors).
//!
//! The invariant bilinear form is normalized so that long roots have
//! squared length 2 in every simple factor ("long-root-2" normalization).

pub mod charlib;
pub mod cyclo;
pub mod diracindex;
mod error;
pub(crate) mod linalg;
pub mod orbital;
pub mod presets;
pub mod rootdata;
pub mod subsystem;
pub mod suite;
pub mod sympair;

pub use error::{Error, Result};

/// Exact rational scalar used throughout.
pub type Rational = num::BigRational;
/// Exact integer scalar used throughout.
pub type Int = num::BigInt;
/// Exact non-negative integer (Weyl group orders, dimensions).
pub type Nat = num::BigUint;

pub(crate) fn rat_int(n: i64) -> Rational {
    Rational::from_integer(Int::from(n))
}

pub(crate) fn rat(p: i64, q: i64) -> Rational {
    Rational::new(Int::from(p), Int::from(q))
}

pub(crate) fn fmt_rat_slice(v: &[Rational]) -> String {
    v.iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(", ")
}

pub(crate) fn fmt_int_slice(v: &[i64]) -> String {
    v.iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(", ")
}
