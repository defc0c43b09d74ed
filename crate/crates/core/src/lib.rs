//! Exact finite truncations of the highest-weight `U_h(gl_inf)` modules
//! `V({M})` in the C-pattern basis.
//!
//! The crate is layered bottom-up:
//!
//! - [`qarith`]: Laurent polynomials in `q`, q-brackets, rational functions
//!   and canonical signed radicals, generic over an exact coefficient field.
//! - [`patterns`]: signatures, C-patterns, basis enumeration, weights.
//! - [`action`]: the Chevalley generators acting on patterns, generic over a
//!   bracket model (deformed, classical, or floating point at a fixed `q`).
//! - [`verify`]: relation, identity, highest-weight and singular-vector checks.
//! - [`io`]: text and JSON formats shared with the command-line tool.

pub mod action;
pub mod error;
pub mod io;
pub mod patterns;
pub mod qarith;
pub mod verify;

pub use error::{Error, Result};

/// Exact rationals used throughout the engine.
pub type Rational = num_rational::BigRational;
pub type QLaurent = qarith::Laurent<Rational>;
pub type QFraction = qarith::Fraction<Rational>;
pub type QRadical = qarith::RadicalScalar<Rational>;
pub type QRadSum = qarith::RadSum<Rational>;

/// Parses `n` or `n/d` into an exact rational.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim().parse().ok()?, d.trim().parse().ok()?),
        None => (s.parse().ok()?, num_bigint::BigInt::from(1)),
    };
    if num_traits::Zero::is_zero(&d) {
        return None;
    }
    Some(Rational::new(n, d))
}
