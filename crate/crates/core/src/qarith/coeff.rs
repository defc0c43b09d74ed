//! Exact coefficient fields for the polynomial layer.
//!
//! Everything above this module is written against [`Coeff`], a rational
//! field with just enough number theory to make polynomials primitive and to
//! pull perfect squares out of constants. The crate instantiates it with
//! arbitrary-precision rationals; `Ratio<i64>` is provided for small,
//! overflow-free experiments.

use std::fmt::{Debug, Display};
use std::hash::Hash;

use num_bigint::BigInt;
use num_integer::{Integer, Roots};
use num_rational::Ratio;
use num_traits::{FromPrimitive, Num, One, Signed, ToPrimitive, Zero};

use super::poly;

/// Trial-division bound used when splitting square factors out of integer constants.
const SQUARE_TRIAL_BOUND: u32 = 1000;

pub trait Coeff:
    Clone + Debug + Display + Ord + Hash + Num + Signed + FromPrimitive + ToPrimitive + Send + Sync + 'static
{
    /// The positive rational `c` such that `coeffs / c` are coprime integers.
    /// Returns one for an all-zero slice.
    fn content(coeffs: &[Self]) -> Self;

    /// Splits a nonzero value into `(root, rest)` with `self = root^2 * rest`
    /// where `rest` is an integer with no square factor found by trial
    /// division (and no remaining perfect-square cofactor). The sign of
    /// `self` stays in `rest`.
    fn split_square(&self) -> (Self, Self);

    /// Polynomial gcd of two dense coefficient vectors (ascending order),
    /// returned primitive with positive leading coefficient.
    fn poly_gcd(a: &[Self], b: &[Self]) -> Vec<Self> {
        poly::euclid_gcd(a, b)
    }
}

fn ratio_content<T>(coeffs: &[Ratio<T>]) -> Ratio<T>
where
    T: Clone + Integer + Signed,
{
    let mut num = T::zero();
    let mut den = T::one();
    for c in coeffs.iter().filter(|c| !c.is_zero()) {
        num = num.gcd(c.numer());
        den = den.lcm(c.denom());
    }
    if num.is_zero() {
        Ratio::one()
    } else {
        Ratio::new(num, den)
    }
}

fn split_integer_square<T>(n: &T) -> (T, T)
where
    T: Clone + Integer + Signed + Roots + FromPrimitive,
{
    let negative = n.is_negative();
    let mut rest = n.abs();
    let mut root = T::one();
    let mut p: u32 = 2;
    while p <= SQUARE_TRIAL_BOUND {
        let pt = T::from_u32(p).expect("small prime fits");
        let sq = pt.clone() * pt.clone();
        if sq > rest {
            break;
        }
        while (rest.clone() % sq.clone()).is_zero() {
            rest = rest / sq.clone();
            root = root * pt.clone();
        }
        p += if p == 2 { 1 } else { 2 };
    }
    let s = rest.sqrt();
    if s.clone() * s.clone() == rest {
        root = root * s;
        rest = T::one();
    }
    if negative {
        rest = -rest;
    }
    (root, rest)
}

fn ratio_split_square<T>(x: &Ratio<T>) -> (Ratio<T>, Ratio<T>)
where
    T: Clone + Integer + Signed + Roots + FromPrimitive,
{
    assert!(!x.is_zero(), "split_square of zero");
    // n/d = (n*d) / d^2
    let m = x.numer().clone() * x.denom().clone();
    let (root, rest) = split_integer_square(&m);
    (Ratio::new(root, x.denom().clone()), Ratio::from_integer(rest))
}

impl Coeff for Ratio<BigInt> {
    fn content(coeffs: &[Self]) -> Self {
        ratio_content(coeffs)
    }

    fn split_square(&self) -> (Self, Self) {
        ratio_split_square(self)
    }

    fn poly_gcd(a: &[Self], b: &[Self]) -> Vec<Self> {
        poly::rational_gcd(a, b)
    }
}

impl Coeff for Ratio<i64> {
    fn content(coeffs: &[Self]) -> Self {
        ratio_content(coeffs)
    }

    fn split_square(&self) -> (Self, Self) {
        ratio_split_square(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn content_makes_primitive() {
        let c = BigRational::content(&[q(2, 3), q(4, 9), q(0, 1)]);
        assert_eq!(c, q(2, 9));
        assert_eq!(BigRational::content(&[]), q(1, 1));
    }

    #[test]
    fn split_square_extracts_roots() {
        assert_eq!(q(8, 1).split_square(), (q(2, 1), q(2, 1)));
        assert_eq!(q(9, 4).split_square(), (q(3, 2), q(1, 1)));
        assert_eq!(q(-12, 1).split_square(), (q(2, 1), q(-3, 1)));
        // 1/2 = 2 / 2^2
        assert_eq!(q(1, 2).split_square(), (q(1, 2), q(2, 1)));
        // large prime squared falls through to the perfect-square test
        let p = 1_000_003i64;
        assert_eq!(q(p * p, 1).split_square(), (q(p, 1), q(1, 1)));
    }

    #[test]
    fn small_ratio_impl_agrees() {
        let (r, s) = Ratio::<i64>::new(50, 1).split_square();
        assert_eq!((r, s), (Ratio::new(5, 1), Ratio::new(2, 1)));
    }
}
