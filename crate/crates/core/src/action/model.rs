//! Scalar rings the generators can be evaluated in.
//!
//! The transformation coefficients only ever need `[x]` for integers `x` and
//! positive square roots of ratios of bracket products, so a
//! [`BracketModel`] supplies exactly those two things. Swapping the model
//! swaps the deformed action for the classical one or for a floating point
//! evaluation at a fixed `q`.

use std::collections::HashMap;
use std::fmt;
use std::sync::Mutex;

use num_traits::{Float, One, Zero};

use crate::error::{Error, Result};
use crate::qarith::{q_bracket, sqrt_bracket_ratio, Fraction, Laurent, RadSum, RadicalScalar};
use crate::Rational;

/// Ring operations used by the operator machinery.
pub trait MatrixScalar: Clone + fmt::Debug + fmt::Display + Send + Sync + 'static {
    fn zero() -> Self;
    fn from_rational(r: &Rational) -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;

    fn from_integer(n: i64) -> Self {
        Self::from_rational(&Rational::from_integer(n.into()))
    }

    fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }
}

impl MatrixScalar for RadSum<Rational> {
    fn zero() -> Self {
        RadSum::zero()
    }

    fn from_rational(r: &Rational) -> Self {
        RadSum::from_fraction(Fraction::constant(r.clone()))
    }

    fn is_zero(&self) -> bool {
        RadSum::is_zero(self)
    }

    fn add(&self, other: &Self) -> Self {
        RadSum::add(self, other)
    }

    fn mul(&self, other: &Self) -> Self {
        RadSum::mul(self, other)
    }

    fn neg(&self) -> Self {
        RadSum::neg(self)
    }
}

macro_rules! float_scalar {
    ($t:ty) => {
        impl MatrixScalar for $t {
            fn zero() -> Self {
                0.0
            }

            fn from_rational(r: &Rational) -> Self {
                num_traits::ToPrimitive::to_f64(r).expect("rational fits a float") as $t
            }

            fn is_zero(&self) -> bool {
                *self == 0.0
            }

            fn add(&self, other: &Self) -> Self {
                self + other
            }

            fn mul(&self, other: &Self) -> Self {
                self * other
            }

            fn neg(&self) -> Self {
                -self
            }
        }
    };
}

float_scalar!(f64);
float_scalar!(f32);

pub trait BracketModel: Send + Sync {
    type Scalar: MatrixScalar;

    fn name(&self) -> &'static str;

    /// `[x]`.
    fn bracket(&self, x: i64) -> Self::Scalar;

    /// `sqrt(prod [num] / prod [den])`; all arguments are positive.
    fn sqrt_ratio(&self, num: &[i64], den: &[i64]) -> Self::Scalar;
}

type RatioKey = (Vec<i64>, Vec<i64>);

/// Cancels common arguments and sorts, so equal ratios share a cache slot.
fn ratio_key(num: &[i64], den: &[i64]) -> RatioKey {
    let mut num = num.to_vec();
    let mut den = den.to_vec();
    num.sort_unstable();
    den.sort_unstable();
    let (mut a, mut b) = (0, 0);
    let (mut n_out, mut d_out) = (Vec::new(), Vec::new());
    while a < num.len() && b < den.len() {
        match num[a].cmp(&den[b]) {
            std::cmp::Ordering::Equal => {
                a += 1;
                b += 1;
            }
            std::cmp::Ordering::Less => {
                n_out.push(num[a]);
                a += 1;
            }
            std::cmp::Ordering::Greater => {
                d_out.push(den[b]);
                b += 1;
            }
        }
    }
    n_out.extend_from_slice(&num[a..]);
    d_out.extend_from_slice(&den[b..]);
    n_out.retain(|x| *x != 1);
    d_out.retain(|x| *x != 1);
    (n_out, d_out)
}

/// Brackets as Laurent polynomials in `q`; coefficients are [`RadSum`]s.
#[derive(Default)]
pub struct Deformed {
    cache: Mutex<HashMap<RatioKey, RadSum<Rational>>>,
}

impl Deformed {
    pub fn new() -> Self {
        Self::default()
    }
}

impl BracketModel for Deformed {
    type Scalar = RadSum<Rational>;

    fn name(&self) -> &'static str {
        "deformed"
    }

    fn bracket(&self, x: i64) -> Self::Scalar {
        RadSum::from_laurent(q_bracket(x))
    }

    fn sqrt_ratio(&self, num: &[i64], den: &[i64]) -> Self::Scalar {
        let key = ratio_key(num, den);
        if let Some(v) = self.cache.lock().expect("cache poisoned").get(&key) {
            return v.clone();
        }
        let v = RadSum::from_scalar(&sqrt_bracket_ratio(&key.0, &key.1));
        self.cache.lock().expect("cache poisoned").entry(key).or_insert(v).clone()
    }
}

/// Ordinary integers in place of brackets (`q = 1`). Square roots stay exact
/// as constant radicands.
#[derive(Default)]
pub struct Classical;

impl BracketModel for Classical {
    type Scalar = RadSum<Rational>;

    fn name(&self) -> &'static str {
        "classical"
    }

    fn bracket(&self, x: i64) -> Self::Scalar {
        <RadSum<Rational> as MatrixScalar>::from_integer(x)
    }

    fn sqrt_ratio(&self, num: &[i64], den: &[i64]) -> Self::Scalar {
        let key = ratio_key(num, den);
        let prod = |v: &[i64]| v.iter().fold(num_bigint::BigInt::one(), |acc, x| acc * x);
        let (n, d) = (prod(&key.0), prod(&key.1));
        // sqrt(n / d) = sqrt(n d) / d
        let pre = Fraction::constant(Rational::new(One::one(), d.clone()));
        let rad = Laurent::constant(Rational::from_integer(n * d));
        RadSum::from_scalar(&RadicalScalar::normalize(1, pre, rad).expect("positive constant radicand"))
    }
}

/// Floating point evaluation at a fixed `q`.
pub struct Numeric<F: Float> {
    q: F,
    q_exact: Rational,
}

impl<F: Float + MatrixScalar> Numeric<F> {
    pub fn new(q: &Rational) -> Result<Self> {
        if q.is_zero() || q.is_one() || (-q).is_one() {
            return Err(Error::EvaluationDomain(format!("q = {q} is not allowed (q must avoid 0 and +-1)")));
        }
        let v = num_traits::ToPrimitive::to_f64(q)
            .and_then(F::from)
            .ok_or_else(|| Error::EvaluationDomain(format!("q = {q} is not representable")))?;
        Ok(Self { q: v, q_exact: q.clone() })
    }

    pub fn q(&self) -> &Rational {
        &self.q_exact
    }

    fn value(&self, x: i64) -> F {
        let n = x as i32;
        (self.q.powi(n) - self.q.powi(-n)) / (self.q - self.q.recip())
    }
}

impl<F: Float + MatrixScalar> BracketModel for Numeric<F> {
    type Scalar = F;

    fn name(&self) -> &'static str {
        "numeric"
    }

    fn bracket(&self, x: i64) -> F {
        self.value(x)
    }

    fn sqrt_ratio(&self, num: &[i64], den: &[i64]) -> F {
        let n = num.iter().fold(F::one(), |acc, x| acc * self.value(*x));
        let d = den.iter().fold(F::one(), |acc, x| acc * self.value(*x));
        (n / d).sqrt()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    #[test]
    fn ratio_keys_cancel() {
        assert_eq!(ratio_key(&[3, 2, 1, 5], &[5, 4]), (vec![2, 3], vec![4]));
    }

    #[test]
    fn deformed_ratio_squares_back() {
        let m = Deformed::new();
        let s = m.sqrt_ratio(&[2, 3], &[4]);
        let sq = s.mul(&s);
        let expected = Fraction::new(&q_bracket::<Rational>(2) * &q_bracket(3), q_bracket(4)).unwrap();
        assert_eq!(sq.as_fraction(), Some(expected));
        // second call hits the cache
        assert_eq!(m.sqrt_ratio(&[3, 2], &[4, 1]), s);
    }

    #[test]
    fn classical_ratio() {
        let s = Classical.sqrt_ratio(&[2, 4], &[3]);
        let v: f64 = s.evaluate(&rat(3, 2)).unwrap();
        assert!((v - (8.0f64 / 3.0).sqrt()).abs() < 1e-12);
        assert_eq!(Classical.sqrt_ratio(&[2, 8], &[]), <RadSum<Rational> as MatrixScalar>::from_integer(4));
    }

    #[test]
    fn numeric_matches_exact() {
        let q = rat(3, 2);
        let n = Numeric::<f64>::new(&q).unwrap();
        let exact: f64 = Deformed::new().sqrt_ratio(&[2, 5], &[3]).evaluate(&q).unwrap();
        assert!((n.sqrt_ratio(&[2, 5], &[3]) - exact).abs() < 1e-12);
        assert!((n.bracket(2) - 13.0 / 6.0).abs() < 1e-12);
        assert!(matches!(Numeric::<f64>::new(&rat(1, 1)), Err(Error::EvaluationDomain(_))));
    }
}
