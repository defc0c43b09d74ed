use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::coeff::Coeff;
use super::poly;

/// A Laurent polynomial in `q` with exact coefficients, stored sparsely.
/// No stored coefficient is zero.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Laurent<C: Coeff> {
    terms: BTreeMap<i64, C>,
}

impl<C: Coeff> Laurent<C> {
    pub fn zero() -> Self {
        Self { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::constant(C::one())
    }

    pub fn constant(c: C) -> Self {
        Self::monomial(c, 0)
    }

    pub fn monomial(c: C, exp: i64) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exp, c);
        }
        Self { terms }
    }

    /// `q^exp`.
    pub fn q_pow(exp: i64) -> Self {
        Self::monomial(C::one(), exp)
    }

    pub fn from_terms<I: IntoIterator<Item = (i64, C)>>(it: I) -> Self {
        let mut out = Self::zero();
        for (e, c) in it {
            out.add_term(e, c);
        }
        out
    }

    fn add_term(&mut self, exp: i64, c: C) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(exp).or_insert_with(C::zero);
        *entry = entry.clone() + c;
        if entry.is_zero() {
            self.terms.remove(&exp);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&0).is_some_and(|c| c.is_one())
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &C)> {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    pub fn leading_coeff(&self) -> Option<&C> {
        self.terms.values().next_back()
    }

    /// The constant value when this is a constant polynomial.
    pub fn as_constant(&self) -> Option<C> {
        match self.terms.len() {
            0 => Some(C::zero()),
            1 => self.terms.get(&0).cloned(),
            _ => None,
        }
    }

    pub fn scale(&self, s: &C) -> Self {
        if s.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(e, c)| (*e, c.clone() * s.clone())).collect(),
        }
    }

    /// Multiplies by `q^k`.
    pub fn shift(&self, k: i64) -> Self {
        Self {
            terms: self.terms.iter().map(|(e, c)| (e + k, c.clone())).collect(),
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        (0..n).fold(Self::one(), |acc, _| &acc * self)
    }

    /// Splits into `q^shift * dense` with `dense[0] != 0` (dense polynomial in
    /// ascending order). Zero maps to `(0, [])`.
    pub fn to_dense(&self) -> (i64, Vec<C>) {
        let Some(lo) = self.min_exp() else {
            return (0, Vec::new());
        };
        let hi = self.max_exp().expect("nonempty");
        let mut dense = vec![C::zero(); (hi - lo + 1) as usize];
        for (e, c) in &self.terms {
            dense[(e - lo) as usize] = c.clone();
        }
        (lo, dense)
    }

    pub fn from_dense(shift: i64, dense: &[C]) -> Self {
        Self::from_terms(dense.iter().enumerate().map(|(i, c)| (shift + i as i64, c.clone())))
    }

    /// Exact evaluation. `q` must be nonzero whenever a negative exponent is present.
    pub fn eval(&self, q: &C) -> C {
        let mut acc = C::zero();
        for (e, c) in &self.terms {
            acc = acc + c.clone() * int_pow(q, *e);
        }
        acc
    }

    /// Exact quotient by a divisor, if it divides.
    pub fn exact_div(&self, other: &Self) -> Option<Self> {
        let (sa, da) = self.to_dense();
        let (sb, db) = other.to_dense();
        if db.is_empty() {
            return None;
        }
        poly::exact_div(&da, &db).map(|q| Self::from_dense(sa - sb, &q))
    }
}

pub(crate) fn int_pow<C: Coeff>(q: &C, e: i64) -> C {
    let base = if e < 0 { C::one() / q.clone() } else { q.clone() };
    let mut n = e.unsigned_abs();
    let mut acc = C::one();
    let mut b = base;
    while n > 0 {
        if n & 1 == 1 {
            acc = acc * b.clone();
        }
        b = b.clone() * b;
        n >>= 1;
    }
    acc
}

impl<C: Coeff> Default for Laurent<C> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<C: Coeff> Add for &Laurent<C> {
    type Output = Laurent<C>;
    fn add(self, rhs: &Laurent<C>) -> Laurent<C> {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, c.clone());
        }
        out
    }
}

impl<C: Coeff> Sub for &Laurent<C> {
    type Output = Laurent<C>;
    fn sub(self, rhs: &Laurent<C>) -> Laurent<C> {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, -c.clone());
        }
        out
    }
}

impl<C: Coeff> Mul for &Laurent<C> {
    type Output = Laurent<C>;
    fn mul(self, rhs: &Laurent<C>) -> Laurent<C> {
        if self.is_zero() || rhs.is_zero() {
            return Laurent::zero();
        }
        let (sa, da) = self.to_dense();
        let (sb, db) = rhs.to_dense();
        Laurent::from_dense(sa + sb, &poly::mul(&da, &db))
    }
}

impl<C: Coeff> Neg for &Laurent<C> {
    type Output = Laurent<C>;
    fn neg(self) -> Laurent<C> {
        Laurent {
            terms: self.terms.iter().map(|(e, c)| (*e, -c.clone())).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl<C: Coeff> $tr for Laurent<C> {
            type Output = Laurent<C>;
            fn $m(self, rhs: Laurent<C>) -> Laurent<C> {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl<C: Coeff> Neg for Laurent<C> {
    type Output = Laurent<C>;
    fn neg(self) -> Laurent<C> {
        -&self
    }
}

impl<C: Coeff> fmt::Display for Laurent<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (n, (e, c)) in self.terms.iter().rev().enumerate() {
            let negative = c.is_negative();
            let mag = if negative { -c.clone() } else { c.clone() };
            match (n, negative) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let unit = mag.is_one();
            match *e {
                0 => write!(f, "{mag}")?,
                1 if unit => write!(f, "q")?,
                1 => write!(f, "{mag}*q")?,
                _ if unit => write!(f, "q^{e}")?,
                _ => write!(f, "{mag}*q^{e}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    type L = Laurent<BigRational>;

    fn r(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    #[test]
    fn arithmetic_drops_zero_terms() {
        let a = L::from_terms([(1, r(1)), (-1, r(1))]);
        let b = L::from_terms([(1, r(-1)), (0, r(2))]);
        assert_eq!(&a + &b, L::from_terms([(-1, r(1)), (0, r(2))]));
        assert!((&a - &a).is_zero());
        // (q + q^-1)^2 = q^2 + 2 + q^-2
        assert_eq!(&a * &a, L::from_terms([(2, r(1)), (0, r(2)), (-2, r(1))]));
    }

    #[test]
    fn evaluation_and_display() {
        let a = L::from_terms([(1, r(1)), (-1, r(1))]);
        assert_eq!(a.eval(&r(2)), BigRational::new(5.into(), 2.into()));
        assert_eq!(a.to_string(), "q + q^-1");
        assert_eq!((-a).to_string(), "-q - q^-1");
    }

    #[test]
    fn exact_division() {
        let a = L::from_terms([(2, r(1)), (0, r(-1))]);
        let b = L::from_terms([(1, r(1)), (0, r(1))]);
        assert_eq!(a.exact_div(&b), Some(L::from_terms([(1, r(1)), (0, r(-1))])));
        assert_eq!(b.exact_div(&L::q_pow(1)), Some(L::from_terms([(0, r(1)), (-1, r(1))])));
    }
}
