use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::coeff::Coeff;
use super::laurent::Laurent;
use super::poly;
use crate::error::{Error, Result};

/// A rational function in `q` kept in canonical form: numerator and
/// denominator coprime, denominator a primitive integer polynomial with
/// positive leading coefficient and nonzero constant term. All powers of
/// `q` live in the numerator.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Fraction<C: Coeff> {
    num: Laurent<C>,
    den: Laurent<C>,
}

impl<C: Coeff> Fraction<C> {
    pub fn new(num: Laurent<C>, den: Laurent<C>) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        Ok(Self::canonical(num, den))
    }

    pub fn zero() -> Self {
        Self { num: Laurent::zero(), den: Laurent::one() }
    }

    pub fn one() -> Self {
        Self::from_laurent(Laurent::one())
    }

    pub fn from_laurent(p: Laurent<C>) -> Self {
        Self { num: p, den: Laurent::one() }
    }

    pub fn constant(c: C) -> Self {
        Self::from_laurent(Laurent::constant(c))
    }

    /// Builds from parts already known to be canonical (coprime, normalised
    /// denominator). Checked in debug builds.
    pub(crate) fn from_canonical_parts(num: Laurent<C>, den: Laurent<C>) -> Self {
        let out = Self { num, den };
        debug_assert_eq!(out, Self::canonical(out.num.clone(), out.den.clone()));
        out
    }

    fn canonical(num: Laurent<C>, den: Laurent<C>) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        let (sn, dn) = num.to_dense();
        let (sd, dd) = den.to_dense();
        let g = C::poly_gcd(&dn, &dd);
        let (dn, dd) = if g.len() > 1 {
            (
                poly::exact_div(&dn, &g).expect("gcd divides numerator"),
                poly::exact_div(&dd, &g).expect("gcd divides denominator"),
            )
        } else {
            (dn, dd)
        };
        let (c, dd) = poly::primitive(&dd);
        let dn = poly::scale(&dn, &(C::one() / c));
        Self {
            num: Laurent::from_dense(sn - sd, &dn),
            den: Laurent::from_dense(0, &dd),
        }
    }

    pub fn numer(&self) -> &Laurent<C> {
        &self.num
    }

    pub fn denom(&self) -> &Laurent<C> {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn recip(&self) -> Result<Self> {
        Self::new(self.den.clone(), self.num.clone())
    }

    pub fn scale(&self, s: &C) -> Self {
        if s.is_zero() {
            return Self::zero();
        }
        Self { num: self.num.scale(s), den: self.den.clone() }
    }

    /// Sign of the numerator's leading coefficient (the denominator's is positive).
    pub fn leading_sign(&self) -> i8 {
        match self.num.leading_coeff() {
            None => 0,
            Some(c) if c.is_negative() => -1,
            Some(_) => 1,
        }
    }

    pub fn eval(&self, q: &C) -> Result<C> {
        let d = self.den.eval(q);
        if d.is_zero() {
            return Err(Error::EvaluationDomain(format!(
                "denominator {} vanishes at q = {q}",
                self.den
            )));
        }
        Ok(self.num.eval(q) / d)
    }
}

impl<C: Coeff> Add for &Fraction<C> {
    type Output = Fraction<C>;
    fn add(self, rhs: &Fraction<C>) -> Fraction<C> {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            return Fraction::canonical(&self.num + &rhs.num, self.den.clone());
        }
        Fraction::canonical(
            &(&self.num * &rhs.den) + &(&rhs.num * &self.den),
            &self.den * &rhs.den,
        )
    }
}

impl<C: Coeff> Sub for &Fraction<C> {
    type Output = Fraction<C>;
    fn sub(self, rhs: &Fraction<C>) -> Fraction<C> {
        self + &(-rhs)
    }
}

impl<C: Coeff> Mul for &Fraction<C> {
    type Output = Fraction<C>;
    fn mul(self, rhs: &Fraction<C>) -> Fraction<C> {
        if self.is_zero() || rhs.is_zero() {
            return Fraction::zero();
        }
        if self.den.is_one() && rhs.den.is_one() {
            return Fraction::from_laurent(&self.num * &rhs.num);
        }
        Fraction::canonical(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

impl<C: Coeff> Neg for &Fraction<C> {
    type Output = Fraction<C>;
    fn neg(self) -> Fraction<C> {
        Fraction { num: -&self.num, den: self.den.clone() }
    }
}

impl<C: Coeff> fmt::Display for Fraction<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    type L = Laurent<BigRational>;
    type F = Fraction<BigRational>;

    fn r(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    #[test]
    fn canonical_form_cancels_and_normalises() {
        // (q^2 - 1) / (2q^2 + 2q) = (q - 1) / (2q) -> q^-1 (q-1)/2 with denominator 1
        let num = L::from_terms([(2, r(1)), (0, r(-1))]);
        let den = L::from_terms([(2, r(2)), (1, r(2))]);
        let f = F::new(num, den).unwrap();
        assert!(f.is_polynomial());
        assert_eq!(
            f.numer(),
            &L::from_terms([(0, BigRational::new(1.into(), 2.into())), (-1, BigRational::new((-1).into(), 2.into()))])
        );
    }

    #[test]
    fn add_mul_roundtrip() {
        let a = F::new(L::one(), L::from_terms([(1, r(1)), (0, r(1))])).unwrap();
        let b = F::new(L::one(), L::from_terms([(1, r(1)), (0, r(-1))])).unwrap();
        let s = &a + &b;
        // 1/(q+1) + 1/(q-1) = 2q/(q^2-1)
        assert_eq!(s.numer(), &L::monomial(r(2), 1));
        assert_eq!(s.denom(), &L::from_terms([(2, r(1)), (0, r(-1))]));
        let p = &s * &F::from_laurent(L::from_terms([(2, r(1)), (0, r(-1))]));
        assert_eq!(p, F::from_laurent(L::monomial(r(2), 1)));
        assert!((&s - &s).is_zero());
    }

    #[test]
    fn zero_denominator_rejected() {
        assert!(matches!(F::new(L::one(), L::zero()), Err(Error::ZeroDenominator)));
    }
}
