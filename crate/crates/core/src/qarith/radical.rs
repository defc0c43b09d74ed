//! Signed square roots of Laurent polynomials and finite sums of them.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::Float;

use super::coeff::Coeff;
use super::fraction::Fraction;
use super::laurent::Laurent;
use super::poly;
use crate::error::{Error, Result};

/// `sign * prefactor * sqrt(radicand)` with the positive branch of the root.
///
/// The radicand is canonical: `c * q^s * B` with `s` in `{0, 1}`, `B` a
/// squarefree primitive integer polynomial with positive leading coefficient
/// and nonzero constant term, and `c` an integer without square factors.
/// The prefactor has a positive leading coefficient; the sign carries the rest.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RadicalScalar<C: Coeff> {
    sign: i8,
    prefactor: Fraction<C>,
    radicand: Laurent<C>,
}

struct RadicandParts<C: Coeff> {
    constant: C,
    q_odd: bool,
    poly: Vec<C>,
}

fn radicand_parts<C: Coeff>(r: &Laurent<C>) -> RadicandParts<C> {
    let (shift, dense) = r.to_dense();
    let (constant, poly) = poly::primitive(&dense);
    RadicandParts { constant, q_odd: shift == 1, poly }
}

/// Moves every square factor of `r` into the returned root, leaving the
/// canonical squarefree radicand: `r = root^2 * radicand`.
pub(crate) fn canonical_radicand<C: Coeff>(r: &Laurent<C>) -> Result<(Laurent<C>, Laurent<C>)> {
    assert!(!r.is_zero(), "canonical_radicand of zero");
    if r.eval(&C::one()).is_negative() {
        return Err(Error::NegativeRadicandAnomaly(format!("{r} is negative at q = 1")));
    }
    let (shift, dense) = r.to_dense();
    let (c, prim) = poly::primitive(&dense);
    let (c_root, c_rest) = c.split_square();
    let mut root = Laurent::monomial(c_root, shift.div_euclid(2));
    let mut rad = Laurent::monomial(c_rest, shift.rem_euclid(2));
    for (factor, mult) in poly::squarefree(&prim) {
        let f = Laurent::from_dense(0, &factor);
        if mult >= 2 {
            root = &root * &f.pow((mult / 2) as u32);
        }
        if mult % 2 == 1 {
            rad = &rad * &f;
        }
    }
    Ok((root, rad))
}

/// Product of two canonical radicands: `r1 * r2 = extra^2 * merged`.
pub(crate) fn merge_radicands<C: Coeff>(r1: &Laurent<C>, r2: &Laurent<C>) -> (Laurent<C>, Laurent<C>) {
    if r1.is_one() {
        return (Laurent::one(), r2.clone());
    }
    if r2.is_one() {
        return (Laurent::one(), r1.clone());
    }
    let a = radicand_parts(r1);
    let b = radicand_parts(r2);
    let g = C::poly_gcd(&a.poly, &b.poly);
    let (u, v) = if g.len() > 1 {
        (
            poly::exact_div(&a.poly, &g).expect("gcd divides"),
            poly::exact_div(&b.poly, &g).expect("gcd divides"),
        )
    } else {
        (a.poly, b.poly)
    };
    let (c_root, c_rest) = (a.constant * b.constant).split_square();
    let q_both = a.q_odd && b.q_odd;
    let q_one = a.q_odd ^ b.q_odd;
    let extra = Laurent::from_dense(i64::from(q_both), &poly::scale(&g, &c_root));
    let merged = Laurent::from_dense(i64::from(q_one), &poly::scale(&poly::mul(&u, &v), &c_rest));
    (extra, merged)
}

impl<C: Coeff> RadicalScalar<C> {
    pub fn zero() -> Self {
        Self { sign: 0, prefactor: Fraction::one(), radicand: Laurent::one() }
    }

    pub fn one() -> Self {
        Self { sign: 1, prefactor: Fraction::one(), radicand: Laurent::one() }
    }

    /// Canonicalises `sign * prefactor * sqrt(radicand)`.
    pub fn normalize(sign: i8, prefactor: Fraction<C>, radicand: Laurent<C>) -> Result<Self> {
        if sign == 0 || prefactor.is_zero() || radicand.is_zero() {
            return Ok(Self::zero());
        }
        let (root, radicand) = canonical_radicand(&radicand)?;
        let prefactor = &prefactor * &Fraction::from_laurent(root);
        Ok(Self::from_parts(sign.signum(), prefactor, radicand))
    }

    /// Assembles a scalar whose radicand is already canonical.
    pub(crate) fn from_parts(sign: i8, prefactor: Fraction<C>, radicand: Laurent<C>) -> Self {
        if sign == 0 || prefactor.is_zero() {
            return Self::zero();
        }
        if prefactor.leading_sign() < 0 {
            Self { sign: -sign, prefactor: -&prefactor, radicand }
        } else {
            Self { sign, prefactor, radicand }
        }
    }

    pub fn sign(&self) -> i8 {
        self.sign
    }

    pub fn prefactor(&self) -> &Fraction<C> {
        &self.prefactor
    }

    pub fn radicand(&self) -> &Laurent<C> {
        &self.radicand
    }

    pub fn is_zero(&self) -> bool {
        self.sign == 0
    }

    /// `prefactor^2 * radicand`, exactly.
    pub fn square(&self) -> Fraction<C> {
        if self.is_zero() {
            return Fraction::zero();
        }
        &(&self.prefactor * &self.prefactor) * &Fraction::from_laurent(self.radicand.clone())
    }
}

impl<C: Coeff> fmt::Display for RadicalScalar<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let s = if self.sign < 0 { "-" } else { "+" };
        if self.radicand.is_one() {
            write!(f, "{s}({})", self.prefactor)
        } else {
            write!(f, "{s}({})*sqrt({})", self.prefactor, self.radicand)
        }
    }
}

/// A finite sum `sum_r c_r * sqrt(r)` over distinct canonical radicands.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct RadSum<C: Coeff> {
    terms: BTreeMap<Laurent<C>, Fraction<C>>,
}

impl<C: Coeff> RadSum<C> {
    pub fn zero() -> Self {
        Self { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::from_fraction(Fraction::one())
    }

    pub fn from_fraction(f: Fraction<C>) -> Self {
        let mut out = Self::zero();
        out.add_term(Laurent::one(), f);
        out
    }

    pub fn from_laurent(p: Laurent<C>) -> Self {
        Self::from_fraction(Fraction::from_laurent(p))
    }

    pub fn from_scalar(s: &RadicalScalar<C>) -> Self {
        let mut out = Self::zero();
        if !s.is_zero() {
            let c = if s.sign < 0 { -&s.prefactor } else { s.prefactor.clone() };
            out.add_term(s.radicand.clone(), c);
        }
        out
    }

    /// `sqrt(r)` for an arbitrary (not yet canonical) radicand.
    pub fn sqrt(r: &Laurent<C>) -> Result<Self> {
        Ok(Self::from_scalar(&RadicalScalar::normalize(1, Fraction::one(), r.clone())?))
    }

    fn add_term(&mut self, radicand: Laurent<C>, c: Fraction<C>) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&radicand) {
            Some(existing) => {
                let sum = &*existing + &c;
                if sum.is_zero() {
                    self.terms.remove(&radicand);
                } else {
                    *existing = sum;
                }
            }
            None => {
                self.terms.insert(radicand, c);
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// `(radicand, coefficient)` pairs in canonical order.
    pub fn terms(&self) -> impl Iterator<Item = (&Laurent<C>, &Fraction<C>)> {
        self.terms.iter()
    }

    /// The rational-function value when no radical survives.
    pub fn as_fraction(&self) -> Option<Fraction<C>> {
        match self.terms.len() {
            0 => Some(Fraction::zero()),
            1 => self.terms.get(&Laurent::one()).cloned(),
            _ => None,
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let (mut out, small) = if self.len() >= other.len() { (self.clone(), other) } else { (other.clone(), self) };
        for (r, c) in &small.terms {
            out.add_term(r.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        Self { terms: self.terms.iter().map(|(r, c)| (r.clone(), -c)).collect() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, s: &Fraction<C>) -> Self {
        if s.is_zero() {
            return Self::zero();
        }
        Self { terms: self.terms.iter().map(|(r, c)| (r.clone(), c * s)).collect() }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (r1, c1) in &self.terms {
            for (r2, c2) in &other.terms {
                let (extra, merged) = merge_radicands(r1, r2);
                let c = &(c1 * c2) * &Fraction::from_laurent(extra);
                out.add_term(merged, c);
            }
        }
        out
    }

    /// Numeric value at an exact `q`, positive branch for every root.
    pub fn evaluate<F: Float>(&self, q: &C) -> Result<F> {
        check_q(q)?;
        let mut acc = F::zero();
        for (r, c) in &self.terms {
            let rv = r.eval(q);
            if rv.is_negative() {
                return Err(Error::EvaluationDomain(format!("radicand {r} is negative at q = {q}")));
            }
            let cv = c.eval(q)?;
            acc = acc + to_float::<C, F>(&cv)? * to_float::<C, F>(&rv)?.sqrt();
        }
        Ok(acc)
    }
}

pub(crate) fn check_q<C: Coeff>(q: &C) -> Result<()> {
    if q.is_zero() || q.is_one() || (-q.clone()).is_one() {
        return Err(Error::EvaluationDomain(format!("q = {q} is not allowed (q must avoid 0 and +-1)")));
    }
    Ok(())
}

pub(crate) fn to_float<C: Coeff, F: Float>(c: &C) -> Result<F> {
    c.to_f64()
        .and_then(F::from)
        .ok_or_else(|| Error::EvaluationDomain(format!("{c} is not representable as a float")))
}

impl<C: Coeff> fmt::Display for RadSum<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (n, (r, c)) in self.terms.iter().enumerate() {
            if n > 0 {
                write!(f, " + ")?;
            }
            if r.is_one() {
                write!(f, "({c})")?;
            } else {
                write!(f, "({c})*sqrt({r})")?;
            }
        }
        Ok(())
    }
}
