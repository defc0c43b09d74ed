//! q-integers and products of them.
//!
//! `[x] = (q^x - q^-x) / (q - q^-1)`. For `x > 0` this is
//! `q^(1-x) * prod_{d | 2x, d >= 3} Phi_d(q)`, which gives a second,
//! factorisation-based route to canonical radicals of bracket ratios.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex, OnceLock};

use super::coeff::Coeff;
use super::fraction::Fraction;
use super::laurent::Laurent;
use super::radical::RadicalScalar;

/// `[x]` as a Laurent polynomial: `q^(x-1) + q^(x-3) + ... + q^(1-x)`.
pub fn q_bracket<C: Coeff>(x: i64) -> Laurent<C> {
    if x < 0 {
        return -q_bracket::<C>(-x);
    }
    Laurent::from_terms((0..x).map(|k| (x - 1 - 2 * k, C::one())))
}

/// Product of brackets split into a sign and a magnitude polynomial: every
/// negative argument contributes one sign flip and the magnitude uses `|a|`.
/// A zero argument gives `(0, 0)`.
pub fn bracket_product<C: Coeff>(args: &[i64]) -> (i8, Laurent<C>) {
    if args.contains(&0) {
        return (0, Laurent::zero());
    }
    let negatives = args.iter().filter(|a| **a < 0).count();
    let sign = if negatives % 2 == 0 { 1 } else { -1 };
    let mag = args
        .iter()
        .fold(Laurent::one(), |acc, a| &acc * &q_bracket::<C>(a.abs()));
    (sign, mag)
}

fn cyclotomic_cache() -> &'static Mutex<HashMap<u64, Arc<Vec<i64>>>> {
    static CACHE: OnceLock<Mutex<HashMap<u64, Arc<Vec<i64>>>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// Coefficients (ascending) of the `d`-th cyclotomic polynomial.
pub fn cyclotomic(d: u64) -> Arc<Vec<i64>> {
    assert!(d >= 1);
    if let Some(p) = cyclotomic_cache().lock().expect("cache poisoned").get(&d) {
        return p.clone();
    }
    // q^d - 1 divided by every Phi_e with e | d, e < d (all monic)
    let mut num = vec![0i64; d as usize + 1];
    num[0] = -1;
    num[d as usize] = 1;
    for e in (1..d).filter(|e| d % e == 0) {
        num = monic_div(&num, &cyclotomic(e));
    }
    let p = Arc::new(num);
    cyclotomic_cache().lock().expect("cache poisoned").insert(d, p.clone());
    p
}

fn monic_div(a: &[i64], b: &[i64]) -> Vec<i64> {
    let db = b.len() - 1;
    let mut r = a.to_vec();
    let mut q = vec![0i64; a.len() - db];
    for k in (0..q.len()).rev() {
        let t = r[k + db];
        q[k] = t;
        for (j, bc) in b.iter().enumerate() {
            r[k + j] -= t * bc;
        }
    }
    debug_assert!(r.iter().all(|c| *c == 0), "cyclotomic division not exact");
    q
}

/// A product `q^q_exp * prod Phi_d^{e_d}` with integer (possibly negative)
/// exponents, `d >= 3`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CyclotomicMonomial {
    pub q_exp: i64,
    pub phi: BTreeMap<u64, i64>,
}

impl CyclotomicMonomial {
    /// Factorisation of `[x]` for `x > 0`.
    pub fn bracket(x: i64) -> Self {
        assert!(x > 0, "bracket factorisation needs a positive argument");
        let n = 2 * x as u64;
        let phi = (3..=n).filter(|d| n % d == 0).map(|d| (d, 1)).collect();
        Self { q_exp: 1 - x, phi }
    }

    pub fn mul_assign_pow(&mut self, other: &Self, power: i64) {
        self.q_exp += power * other.q_exp;
        for (d, e) in &other.phi {
            let slot = self.phi.entry(*d).or_insert(0);
            *slot += power * e;
            if *slot == 0 {
                self.phi.remove(d);
            }
        }
    }

    /// `prod [num] / prod [den]` for positive arguments.
    pub fn bracket_ratio(num: &[i64], den: &[i64]) -> Self {
        let mut m = Self::default();
        for &a in num {
            m.mul_assign_pow(&Self::bracket(a), 1);
        }
        for &a in den {
            m.mul_assign_pow(&Self::bracket(a), -1);
        }
        m
    }

    /// Splits into the root part (`floor(e/2)` exponents) and the
    /// squarefree remainder (`e mod 2`), so `self = root^2 * rest`.
    pub fn split_square(&self) -> (Self, Self) {
        let root = Self {
            q_exp: self.q_exp.div_euclid(2),
            phi: self
                .phi
                .iter()
                .map(|(d, e)| (*d, e.div_euclid(2)))
                .filter(|(_, e)| *e != 0)
                .collect(),
        };
        let rest = Self {
            q_exp: self.q_exp.rem_euclid(2),
            phi: self
                .phi
                .iter()
                .filter(|(_, e)| e.rem_euclid(2) == 1)
                .map(|(d, _)| (*d, 1))
                .collect(),
        };
        (root, rest)
    }

    /// Numerator and denominator polynomials (the q-power goes on top).
    pub fn to_parts<C: Coeff>(&self) -> (Laurent<C>, Laurent<C>) {
        let mut num = Laurent::q_pow(self.q_exp);
        let mut den = Laurent::one();
        for (d, e) in &self.phi {
            let phi = Laurent::from_terms(
                cyclotomic(*d)
                    .iter()
                    .enumerate()
                    .map(|(i, c)| (i as i64, C::from_i64(*c).expect("small integer"))),
            );
            if *e > 0 {
                num = &num * &phi.pow(*e as u32);
            } else {
                den = &den * &phi.pow(e.unsigned_abs() as u32);
            }
        }
        (num, den)
    }

    pub fn to_fraction<C: Coeff>(&self) -> Fraction<C> {
        let (num, den) = self.to_parts();
        Fraction::from_canonical_parts(num, den)
    }
}

/// `sqrt(prod [num] / prod [den])` for positive arguments, as a canonical
/// radical built from the cyclotomic factorisation.
pub fn sqrt_bracket_ratio<C: Coeff>(num: &[i64], den: &[i64]) -> RadicalScalar<C> {
    let (root, rest) = CyclotomicMonomial::bracket_ratio(num, den).split_square();
    let (rad, rad_den) = rest.to_parts::<C>();
    debug_assert!(rad_den.is_one());
    RadicalScalar::from_parts(1, root.to_fraction(), rad)
}

/// Same value through the generic route: assemble the polynomial radicand
/// `prod[num] * prod[den]` and run squarefree normalisation.
pub fn sqrt_bracket_ratio_generic<C: Coeff>(num: &[i64], den: &[i64]) -> crate::error::Result<RadicalScalar<C>> {
    let (_, n) = bracket_product::<C>(num);
    let (_, d) = bracket_product::<C>(den);
    let inv = Fraction::new(Laurent::one(), d.clone())?;
    RadicalScalar::normalize(1, inv, &n * &d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qarith::poly;
    use num_rational::BigRational;

    type L = Laurent<BigRational>;

    fn r(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    /// Independent expansion: (q^x - q^-x) / (q - q^-1) by polynomial division
    /// after multiplying through by q^|x|.
    fn bracket_by_division(x: i64) -> L {
        let n = x.abs();
        // q^n (q^x - q^-x) and q (q - q^-1)
        let mut top = vec![r(0); 2 * n as usize + 1];
        top[(n + x) as usize] = top[(n + x) as usize].clone() + r(1);
        top[(n - x) as usize] = top[(n - x) as usize].clone() - r(1);
        poly::trim(&mut top);
        let bottom = vec![r(-1), r(0), r(1)];
        let (quot, rem) = poly::divrem(&top, &bottom);
        assert!(rem.is_empty());
        L::from_dense(1 - n, &quot)
    }

    #[test]
    fn bracket_examples() {
        assert!(q_bracket::<BigRational>(0).is_zero());
        assert_eq!(q_bracket::<BigRational>(2), L::from_terms([(1, r(1)), (-1, r(1))]));
        assert_eq!(q_bracket::<BigRational>(-3), L::from_terms([(2, r(-1)), (0, r(-1)), (-2, r(-1))]));
        for x in -8..=8 {
            assert_eq!(q_bracket::<BigRational>(x), bracket_by_division(x), "x = {x}");
        }
    }

    #[test]
    fn product_examples() {
        assert_eq!(bracket_product::<BigRational>(&[1, 1]), (1, L::one()));
        assert_eq!(bracket_product::<BigRational>(&[2, 0]), (0, L::zero()));
        let (s, m) = bracket_product::<BigRational>(&[-2, 3]);
        assert_eq!(s, -1);
        assert_eq!(m, &q_bracket(2) * &q_bracket(3));
    }

    #[test]
    fn cyclotomic_values() {
        assert_eq!(*cyclotomic(1), vec![-1, 1]);
        assert_eq!(*cyclotomic(4), vec![1, 0, 1]);
        assert_eq!(*cyclotomic(6), vec![1, -1, 1]);
        assert_eq!(*cyclotomic(12), vec![1, 0, -1, 0, 1]);
    }

    #[test]
    fn factorised_bracket_matches_expansion() {
        for x in 1..=12 {
            let (num, den) = CyclotomicMonomial::bracket(x).to_parts::<BigRational>();
            assert!(den.is_one());
            assert_eq!(num, q_bracket(x), "x = {x}");
        }
    }

    #[test]
    fn sqrt_of_two_and_eight() {
        // [2][8] = [2]^2 * Phi_8 * Phi_16 * q^-6 ... check both routes agree
        let a = sqrt_bracket_ratio::<BigRational>(&[2, 8], &[]);
        let b = sqrt_bracket_ratio_generic::<BigRational>(&[2, 8], &[]).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.square(), Fraction::from_laurent(&q_bracket(2) * &q_bracket(8)));
    }
}
