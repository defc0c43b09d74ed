//! Dense univariate polynomial kernels over a [`Coeff`] field.
//!
//! Polynomials are coefficient vectors in ascending degree with no trailing
//! zeros; the zero polynomial is the empty vector.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::coeff::Coeff;

pub fn trim<C: Coeff>(p: &mut Vec<C>) {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

pub fn degree<C>(p: &[C]) -> Option<usize> {
    p.len().checked_sub(1)
}

pub fn add<C: Coeff>(a: &[C], b: &[C]) -> Vec<C> {
    let n = a.len().max(b.len());
    let mut out: Vec<C> = (0..n)
        .map(|i| match (a.get(i), b.get(i)) {
            (Some(x), Some(y)) => x.clone() + y.clone(),
            (Some(x), None) => x.clone(),
            (None, Some(y)) => y.clone(),
            (None, None) => C::zero(),
        })
        .collect();
    trim(&mut out);
    out
}

pub fn sub<C: Coeff>(a: &[C], b: &[C]) -> Vec<C> {
    let neg: Vec<C> = b.iter().map(|c| -c.clone()).collect();
    add(a, &neg)
}

pub fn scale<C: Coeff>(a: &[C], s: &C) -> Vec<C> {
    if s.is_zero() {
        return Vec::new();
    }
    a.iter().map(|c| c.clone() * s.clone()).collect()
}

pub fn mul<C: Coeff>(a: &[C], b: &[C]) -> Vec<C> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![C::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] = out[i + j].clone() + x.clone() * y.clone();
        }
    }
    trim(&mut out);
    out
}

pub fn derivative<C: Coeff>(a: &[C]) -> Vec<C> {
    let mut out: Vec<C> = a
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| c.clone() * C::from_usize(i).expect("degree fits"))
        .collect();
    trim(&mut out);
    out
}

/// Division with remainder over the field. Panics on a zero divisor.
pub fn divrem<C: Coeff>(a: &[C], b: &[C]) -> (Vec<C>, Vec<C>) {
    let db = degree(b).expect("division by the zero polynomial");
    let lc = b[db].clone();
    let mut r = a.to_vec();
    trim(&mut r);
    if r.len() < b.len() {
        return (Vec::new(), r);
    }
    let mut q = vec![C::zero(); r.len() - db];
    while r.len() > db {
        let shift = r.len() - 1 - db;
        let t = r[r.len() - 1].clone() / lc.clone();
        for (j, bc) in b.iter().enumerate() {
            r[shift + j] = r[shift + j].clone() - t.clone() * bc.clone();
        }
        q[shift] = t;
        r.pop();
        trim(&mut r);
    }
    trim(&mut q);
    (q, r)
}

/// Exact quotient `a / b`, or `None` when `b` does not divide `a`.
pub fn exact_div<C: Coeff>(a: &[C], b: &[C]) -> Option<Vec<C>> {
    let (q, r) = divrem(a, b);
    r.is_empty().then_some(q)
}

/// Splits `p = c * prim` where `prim` has coprime integer coefficients and a
/// positive leading coefficient. The zero polynomial maps to `(0, [])`.
pub fn primitive<C: Coeff>(p: &[C]) -> (C, Vec<C>) {
    if p.is_empty() {
        return (C::zero(), Vec::new());
    }
    let mut c = C::content(p);
    if p[p.len() - 1].is_negative() {
        c = -c;
    }
    let prim = p.iter().map(|x| x.clone() / c.clone()).collect();
    (c, prim)
}

/// Euclid's algorithm over the field; result is primitive with positive
/// leading coefficient (one when the inputs are coprime).
pub fn euclid_gcd<C: Coeff>(a: &[C], b: &[C]) -> Vec<C> {
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    trim(&mut x);
    trim(&mut y);
    while !y.is_empty() {
        let (_, r) = divrem(&x, &y);
        x = y;
        y = r;
    }
    if x.is_empty() {
        return x;
    }
    primitive(&x).1
}

fn to_integer_primitive(p: &[BigRational]) -> Vec<BigInt> {
    let (_, prim) = primitive(p);
    prim.into_iter().map(|c| c.to_integer()).collect()
}

fn int_eval(p: &[BigInt], x: &BigInt) -> BigInt {
    p.iter().rev().fold(BigInt::zero(), |acc, c| acc * x + c)
}

fn int_divides(a: &[BigInt], b: &[BigInt]) -> bool {
    let db = b.len() - 1;
    let lc = &b[db];
    let mut r = a.to_vec();
    while r.len() > db {
        let top = r.pop().expect("nonempty");
        if top.is_zero() {
            continue;
        }
        let (t, rem) = top.div_rem(lc);
        if !rem.is_zero() {
            return false;
        }
        let shift = r.len() - db;
        for (j, bc) in b.iter().take(db).enumerate() {
            r[shift + j] -= &t * bc;
        }
    }
    r.iter().all(|c| c.is_zero())
}

/// Heuristic integer gcd (evaluate, take the integer gcd, lift back by
/// balanced base-xi digits, verify by division). `None` means the
/// heuristic gave up and the caller must fall back to Euclid.
fn heuristic_gcd(a: &[BigInt], b: &[BigInt]) -> Option<Vec<BigInt>> {
    if a.len() == 1 || b.len() == 1 {
        return Some(vec![BigInt::one()]);
    }
    let norm = |p: &[BigInt]| p.iter().map(|c| c.abs()).max().unwrap_or_default();
    let bound = norm(a).min(norm(b));
    let mut xi: BigInt = bound * 2 + 29;
    for _ in 0..6 {
        let gamma = int_eval(a, &xi).gcd(&int_eval(b, &xi));
        let half = &xi / 2;
        let mut g = Vec::new();
        let mut rest = gamma;
        while !rest.is_zero() {
            let mut digit = rest.mod_floor(&xi);
            if digit > half {
                digit -= &xi;
            }
            rest = (rest - &digit) / &xi;
            g.push(digit);
        }
        if !g.is_empty() {
            let content = g.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
            let sign = if g[g.len() - 1].is_negative() { -1 } else { 1 };
            let g: Vec<BigInt> = g.iter().map(|c| c / &content * sign).collect();
            if int_divides(a, &g) && int_divides(b, &g) {
                return Some(g);
            }
        }
        xi = xi * 73794 / 27011;
    }
    None
}

/// Gcd specialised for rationals: clears denominators and tries the
/// heuristic integer gcd before falling back to Euclid.
pub fn rational_gcd(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    if a.is_empty() {
        return primitive(b).1;
    }
    if b.is_empty() {
        return primitive(a).1;
    }
    let ai = to_integer_primitive(a);
    let bi = to_integer_primitive(b);
    match heuristic_gcd(&ai, &bi) {
        Some(g) => g.into_iter().map(BigRational::from_integer).collect(),
        None => euclid_gcd(a, b),
    }
}

/// Yun's squarefree decomposition of a nonconstant-or-constant nonzero
/// polynomial. Returns pairwise coprime primitive factors `f_i` with
/// multiplicities so that `p = c * prod f_i^{m_i}` for a constant `c`.
pub fn squarefree<C: Coeff>(p: &[C]) -> Vec<(Vec<C>, usize)> {
    assert!(!p.is_empty(), "squarefree decomposition of zero");
    let mut out = Vec::new();
    if p.len() == 1 {
        return out;
    }
    let dp = derivative(p);
    let a0 = C::poly_gcd(p, &dp);
    let mut b = exact_div(p, &a0).expect("gcd divides");
    let c = exact_div(&dp, &a0).expect("gcd divides derivative");
    let mut d = sub(&c, &derivative(&b));
    let mut mult = 1;
    while b.len() > 1 {
        let a = C::poly_gcd(&b, &d);
        if a.len() > 1 {
            out.push((a.clone(), mult));
        }
        b = exact_div(&b, &a).expect("gcd divides");
        let c = exact_div(&d, &a).expect("gcd divides");
        d = sub(&c, &derivative(&b));
        mult += 1;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(cs: &[i64]) -> Vec<BigRational> {
        cs.iter().map(|&c| BigRational::from_integer(c.into())).collect()
    }

    #[test]
    fn divrem_reconstructs() {
        let a = p(&[1, 0, 0, 0, -1]);
        let b = p(&[-1, 1]);
        let (q, r) = divrem(&a, &b);
        assert!(r.is_empty());
        assert_eq!(q, p(&[-1, -1, -1, -1]));
    }

    #[test]
    fn gcd_routes_agree() {
        // (q^2+1)(q+2) and (q^2+1)(q-3)
        let a = mul(&p(&[1, 0, 1]), &p(&[2, 1]));
        let b = mul(&p(&[1, 0, 1]), &p(&[-3, 1]));
        assert_eq!(rational_gcd(&a, &b), p(&[1, 0, 1]));
        assert_eq!(euclid_gcd(&a, &b), p(&[1, 0, 1]));
        assert_eq!(rational_gcd(&p(&[2, 1]), &p(&[-3, 1])), p(&[1]));
    }

    #[test]
    fn yun_splits_multiplicities() {
        // (q+1)^3 (q^2+1)^2 (q-2)
        let f1 = p(&[1, 1]);
        let f2 = p(&[1, 0, 1]);
        let f3 = p(&[-2, 1]);
        let mut f = mul(&f1, &mul(&f1, &f1));
        f = mul(&f, &mul(&f2, &f2));
        f = mul(&f, &f3);
        let f = scale(&f, &BigRational::from_integer(6.into()));
        let sf = squarefree(&f);
        assert_eq!(sf, vec![(f3, 1), (f2, 2), (f1, 3)]);
    }
}
