//! Text output for `act`.

use num_traits::Signed;
use qglinf::patterns::{Basis, CPattern};
use qglinf::{QRadSum, Rational, Result};

fn ket(target: &CPattern, basis: &Basis) -> String {
    match basis.id_of(target) {
        Some(id) => format!("|{id}⟩"),
        None => format!("|{target}⟩ (outside basis)"),
    }
}

/// `±(prefactor)·sqrt(radicand)` for each radical term; no sqrt when the radicand is 1.
pub fn coefficient(c: &QRadSum) -> String {
    let parts: Vec<String> = c
        .terms()
        .map(|(r, f)| {
            let negative = f.numer().leading_coeff().is_some_and(|x| x.is_negative());
            let (sign, abs) = if negative { ("-", -f) } else { ("+", f.clone()) };
            if r.is_one() {
                format!("{sign}({abs})")
            } else {
                format!("{sign}({abs})·sqrt({r})")
            }
        })
        .collect();
    parts.join(" ")
}

fn numeric(c: &QRadSum, q: Option<&Rational>) -> Result<String> {
    match q {
        Some(q) => Ok(format!("  [q={q}: {}]", c.evaluate::<f64>(q)?)),
        None => Ok(String::new()),
    }
}

pub fn vector(terms: &[(CPattern, QRadSum)], basis: &Basis, q: Option<&Rational>) -> Result<Vec<String>> {
    if terms.is_empty() {
        return Ok(vec!["ZERO".into()]);
    }
    terms.iter().map(|(t, c)| Ok(format!("{} · {}{}", coefficient(c), ket(t, basis), numeric(c, q)?))).collect()
}

/// `H_i` acts diagonally; the eigenvalue is printed even when it is zero.
pub fn eigenvalue(value: &QRadSum, id: usize) -> String {
    let v = value.as_fraction().map_or_else(|| value.to_string(), |f| f.to_string());
    format!("{v} · |{id}⟩")
}
