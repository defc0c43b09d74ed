//! The two bracket identities behind the diagonal Cartan relation.
//!
//! For `k >= 1` and a generator index `m` (either `k - 1` or `-k - 1`) let
//! `a` be the row holding `j` and `b = a + 1` the row holding `l`. With
//! `s = -1` for `m = k - 1` and `s = 1` for `m = -k - 1`,
//!
//! ```text
//! sum_{j,l} T(j, l; s, 0) - sum_{j,l} T(j, l; 0, -s) = [X - 1]
//! ```
//!
//! where `T(j, l; u, v)` is
//!
//! ```text
//! prod_{i != l} [L_{i,b} - L_{j,a} + u] prod_i [L_{i,a-1} - L_{j,a} + u]
//!   * prod_i [L_{i,b+1} - L_{l,b} + v] prod_{i != j} [L_{i,a} - L_{l,b} + v]
//! / prod_{i != j} [L_{i,a} - L_{j,a}] [L_{i,a} - L_{j,a} + u + v]
//!   prod_{i != l} [L_{i,b} - L_{l,b}] [L_{i,b} - L_{l,b} + u + v]
//! ```
//!
//! and `X = s (sum_{b+1} L - sum_b L - sum_a L + sum_{a-1} L)`, every sum
//! running over the full row window.

use std::collections::{BTreeMap, BTreeSet};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::report::RelationReport;
use crate::action::{unit, Deformed, Engine, GeneratorId};
use crate::error::{Error, Result};
use crate::patterns::{row_start, Basis, CPattern, Signature};
use crate::qarith::{q_bracket, CyclotomicMonomial, Fraction, RadSum};
use crate::{QFraction, Rational};

/// Which of the two identities: the one for `E_{k-1}, F_{k-1}` or the one
/// for `E_{-k-1}, F_{-k-1}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Which {
    NonNegative,
    Negative,
}

impl Which {
    pub fn generator_index(self, k: usize) -> i64 {
        match self {
            Which::NonNegative => k as i64 - 1,
            Which::Negative => -(k as i64) - 1,
        }
    }

    /// Row holding the `j` summation index.
    fn row_a(self, k: usize) -> usize {
        match self {
            Which::NonNegative => 2 * k - 1,
            Which::Negative => 2 * k,
        }
    }

    fn s(self) -> i64 {
        match self {
            Which::NonNegative => -1,
            Which::Negative => 1,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Which::NonNegative => "identity-nonnegative",
            Which::Negative => "identity-negative",
        }
    }
}

/// Integer values for every `L_{i,r}` the identity mentions.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct IdentityInstance {
    pub which: Which,
    pub k: usize,
    /// `L` values of rows `a - 1 ..= a + 2`, each over its full window.
    pub rows: BTreeMap<usize, Vec<i64>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityOutcome {
    pub lhs: QFraction,
    pub rhs_argument: i64,
    pub pass: bool,
}

struct Term {
    sign: i64,
    num: Vec<i64>,
    den: Vec<i64>,
}

impl IdentityInstance {
    pub fn from_pattern(sig: &Signature, p: &CPattern, which: Which, k: usize) -> Result<Self> {
        assert!(k >= 1, "k starts at 1");
        let a = which.row_a(k);
        if a + 2 > p.top_row() + 1 {
            return Err(Error::DepthExceeded { what: format!("{} with k = {k}", which.name()), depth: p.depth() });
        }
        let rows = (a - 1..=a + 2)
            .map(|r| (r, (0..r as i64).map(|x| p.l(sig, row_start(r) + x, r)).collect()))
            .collect();
        Ok(Self { which, k, rows })
    }

    pub fn l(&self, i: i64, r: usize) -> i64 {
        self.rows[&r][(i - row_start(r)) as usize]
    }

    fn window(r: usize) -> std::ops::RangeInclusive<i64> {
        row_start(r)..=row_start(r) + r as i64 - 1
    }

    fn row_sum(&self, r: usize) -> i64 {
        self.rows[&r].iter().sum()
    }

    /// Argument of the bracket on the right-hand side.
    pub fn rhs_argument(&self) -> i64 {
        let a = self.which.row_a(self.k);
        let x = self.row_sum(a + 2) - self.row_sum(a + 1) - self.row_sum(a) + self.row_sum(a - 1);
        self.which.s() * x - 1
    }

    fn terms(&self) -> Vec<Term> {
        let a = self.which.row_a(self.k);
        let b = a + 1;
        let s = self.which.s();
        let l = |i, r| self.l(i, r);
        let mut out = Vec::new();
        for (sign, u, v) in [(1, s, 0), (-1, 0, -s)] {
            for j in Self::window(a) {
                for ll in Self::window(b) {
                    let (lj, lb) = (l(j, a), l(ll, b));
                    let mut num = Vec::new();
                    let mut den = Vec::new();
                    num.extend(Self::window(b).filter(|i| *i != ll).map(|i| l(i, b) - lj + u));
                    num.extend(Self::window(a - 1).map(|i| l(i, a - 1) - lj + u));
                    num.extend(Self::window(b + 1).map(|i| l(i, b + 1) - lb + v));
                    num.extend(Self::window(a).filter(|i| *i != j).map(|i| l(i, a) - lb + v));
                    for i in Self::window(a).filter(|i| *i != j) {
                        den.extend([l(i, a) - lj, l(i, a) - lj + u + v]);
                    }
                    for i in Self::window(b).filter(|i| *i != ll) {
                        den.extend([l(i, b) - lb, l(i, b) - lb + u + v]);
                    }
                    out.push(Term { sign, num, den });
                }
            }
        }
        out
    }

    /// Whether some denominator bracket vanishes.
    pub fn is_degenerate(&self) -> bool {
        self.terms().iter().any(|t| t.den.contains(&0))
    }

    /// Left-hand side as an exact rational function of `q`. With `strict`
    /// a vanishing denominator is an error; otherwise such terms are
    /// dropped, matching the deletion of non-pattern targets.
    pub fn lhs(&self, strict: bool) -> Result<QFraction> {
        let mut acc = Fraction::zero();
        for t in self.terms() {
            if t.den.contains(&0) {
                if strict {
                    return Err(Error::DegenerateAssignment(format!(
                        "k = {}, {}: zero denominator bracket in {:?}",
                        self.k,
                        self.which.name(),
                        t.den
                    )));
                }
                continue;
            }
            if t.num.contains(&0) {
                continue;
            }
            let negatives = t.num.iter().chain(&t.den).filter(|x| **x < 0).count() as i64;
            let sign = t.sign * if negatives % 2 == 0 { 1 } else { -1 };
            let abs = |v: &[i64]| v.iter().map(|x| x.abs()).collect::<Vec<_>>();
            let mag: QFraction = CyclotomicMonomial::bracket_ratio(&abs(&t.num), &abs(&t.den)).to_fraction();
            acc = if sign > 0 { &acc + &mag } else { &acc - &mag };
        }
        Ok(acc)
    }

    pub fn verify(&self, strict: bool) -> Result<IdentityOutcome> {
        let lhs = self.lhs(strict)?;
        let rhs_argument = self.rhs_argument();
        let pass = lhs == Fraction::from_laurent(q_bracket(rhs_argument));
        Ok(IdentityOutcome { lhs, rhs_argument, pass })
    }
}

/// Draws distinct non-degenerate instances from random C-patterns of depth
/// `k + 1`. Returns the instances and how many draws were rejected.
pub fn sample_instances(
    sig: &Signature,
    which: Which,
    k: usize,
    count: usize,
    seed: u64,
) -> Result<(Vec<IdentityInstance>, usize)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ (k as u64) << 8 ^ which as u64);
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    let mut rejected = 0;
    let limit = 200 * count.max(1);
    for _ in 0..limit {
        if out.len() == count {
            break;
        }
        let p = CPattern::random(sig, k + 1, &mut rng);
        let inst = IdentityInstance::from_pattern(sig, &p, which, k)?;
        if inst.is_degenerate() || !seen.insert(inst.clone()) {
            rejected += 1;
            continue;
        }
        out.push(inst);
    }
    Ok((out, rejected))
}

/// Checks that the diagonal part of `[E_m, F_m]` on every basis vector equals
/// the identity's left-hand side under the deletion rule, and that the
/// bracket argument matches `H_m - H_{m+1}`.
pub fn operator_agreement(engine: &Engine<Deformed>, basis: &Basis, which: Which, k: usize) -> RelationReport {
    let m = which.generator_index(k);
    let mut report =
        RelationReport::new("identities", &format!("{}-vs-operator", which.name()), vec![k as i64, m], basis.id());
    let sig = basis.signature();
    for (id, p) in basis.patterns().iter().enumerate() {
        report.checked += 1;
        let check = || -> Result<Option<String>> {
            let inst = IdentityInstance::from_pattern(sig, p, which, k)?;
            let v = unit::<RadSum<Rational>>(p);
            let ef = engine.apply_word(&[GeneratorId::e(m), GeneratorId::f(m)], &v)?;
            let fe = engine.apply_word(&[GeneratorId::f(m), GeneratorId::e(m)], &v)?;
            let zero = RadSum::zero();
            let diag = ef.get(p).unwrap_or(&zero).sub(fe.get(p).unwrap_or(&zero));
            let lhs = RadSum::from_fraction(inst.lhs(false)?);
            let h = |i| p.weight(sig, i).map(|w| w.integer_part);
            let arg = h(m)? - h(m + 1)?;
            if diag != lhs {
                return Ok(Some(format!("operator diagonal {diag} differs from identity side {lhs}")));
            }
            if arg != inst.rhs_argument() {
                return Ok(Some(format!("H difference {arg} differs from bracket argument {}", inst.rhs_argument())));
            }
            Ok(None)
        };
        match check() {
            Ok(None) => {}
            Ok(Some(msg)) => report.fail(Some(id), vec![msg]),
            Err(e) => report.fail(Some(id), vec![format!("error: {e}")]),
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::{One, Zero};

    fn rat(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    /// Independent evaluation: every bracket as a rational number at `q`.
    fn at_q(inst: &IdentityInstance, q: &Rational) -> (Rational, Rational) {
        let br = |x: i64| {
            let qx = num_traits::pow::Pow::pow(q, x as i32);
            (qx.clone() - qx.recip()) / (q - q.recip())
        };
        let mut lhs = Rational::zero();
        for t in inst.terms() {
            if t.den.contains(&0) {
                continue;
            }
            let n = t.num.iter().fold(Rational::one(), |acc, x| acc * br(*x));
            let d = t.den.iter().fold(Rational::one(), |acc, x| acc * br(*x));
            lhs += Rational::from_integer(t.sign.into()) * n / d;
        }
        (lhs, br(inst.rhs_argument()))
    }

    fn m0() -> Signature {
        Signature::levendorskii_soibelman(0)
    }

    #[test]
    fn k1_on_highest_pattern() {
        let p = CPattern::highest(&m0(), 2);
        let inst = IdentityInstance::from_pattern(&m0(), &p, Which::NonNegative, 1).unwrap();
        assert!(!inst.is_degenerate());
        let out = inst.verify(true).unwrap();
        assert!(out.pass, "lhs {} vs [{}]", out.lhs, out.rhs_argument);
        for q in [rat(2, 1), rat(3, 1), rat(5, 2)] {
            let (l, r) = at_q(&inst, &q);
            assert_eq!(l, r);
        }
    }

    #[test]
    fn equal_entries_are_degenerate() {
        // row 2 = [0, 0] gives L values 1, 0 which differ by one
        let p = CPattern::from_rows(vec![vec![0], vec![0, 0], vec![1, 0, 0], vec![1, 1, 0, 0], vec![1, 1, 0, 0, 0]])
            .unwrap();
        let inst = IdentityInstance::from_pattern(&m0(), &p, Which::NonNegative, 1).unwrap();
        assert!(matches!(inst.verify(true), Err(Error::DegenerateAssignment(_))));
    }

    #[test]
    fn sampled_k2_instances_pass() {
        let sig = Signature::new(Rational::zero(), 12, -3, vec![12, 10, 8, 6, 4, 2, 0], 0);
        for which in [Which::NonNegative, Which::Negative] {
            let (insts, _) = sample_instances(&sig, which, 2, 3, 7).unwrap();
            assert_eq!(insts.len(), 3);
            for inst in &insts {
                let out = inst.verify(true).unwrap();
                assert!(out.pass, "{which:?}: lhs {} vs [{}]", out.lhs, out.rhs_argument);
                let (l, r) = at_q(inst, &rat(3, 1));
                assert_eq!(l, r);
            }
        }
    }

    #[test]
    fn sampling_is_reproducible() {
        let sig = Signature::new(Rational::zero(), 12, -3, vec![12, 10, 8, 6, 4, 2, 0], 0);
        let a = sample_instances(&sig, Which::Negative, 1, 10, 42).unwrap();
        let b = sample_instances(&sig, Which::Negative, 1, 10, 42).unwrap();
        assert_eq!(a, b);
    }
}
