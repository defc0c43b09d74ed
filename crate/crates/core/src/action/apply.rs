use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex, RwLock};

use rayon::prelude::*;

use super::model::{BracketModel, MatrixScalar};
use super::operator::SparseOperator;
use super::{sign_s, GeneratorId, IndexDecomposition, Kind};
use crate::error::{Error, Result};
use crate::patterns::{Basis, CPattern, Signature};

/// A finite combination of patterns of one depth, keyed by the pattern itself
/// so that intermediate vectors may leave the enumerated basis.
pub type PatternVector<S> = BTreeMap<CPattern, S>;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TermOutcome {
    /// Valid target with a nonzero coefficient.
    Kept,
    /// Valid target, but a numerator bracket vanishes.
    ZeroNumerator,
    /// Target is not a C-pattern; the term is dropped.
    Deleted,
}

/// One summand of an `E`/`F` action before any bracket is evaluated.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RawTerm {
    pub j: i64,
    pub l: i64,
    pub target: CPattern,
    /// Sign in front of the square root.
    pub sign: i64,
    /// Sign applied to the ratio under the root on top of the bracket signs.
    pub radicand_sign: i64,
    /// Bracket arguments above and below the fraction bar under the root.
    pub num: Vec<i64>,
    pub den: Vec<i64>,
    pub outcome: TermOutcome,
}

impl RawTerm {
    /// Sign of the quantity under the root, counting negative arguments.
    pub fn net_radicand_sign(&self) -> i64 {
        let negatives = self.num.iter().chain(&self.den).filter(|a| **a < 0).count() as i64;
        self.radicand_sign * if negatives % 2 == 0 { 1 } else { -1 }
    }

    pub fn abs_num(&self) -> Vec<i64> {
        self.num.iter().map(|a| a.abs()).collect()
    }

    pub fn abs_den(&self) -> Vec<i64> {
        self.den.iter().map(|a| a.abs()).collect()
    }
}

/// Every summand of `E_m` (`kind = E`) or `F_m` on `p`, including deleted
/// ones, with the consistency checks of the deletion rule applied.
pub fn act_raw(sig: &Signature, kind: Kind, m: i64, p: &CPattern) -> Result<Vec<RawTerm>> {
    assert!(kind != Kind::H, "act_raw handles E and F only");
    let l = |k: i64, r: usize| p.l(sig, k, r);
    let mut out = Vec::new();
    match IndexDecomposition::of(m) {
        IndexDecomposition::Special => {
            // E lowers M_{0,1}, F raises it
            let mu = i64::from(kind == Kind::F);
            let num = vec![l(-1, 2) - l(0, 1) - mu, l(0, 1) - l(0, 2) + mu];
            let target = p.shifted(1, 0, if mu == 0 { -1 } else { 1 })?;
            out.push(classify(sig, 0, 0, target, 1, 1, num, vec![])?);
        }
        IndexDecomposition::Regular { i, nu } => {
            let mu: i64 = i64::from(kind == Kind::E);
            let ii = i as i64;
            let nn = i64::from(nu);
            let s = if nu == 0 { 1 } else { -1 };
            let pm = if (mu + nn) % 2 == 0 { 1 } else { -1 };
            let a = 2 * i + nu as usize - 1;
            let b = a + 1;
            let delta = -pm;
            for j in (1 - ii - nn)..=(ii - 1) {
                for ll in -ii..=(ii + nn - 1) {
                    let mut num = Vec::new();
                    let mut den = Vec::new();
                    let lj = l(j, a);
                    let lb = l(ll, b);
                    for k in (-ii..=ii + nn - 1).filter(|k| *k != ll) {
                        num.push(l(k, b) - lj - s * mu);
                    }
                    if a >= 2 {
                        for k in (1 - ii)..=(ii + nn - 2) {
                            num.push(l(k, a - 1) - lj - s * mu);
                        }
                    }
                    for k in ((1 - ii - nn)..=(ii - 1)).filter(|k| *k != j) {
                        den.push(l(k, a) - lj);
                        den.push(l(k, a) - lj + pm);
                    }
                    for k in (-ii - nn)..=ii {
                        num.push(l(k, b + 1) - lb + s * (1 - mu));
                    }
                    for k in ((1 - ii - nn)..=(ii - 1)).filter(|k| *k != j) {
                        num.push(l(k, a) - lb + s * (1 - mu));
                    }
                    for k in (-ii..=ii + nn - 1).filter(|k| *k != ll) {
                        den.push(l(k, b) - lb);
                        den.push(l(k, b) - lb + pm);
                    }
                    let target = p.shifted(a, j, delta)?.shifted(b, ll, delta)?;
                    out.push(classify(sig, j, ll, target, -sign_s(j, ll, nu), -1, num, den)?);
                }
            }
        }
    }
    Ok(out)
}

#[allow(clippy::too_many_arguments)]
fn classify(
    sig: &Signature,
    j: i64,
    l: i64,
    target: CPattern,
    sign: i64,
    radicand_sign: i64,
    num: Vec<i64>,
    den: Vec<i64>,
) -> Result<RawTerm> {
    let valid = target.is_valid(sig);
    let zero_num = num.contains(&0);
    let zero_den = den.contains(&0);
    let outcome = match (valid, zero_num, zero_den) {
        (true, _, true) => {
            return Err(Error::FormulaAnomaly(format!("valid target {target} has a vanishing denominator {den:?}")));
        }
        (true, true, false) => TermOutcome::ZeroNumerator,
        (true, false, false) => TermOutcome::Kept,
        (false, false, false) => {
            return Err(Error::FormulaAnomaly(format!(
                "non-pattern target {target} has a finite nonzero coefficient (num {num:?}, den {den:?})"
            )));
        }
        (false, _, _) => TermOutcome::Deleted,
    };
    let term = RawTerm { j, l, target, sign, radicand_sign, num, den, outcome };
    if outcome == TermOutcome::Kept && term.net_radicand_sign() < 0 {
        return Err(Error::NegativeRadicandAnomaly(format!(
            "term (j={j}, l={l}) to {} has a negative radicand (num {:?}, den {:?})",
            term.target, term.num, term.den
        )));
    }
    Ok(term)
}

type ActionKey = (GeneratorId, CPattern);

/// Generator action in a fixed bracket model on depth-`N` patterns of one
/// signature. Actions are cached per (generator, pattern), operator
/// matrices per (basis, generator); both caches are write-once per key.
pub struct Engine<B: BracketModel> {
    model: B,
    signature: Signature,
    depth: usize,
    actions: RwLock<HashMap<ActionKey, Arc<Vec<(CPattern, B::Scalar)>>>>,
    operators: Mutex<HashMap<(String, GeneratorId), Arc<SparseOperator<B::Scalar>>>>,
}

impl<B: BracketModel> Engine<B> {
    pub fn new(model: B, signature: Signature, depth: usize) -> Self {
        Self { model, signature, depth, actions: Default::default(), operators: Default::default() }
    }

    pub fn for_basis(model: B, basis: &Basis) -> Self {
        Self::new(model, basis.signature().clone(), basis.depth())
    }

    pub fn model(&self) -> &B {
        &self.model
    }

    pub fn signature(&self) -> &Signature {
        &self.signature
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    /// `H_i` eigenvalue on `p`, offset included.
    pub fn eigenvalue(&self, i: i64, p: &CPattern) -> Result<B::Scalar> {
        let w = p.weight(&self.signature, i)?;
        Ok(B::Scalar::from_rational(&w.value(&self.signature.offset)))
    }

    /// `g` applied to one pattern. Targets are C-patterns of the same depth
    /// (possibly outside the stable basis); zero coefficients are dropped.
    pub fn act(&self, g: GeneratorId, p: &CPattern) -> Result<Arc<Vec<(CPattern, B::Scalar)>>> {
        g.check_admissible(self.depth)?;
        if p.depth() != self.depth {
            return Err(Error::InvalidPattern(format!("pattern of depth {} given to a depth-{} module", p.depth(), self.depth)));
        }
        let key = (g, p.clone());
        if let Some(v) = self.actions.read().expect("cache poisoned").get(&key) {
            return Ok(v.clone());
        }
        let value = Arc::new(self.compute(g, p)?);
        let mut cache = self.actions.write().expect("cache poisoned");
        Ok(cache.entry(key).or_insert(value).clone())
    }

    fn compute(&self, g: GeneratorId, p: &CPattern) -> Result<Vec<(CPattern, B::Scalar)>> {
        if g.kind == Kind::H {
            let v = self.eigenvalue(g.index, p)?;
            return Ok(if v.is_zero() { vec![] } else { vec![(p.clone(), v)] });
        }
        let mut out = Vec::new();
        for t in act_raw(&self.signature, g.kind, g.index, p)? {
            if t.outcome != TermOutcome::Kept {
                continue;
            }
            let root = self.model.sqrt_ratio(&t.abs_num(), &t.abs_den());
            let c = if t.sign < 0 { root.neg() } else { root };
            if !c.is_zero() {
                out.push((t.target, c));
            }
        }
        Ok(out)
    }

    pub fn apply(&self, g: GeneratorId, v: &PatternVector<B::Scalar>) -> Result<PatternVector<B::Scalar>> {
        let mut out = PatternVector::new();
        for (p, c) in v {
            for (t, a) in self.act(g, p)?.iter() {
                accumulate(&mut out, t.clone(), c.mul(a));
            }
        }
        Ok(out)
    }

    /// `word[0] word[1] ... word[n-1] v`: the last generator acts first.
    pub fn apply_word(&self, word: &[GeneratorId], v: &PatternVector<B::Scalar>) -> Result<PatternVector<B::Scalar>> {
        let mut cur = v.clone();
        for g in word.iter().rev() {
            cur = self.apply(*g, &cur)?;
        }
        Ok(cur)
    }

    /// Matrix of `g` restricted to the basis, columns computed in parallel.
    pub fn operator(&self, g: GeneratorId, basis: &Basis) -> Result<Arc<SparseOperator<B::Scalar>>> {
        g.check_admissible(basis.depth())?;
        let key = (basis.hash().to_string(), g);
        if let Some(op) = self.operators.lock().expect("cache poisoned").get(&key) {
            return Ok(op.clone());
        }
        let columns: Result<Vec<Vec<(usize, B::Scalar)>>> = basis
            .patterns()
            .par_iter()
            .map(|p| {
                let mut col: Vec<(usize, B::Scalar)> = self
                    .act(g, p)?
                    .iter()
                    .filter_map(|(t, c)| basis.id_of(t).map(|row| (row, c.clone())))
                    .collect();
                col.sort_by_key(|(row, _)| *row);
                Ok(col)
            })
            .collect();
        let op = Arc::new(SparseOperator::new(g, basis.id().to_string(), basis.len(), columns?));
        Ok(self.operators.lock().expect("cache poisoned").entry(key).or_insert(op).clone())
    }
}

pub fn unit<S: MatrixScalar>(p: &CPattern) -> PatternVector<S> {
    PatternVector::from([(p.clone(), S::from_integer(1))])
}

/// Adds `c |p>` to `v`, dropping the entry if it cancels.
pub fn accumulate<S: MatrixScalar>(v: &mut PatternVector<S>, p: CPattern, c: S) {
    if c.is_zero() {
        return;
    }
    match v.get_mut(&p) {
        Some(existing) => {
            let sum = existing.add(&c);
            if sum.is_zero() {
                v.remove(&p);
            } else {
                *existing = sum;
            }
        }
        None => {
            v.insert(p, c);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::action::{Classical, Deformed, Numeric};
    use crate::qarith::RadSum;
    use crate::Rational;

    fn m0() -> Signature {
        Signature::levendorskii_soibelman(0)
    }

    fn one() -> RadSum<Rational> {
        RadSum::one()
    }

    #[test]
    fn e_minus_one_kills_highest() {
        let e = Engine::new(Deformed::new(), m0(), 1);
        let h = CPattern::highest(&m0(), 1);
        assert!(e.act(GeneratorId::e(-1), &h).unwrap().is_empty());
        let raw = act_raw(&m0(), Kind::E, -1, &h).unwrap();
        // [L_{-1,2} - L_{0,1}] [L_{0,1} - L_{0,2}] = [2][0]
        assert_eq!(raw[0].num, vec![2, 0]);
        assert_eq!(raw[0].outcome, TermOutcome::Deleted);
    }

    #[test]
    fn f_minus_one_raises_with_unit_coefficient() {
        let e = Engine::new(Deformed::new(), m0(), 1);
        let h = CPattern::highest(&m0(), 1);
        let out = e.act(GeneratorId::f(-1), &h).unwrap();
        assert_eq!(out.len(), 1);
        assert_eq!(out[0].0.rows()[0], vec![1]);
        assert_eq!(out[0].1, one());
        let c = Engine::new(Classical, m0(), 1).act(GeneratorId::f(-1), &h).unwrap();
        assert_eq!(c[0].1, one());
    }

    #[test]
    fn h_eigenvalues() {
        let e = Engine::new(Deformed::new(), m0(), 2);
        let h = CPattern::highest(&m0(), 2);
        let out = e.act(GeneratorId::h(-1), &h).unwrap();
        assert_eq!(out.as_slice(), &[(h.clone(), one())]);
        assert!(e.act(GeneratorId::h(0), &h).unwrap().is_empty());
    }

    #[test]
    fn inadmissible_generators_are_rejected() {
        let e = Engine::new(Deformed::new(), m0(), 1);
        let h = CPattern::highest(&m0(), 1);
        assert!(matches!(e.act(GeneratorId::e(1), &h), Err(Error::DepthExceeded { .. })));
        assert!(matches!(e.act(GeneratorId::h(2), &h), Err(Error::DepthExceeded { .. })));
    }

    #[test]
    fn locality() {
        let sig = m0();
        let basis = Basis::enumerate(&sig, 2).unwrap();
        for m in -3..=1 {
            let rows = IndexDecomposition::of(m).rows();
            for p in basis.patterns() {
                for kind in [Kind::E, Kind::F] {
                    for t in act_raw(&sig, kind, m, p).unwrap() {
                        for r in 1..=p.top_row() {
                            if !rows.contains(&r) {
                                assert_eq!(t.target.rows()[r - 1], p.rows()[r - 1]);
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn e_raises_for_nonnegative_index() {
        let sig = m0();
        let basis = Basis::enumerate(&sig, 2).unwrap();
        let e = Engine::new(Numeric::<f64>::new(&Rational::new(3.into(), 2.into())).unwrap(), sig.clone(), 2);
        for p in basis.patterns() {
            for (t, _) in e.act(GeneratorId::e(0), p).unwrap().iter() {
                assert_eq!(t.row_sum(&sig, 1), p.row_sum(&sig, 1) + 1);
            }
        }
    }
}
