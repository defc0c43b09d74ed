use std::collections::BTreeSet;

use rayon::prelude::*;

use super::report::{render, RelationReport};
use crate::action::{accumulate, unit, BracketModel, Engine, GeneratorId, Kind, MatrixScalar, Numeric, PatternVector};
use crate::error::Result;
use crate::patterns::{Basis, CPattern};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Coef {
    Int(i64),
    /// `-[x]`.
    NegBracket(i64),
}

/// `sum_w c_w w` minus, when `cartan_diagonal = Some(i)`, the operator
/// `[H_i - H_{i+1}]`. A relation holds when this annihilates every vector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relation {
    pub name: String,
    pub indices: Vec<i64>,
    pub words: Vec<(Coef, Vec<GeneratorId>)>,
    pub cartan_diagonal: Option<i64>,
}

fn word(gs: &[GeneratorId]) -> Vec<GeneratorId> {
    gs.to_vec()
}

fn commutator(name: &str, a: GeneratorId, b: GeneratorId, indices: Vec<i64>) -> Relation {
    Relation {
        name: name.into(),
        indices,
        words: vec![(Coef::Int(1), word(&[a, b])), (Coef::Int(-1), word(&[b, a]))],
        cartan_diagonal: None,
    }
}

/// All four lines of the Cartan relations for `i, j` in `range`.
pub fn cartan_relations(range: &[i64]) -> Vec<Relation> {
    let delta = |a: i64, b: i64| i64::from(a == b);
    let mut out = Vec::new();
    for &i in range {
        for &j in range {
            out.push(commutator("cartan-hh", GeneratorId::h(i), GeneratorId::h(j), vec![i, j]));
            let c = delta(i, j) - delta(i, j + 1);
            let mut he = commutator("cartan-he", GeneratorId::h(i), GeneratorId::e(j), vec![i, j]);
            he.words.push((Coef::Int(-c), vec![GeneratorId::e(j)]));
            out.push(he);
            let mut hf = commutator("cartan-hf", GeneratorId::h(i), GeneratorId::f(j), vec![i, j]);
            hf.words.push((Coef::Int(c), vec![GeneratorId::f(j)]));
            out.push(hf);
            let mut ef = commutator("cartan-ef", GeneratorId::e(i), GeneratorId::f(j), vec![i, j]);
            ef.cartan_diagonal = (i == j).then_some(i);
            out.push(ef);
        }
    }
    out
}

/// `X_i X_j = X_j X_i` for `i < j` in `range` with `|i - j| != 1`.
pub fn commuting_relations(kind: Kind, range: &[i64]) -> Vec<Relation> {
    let g = |i| GeneratorId { kind, index: i };
    let mut out = Vec::new();
    for &i in range {
        for &j in range {
            if i < j && j - i != 1 {
                out.push(commutator(&format!("{kind:?}-commute"), g(i), g(j), vec![i, j]));
            }
        }
    }
    out
}

/// Commuting relations plus both cubic relations for every adjacent pair.
pub fn serre_relations(kind: Kind, range: &[i64]) -> Vec<Relation> {
    let g = |i| GeneratorId { kind, index: i };
    let mut out = commuting_relations(kind, range);
    for &i in range {
        if !range.contains(&(i + 1)) {
            continue;
        }
        for (name, a, b) in [("cubic-a", i, i + 1), ("cubic-b", i + 1, i)] {
            out.push(Relation {
                name: format!("{kind:?}-{name}"),
                indices: vec![i, i + 1],
                words: vec![
                    (Coef::Int(1), word(&[g(a), g(a), g(b)])),
                    (Coef::NegBracket(2), word(&[g(a), g(b), g(a)])),
                    (Coef::Int(1), word(&[g(b), g(a), g(a)])),
                ],
                cartan_diagonal: None,
            });
        }
    }
    out
}

fn coef<B: BracketModel>(engine: &Engine<B>, c: Coef) -> B::Scalar {
    match c {
        Coef::Int(n) => B::Scalar::from_integer(n),
        Coef::NegBracket(x) => engine.model().bracket(x).neg(),
    }
}

fn add_into<S: MatrixScalar>(acc: &mut PatternVector<S>, v: PatternVector<S>, c: &S) {
    for (p, a) in v {
        accumulate(acc, p, a.mul(c));
    }
}

/// The relation applied to `p`, computed without projecting intermediate
/// vectors onto the basis. Also returns each word's image for scaling.
fn residual_parts<B: BracketModel>(
    engine: &Engine<B>,
    rel: &Relation,
    p: &CPattern,
) -> Result<(PatternVector<B::Scalar>, Vec<PatternVector<B::Scalar>>)> {
    let start = unit::<B::Scalar>(p);
    let mut acc = PatternVector::new();
    let mut parts = Vec::new();
    for (c, w) in &rel.words {
        let v = engine.apply_word(w, &start)?;
        add_into(&mut acc, v.clone(), &coef(engine, *c));
        parts.push(v);
    }
    if let Some(i) = rel.cartan_diagonal {
        let h = |k| p.weight(engine.signature(), k).map(|w| w.integer_part);
        let x = h(i)? - h(i + 1)?;
        let d = PatternVector::from([(p.clone(), engine.model().bracket(x))]);
        add_into(&mut acc, d.clone(), &B::Scalar::from_integer(-1));
        parts.push(d);
    }
    Ok((acc, parts))
}

pub fn residual<B: BracketModel>(engine: &Engine<B>, rel: &Relation, p: &CPattern) -> Result<PatternVector<B::Scalar>> {
    residual_parts(engine, rel, p).map(|(r, _)| r)
}

/// Exact check: the residual must be structurally zero on every basis vector.
pub fn check_relation<B: BracketModel>(engine: &Engine<B>, basis: &Basis, suite: &str, rel: &Relation) -> RelationReport {
    let results: Vec<(usize, Result<PatternVector<B::Scalar>>)> =
        basis.patterns().par_iter().enumerate().map(|(id, p)| (id, residual(engine, rel, p))).collect();
    let mut report = RelationReport::new(suite, &rel.name, rel.indices.clone(), basis.id());
    for (id, r) in results {
        report.checked += 1;
        match r {
            Ok(v) if v.is_empty() => {}
            Ok(v) => report.fail(Some(id), render(&v)),
            Err(e) => report.fail(Some(id), vec![format!("error: {e}")]),
        }
    }
    report
}

pub fn check_relations<B: BracketModel>(engine: &Engine<B>, basis: &Basis, suite: &str, rels: &[Relation]) -> Vec<RelationReport> {
    rels.par_iter().map(|r| check_relation(engine, basis, suite, r)).collect()
}

/// Floating point version: passes when every residual entry is at most
/// `tol` times the largest entry among the individual words.
pub fn check_numeric(engine: &Engine<Numeric<f64>>, basis: &Basis, suite: &str, rel: &Relation, tol: f64) -> RelationReport {
    let mut report = RelationReport::new(suite, &rel.name, rel.indices.clone(), basis.id());
    let mut worst = 0.0f64;
    for (id, p) in basis.patterns().iter().enumerate() {
        report.checked += 1;
        match residual_parts(engine, rel, p) {
            Ok((res, parts)) => {
                let scale = parts.iter().flat_map(|v| v.values()).fold(0.0f64, |m, x| m.max(x.abs()));
                let err = res.values().fold(0.0f64, |m, x| m.max(x.abs()));
                let rel_err = if scale > 0.0 { err / scale } else { err };
                worst = worst.max(rel_err);
                if rel_err > tol {
                    report.fail(Some(id), vec![format!("relative residual {rel_err:.3e} at q = {}", engine.model().q())]);
                }
            }
            Err(e) => report.fail(Some(id), vec![format!("error: {e}")]),
        }
    }
    report.with_note(format!("q = {}, max relative residual {worst:.3e}", engine.model().q()))
}

fn support<S>(r: Result<std::sync::Arc<Vec<(CPattern, S)>>>) -> Result<BTreeSet<CPattern>> {
    Ok(r?.iter().map(|(t, _)| t.clone()).collect())
}

/// A deformed matrix element vanishes exactly when the classical one does:
/// compares the supports of the two actions of every `E`/`F` in `range`.
pub fn zero_pattern<D, C>(deformed: &Engine<D>, classical: &Engine<C>, basis: &Basis, range: &[i64]) -> RelationReport
where
    D: BracketModel,
    C: BracketModel,
{
    let mut report = RelationReport::new("classical", "zero-pattern", range.to_vec(), basis.id());
    for (id, p) in basis.patterns().iter().enumerate() {
        for &m in range {
            for g in [GeneratorId::e(m), GeneratorId::f(m)] {
                report.checked += 1;
                let d = support(deformed.act(g, p));
                let c = support(classical.act(g, p));
                match (d, c) {
                    (Ok(d), Ok(c)) if d == c => {}
                    (Ok(d), Ok(c)) => {
                        let diff: Vec<String> = d.symmetric_difference(&c).map(|t| format!("{g}: {t}")).collect();
                        report.fail(Some(id), diff);
                    }
                    (Err(e), _) | (_, Err(e)) => report.fail(Some(id), vec![format!("{g}: error: {e}")]),
                }
            }
        }
    }
    report
}
