use std::collections::VecDeque;

use super::report::RelationReport;
use crate::action::{BracketModel, Engine, GeneratorId};
use crate::error::Result;
use crate::patterns::{Basis, CPattern};

/// Every admissible `E_i` kills the highest pattern and each admissible
/// `H_i` acts on it by `M_i` (offset included).
pub fn highest_weight<B: BracketModel>(engine: &Engine<B>, basis: &Basis) -> Vec<RelationReport> {
    let sig = basis.signature();
    let n = basis.depth() as i64;
    let top = CPattern::highest(sig, basis.depth());
    let id = basis.highest_id();

    let mut kills = RelationReport::new("highest", "E-annihilates", (-n - 1..n).collect(), basis.id());
    for i in -n - 1..n {
        kills.checked += 1;
        match engine.act(GeneratorId::e(i), &top) {
            Ok(v) if v.is_empty() => {}
            Ok(v) => kills.fail(Some(id), v.iter().map(|(t, c)| format!("E:{i} -> {c} |{t}>")).collect()),
            Err(e) => kills.fail(Some(id), vec![format!("E:{i}: error: {e}")]),
        }
    }

    let h_range: Vec<i64> = (-n - 1..=n).collect();
    let mut weights = RelationReport::new("highest", "H-eigenvalues", h_range.clone(), basis.id());
    for i in h_range {
        weights.checked += 1;
        let check = || -> Result<Option<String>> {
            let got = top.weight(sig, i)?.value(&sig.offset);
            let want = &sig.offset + crate::Rational::from_integer(sig.m(i).into());
            let acted = engine.act(GeneratorId::h(i), &top)?;
            let diag_ok = acted.iter().all(|(t, _)| *t == top);
            Ok((got != want || !diag_ok).then(|| format!("H:{i} gives {got}, expected M_{i} = {want}")))
        };
        match check() {
            Ok(None) => {}
            Ok(Some(msg)) => weights.fail(Some(id), vec![msg]),
            Err(e) => weights.fail(Some(id), vec![format!("H:{i}: error: {e}")]),
        }
    }
    vec![kills, weights]
}

/// Breadth-first closure of the highest pattern under the nonzero matrix
/// elements of `F_i`, `i` in `range`, inside the basis.
pub fn reachability<B: BracketModel>(engine: &Engine<B>, basis: &Basis, range: &[i64]) -> RelationReport {
    let mut report = RelationReport::new("reach", "F-closure", range.to_vec(), basis.id());
    let ops: Result<Vec<_>> = range.iter().map(|i| engine.operator(GeneratorId::f(*i), basis)).collect();
    let ops = match ops {
        Ok(ops) => ops,
        Err(e) => {
            report.fail(None, vec![format!("error: {e}")]);
            return report;
        }
    };
    let mut seen = vec![false; basis.len()];
    let start = basis.highest_id();
    seen[start] = true;
    let mut queue = VecDeque::from([start]);
    while let Some(c) = queue.pop_front() {
        for op in &ops {
            for (r, _) in op.column(c) {
                if !seen[*r] {
                    seen[*r] = true;
                    queue.push_back(*r);
                }
            }
        }
    }
    report.checked = basis.len();
    let missed: Vec<usize> = (0..basis.len()).filter(|k| !seen[*k]).collect();
    for k in &missed {
        report.fail(Some(*k), vec![format!("unreached {}", basis.patterns()[*k])]);
    }
    let reached = basis.len() - missed.len();
    report.with_note(format!("{reached} of {} patterns reached", basis.len()))
}
