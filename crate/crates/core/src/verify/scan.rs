use std::collections::BTreeMap;

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::action::{Engine, GeneratorId, Numeric};
use crate::error::Result;
use crate::patterns::Basis;
use crate::Rational;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WeightSpaceScan {
    /// Row sums of rows `1 ..= 2N + 1`.
    pub weight: Vec<i64>,
    pub dim: usize,
    pub rank: usize,
    pub kernel_dim: usize,
    pub singular_values: Vec<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScanReport {
    pub basis_id: String,
    pub q: String,
    pub tol: f64,
    pub kernel_dim: usize,
    pub highest_in_kernel: bool,
    /// Weight spaces with a nonzero joint kernel.
    pub singular_spaces: Vec<WeightSpaceScan>,
    pub weight_spaces: usize,
}

/// Joint kernel of all admissible `E_i` at a numeric `q`, weight space by
/// weight space. Ranks count singular values above `tol` times the largest.
pub fn scan_singular(basis: &Basis, q: &Rational, tol: f64) -> Result<ScanReport> {
    let engine = Engine::for_basis(Numeric::<f64>::new(q)?, basis);
    let n = basis.depth() as i64;
    let ops = (-n - 1..n).map(|i| engine.operator(GeneratorId::e(i), basis)).collect::<Result<Vec<_>>>()?;
    let sig = basis.signature();
    let mut spaces: BTreeMap<Vec<i64>, Vec<usize>> = BTreeMap::new();
    for (id, p) in basis.patterns().iter().enumerate() {
        let w = (1..=p.top_row()).map(|r| p.row_sum(sig, r)).collect();
        spaces.entry(w).or_default().push(id);
    }
    let highest = basis.highest_id();
    let mut out = ScanReport {
        basis_id: basis.id().to_string(),
        q: q.to_string(),
        tol,
        kernel_dim: 0,
        highest_in_kernel: false,
        singular_spaces: Vec::new(),
        weight_spaces: spaces.len(),
    };
    for (weight, cols) in spaces {
        // rows of the stacked matrix: (operator, target) pairs that occur
        let mut rows: BTreeMap<(usize, usize), usize> = BTreeMap::new();
        for (o, op) in ops.iter().enumerate() {
            for c in &cols {
                for (r, _) in op.column(*c) {
                    let next = rows.len();
                    rows.entry((o, *r)).or_insert(next);
                }
            }
        }
        let (rank, singular_values) = if rows.is_empty() {
            (0, Vec::new())
        } else {
            let mut m = DMatrix::<f64>::zeros(rows.len(), cols.len());
            for (k, c) in cols.iter().enumerate() {
                for (o, op) in ops.iter().enumerate() {
                    for (r, v) in op.column(*c) {
                        m[(rows[&(o, *r)], k)] = *v;
                    }
                }
            }
            let sv: Vec<f64> = m.singular_values().iter().copied().collect();
            let max = sv.iter().copied().fold(0.0, f64::max);
            let rank = if max == 0.0 { 0 } else { sv.iter().filter(|s| **s > tol * max).count() };
            (rank, sv)
        };
        let kernel_dim = cols.len() - rank;
        if kernel_dim > 0 {
            out.kernel_dim += kernel_dim;
            out.highest_in_kernel |= cols.contains(&highest);
            out.singular_spaces.push(WeightSpaceScan { weight, dim: cols.len(), rank, kernel_dim, singular_values });
        }
    }
    Ok(out)
}
