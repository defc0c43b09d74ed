use std::collections::BTreeMap;

use super::model::MatrixScalar;
use super::GeneratorId;

/// Basis-indexed vector: pattern id to coefficient, no zero entries.
pub type RadVector<S> = BTreeMap<usize, S>;

/// One generator on an enumerated basis, stored by columns.
#[derive(Clone, Debug)]
pub struct SparseOperator<S> {
    generator: GeneratorId,
    basis_id: String,
    dim: usize,
    columns: Vec<Vec<(usize, S)>>,
}

impl<S: MatrixScalar> SparseOperator<S> {
    pub fn new(generator: GeneratorId, basis_id: String, dim: usize, columns: Vec<Vec<(usize, S)>>) -> Self {
        debug_assert_eq!(columns.len(), dim);
        Self { generator, basis_id, dim, columns }
    }

    pub fn generator(&self) -> GeneratorId {
        self.generator
    }

    pub fn basis_id(&self) -> &str {
        &self.basis_id
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn column(&self, col: usize) -> &[(usize, S)] {
        &self.columns[col]
    }

    /// `(col, row, coeff)` in column-major order.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &S)> {
        self.columns.iter().enumerate().flat_map(|(c, col)| col.iter().map(move |(r, v)| (c, *r, v)))
    }

    pub fn nnz(&self) -> usize {
        self.columns.iter().map(Vec::len).sum()
    }

    pub fn get(&self, row: usize, col: usize) -> Option<&S> {
        self.columns[col].iter().find(|(r, _)| *r == row).map(|(_, v)| v)
    }

    pub fn is_diagonal(&self) -> bool {
        self.entries().all(|(c, r, _)| c == r)
    }

    pub fn apply(&self, v: &RadVector<S>) -> RadVector<S> {
        let mut out: RadVector<S> = RadVector::new();
        for (col, a) in v {
            for (row, c) in &self.columns[*col] {
                let term = a.mul(c);
                let sum = match out.remove(row) {
                    Some(prev) => prev.add(&term),
                    None => term,
                };
                if !sum.is_zero() {
                    out.insert(*row, sum);
                }
            }
        }
        out
    }

    /// Entrywise image under `f`, dropping entries that become zero.
    pub fn map<T: MatrixScalar, E>(&self, mut f: impl FnMut(&S) -> Result<T, E>) -> Result<SparseOperator<T>, E> {
        let mut columns = Vec::with_capacity(self.dim);
        for col in &self.columns {
            let mut out = Vec::with_capacity(col.len());
            for (r, v) in col {
                let t = f(v)?;
                if !t.is_zero() {
                    out.push((*r, t));
                }
            }
            columns.push(out);
        }
        Ok(SparseOperator::new(self.generator, self.basis_id.clone(), self.dim, columns))
    }
}

impl SparseOperator<f64> {
    pub fn to_dense(&self) -> nalgebra::DMatrix<f64> {
        let mut m = nalgebra::DMatrix::zeros(self.dim, self.dim);
        for (c, r, v) in self.entries() {
            m[(r, c)] = *v;
        }
        m
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::action::{Deformed, Engine};
    use crate::patterns::{Basis, Signature};
    use crate::qarith::RadSum;
    use crate::Rational;

    #[test]
    fn f_minus_one_on_three_patterns() {
        let sig = Signature::levendorskii_soibelman(0);
        let basis = Basis::enumerate(&sig, 1).unwrap();
        let e = Engine::for_basis(Deformed::new(), &basis);
        let f = e.operator(GeneratorId::f(-1), &basis).unwrap();
        // patterns: 0 = (r1 0, r2 [0,0]), 1 = highest, 2 = (r1 1, r2 [1,0]);
        // only 1 -> 2 raises M_{0,1} inside the basis
        let entries: Vec<(usize, usize)> = f.entries().map(|(c, r, _)| (c, r)).collect();
        assert_eq!(entries, vec![(1, 2)]);
        assert_eq!(f.get(2, 1), Some(&RadSum::<Rational>::one()));
        let h = e.operator(GeneratorId::h(0), &basis).unwrap();
        assert!(h.is_diagonal());
        let dense = f.map(|v| v.evaluate::<f64>(&Rational::new(3.into(), 2.into()))).unwrap().to_dense();
        assert_eq!(dense[(2, 1)], 1.0);
    }
}
