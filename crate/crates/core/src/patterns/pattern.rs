use std::fmt;

use serde::{Deserialize, Serialize};

use super::signature::Signature;
use crate::error::{Error, Result};
use crate::Rational;

/// A C-pattern truncated at depth `N`: rows `1..=2N+1` are stored (row `r`
/// has `r` entries, window `[-floor(r/2), r - 1 - floor(r/2)]`), every higher
/// row equals the signature on its window.
///
/// Entries are integer parts; the signature offset is common to all of them.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CPattern {
    rows: Vec<Vec<i64>>,
}

/// Outcome of a single-entry shift.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Validity {
    /// A C-pattern whose top stored row still equals the signature.
    Valid,
    /// Betweenness holds but the top stored row moved, so the pattern lies
    /// outside the depth-`N` truncation.
    Unstable,
    /// Betweenness fails.
    Invalid,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PatternViolation {
    /// The lower row of the offending pair.
    pub row: usize,
    pub index: i64,
    pub message: String,
}

impl fmt::Display for PatternViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "row {} index {}: {}", self.row, self.index, self.message)
    }
}

/// `H_i` eigenvalue as `offset_multiplicity * c + integer_part`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct WeightValue {
    pub offset_multiplicity: i64,
    pub integer_part: i64,
}

impl WeightValue {
    pub fn value(&self, offset: &Rational) -> Rational {
        offset * Rational::from_integer(self.offset_multiplicity.into()) + Rational::from_integer(self.integer_part.into())
    }
}

/// First index of the window of row `r`.
pub fn row_start(r: usize) -> i64 {
    -((r / 2) as i64)
}

/// Whether index `i` lies in the window of row `r`.
pub fn in_window(r: usize, i: i64) -> bool {
    r >= 1 && i >= row_start(r) && i < row_start(r) + r as i64
}

/// Row feeding `H_i`: `2|i| + theta(i)` with `theta(i) = 1` iff `i >= 0`.
pub fn weight_row(i: i64) -> usize {
    2 * i.unsigned_abs() as usize + usize::from(i >= 0)
}

impl CPattern {
    /// Builds from rows listed bottom (`r = 1`) up; only shapes are checked.
    pub fn from_rows(rows: Vec<Vec<i64>>) -> Result<Self> {
        if rows.len() % 2 == 0 {
            return Err(Error::InvalidPattern(format!("expected an odd number of rows, got {}", rows.len())));
        }
        for (k, row) in rows.iter().enumerate() {
            if row.len() != k + 1 {
                return Err(Error::InvalidPattern(format!("row {} has {} entries, expected {}", k + 1, row.len(), k + 1)));
            }
        }
        Ok(Self { rows })
    }

    /// The highest-weight pattern: every entry `M_{i,r} = M_i`.
    pub fn highest(sig: &Signature, depth: usize) -> Self {
        let rows = (1..=2 * depth + 1)
            .map(|r| (0..r).map(|p| sig.m(row_start(r) + p as i64)).collect())
            .collect();
        Self { rows }
    }

    /// A random C-pattern of the given depth: each entry is drawn uniformly
    /// from its betweenness range, top row down.
    pub fn random<R: rand::Rng + ?Sized>(sig: &Signature, depth: usize, rng: &mut R) -> Self {
        let mut rows = Self::highest(sig, depth).rows;
        for r in (1..rows.len()).rev() {
            let upper = rows[r].clone();
            for (p, v) in rows[r - 1].iter_mut().enumerate() {
                *v = rng.random_range(upper[p + 1]..=upper[p]);
            }
        }
        Self { rows }
    }

    pub fn depth(&self) -> usize {
        (self.rows.len() - 1) / 2
    }

    pub fn top_row(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<i64>] {
        &self.rows
    }

    /// `M_{i,r}`; rows above the stored ones come from the signature.
    /// Panics when `i` is outside the window of row `r`.
    pub fn m(&self, sig: &Signature, i: i64, r: usize) -> i64 {
        assert!(in_window(r, i), "M_{{{i},{r}}} outside the row window");
        if r <= self.rows.len() {
            self.rows[r - 1][(i - row_start(r)) as usize]
        } else {
            sig.m(i)
        }
    }

    /// `L_{i,r} = M_{i,r} - i`.
    pub fn l(&self, sig: &Signature, i: i64, r: usize) -> i64 {
        self.m(sig, i, r) - i
    }

    pub fn row_sum(&self, sig: &Signature, r: usize) -> i64 {
        if r == 0 {
            return 0;
        }
        (0..r as i64).map(|p| self.m(sig, row_start(r) + p, r)).sum()
    }

    /// Betweenness for every adjacent pair of rows up to the implicit
    /// signature row `2N + 2`, plus non-increasing rows.
    pub fn validate(&self, sig: &Signature) -> std::result::Result<(), PatternViolation> {
        for r in 1..=self.rows.len() {
            let start = row_start(r);
            for p in 0..r as i64 {
                let i = start + p;
                let w = self.m(sig, i, r);
                if p + 1 < r as i64 && w < self.m(sig, i + 1, r) {
                    return Err(PatternViolation { row: r, index: i, message: "row increases".into() });
                }
                // upper row r + 1 has window starting at start or start - 1;
                // positionally the entry sits between upper[p] and upper[p + 1]
                let up = row_start(r + 1);
                let hi = self.m(sig, up + p, r + 1);
                let lo = self.m(sig, up + p + 1, r + 1);
                if w > hi || w < lo {
                    return Err(PatternViolation {
                        row: r,
                        index: i,
                        message: format!("{w} not between {lo} and {hi} of row {}", r + 1),
                    });
                }
            }
        }
        Ok(())
    }

    pub fn is_valid(&self, sig: &Signature) -> bool {
        self.validate(sig).is_ok()
    }

    /// Whether the top stored row equals the signature on its window.
    pub fn is_stable(&self, sig: &Signature) -> bool {
        let r = self.rows.len();
        (0..r as i64).all(|p| self.rows[r - 1][p as usize] == sig.m(row_start(r) + p))
    }

    pub fn classify(&self, sig: &Signature) -> Validity {
        match (self.is_valid(sig), self.is_stable(sig)) {
            (false, _) => Validity::Invalid,
            (true, true) => Validity::Valid,
            (true, false) => Validity::Unstable,
        }
    }

    /// `M_{i,r} -> M_{i,r} + delta` on a copy.
    pub fn shifted(&self, r: usize, i: i64, delta: i64) -> Result<Self> {
        if r == 0 || r > self.rows.len() || !in_window(r, i) {
            return Err(Error::IndexOutOfWindow { row: r, index: i });
        }
        let mut out = self.clone();
        out.rows[r - 1][(i - row_start(r)) as usize] += delta;
        Ok(out)
    }

    /// Shift one entry and classify the result.
    pub fn shift(&self, sig: &Signature, r: usize, i: i64, delta: i64) -> Result<(Self, Validity)> {
        let out = self.shifted(r, i, delta)?;
        let v = out.classify(sig);
        Ok((out, v))
    }

    /// `H_i` eigenvalue: row sum of row `2|i| + theta(i)` minus that of the
    /// row below. Needs that row to be stored or the implicit row `2N + 2`.
    pub fn weight(&self, sig: &Signature, i: i64) -> Result<WeightValue> {
        let r = weight_row(i);
        if r > self.rows.len() + 1 {
            return Err(Error::DepthExceeded { what: format!("H_{i}"), depth: self.depth() });
        }
        Ok(WeightValue { offset_multiplicity: 1, integer_part: self.row_sum(sig, r) - self.row_sum(sig, r - 1) })
    }
}

impl fmt::Display for CPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .rows
            .iter()
            .rev()
            .map(|row| row.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(","))
            .collect();
        write!(f, "[{}]", rows.join(" | "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m0() -> Signature {
        Signature::levendorskii_soibelman(0)
    }

    fn pat(rows: &[&[i64]]) -> CPattern {
        CPattern::from_rows(rows.iter().map(|r| r.to_vec()).collect()).unwrap()
    }

    #[test]
    fn windows() {
        assert_eq!((row_start(1), row_start(2), row_start(3), row_start(4), row_start(5)), (0, -1, -1, -2, -2));
        assert!(in_window(4, 1) && !in_window(4, 2) && in_window(5, 2));
        assert_eq!((weight_row(0), weight_row(-1), weight_row(1), weight_row(-3)), (1, 2, 3, 6));
    }

    #[test]
    fn highest_patterns() {
        assert_eq!(CPattern::highest(&m0(), 1), pat(&[&[0], &[1, 0], &[1, 0, 0]]));
        assert_eq!(
            CPattern::highest(&Signature::levendorskii_soibelman(1), 1),
            pat(&[&[1], &[1, 1], &[1, 1, 0]])
        );
        let c = CPattern::highest(&Signature::constant(5), 2);
        assert!(c.rows().iter().flatten().all(|v| *v == 5));
        assert!(c.is_valid(&Signature::constant(5)));
    }

    #[test]
    fn validation_examples() {
        assert!(CPattern::highest(&m0(), 1).is_valid(&m0()));
        assert!(pat(&[&[1], &[1, 0], &[1, 0, 0]]).is_valid(&m0()));
        let bad = pat(&[&[2], &[1, 0], &[1, 0, 0]]).validate(&m0()).unwrap_err();
        assert_eq!((bad.row, bad.index), (1, 0));
    }

    #[test]
    fn shift_examples() {
        let h = CPattern::highest(&m0(), 1);
        let (up, v) = h.shift(&m0(), 1, 0, 1).unwrap();
        assert_eq!(v, Validity::Valid);
        assert_eq!(up.rows()[0], vec![1]);
        assert_eq!(h.shift(&m0(), 1, 0, -1).unwrap().1, Validity::Invalid);
        // top stored row: raising M_{-1,3} is a C-pattern but leaves the truncation
        assert_eq!(h.shift(&m0(), 3, 0, 1).unwrap().1, Validity::Unstable);
        assert_eq!(h.shift(&m0(), 3, 1, -1).unwrap().1, Validity::Invalid);
        assert!(matches!(h.shift(&m0(), 4, 0, 1), Err(Error::IndexOutOfWindow { .. })));
        assert!(matches!(h.shift(&m0(), 2, 1, 1), Err(Error::IndexOutOfWindow { .. })));
    }

    #[test]
    fn random_patterns_are_valid() {
        use rand::SeedableRng;
        let sig = Signature::new(Rational::from_integer(0.into()), 9, -2, vec![9, 6, 3, 0, -3], -3);
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(1);
        for _ in 0..50 {
            let p = CPattern::random(&sig, 2, &mut rng);
            assert!(p.is_valid(&sig) && p.is_stable(&sig));
        }
    }

    #[test]
    fn weights_on_highest() {
        let h = CPattern::highest(&m0(), 2);
        let w = |i| h.weight(&m0(), i).unwrap().integer_part;
        assert_eq!((w(0), w(-1), w(1), w(-2), w(2), w(-3)), (0, 1, 0, 1, 0, 1));
        assert!(matches!(h.weight(&m0(), 3), Err(Error::DepthExceeded { .. })));
        assert!(matches!(h.weight(&m0(), -4), Err(Error::DepthExceeded { .. })));
        let c = Signature::new(Rational::new(7.into(), 3.into()), 0, 0, vec![0], 0);
        let wv = CPattern::highest(&c, 1).weight(&c, 0).unwrap();
        assert_eq!(wv.value(&c.offset), Rational::new(7.into(), 3.into()));
    }
}
