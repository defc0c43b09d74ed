//! The Chevalley generators acting on C-patterns.

mod apply;
mod model;
mod operator;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use apply::{accumulate, act_raw, unit, Engine, PatternVector, RawTerm, TermOutcome};
pub use model::{BracketModel, Classical, Deformed, MatrixScalar, Numeric};
pub use operator::{RadVector, SparseOperator};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Kind {
    E,
    F,
    H,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GeneratorId {
    pub kind: Kind,
    pub index: i64,
}

impl GeneratorId {
    pub fn e(index: i64) -> Self {
        Self { kind: Kind::E, index }
    }

    pub fn f(index: i64) -> Self {
        Self { kind: Kind::F, index }
    }

    pub fn h(index: i64) -> Self {
        Self { kind: Kind::H, index }
    }

    /// Whether the generator acts on depth-`depth` patterns: `E`/`F` indices
    /// in `-depth-1 ..= depth-1`, `H_i` when its row is at most `2 depth + 2`.
    pub fn is_admissible(&self, depth: usize) -> bool {
        let n = depth as i64;
        match self.kind {
            Kind::E | Kind::F => (-n - 1..n).contains(&self.index),
            Kind::H => crate::patterns::weight_row(self.index) <= 2 * depth + 2,
        }
    }

    pub fn check_admissible(&self, depth: usize) -> Result<()> {
        if self.is_admissible(depth) {
            Ok(())
        } else {
            Err(Error::DepthExceeded { what: self.to_string(), depth })
        }
    }
}

impl fmt::Display for GeneratorId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}:{}", self.kind, self.index)
    }
}

impl FromStr for GeneratorId {
    type Err = Error;

    /// `E:3`, `F:-1`, `H:0`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse { line: 1, column: 1, message: format!("bad generator `{s}`, expected e.g. F:-1") };
        let (k, i) = s.trim().split_once(':').ok_or_else(bad)?;
        let kind = match k.trim() {
            "E" | "e" => Kind::E,
            "F" | "f" => Kind::F,
            "H" | "h" => Kind::H,
            _ => return Err(bad()),
        };
        let index = i.trim().parse().map_err(|_| bad())?;
        Ok(Self { kind, index })
    }
}

/// Where the formulas for `E_m`, `F_m` live: `m = -1` is the single-row case,
/// every other `m` is `(-1)^nu i - 1` with `i >= 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IndexDecomposition {
    Special,
    Regular { i: usize, nu: u8 },
}

impl IndexDecomposition {
    pub fn of(m: i64) -> Self {
        match m {
            -1 => Self::Special,
            m if m >= 0 => Self::Regular { i: (m + 1) as usize, nu: 0 },
            m => Self::Regular { i: (-m - 1) as usize, nu: 1 },
        }
    }

    /// Rows changed by the generator.
    pub fn rows(&self) -> Vec<usize> {
        match *self {
            Self::Special => vec![1],
            Self::Regular { i, nu } => vec![2 * i - 1 + nu as usize, 2 * i + nu as usize],
        }
    }
}

/// `S(j, l; nu)`.
pub fn sign_s(j: i64, l: i64, nu: u8) -> i64 {
    match j.cmp(&l) {
        std::cmp::Ordering::Equal => {
            if nu == 0 {
                1
            } else {
                -1
            }
        }
        std::cmp::Ordering::Less => 1,
        std::cmp::Ordering::Greater => -1,
    }
}

pub fn theta(i: i64) -> i64 {
    i64::from(i >= 0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn decompositions() {
        assert_eq!(IndexDecomposition::of(-1), IndexDecomposition::Special);
        assert_eq!(IndexDecomposition::of(0), IndexDecomposition::Regular { i: 1, nu: 0 });
        assert_eq!(IndexDecomposition::of(0).rows(), vec![1, 2]);
        assert_eq!(IndexDecomposition::of(-2), IndexDecomposition::Regular { i: 1, nu: 1 });
        assert_eq!(IndexDecomposition::of(-2).rows(), vec![2, 3]);
        // m = (-1)^nu i - 1 round trip
        for m in -20..20 {
            if let IndexDecomposition::Regular { i, nu } = IndexDecomposition::of(m) {
                assert!(i >= 1);
                assert_eq!(if nu == 0 { i as i64 - 1 } else { -(i as i64) - 1 }, m);
            }
        }
    }

    #[test]
    fn helpers() {
        assert_eq!((sign_s(2, 2, 0), sign_s(2, 2, 1), sign_s(0, 1, 1), sign_s(1, 0, 0)), (1, -1, 1, -1));
        assert_eq!((theta(-1), theta(0), theta(4)), (0, 1, 1));
    }

    #[test]
    fn generator_ids() {
        assert_eq!("F:-1".parse::<GeneratorId>().unwrap(), GeneratorId::f(-1));
        assert_eq!(" h : 0 ".parse::<GeneratorId>().unwrap(), GeneratorId::h(0));
        assert!("X:1".parse::<GeneratorId>().is_err());
        assert_eq!(GeneratorId::e(-3).to_string(), "E:-3");
        assert!(GeneratorId::e(-3).is_admissible(2) && !GeneratorId::e(-4).is_admissible(2));
        assert!(GeneratorId::f(1).is_admissible(2) && !GeneratorId::f(2).is_admissible(2));
        assert!(GeneratorId::h(-3).is_admissible(2) && GeneratorId::h(2).is_admissible(2));
        assert!(!GeneratorId::h(3).is_admissible(2) && !GeneratorId::h(-4).is_admissible(2));
    }
}
