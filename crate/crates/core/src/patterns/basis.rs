use std::collections::HashMap;

use sha2::{Digest, Sha256};

use super::pattern::{row_start, CPattern};
use super::signature::Signature;
use crate::error::{Error, Result};

pub const DEFAULT_CAP: usize = 200_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BasisConfig {
    /// Hard limit on the number of patterns.
    pub cap: usize,
    /// Log a warning when the basis is larger than this.
    pub warn_above: usize,
}

impl Default for BasisConfig {
    fn default() -> Self {
        Self { cap: DEFAULT_CAP, warn_above: 20_000 }
    }
}

/// All C-patterns of a fixed depth under one signature, in canonical order:
/// ascending lexicographic on the rows read from the top row down.
#[derive(Clone, Debug)]
pub struct Basis {
    signature: Signature,
    depth: usize,
    patterns: Vec<CPattern>,
    index: HashMap<CPattern, usize>,
    hash: String,
}

impl Basis {
    pub fn enumerate(signature: &Signature, depth: usize) -> Result<Self> {
        Self::enumerate_with(signature, depth, BasisConfig::default())
    }

    pub fn enumerate_with(signature: &Signature, depth: usize, config: BasisConfig) -> Result<Self> {
        signature.validate().map_err(|v| Error::InvalidSignature(v.to_string()))?;
        let top = 2 * depth + 1;
        let mut rows = vec![Vec::new(); top];
        rows[top - 1] = (0..top as i64).map(|p| signature.m(row_start(top) + p)).collect();
        let mut out = Vec::new();
        fill_row(&mut rows, top - 1, config.cap, &mut out)?;
        if out.len() > config.warn_above {
            log::warn!("basis has {} patterns (depth {depth}, signature {signature})", out.len());
        }
        Ok(Self::from_patterns(signature.clone(), depth, out))
    }

    fn from_patterns(signature: Signature, depth: usize, patterns: Vec<CPattern>) -> Self {
        let index = patterns.iter().enumerate().map(|(k, p)| (p.clone(), k)).collect();
        let hash = order_hash(&signature, depth, &patterns);
        Self { signature, depth, patterns, index, hash }
    }

    /// Rebuilds from a stored pattern list, checking it against a fresh
    /// enumeration and the recorded hash.
    pub fn from_stored(signature: &Signature, depth: usize, patterns: Vec<CPattern>, hash: &str, config: BasisConfig) -> Result<Self> {
        let fresh = Self::enumerate_with(signature, depth, config)?;
        if fresh.hash != hash {
            return Err(Error::Integrity(format!("recorded basis hash {hash} differs from recomputed {}", fresh.hash)));
        }
        if fresh.patterns != patterns {
            return Err(Error::Integrity("stored basis list differs from canonical enumeration".into()));
        }
        Ok(fresh)
    }

    pub fn signature(&self) -> &Signature {
        &self.signature
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    pub fn len(&self) -> usize {
        self.patterns.len()
    }

    pub fn is_empty(&self) -> bool {
        self.patterns.is_empty()
    }

    pub fn patterns(&self) -> &[CPattern] {
        &self.patterns
    }

    pub fn get(&self, id: usize) -> Option<&CPattern> {
        self.patterns.get(id)
    }

    pub fn id_of(&self, p: &CPattern) -> Option<usize> {
        self.index.get(p).copied()
    }

    /// SHA-256 of the signature, depth and ordered pattern list.
    pub fn hash(&self) -> &str {
        &self.hash
    }

    /// Short form of the hash used to tag exports.
    pub fn id(&self) -> &str {
        &self.hash[..16]
    }

    /// Position of the highest-weight pattern.
    pub fn highest_id(&self) -> usize {
        self.id_of(&CPattern::highest(&self.signature, self.depth)).expect("highest pattern is always enumerated")
    }
}

/// Fills row `r` (0-based index into `rows`) from the one above, then recurses.
fn fill_row(rows: &mut Vec<Vec<i64>>, r: usize, cap: usize, out: &mut Vec<CPattern>) -> Result<()> {
    if r == 0 {
        if out.len() == cap {
            return Err(Error::BasisTooLarge { cap });
        }
        out.push(CPattern::from_rows(rows.clone()).expect("shapes fixed by construction"));
        return Ok(());
    }
    let upper = rows[r].clone();
    let mut row = vec![0; r];
    fill_entries(rows, &upper, &mut row, 0, r, cap, out)
}

fn fill_entries(
    rows: &mut Vec<Vec<i64>>,
    upper: &[i64],
    row: &mut Vec<i64>,
    p: usize,
    r: usize,
    cap: usize,
    out: &mut Vec<CPattern>,
) -> Result<()> {
    if p == row.len() {
        rows[r - 1] = row.clone();
        return fill_row(rows, r - 1, cap, out);
    }
    for v in upper[p + 1]..=upper[p] {
        row[p] = v;
        fill_entries(rows, upper, row, p + 1, r, cap, out)?;
    }
    Ok(())
}

fn order_hash(signature: &Signature, depth: usize, patterns: &[CPattern]) -> String {
    let mut h = Sha256::new();
    h.update(signature.to_string().as_bytes());
    h.update(format!("\ndepth={depth}\n").as_bytes());
    for p in patterns {
        for row in p.rows() {
            for v in row {
                h.update(v.to_le_bytes());
            }
            h.update(b";");
        }
        h.update(b"\n");
    }
    hex::encode(h.finalize())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pat(rows: &[&[i64]]) -> CPattern {
        CPattern::from_rows(rows.iter().map(|r| r.to_vec()).collect()).unwrap()
    }

    #[test]
    fn ls_depth_one_has_three_patterns() {
        let b = Basis::enumerate(&Signature::levendorskii_soibelman(0), 1).unwrap();
        assert_eq!(
            b.patterns(),
            &[
                pat(&[&[0], &[0, 0], &[1, 0, 0]]),
                pat(&[&[0], &[1, 0], &[1, 0, 0]]),
                pat(&[&[1], &[1, 0], &[1, 0, 0]]),
            ]
        );
        assert_eq!(b.highest_id(), 1);
    }

    #[test]
    fn constant_signature_is_one_dimensional() {
        for n in 0..4 {
            assert_eq!(Basis::enumerate(&Signature::constant(5), n).unwrap().len(), 1);
        }
    }

    #[test]
    fn canonical_order_is_top_row_first() {
        let b = Basis::enumerate(&Signature::levendorskii_soibelman(0), 2).unwrap();
        let keys: Vec<Vec<i64>> = b.patterns().iter().map(|p| p.rows().iter().rev().flatten().copied().collect()).collect();
        assert!(keys.windows(2).all(|w| w[0] < w[1]));
        assert!(b.patterns().iter().all(|p| p.is_valid(b.signature()) && p.is_stable(b.signature())));
    }

    #[test]
    fn cap_is_enforced() {
        let sig = Signature::levendorskii_soibelman(0);
        let cfg = BasisConfig { cap: 5, warn_above: 1 };
        assert!(matches!(Basis::enumerate_with(&sig, 2, cfg), Err(Error::BasisTooLarge { cap: 5 })));
    }

    #[test]
    fn hash_is_stable_and_checked() {
        let sig = Signature::levendorskii_soibelman(0);
        let a = Basis::enumerate(&sig, 2).unwrap();
        let b = Basis::enumerate(&sig, 2).unwrap();
        assert_eq!(a.hash(), b.hash());
        assert_ne!(a.hash(), Basis::enumerate(&sig, 1).unwrap().hash());
        let cfg = BasisConfig::default();
        assert!(Basis::from_stored(&sig, 2, a.patterns().to_vec(), a.hash(), cfg).is_ok());
        assert!(matches!(Basis::from_stored(&sig, 2, a.patterns().to_vec(), "00", cfg), Err(Error::Integrity(_))));
    }

    #[test]
    fn closed_under_valid_shifts_below_top() {
        let sig = Signature::levendorskii_soibelman(0);
        let b = Basis::enumerate(&sig, 2).unwrap();
        for p in b.patterns() {
            for r in 1..p.top_row() {
                for i in row_start(r)..row_start(r) + r as i64 {
                    for d in [-1, 1] {
                        let q = p.shifted(r, i, d).unwrap();
                        assert_eq!(q.is_valid(&sig), b.id_of(&q).is_some());
                    }
                }
            }
        }
    }
}
