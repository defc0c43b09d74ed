//! File formats: module files, pattern JSON, operator exports.

use std::fs;
use std::io::Write;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::action::{GeneratorId, SparseOperator};
use crate::error::{Error, Result};
use crate::patterns::{Basis, BasisConfig, CPattern, Signature};
use crate::qarith::Laurent;
use crate::{QRadSum, Rational};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PatternJson {
    pub depth: usize,
    /// Rows from `r = 1` upward, integer parts only.
    pub rows: Vec<Vec<i64>>,
}

impl From<&CPattern> for PatternJson {
    fn from(p: &CPattern) -> Self {
        Self { depth: p.depth(), rows: p.rows().to_vec() }
    }
}

impl TryFrom<PatternJson> for CPattern {
    type Error = Error;

    fn try_from(p: PatternJson) -> Result<CPattern> {
        if p.rows.len() != 2 * p.depth + 1 {
            return Err(Error::InvalidPattern(format!("depth {} needs {} rows, got {}", p.depth, 2 * p.depth + 1, p.rows.len())));
        }
        CPattern::from_rows(p.rows)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModuleHeader {
    /// One-line signature text.
    pub signature: String,
    pub offset: String,
    pub depth: usize,
    pub basis_hash: String,
    pub version: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ModuleFile {
    pub header: ModuleHeader,
    pub basis: Vec<PatternJson>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub operators: Vec<OperatorJson>,
}

impl ModuleFile {
    pub fn from_basis(basis: &Basis) -> Self {
        let sig = basis.signature();
        Self {
            header: ModuleHeader {
                signature: sig.to_string(),
                offset: sig.offset.to_string(),
                depth: basis.depth(),
                basis_hash: basis.hash().to_string(),
                version: VERSION.to_string(),
            },
            basis: basis.patterns().iter().map(PatternJson::from).collect(),
            operators: Vec::new(),
        }
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        write_atomic(path, serde_json::to_string_pretty(self)?.as_bytes())
    }

    pub fn load(path: &Path) -> Result<Self> {
        Ok(serde_json::from_str(&fs::read_to_string(path)?)?)
    }

    /// Re-enumerates the basis and checks it against the stored list and hash.
    pub fn basis(&self, config: BasisConfig) -> Result<Basis> {
        let sig = Signature::parse(&self.header.signature)?;
        if sig.offset.to_string() != self.header.offset {
            return Err(Error::Integrity(format!("header offset {} disagrees with signature", self.header.offset)));
        }
        let patterns = self.basis.iter().cloned().map(CPattern::try_from).collect::<Result<Vec<_>>>()?;
        Basis::from_stored(&sig, self.header.depth, patterns, &self.header.basis_hash, config)
    }
}

/// Writes through a temporary file in the same directory and renames it.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> Result<()> {
    let dir = path.parent().filter(|d| !d.as_os_str().is_empty()).unwrap_or(Path::new("."));
    let name = path.file_name().and_then(|n| n.to_str()).unwrap_or("out");
    let tmp = dir.join(format!(".{name}.tmp{}", std::process::id()));
    {
        let mut f = fs::File::create(&tmp)?;
        f.write_all(bytes)?;
        f.sync_all()?;
    }
    fs::rename(&tmp, path)?;
    Ok(())
}

/// Laurent polynomial as `[exponent, "coefficient"]` pairs.
pub type PolyJson = Vec<(i64, String)>;

fn poly_json(p: &Laurent<Rational>) -> PolyJson {
    p.terms().map(|(e, c)| (e, c.to_string())).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub radicand_poly: PolyJson,
    pub prefactor_num: PolyJson,
    pub prefactor_den: PolyJson,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoeffJson {
    pub terms: Vec<TermJson>,
}

impl From<&QRadSum> for CoeffJson {
    fn from(v: &QRadSum) -> Self {
        Self {
            terms: v
                .terms()
                .map(|(r, c)| TermJson {
                    radicand_poly: poly_json(r),
                    prefactor_num: poly_json(c.numer()),
                    prefactor_den: poly_json(c.denom()),
                })
                .collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EntryJson {
    pub col: usize,
    pub row: usize,
    pub coeff: CoeffJson,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OperatorJson {
    pub generator: GeneratorId,
    pub basis_id: String,
    pub entries: Vec<EntryJson>,
}

impl From<&SparseOperator<QRadSum>> for OperatorJson {
    fn from(op: &SparseOperator<QRadSum>) -> Self {
        Self {
            generator: op.generator(),
            basis_id: op.basis_id().to_string(),
            entries: op.entries().map(|(col, row, c)| EntryJson { col, row, coeff: c.into() }).collect(),
        }
    }
}

/// `col,row,coefficient` lines with the coefficient in text form.
pub fn operator_csv(op: &SparseOperator<QRadSum>) -> String {
    let mut out = String::from("col,row,coeff\n");
    for (c, r, v) in op.entries() {
        out.push_str(&format!("{c},{r},\"{v}\"\n"));
    }
    out
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NumericMatrix {
    pub generator: GeneratorId,
    pub basis_id: String,
    pub q: String,
    pub dim: usize,
    /// Dense, row major.
    pub rows: Vec<Vec<f64>>,
}

/// Dense matrix of the operator evaluated at `q`.
pub fn operator_numeric(op: &SparseOperator<QRadSum>, q: &Rational) -> Result<NumericMatrix> {
    let dense = op.map(|v| v.evaluate::<f64>(q))?.to_dense();
    Ok(NumericMatrix {
        generator: op.generator(),
        basis_id: op.basis_id().to_string(),
        q: q.to_string(),
        dim: op.dim(),
        rows: dense.row_iter().map(|r| r.iter().copied().collect()).collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::action::{Deformed, Engine};

    fn tmp(name: &str) -> std::path::PathBuf {
        std::env::temp_dir().join(format!("qglinf-io-{}-{name}", std::process::id()))
    }

    #[test]
    fn module_roundtrip_and_tamper() {
        let basis = Basis::enumerate(&Signature::levendorskii_soibelman(0), 2).unwrap();
        let path = tmp("module.json");
        ModuleFile::from_basis(&basis).save(&path).unwrap();
        let loaded = ModuleFile::load(&path).unwrap();
        assert_eq!(loaded.basis(BasisConfig::default()).unwrap().hash(), basis.hash());

        let mut bad = loaded.clone();
        bad.header.basis_hash.replace_range(0..2, "zz");
        assert!(matches!(bad.basis(BasisConfig::default()), Err(Error::Integrity(_))));
        let mut swapped = loaded;
        swapped.basis.swap(0, 1);
        assert!(matches!(swapped.basis(BasisConfig::default()), Err(Error::Integrity(_))));
        fs::remove_file(path).unwrap();
    }

    #[test]
    fn pattern_json_shape() {
        let p = CPattern::highest(&Signature::levendorskii_soibelman(0), 1);
        let j = serde_json::to_string(&PatternJson::from(&p)).unwrap();
        assert_eq!(j, r#"{"depth":1,"rows":[[0],[1,0],[1,0,0]]}"#);
        let back: PatternJson = serde_json::from_str(&j).unwrap();
        assert_eq!(CPattern::try_from(back).unwrap(), p);
    }

    #[test]
    fn exports() {
        let basis = Basis::enumerate(&Signature::levendorskii_soibelman(0), 1).unwrap();
        let e = Engine::for_basis(Deformed::new(), &basis);
        let h = e.operator(GeneratorId::h(-1), &basis).unwrap();
        let j = OperatorJson::from(h.as_ref());
        let nonzero = basis.patterns().iter().filter(|p| !e.eigenvalue(-1, p).unwrap().is_zero()).count();
        assert_eq!(j.entries.len(), nonzero);
        assert!(j.entries.iter().all(|x| x.col == x.row));
        let f = e.operator(GeneratorId::f(-1), &basis).unwrap();
        assert_eq!(operator_csv(&f), "col,row,coeff\n1,2,\"(1)\"\n");
        let n = operator_numeric(&f, &crate::parse_rational("3/2").unwrap()).unwrap();
        assert_eq!(n.rows[2][1], 1.0);
        assert!(matches!(operator_numeric(&f, &crate::parse_rational("1").unwrap()), Err(Error::EvaluationDomain(_))));
    }
}
