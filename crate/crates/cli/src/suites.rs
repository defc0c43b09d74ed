use std::fmt;
use std::str::FromStr;

use num_traits::Zero;
use qglinf::action::{Classical, Deformed, Engine, Kind, Numeric};
use qglinf::patterns::{Basis, Signature};
use qglinf::verify::{
    cartan_relations, check_numeric, check_relations, commuting_relations, highest_weight, operator_agreement,
    reachability, sample_instances, scan_singular, serre_relations, RelationReport, ScanReport, Which,
};
use qglinf::{Rational, Result};
use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Cartan,
    Serre,
    Identities,
    Highest,
    Reach,
    Classical,
    Scan,
}

pub const ALL: [Suite; 7] =
    [Suite::Cartan, Suite::Serre, Suite::Identities, Suite::Highest, Suite::Reach, Suite::Classical, Suite::Scan];

impl FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        ALL.iter()
            .copied()
            .find(|x| x.to_string() == s.trim().to_ascii_lowercase())
            .ok_or_else(|| format!("unknown suite `{s}`"))
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = serde_json::to_value(self).unwrap();
        write!(f, "{}", s.as_str().unwrap())
    }
}

/// Signature the identity suite samples L-assignments from when none is given.
/// Wide gaps keep most random patterns non-degenerate.
pub fn default_sampling_signature() -> Signature {
    Signature::new(Rational::zero(), 12, -3, vec![12, 10, 8, 6, 4, 2, 0], 0)
}

#[derive(Clone, Debug, Serialize)]
pub struct RunConfig {
    pub range: Vec<i64>,
    pub samples: usize,
    pub seed: u64,
    pub ks: Vec<usize>,
    #[serde(serialize_with = "as_text")]
    pub q: Rational,
    pub tol: f64,
    #[serde(serialize_with = "as_text")]
    pub sampling_signature: Signature,
}

fn as_text<T: fmt::Display, S: serde::Serializer>(v: &T, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

#[derive(Debug, Default, Serialize)]
pub struct Outcome {
    pub reports: Vec<RelationReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub scan: Option<ScanReport>,
}

impl Outcome {
    pub fn passed(&self) -> bool {
        self.reports.iter().all(RelationReport::passed)
    }
}

pub fn run(suite: Suite, basis: &Basis, cfg: &RunConfig) -> Result<Outcome> {
    let deformed = || Engine::for_basis(Deformed::new(), basis);
    let numeric = || Numeric::<f64>::new(&cfg.q).map(|m| Engine::for_basis(m, basis));
    let mut out = Outcome::default();
    match suite {
        Suite::Cartan => {
            let rels = cartan_relations(&cfg.range);
            out.reports = check_relations(&deformed(), basis, "cartan", &rels);
            let num = numeric()?;
            out.reports.extend(rels.iter().map(|r| check_numeric(&num, basis, "cartan-numeric", r, cfg.tol)));
        }
        Suite::Serre => {
            let mut rels = serre_relations(Kind::E, &cfg.range);
            rels.extend(serre_relations(Kind::F, &cfg.range));
            out.reports = check_relations(&deformed(), basis, "serre", &rels);
            let num = numeric()?;
            out.reports.extend(rels.iter().map(|r| check_numeric(&num, basis, "serre-numeric", r, cfg.tol)));
        }
        Suite::Identities => {
            let eng = deformed();
            for which in [Which::NonNegative, Which::Negative] {
                for &k in &cfg.ks {
                    out.reports.push(sampled(cfg, which, k)?);
                    if k <= basis.depth() {
                        out.reports.push(operator_agreement(&eng, basis, which, k));
                    }
                }
            }
        }
        Suite::Highest => out.reports = highest_weight(&deformed(), basis),
        Suite::Reach => out.reports.push(reachability(&deformed(), basis, &cfg.range)),
        Suite::Classical => {
            let cl = Engine::for_basis(Classical, basis);
            let mut rels = cartan_relations(&cfg.range);
            rels.extend(commuting_relations(Kind::E, &cfg.range));
            rels.extend(commuting_relations(Kind::F, &cfg.range));
            out.reports = check_relations(&cl, basis, "classical", &rels);
            out.reports.push(qglinf::verify::zero_pattern(&deformed(), &cl, basis, &cfg.range));
        }
        Suite::Scan => {
            let scan = scan_singular(basis, &cfg.q, cfg.tol)?;
            let mut r = RelationReport::new("scan", "joint-kernel", Vec::new(), basis.id());
            r.checked = basis.len();
            if scan.kernel_dim != 1 || !scan.highest_in_kernel {
                r.fail(None, vec![format!("kernel dimension {}, highest vector in kernel: {}", scan.kernel_dim, scan.highest_in_kernel)]);
            }
            out.reports.push(r.with_note(format!("q = {}, {} weight spaces", scan.q, scan.weight_spaces)));
            out.scan = Some(scan);
        }
    }
    Ok(out)
}

fn sampled(cfg: &RunConfig, which: Which, k: usize) -> Result<RelationReport> {
    let sig = &cfg.sampling_signature;
    let (insts, rejected) = sample_instances(sig, which, k, cfg.samples, cfg.seed)?;
    let mut r = RelationReport::new("identities", which.name(), vec![k as i64], "sampled");
    if insts.len() < cfg.samples {
        r.fail(None, vec![format!("only {} of {} non-degenerate assignments found", insts.len(), cfg.samples)]);
    }
    let mut passed = 0;
    for inst in &insts {
        r.checked += 1;
        match inst.verify(true) {
            Ok(o) if o.pass => passed += 1,
            Ok(o) => r.fail(None, vec![format!("{} != [{}]", o.lhs, o.rhs_argument)]),
            Err(e) => r.fail(None, vec![format!("error: {e}")]),
        }
    }
    Ok(r.with_note(format!("{passed}/{} pass, seed {}, {rejected} draws rejected", insts.len(), cfg.seed)))
}
