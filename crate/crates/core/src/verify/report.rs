use std::fmt;

use serde::{Deserialize, Serialize};

use crate::action::{MatrixScalar, PatternVector};

/// Failing patterns kept per report.
pub const MAX_WITNESSES: usize = 5;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Failure {
    /// Basis position of the offending pattern, when there is one.
    pub pattern_id: Option<usize>,
    pub residual_terms: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RelationReport {
    pub suite: String,
    pub relation: String,
    pub indices: Vec<i64>,
    pub basis_id: String,
    pub status: Status,
    pub checked: usize,
    pub failures: Vec<Failure>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl RelationReport {
    pub fn new(suite: &str, relation: &str, indices: Vec<i64>, basis_id: &str) -> Self {
        Self {
            suite: suite.into(),
            relation: relation.into(),
            indices,
            basis_id: basis_id.into(),
            status: Status::Pass,
            checked: 0,
            failures: Vec::new(),
            note: None,
        }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    /// Records a failure; only the first few witnesses are stored.
    pub fn fail(&mut self, pattern_id: Option<usize>, residual_terms: Vec<String>) {
        self.status = Status::Fail;
        if self.failures.len() < MAX_WITNESSES {
            self.failures.push(Failure { pattern_id, residual_terms });
        }
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }
}

impl fmt::Display for RelationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed() { "PASS" } else { "FAIL" };
        write!(f, "{status} {}/{} {:?} ({} checked", self.suite, self.relation, self.indices, self.checked)?;
        if !self.failures.is_empty() {
            write!(f, ", first failure at {:?}", self.failures[0].pattern_id)?;
        }
        write!(f, ")")
    }
}

pub(crate) fn render<S: MatrixScalar>(v: &PatternVector<S>) -> Vec<String> {
    v.iter().map(|(p, c)| format!("{c} |{p}>")).collect()
}
