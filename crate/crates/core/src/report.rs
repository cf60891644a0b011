//! Verification records and their JSON rendering.

use serde::Serialize;
use serde_json::{json, Value};

use crate::arith::Scalar;
use crate::linalg::Subspace;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
    /// A hypothesis of the statement does not hold for this algebra.
    Skipped,
    /// The check needed more enumeration than the budget allows.
    Budget,
    /// Reported for information; never counted as pass or fail.
    Info,
}

impl std::fmt::Display for Status {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Skipped => "skipped",
            Status::Budget => "budget",
            Status::Info => "info",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TheoremRecord {
    pub id: String,
    pub status: Status,
    pub witness: Value,
}

impl TheoremRecord {
    pub fn new(id: &str, status: Status, witness: Value) -> Self {
        TheoremRecord {
            id: id.to_string(),
            status,
            witness,
        }
    }

    /// `pass` when `ok`, otherwise `fail`, with the same witness either way.
    pub fn check(id: &str, ok: bool, witness: Value) -> Self {
        Self::new(id, if ok { Status::Pass } else { Status::Fail }, witness)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerificationReport {
    pub algebra: String,
    pub records: Vec<TheoremRecord>,
}

impl VerificationReport {
    pub fn get(&self, id: &str) -> Option<&TheoremRecord> {
        self.records.iter().find(|r| r.id == id)
    }

    pub fn count(&self, status: Status) -> usize {
        self.records.iter().filter(|r| r.status == status).count()
    }

    pub fn failures(&self) -> impl Iterator<Item = &TheoremRecord> {
        self.records.iter().filter(|r| r.status == Status::Fail)
    }
}

/// Integral scalars become JSON numbers, anything else a string.
pub fn scalar_json(s: &Scalar) -> Value {
    if let Some(r) = s.residue() {
        return json!(r);
    }
    let text = s.to_string();
    match text.parse::<i64>() {
        Ok(v) => json!(v),
        Err(_) => json!(text),
    }
}

pub fn vector_json(v: &[Scalar]) -> Value {
    Value::Array(v.iter().map(scalar_json).collect())
}

/// A subspace as the list of its canonical basis rows.
pub fn subspace_json(s: &Subspace) -> Value {
    Value::Array(s.rows().map(vector_json).collect())
}

pub fn subspaces_json<'a>(items: impl IntoIterator<Item = &'a Subspace>) -> Value {
    Value::Array(items.into_iter().map(subspace_json).collect())
}
