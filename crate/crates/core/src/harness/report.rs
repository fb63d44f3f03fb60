//! Versioned JSON reports.
//!
//! `timing_ms` is the only field that depends on the run; it is dropped from
//! [`Report::to_deterministic_json`], so the same inputs give byte-identical
//! output there.

use serde::{Deserialize, Serialize};
use serde_json::Value;
use sha2::{Digest, Sha256};

use crate::graph::Graph;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Exactness {
    Certified,
    Interval,
    Heuristic,
}

/// One numeric claim and how far it is proven.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Claim {
    pub name: String,
    pub exactness: Exactness,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub schema_version: u32,
    pub command: String,
    pub graph_sha256: Option<String>,
    pub parameters: Value,
    pub results: Value,
    pub claims: Vec<Claim>,
    /// Counterexamples to the tested identity (not including known exceptions).
    pub violations: usize,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub timing_ms: Option<u64>,
}

/// Exit status: 0 all certified, 2 some claim not certified, 3 a violation was found.
pub const EXIT_CERTIFIED: i32 = 0;
pub const EXIT_INTERVALS: i32 = 2;
pub const EXIT_VIOLATION: i32 = 3;

impl Report {
    pub fn new(command: impl Into<String>, graph: Option<&Graph>, parameters: Value) -> Self {
        Report {
            schema_version: SCHEMA_VERSION,
            command: command.into(),
            graph_sha256: graph.map(graph_hash),
            parameters,
            results: Value::Null,
            claims: Vec::new(),
            violations: 0,
            timing_ms: None,
        }
    }

    pub fn claim(&mut self, name: impl Into<String>, exactness: Exactness) {
        self.claims.push(Claim {
            name: name.into(),
            exactness,
        });
    }

    pub fn all_certified(&self) -> bool {
        self.claims
            .iter()
            .all(|c| c.exactness == Exactness::Certified)
    }

    pub fn exit_code(&self) -> i32 {
        if self.violations > 0 {
            EXIT_VIOLATION
        } else if !self.all_certified() {
            EXIT_INTERVALS
        } else {
            EXIT_CERTIFIED
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_deterministic_json(&self) -> String {
        let stripped = Report {
            timing_ms: None,
            ..self.clone()
        };
        serde_json::to_string_pretty(&stripped).expect("report serializes")
    }
}

/// SHA-256 of the graph's text form, hex encoded.
pub fn graph_hash(g: &Graph) -> String {
    hex::encode(Sha256::digest(g.to_text().as_bytes()))
}
