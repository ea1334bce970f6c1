//! JSON reports and CSV sweeps.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::exact::ExactScalar;
use crate::spectral::{ExactSpectrum, SpectralDecomposition};

pub const TOOL_VERSION: &str = concat!("pairwalk ", env!("CARGO_PKG_VERSION"));

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum GraphDescriptor {
    Family {
        family: String,
        params: BTreeMap<String, String>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        base: Option<String>,
    },
    File {
        path: String,
        sha256: String,
    },
}

impl GraphDescriptor {
    pub fn file(path: &str, contents: &[u8]) -> Self {
        GraphDescriptor::File {
            path: path.to_string(),
            sha256: sha256_hex(contents),
        }
    }
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    Sha256::digest(bytes).iter().fold(String::with_capacity(64), |mut s, b| {
        let _ = write!(s, "{b:02x}");
        s
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AnalysisReport {
    pub tool_version: String,
    pub command: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub graph: Option<GraphDescriptor>,
    pub tolerances: BTreeMap<String, f64>,
    pub result: Value,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub wall_time_seconds: Option<f64>,
}

impl AnalysisReport {
    pub fn new(command: Vec<String>, graph: Option<GraphDescriptor>, result: Value) -> Self {
        AnalysisReport {
            tool_version: TOOL_VERSION.to_string(),
            command,
            graph,
            tolerances: BTreeMap::new(),
            result,
            wall_time_seconds: None,
        }
    }

    pub fn with_tolerance(mut self, name: &str, value: f64) -> Self {
        self.tolerances.insert(name.to_string(), value);
        self
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    pub fn from_json(text: &str) -> serde_json::Result<Self> {
        serde_json::from_str(text)
    }
}

/// Machine-readable error object for domain failures.
pub fn error_json(err: &crate::Error) -> String {
    let value = json!({
        "error": {
            "kind": err.kind(),
            "message": err.to_string(),
        }
    });
    serde_json::to_string_pretty(&value).expect("errors serialize")
}

fn eigenvalue_entry(exact: Option<&ExactScalar>, numeric: f64, multiplicity: usize) -> Value {
    json!({
        "exact": exact.map(|e| e.to_string()),
        "numeric": numeric,
        "multiplicity": multiplicity,
    })
}

pub fn exact_spectrum_json(spec: &ExactSpectrum, tolerance: f64) -> Value {
    let eigenvalues: Vec<Value> = spec
        .entries()
        .iter()
        .map(|e| eigenvalue_entry(Some(&e.value), e.value.to_f64(), e.multiplicity))
        .collect();
    json!({ "eigenvalues": eigenvalues, "tolerance": tolerance, "source": spec.source() })
}

pub fn decomposition_json(dec: &SpectralDecomposition, tolerance: f64) -> Value {
    let eigenvalues: Vec<Value> = dec
        .eigenvalues()
        .iter()
        .zip(dec.multiplicities())
        .map(|(&theta, m)| eigenvalue_entry(None, theta, m))
        .collect();
    json!({ "eigenvalues": eigenvalues, "tolerance": tolerance, "source": "numeric" })
}

/// Two-column `time,fidelity` CSV.
pub fn sweep_csv(points: &[(f64, f64)]) -> String {
    let mut out = String::from("time,fidelity\n");
    for (t, f) in points {
        let _ = writeln!(out, "{t},{f}");
    }
    out
}
