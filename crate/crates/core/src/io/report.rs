use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::Value;
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};

/// Machine-readable result of one operation. Exact values are rational
/// strings; the optional figure holds float coordinates for drawing only.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub operation: String,
    pub version: String,
    /// SHA-256 of the canonical text of the inputs.
    pub inputs_digest: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub outputs: Value,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub certification: Option<Value>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub warnings: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timings_ms: Option<BTreeMap<String, f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub figure: Option<Figure>,
}

impl RunReport {
    pub fn new(operation: impl Into<String>, inputs_digest: String, outputs: Value) -> Self {
        Self {
            operation: operation.into(),
            version: env!("CARGO_PKG_VERSION").into(),
            inputs_digest,
            seed: None,
            outputs,
            certification: None,
            warnings: vec![],
            timings_ms: None,
            figure: None,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize") + "\n"
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::ParseAt {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })
    }
}

/// Hex SHA-256 over the given texts, each followed by a NUL separator.
pub fn input_digest(parts: &[&str]) -> String {
    let mut h = Sha256::new();
    for p in parts {
        h.update(p.as_bytes());
        h.update([0u8]);
    }
    h.finalize().iter().map(|b| format!("{b:02x}")).collect()
}

/// Drawing layers for a planar result.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Figure {
    #[serde(default)]
    pub points: Vec<[f64; 2]>,
    /// Part index of each point, if it belongs to one.
    #[serde(default)]
    pub classes: Vec<Option<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub query: Option<[f64; 2]>,
    #[serde(default)]
    pub lines: Vec<FigureLine>,
    /// Images on the projection line `h`; `up` marks images of points above
    /// the bisecting line.
    #[serde(default)]
    pub images: Vec<FigureImage>,
    /// Convex polygons, with the class of each.
    #[serde(default)]
    pub bodies: Vec<Vec<[f64; 2]>>,
    #[serde(default)]
    pub body_classes: Vec<Option<usize>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FigureLine {
    pub label: String,
    pub point: [f64; 2],
    pub direction: [f64; 2],
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FigureImage {
    pub at: [f64; 2],
    pub class: Option<usize>,
    pub up: bool,
}
