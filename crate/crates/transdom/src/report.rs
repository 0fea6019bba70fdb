use std::fmt::Write as _;

use serde::Serialize;
use serde_json::Value;
use sha2::{Digest, Sha256};

/// Envelope around every command's payload.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunReport {
    pub command: String,
    /// Hex SHA-256 over the command line and the bytes of every input file.
    pub inputs: String,
    pub result: Value,
    pub elapsed_ms: u64,
    pub seed: Option<u64>,
}

impl RunReport {
    /// The payload alone, serialized deterministically.
    pub fn payload_json(&self) -> String {
        serde_json::to_string(&self.result).expect("payloads are plain JSON values")
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports are plain JSON values")
    }
}

/// Accumulates everything a run reads so identical inputs hash alike.
#[derive(Debug, Clone, Default)]
pub struct InputDigest(Sha256);

impl InputDigest {
    pub fn new() -> Self {
        Self::default()
    }

    /// Each item is length-prefixed so concatenations cannot collide.
    pub fn add(&mut self, label: &str, bytes: &[u8]) {
        for part in [label.as_bytes(), bytes] {
            self.0.update((part.len() as u64).to_le_bytes());
            self.0.update(part);
        }
    }

    pub fn hex(&self) -> String {
        self.0
            .clone()
            .finalize()
            .iter()
            .fold(String::with_capacity(64), |mut acc, b| {
                let _ = write!(acc, "{b:02x}");
                acc
            })
    }
}
