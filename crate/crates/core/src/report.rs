//! Versioned JSON reports shared by the command line and the tests.

use serde::{Deserialize, Serialize};
use serde_json::Value;
use sha2::{Digest, Sha256};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Verdict {
    pub name: String,
    pub pass: bool,
    #[serde(default, skip_serializing_if = "String::is_empty")]
    pub detail: String,
}

impl Verdict {
    pub fn new(name: impl Into<String>, pass: bool, detail: impl Into<String>) -> Verdict {
        Verdict {
            name: name.into(),
            pass,
            detail: detail.into(),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Timing {
    pub elapsed_ms: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub schema_version: u32,
    pub command: String,
    pub args: Vec<String>,
    pub input_hash: String,
    pub seed: Option<u64>,
    pub tool_version: String,
    pub verdicts: Vec<Verdict>,
    pub counterexamples: Vec<Value>,
    pub data: Value,
    pub timing: Timing,
}

impl Report {
    pub fn new(command: impl Into<String>, args: Vec<String>, input_hash: String, seed: Option<u64>) -> Report {
        Report {
            schema_version: SCHEMA_VERSION,
            command: command.into(),
            args,
            input_hash,
            seed,
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            verdicts: Vec::new(),
            counterexamples: Vec::new(),
            data: Value::Null,
            timing: Timing::default(),
        }
    }

    pub fn verdict(&mut self, name: impl Into<String>, pass: bool, detail: impl Into<String>) {
        self.verdicts.push(Verdict::new(name, pass, detail));
    }

    pub fn passed(&self) -> bool {
        self.verdicts.iter().all(|v| v.pass)
    }

    /// The report with the timing field zeroed, serialized compactly.
    pub fn stable_json(&self) -> String {
        let mut r = self.clone();
        r.timing = Timing::default();
        serde_json::to_string(&r).expect("reports serialize")
    }
}

/// Hex SHA-256 of the given parts, each length-prefixed.
pub fn input_hash<I, S>(parts: I) -> String
where
    I: IntoIterator<Item = S>,
    S: AsRef<[u8]>,
{
    let mut h = Sha256::new();
    for p in parts {
        let p = p.as_ref();
        h.update((p.len() as u64).to_le_bytes());
        h.update(p);
    }
    h.finalize().iter().map(|b| format!("{b:02x}")).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn stable_json_ignores_timing() {
        let mut a = Report::new("x", vec![], input_hash(["a"]), Some(1));
        let mut b = a.clone();
        a.timing.elapsed_ms = 5;
        b.timing.elapsed_ms = 9;
        assert_eq!(a.stable_json(), b.stable_json());
        let back: Report = serde_json::from_str(&serde_json::to_string(&a).unwrap()).unwrap();
        assert_eq!(back, a);
    }

    #[test]
    fn hash_is_length_prefixed() {
        assert_ne!(input_hash(["ab", "c"]), input_hash(["a", "bc"]));
    }
}
