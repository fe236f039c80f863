use std::fs;
use std::path::{Path, PathBuf};

use parity_ns::io::sidecar_path;
use serde::Serialize;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::CliError;

pub const SCHEMA: &str = "parity-ns/1";

#[derive(Clone, Debug, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

/// Collects the verification checks of one command.
#[derive(Default)]
pub struct Checks(Vec<CheckResult>);

impl Checks {
    pub fn add(&mut self, name: impl Into<String>, passed: bool, detail: impl Into<String>) {
        self.0.push(CheckResult { name: name.into(), passed, detail: detail.into() });
    }

    pub fn passed(&self) -> bool {
        self.0.iter().all(|c| c.passed)
    }

    pub fn list(&self) -> &[CheckResult] {
        &self.0
    }
}

/// SHA-256 over a sequence of labelled byte strings.
#[derive(Default)]
pub struct InputHash(Sha256);

impl InputHash {
    pub fn bytes(&mut self, label: &str, data: &[u8]) {
        self.0.update((label.len() as u64).to_le_bytes());
        self.0.update(label.as_bytes());
        self.0.update((data.len() as u64).to_le_bytes());
        self.0.update(data);
    }

    pub fn json(&mut self, label: &str, v: &impl Serialize) -> Result<(), CliError> {
        let text = serde_json::to_vec(v).map_err(|e| CliError::Usage(e.to_string()))?;
        self.bytes(label, &text);
        Ok(())
    }

    /// A field file together with its sidecar.
    pub fn field_file(&mut self, path: &Path) -> Result<(), CliError> {
        for p in [path.to_path_buf(), sidecar_path(path)] {
            let data = fs::read(&p).map_err(|e| CliError::Usage(format!("cannot read {}: {e}", p.display())))?;
            self.bytes("file", &data);
        }
        Ok(())
    }

    pub fn finish(self) -> String {
        format!("sha256:{}", hex::encode(self.0.finalize()))
    }
}

pub struct Report {
    pub command: &'static str,
    pub config: Value,
    pub input_hash: String,
    pub checks: Checks,
    pub result: Value,
}

impl Report {
    pub fn to_json(&self) -> Value {
        json!({
            "schema": SCHEMA,
            "command": self.command,
            "config": self.config,
            "inputHash": self.input_hash,
            "passed": self.checks.passed(),
            "checks": self.checks.list(),
            "result": self.result,
        })
    }

    pub fn write(&self, out: Option<&PathBuf>) -> Result<(), CliError> {
        let mut text = serde_json::to_string_pretty(&self.to_json()).map_err(|e| CliError::Usage(e.to_string()))?;
        text.push('\n');
        match out {
            Some(path) => {
                if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
                    fs::create_dir_all(dir)?;
                }
                fs::write(path, text)?;
                self.summary();
            }
            None => print!("{text}"),
        }
        Ok(())
    }

    /// One line per check on standard output.
    fn summary(&self) {
        for c in self.checks.list() {
            println!("{} {}: {}", if c.passed { "ok  " } else { "FAIL" }, c.name, c.detail);
        }
    }
}
