use std::collections::BTreeMap;
use std::time::Instant;

use chrono::{SecondsFormat, Utc};
use serde::Serialize;

/// Provenance of one CLI run. Re-running with the same command and
/// parameters reproduces the numeric payload exactly.
#[derive(Clone, Debug, Serialize)]
pub struct RunManifest {
    pub command: String,
    pub parameters: BTreeMap<String, String>,
    pub seed: u64,
    pub tool_version: String,
    pub started_at: String,
    pub duration_ms: u64,
}

pub struct ManifestBuilder {
    command: String,
    parameters: BTreeMap<String, String>,
    seed: u64,
    started_at: String,
    clock: Instant,
}

impl ManifestBuilder {
    pub fn start(command: &str, seed: u64) -> Self {
        Self {
            command: command.to_string(),
            parameters: BTreeMap::new(),
            seed,
            started_at: Utc::now().to_rfc3339_opts(SecondsFormat::Millis, true),
            clock: Instant::now(),
        }
    }

    pub fn param(mut self, key: &str, value: impl ToString) -> Self {
        self.parameters.insert(key.to_string(), value.to_string());
        self
    }

    pub fn finish(self) -> RunManifest {
        RunManifest {
            command: self.command,
            parameters: self.parameters,
            seed: self.seed,
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            started_at: self.started_at,
            duration_ms: self.clock.elapsed().as_millis() as u64,
        }
    }
}
