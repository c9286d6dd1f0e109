use std::fs;
use std::io;
use std::time::Duration;

use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::commands::Outcome;

#[derive(Debug, Serialize)]
pub struct RunReport {
    pub command: Vec<String>,
    /// `sha256:<hex>` of the raw input bytes, if the command read an input.
    pub input_digest: Option<String>,
    pub outcome: &'static str,
    pub exit_code: u8,
    pub detail: String,
    pub wall_time_ms: f64,
}

impl RunReport {
    pub fn new(command: Vec<String>, input_digest: Option<String>, outcome: &Outcome, elapsed: Duration) -> Self {
        RunReport {
            command,
            input_digest,
            outcome: match outcome.code {
                0 => "ok",
                1 => "violation",
                _ => "error",
            },
            exit_code: outcome.code,
            detail: outcome.detail.clone(),
            wall_time_ms: elapsed.as_secs_f64() * 1e3,
        }
    }

    pub fn write(&self, target: &str) -> io::Result<()> {
        let json = serde_json::to_string_pretty(self)? + "\n";
        if target == "-" {
            eprint!("{json}");
            Ok(())
        } else {
            fs::write(target, json)
        }
    }
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    format!("sha256:{}", hex::encode(Sha256::digest(bytes)))
}
