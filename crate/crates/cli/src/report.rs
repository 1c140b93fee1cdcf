use magset::SearchStats;
use serde::Serialize;
use sha2::{Digest, Sha256};

pub const SCHEMA: u32 = 1;

/// One JSON object per invocation. Everything except `wall_time_ms` is a
/// function of the arguments and input.
#[derive(Debug, Serialize)]
pub struct RunReport {
    pub schema: u32,
    pub command: String,
    pub input_digest: Option<String>,
    pub result: serde_json::Value,
    pub wall_time_ms: f64,
    pub stats: Option<SearchStats>,
}

impl RunReport {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }
}

pub fn digest(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}
