//! Experiment reports and their CSV encoding.
//!
//! One report is one CSV row. The schema is fixed across commands:
//!
//! ```text
//! command,n,seed,params,measured,comparator,wall_time_ms,error
//! ```
//!
//! `params`, `measured`, and `comparator` are `key=value` lists joined with
//! `;`. No field ever contains a comma, numbers are written in full
//! round-trip precision, and rows parse back losslessly.

use std::fmt::Display;

use crate::error::{Error, Result};

pub const CSV_HEADER: &str = "command,n,seed,params,measured,comparator,wall_time_ms,error";

#[derive(Clone, Debug, Default, PartialEq)]
pub struct ExperimentReport {
    pub command: String,
    pub n: Option<u64>,
    pub seed: Option<u64>,
    pub params: Vec<(String, String)>,
    pub measured: Vec<(String, String)>,
    pub comparator: Vec<(String, String)>,
    pub wall_time_ms: u64,
    pub error: Option<String>,
}

/// Strip the characters that carry CSV structure.
fn sanitize(value: &str) -> String {
    value
        .chars()
        .map(|c| match c {
            ',' | ';' | '=' | '\n' | '\r' => ' ',
            c => c,
        })
        .collect()
}

fn encode_kv(pairs: &[(String, String)]) -> String {
    pairs
        .iter()
        .map(|(k, v)| format!("{k}={v}"))
        .collect::<Vec<_>>()
        .join(";")
}

fn decode_kv(field: &str) -> Result<Vec<(String, String)>> {
    if field.is_empty() {
        return Ok(Vec::new());
    }
    field
        .split(';')
        .map(|pair| {
            pair.split_once('=')
                .map(|(k, v)| (k.to_string(), v.to_string()))
                .ok_or_else(|| Error::InvalidSet(format!("malformed key=value pair: {pair:?}")))
        })
        .collect()
}

impl ExperimentReport {
    pub fn new(command: &str) -> Self {
        ExperimentReport {
            command: command.to_string(),
            ..Default::default()
        }
    }

    pub fn with_n(mut self, n: u64) -> Self {
        self.n = Some(n);
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = Some(seed);
        self
    }

    pub fn param(&mut self, key: &str, value: impl Display) -> &mut Self {
        self.params
            .push((key.to_string(), sanitize(&value.to_string())));
        self
    }

    pub fn measure(&mut self, key: &str, value: impl Display) -> &mut Self {
        self.measured
            .push((key.to_string(), sanitize(&value.to_string())));
        self
    }

    pub fn compare(&mut self, key: &str, value: impl Display) -> &mut Self {
        self.comparator
            .push((key.to_string(), sanitize(&value.to_string())));
        self
    }

    pub fn set_error(&mut self, message: &str) -> &mut Self {
        self.error = Some(sanitize(message));
        self
    }

    /// Fetch one measured value by key (testing convenience).
    pub fn measured_value(&self, key: &str) -> Option<&str> {
        self.measured
            .iter()
            .find(|(k, _)| k == key)
            .map(|(_, v)| v.as_str())
    }

    pub fn to_csv_row(&self) -> String {
        format!(
            "{},{},{},{},{},{},{},{}",
            sanitize(&self.command),
            self.n.map(|n| n.to_string()).unwrap_or_default(),
            self.seed.map(|s| s.to_string()).unwrap_or_default(),
            encode_kv(&self.params),
            encode_kv(&self.measured),
            encode_kv(&self.comparator),
            self.wall_time_ms,
            self.error.clone().unwrap_or_default(),
        )
    }

    pub fn parse_csv_row(line: &str) -> Result<Self> {
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != 8 {
            return Err(Error::InvalidSet(format!(
                "expected 8 CSV fields, got {}",
                fields.len()
            )));
        }
        let opt_u64 = |s: &str, what: &str| -> Result<Option<u64>> {
            if s.is_empty() {
                Ok(None)
            } else {
                s.parse::<u64>()
                    .map(Some)
                    .map_err(|e| Error::InvalidSet(format!("bad {what}: {e}")))
            }
        };
        Ok(ExperimentReport {
            command: fields[0].to_string(),
            n: opt_u64(fields[1], "n")?,
            seed: opt_u64(fields[2], "seed")?,
            params: decode_kv(fields[3])?,
            measured: decode_kv(fields[4])?,
            comparator: decode_kv(fields[5])?,
            wall_time_ms: fields[6]
                .parse()
                .map_err(|e| Error::InvalidSet(format!("bad wall_time_ms: {e}")))?,
            error: if fields[7].is_empty() {
                None
            } else {
                Some(fields[7].to_string())
            },
        })
    }
}
