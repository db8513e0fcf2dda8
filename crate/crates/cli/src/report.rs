//! Machine-readable reports. JSON carries the seed and config hash and no
//! timings; CSV rows have the fixed column set and a runtime column.

use std::io::Write;
use std::path::Path;

use orecode::code::CodeParams;
use serde::Serialize;

use crate::config::RunConfig;
use crate::error::{CliError, CliResult};

pub const CSV_HEADER: [&str; 12] =
    ["q", "r", "m", "e", "spec", "n", "k", "designed_d", "measured_d", "suite", "pass", "runtime_ms"];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
    /// The suite was refused because it exceeds the budget.
    Budget,
}

impl Status {
    pub fn csv(self) -> &'static str {
        match self {
            Status::Pass => "true",
            Status::Fail => "false",
            Status::Budget => "budget",
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SuiteResult {
    pub suite: String,
    pub status: Status,
    pub checks: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub measured_d: Option<u64>,
    pub detail: String,
    #[serde(skip)]
    pub runtime_ms: u128,
}

#[derive(Debug, Serialize)]
pub struct Report<'a, T: Serialize> {
    pub config: &'a RunConfig,
    pub config_hash: String,
    pub seed: Option<u64>,
    pub params: &'a CodeParams,
    #[serde(flatten)]
    pub body: T,
}

impl<'a, T: Serialize> Report<'a, T> {
    pub fn new(config: &'a RunConfig, params: &'a CodeParams, body: T) -> Self {
        Report { config, config_hash: config.hash(), seed: config.seed, params, body }
    }
}

pub fn csv_bytes(config: &RunConfig, params: &CodeParams, rows: &[SuiteResult]) -> CliResult<Vec<u8>> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(CSV_HEADER)?;
    let e = config.e.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",");
    let opt = |x: Option<u64>| x.map(|v| v.to_string()).unwrap_or_default();
    for row in rows {
        w.write_record([
            config.q().to_string(),
            config.r.to_string(),
            config.m.to_string(),
            e.clone(),
            config.spec.label(),
            params.n.to_string(),
            params.k.to_string(),
            opt(params.designed),
            opt(row.measured_d),
            row.suite.clone(),
            row.status.csv().to_string(),
            row.runtime_ms.to_string(),
        ])?;
    }
    w.into_inner().map_err(|e| CliError::Usage(e.to_string()))
}

pub fn json_bytes<T: Serialize>(value: &T) -> CliResult<Vec<u8>> {
    let mut out = serde_json::to_vec_pretty(value)?;
    out.push(b'\n');
    Ok(out)
}

/// Writes to `path`, or to stdout when absent.
pub fn emit(path: Option<&Path>, bytes: &[u8]) -> CliResult<()> {
    match path {
        Some(p) => std::fs::write(p, bytes).map_err(|source| CliError::Io { path: p.display().to_string(), source }),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(bytes).and_then(|_| out.flush()).map_err(|source| CliError::Io { path: "stdout".into(), source })
        }
    }
}
