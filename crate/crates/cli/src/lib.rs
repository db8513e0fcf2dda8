//! Command-line front end for the `orecode` library.

pub mod args;
pub mod config;
pub mod error;
pub mod report;
pub mod suites;

use std::path::Path;

use orecode::code::{CodeDescriptor, LrmCode};
use orecode::field::Elem;
use orecode::lag::{choose_n, embed_check, LagContext};
use serde::{Deserialize, Serialize};

use args::{BuildArgs, Cli, Command, EmbedArgs, EncodeArgs, Format, ParamsArgs, VerifyArgs};
use config::{resolve, RunConfig};
use error::{CliError, CliResult};
use report::{csv_bytes, emit, json_bytes, Report, Status, SuiteResult};

/// File written by `build` and read by `encode`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodeFile {
    pub descriptor: CodeDescriptor,
    pub n: usize,
    pub k: usize,
    /// Row-major generator matrix; each entry is the F_p digit vector of an element of L.
    pub generator: Vec<Vec<Vec<u32>>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodewordFile {
    pub codeword: Vec<Vec<u32>>,
    pub block_ranks: Vec<usize>,
    pub weight: usize,
}

#[derive(Serialize)]
struct Suites<'a> {
    suites: &'a [SuiteResult],
}

/// Caps the global rayon pool at `ORECODE_THREADS` workers when set.
pub fn init_threads() -> CliResult<()> {
    let Ok(raw) = std::env::var("ORECODE_THREADS") else { return Ok(()) };
    let n: usize = raw
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| CliError::Usage(format!("ORECODE_THREADS = `{raw}` is not a positive integer")))?;
    // a second initialization in the same process keeps the first pool
    let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    Ok(())
}

/// Runs a parsed command and returns the process exit code.
pub fn run(cli: Cli) -> CliResult<u8> {
    match cli.command {
        Command::Params(a) => params(a),
        Command::Verify(a) => verify(a),
        Command::Build(a) => build(a),
        Command::Encode(a) => encode(a),
        Command::EmbedCheck(a) => embed(a),
    }
}

fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> CliResult<T> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Io { path: path.display().to_string(), source })?;
    Ok(serde_json::from_str(&text)?)
}

fn write_rows(cfg: &RunConfig, format: Format, out: Option<&Path>, rows: &[SuiteResult]) -> CliResult<()> {
    let params = orecode::code::params(cfg.q(), &cfg.twist()?, &cfg.spec)?;
    let bytes = match format {
        Format::Json => json_bytes(&Report::new(cfg, &params, Suites { suites: rows }))?,
        Format::Csv => csv_bytes(cfg, &params, rows)?,
    };
    emit(out, &bytes)
}

fn params(a: ParamsArgs) -> CliResult<u8> {
    let cfg = resolve("params", &a.code)?;
    let params = orecode::code::params(cfg.q(), &cfg.twist()?, &cfg.spec)?;
    let bytes = match a.output.format {
        Format::Json => json_bytes(&Report::new(&cfg, &params, ()))?,
        Format::Csv => {
            let row = SuiteResult {
                suite: "params".into(),
                status: Status::Pass,
                checks: 0,
                measured_d: None,
                detail: String::new(),
                runtime_ms: 0,
            };
            csv_bytes(&cfg, &params, &[row])?
        }
    };
    emit(a.output.out.as_deref(), &bytes)?;
    Ok(0)
}

fn verify(a: VerifyArgs) -> CliResult<u8> {
    let mut cfg = resolve("verify", &a.code)?;
    cfg.seed = a.seed;
    cfg.budget = a.budget;
    cfg.samples = a.samples;
    cfg.n = a.n;
    cfg.exhaustive = a.exhaustive;
    cfg.suites = a.suite.iter().map(|s| s.name().to_string()).collect();
    let mut rows = Vec::with_capacity(a.suite.len());
    if !a.suite.is_empty() {
        let seed = cfg.require_seed()?;
        for &suite in &a.suite {
            rows.push(suites::run(suite, &cfg, seed)?);
        }
    }
    write_rows(&cfg, a.output.format, a.output.out.as_deref(), &rows)?;
    Ok(if rows.iter().any(|r| r.status == Status::Fail) {
        1
    } else if rows.iter().any(|r| r.status == Status::Budget) {
        3
    } else {
        0
    })
}

pub fn code_file(code: &LrmCode) -> CodeFile {
    CodeFile { descriptor: code.descriptor(), n: code.len(), k: code.dimension(), generator: code.export_generator() }
}

/// Rebuilds the code from its descriptor and checks the stored generator.
pub fn load_code(file: &CodeFile) -> CliResult<LrmCode> {
    let code = LrmCode::from_descriptor(&file.descriptor)?;
    if code.import_generator(&file.generator)? != code.generator() {
        return Err(CliError::Usage("stored generator matrix does not match its descriptor".into()));
    }
    Ok(code)
}

fn build(a: BuildArgs) -> CliResult<u8> {
    let mut cfg = resolve("build", &a.code)?;
    cfg.seed = a.seed;
    let code = cfg.code()?;
    emit(a.out.as_deref(), &json_bytes(&code_file(&code))?)?;
    Ok(0)
}

fn encode(a: EncodeArgs) -> CliResult<u8> {
    let code = load_code(&read_json(&a.code)?)?;
    let raw: Vec<Vec<u32>> = read_json(&a.message)?;
    if raw.len() != code.dimension() {
        return Err(CliError::Usage(format!("message has {} symbols, the code has dimension {}", raw.len(), code.dimension())));
    }
    let l = code.ctx().l();
    let msg = raw.iter().map(|d| l.from_digits(d)).collect::<orecode::Result<Vec<Elem>>>()?;
    let word = code.encode_flat(&msg)?;
    let file = CodewordFile {
        codeword: word.iter().map(|&x| l.digits(x)).collect(),
        block_ranks: code.block_ranks(&word),
        weight: code.weight(&word),
    };
    emit(a.out.as_deref(), &json_bytes(&file)?)?;
    Ok(0)
}

fn embed(a: EmbedArgs) -> CliResult<u8> {
    let mut cfg = resolve("embed-check", &a.code)?;
    cfg.seed = a.seed;
    cfg.samples = Some(a.samples);
    cfg.n = Some(a.n.unwrap_or_else(|| choose_n(cfg.m, cfg.r)));
    let seed = cfg.require_seed()?;
    let start = std::time::Instant::now();
    let code = cfg.code()?;
    let lag = LagContext::new(&code, cfg.n.unwrap())?;
    let rep = embed_check(&code, &lag, a.samples, seed)?;
    let params = code.params();
    let bytes = match a.output.format {
        Format::Json => json_bytes(&Report::new(&cfg, &params, &rep))?,
        Format::Csv => {
            let row = SuiteResult {
                suite: "embedding".into(),
                status: if rep.pass { Status::Pass } else { Status::Fail },
                checks: a.samples,
                measured_d: rep.weights.iter().map(|w| w.lrm_weight as u64).min(),
                detail: String::new(),
                runtime_ms: start.elapsed().as_millis(),
            };
            csv_bytes(&cfg, &params, &[row])?
        }
    };
    emit(a.output.out.as_deref(), &bytes)?;
    Ok(if rep.pass { 0 } else { 1 })
}
