//! Library behind the `jt` binary.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage error.

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use jordan_tensor::decomp::decompose;
use jordan_tensor::verify::verify_all_with_guard;
use jordan_tensor::{build_generators, Error, Params, DEFAULT_SIZE_GUARD};

pub mod document;
pub mod render;
pub mod selftest;
pub mod sweep;

pub use document::OutputDocument;
pub use sweep::{run_sweep, SweepConfig, SweepRow};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

/// Overrides the `mn` bound for dense full-space checks. Large values can
/// take a long time and a lot of memory.
pub const SIZE_GUARD_ENV: &str = "JT_SIZE_GUARD";

#[derive(Parser, Debug)]
#[command(name = "jt", version, about = "Decompose V_m ⊗ V_n for a cyclic p-group and build generators")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Print λ and its block structure.
    Decompose(InstanceArgs),
    /// Print λ together with one generator per summand.
    Generators(GeneratorArgs),
    /// Verify a fresh computation or audit a saved JSON document.
    Verify(VerifyArgs),
    /// Compare the determinant route with the rank oracle over a range.
    Sweep(SweepArgs),
    /// Reproduce the built-in worked examples.
    Selftest(OutputArgs),
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Text,
    Json,
}

#[derive(Args, Debug, Clone)]
pub struct OutputArgs {
    #[arg(long, value_enum, default_value_t)]
    pub format: Format,
    /// Write to FILE instead of stdout.
    #[arg(long, value_name = "FILE")]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug, Clone)]
pub struct InstanceArgs {
    #[arg(long)]
    pub p: u64,
    #[arg(long)]
    pub m: usize,
    #[arg(long)]
    pub n: usize,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Args, Debug, Clone)]
pub struct GeneratorArgs {
    #[command(flatten)]
    pub instance: InstanceArgs,
    /// Attach a verification report; exit 1 if it fails.
    #[arg(long)]
    pub verify: bool,
}

#[derive(Args, Debug, Clone)]
pub struct VerifyArgs {
    /// A JSON document previously written by `jt generators --format json`.
    #[arg(long = "in", value_name = "FILE", conflicts_with_all = ["p", "m", "n"])]
    pub input: Option<PathBuf>,
    #[arg(long, required_unless_present = "input")]
    pub p: Option<u64>,
    #[arg(long, required_unless_present = "input")]
    pub m: Option<usize>,
    #[arg(long, required_unless_present = "input")]
    pub n: Option<usize>,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Args, Debug, Clone)]
pub struct SweepArgs {
    #[arg(long, value_delimiter = ',', default_value = "2,3,5,7,11")]
    pub primes: Vec<u64>,
    #[arg(long, default_value_t = 12)]
    pub max_n: usize,
    /// Corrupt each row's generators before verifying; every row should fail.
    #[arg(long)]
    pub inject_fault: bool,
    #[command(flatten)]
    pub output: OutputArgs,
}

/// A failure that maps to an exit code.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure { code: EXIT_USAGE, message: message.into() }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::usage(e.to_string())
    }
}

pub fn size_guard() -> Result<usize, Failure> {
    match std::env::var(SIZE_GUARD_ENV) {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| Failure::usage(format!("{SIZE_GUARD_ENV} must be a non-negative integer, got {v:?}"))),
        Err(_) => Ok(DEFAULT_SIZE_GUARD),
    }
}

/// Validates `(p, m, n)`, swapping `m > n` with a notice on stderr.
pub fn normalize(p: u64, m: usize, n: usize) -> Result<Params, Failure> {
    let (m, n) = if m > n {
        eprintln!("note: m > n, computing V_{n} ⊗ V_{m} instead");
        (n, m)
    } else {
        (m, n)
    };
    Ok(Params::new(p, m, n)?)
}

fn emit(output: &OutputArgs, text: impl FnOnce() -> String, json: &impl Serialize) -> Result<(), Failure> {
    let body = match output.format {
        Format::Text => text(),
        Format::Json => {
            let mut s = serde_json::to_string_pretty(json).expect("serializable");
            s.push('\n');
            s
        }
    };
    match &output.out {
        Some(path) => fs::write(path, body).map_err(|e| Failure::usage(format!("{}: {e}", path.display()))),
        None => io::stdout()
            .write_all(body.as_bytes())
            .map_err(|e| Failure::usage(e.to_string())),
    }
}

fn emit_document(output: &OutputArgs, doc: &OutputDocument) -> Result<(), Failure> {
    emit(output, || render::document(doc), doc)
}

fn cmd_decompose(args: &InstanceArgs) -> Result<i32, Failure> {
    let params = normalize(args.p, args.m, args.n)?;
    let dec = decompose(&params)?;
    emit_document(&args.output, &OutputDocument::new(&params, &dec))?;
    Ok(EXIT_OK)
}

fn generate(params: &Params, verify: bool, output: &OutputArgs) -> Result<i32, Failure> {
    let dec = decompose(params)?;
    let gens = build_generators(params)?;
    let mut doc = OutputDocument::new(params, &dec).with_generators(params, &gens);
    let mut code = EXIT_OK;
    if verify {
        let report = verify_all_with_guard(params, &dec, &gens, size_guard()?);
        if !report.total_ok {
            code = EXIT_VERIFY_FAILED;
        }
        doc = doc.with_report(&report);
    }
    emit_document(output, &doc)?;
    Ok(code)
}

fn cmd_generators(args: &GeneratorArgs) -> Result<i32, Failure> {
    let i = &args.instance;
    generate(&normalize(i.p, i.m, i.n)?, args.verify, &i.output)
}

/// Reads a document and re-runs verification on its contents.
pub fn audit_file(path: &Path, guard: usize) -> Result<(OutputDocument, i32), Failure> {
    let raw = fs::read_to_string(path).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))?;
    let mut doc: OutputDocument =
        serde_json::from_str(&raw).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))?;
    let params = doc.params()?;
    let dec = doc.decomposition();
    let gens = match doc.generator_set(&params) {
        Ok(g) => g,
        Err(message) => return Err(Failure { code: EXIT_VERIFY_FAILED, message }),
    };
    let report = verify_all_with_guard(&params, &dec, &gens, guard);
    doc = doc.with_report(&report);
    let code = if report.total_ok { EXIT_OK } else { EXIT_VERIFY_FAILED };
    Ok((doc, code))
}

fn cmd_verify(args: &VerifyArgs) -> Result<i32, Failure> {
    match (&args.input, args.p, args.m, args.n) {
        (Some(path), ..) => {
            let (doc, code) = audit_file(path, size_guard()?)?;
            emit_document(&args.output, &doc)?;
            Ok(code)
        }
        (None, Some(p), Some(m), Some(n)) => generate(&normalize(p, m, n)?, true, &args.output),
        _ => Err(Failure::usage("verify needs --in FILE or all of --p, --m, --n")),
    }
}

fn cmd_sweep(args: &SweepArgs) -> Result<i32, Failure> {
    if let Some(bad) = args.primes.iter().find(|&&p| Params::new(p, 1, 1).is_err()) {
        return Err(Failure::usage(format!("{bad} is not a usable prime")));
    }
    let cfg = SweepConfig {
        primes: args.primes.clone(),
        max_n: args.max_n,
        guard: size_guard()?,
        inject_fault: args.inject_fault,
    };
    let rows = run_sweep(&cfg);
    emit(&args.output, || render::sweep(&rows), &rows)?;
    Ok(if rows.iter().any(SweepRow::is_failure) { EXIT_VERIFY_FAILED } else { EXIT_OK })
}

fn cmd_selftest(output: &OutputArgs) -> Result<i32, Failure> {
    let results = selftest::run();
    emit(output, || selftest::render(&results), &results)?;
    Ok(if results.iter().all(|r| r.ok) { EXIT_OK } else { EXIT_VERIFY_FAILED })
}

/// Runs a parsed command and returns the process exit code.
pub fn run(cli: &Cli) -> i32 {
    let outcome = match &cli.command {
        Command::Decompose(a) => cmd_decompose(a),
        Command::Generators(a) => cmd_generators(a),
        Command::Verify(a) => cmd_verify(a),
        Command::Sweep(a) => cmd_sweep(a),
        Command::Selftest(a) => cmd_selftest(a),
    };
    outcome.unwrap_or_else(|f| {
        eprintln!("error: {}", f.message);
        f.code
    })
}
