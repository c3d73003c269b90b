mod commands;

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use dualimit_core::parse::{FamilyFile, Mode};
use dualimit_core::{Backend, Error, Result};

/// Version of the JSON report layout.
const SCHEMA_VERSION: u32 = 1;
const DEFAULT_PRECISION: u32 = 256;

#[derive(Parser, Debug)]
#[command(name = "dualimit", version, about = "Limits of dual plane curves in one-parameter degenerations")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug, Clone)]
enum Command {
    /// Parse a family file and print its canonical form.
    Parse(Common),
    /// Newton polygon, leading edge and characteristic polynomial.
    Polygon(Common),
    /// Puiseux branches and their separation orders.
    Branches(Common),
    /// α, Δ' and Δ'₀ of the discriminant; `--check` adds the product formula table.
    DiscLimit(Common),
    /// ver(F) with method and factor table.
    Vertex {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum, default_value_t = MethodArg::Auto)]
        method: MethodArg,
    },
    /// Zd decompositions of the multiple components.
    Zd(Common),
    /// Types of the components and the general type.
    Type {
        #[command(flatten)]
        common: Common,
        /// Perturb at t^(τ+1) and confirm ver does not change.
        #[arg(long)]
        verify_truncation: bool,
    },
    /// The limit of the dual curves of a homogeneous family.
    LimitDual(Common),
    /// Product formula, ver factorization and truncation sufficiency in sequence.
    Check(Common),
}

#[derive(Args, Debug, Clone)]
struct Common {
    /// Family file, or a directory of family files for batch mode.
    #[arg(long, short = 'i')]
    input: Option<PathBuf>,
    #[arg(value_name = "FILE", conflicts_with = "input")]
    file: Option<PathBuf>,
    #[arg(long, value_enum)]
    mode: Option<ModeArg>,
    /// Working precision in bits for the numeric backend.
    #[arg(long, value_parser = clap::value_parser!(u32).range(64..))]
    precision: Option<u32>,
    /// Override the truncation order of the file.
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    trunc: Option<u64>,
    #[arg(long)]
    json: bool,
    #[arg(long, default_value_t = 30)]
    trials: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    check: bool,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum ModeArg {
    Exact,
    Numeric,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum MethodArg {
    Auto,
    Kind,
    Zd,
    Branch,
}

/// Everything a subcommand needs besides the family itself.
pub struct RunConfig {
    pub mode: Mode,
    pub precision_bits: u32,
    pub json: bool,
    pub trials: u64,
    pub seed: u64,
    pub check: bool,
    pub method: MethodArg,
    pub verify_truncation: bool,
}

impl RunConfig {
    pub fn backend(&self) -> Backend {
        match self.mode {
            Mode::Exact => Backend::Exact,
            Mode::Numeric => Backend::numeric(self.precision_bits),
        }
    }
}

/// A finished subcommand: the same payload rendered two ways.
pub struct Outcome {
    pub text: String,
    pub result: Value,
    pub certificates: Value,
    /// Nonzero when a cross-check failed after the report was produced.
    pub exit: u8,
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Parse(_) => "parse",
            Command::Polygon(_) => "polygon",
            Command::Branches(_) => "branches",
            Command::DiscLimit(_) => "disc-limit",
            Command::Vertex { .. } => "vertex",
            Command::Zd(_) => "zd",
            Command::Type { .. } => "type",
            Command::LimitDual(_) => "limit-dual",
            Command::Check(_) => "check",
        }
    }

    fn common(&self) -> &Common {
        match self {
            Command::Parse(c)
            | Command::Polygon(c)
            | Command::Branches(c)
            | Command::DiscLimit(c)
            | Command::Zd(c)
            | Command::LimitDual(c)
            | Command::Check(c) => c,
            Command::Vertex { common, .. } | Command::Type { common, .. } => common,
        }
    }
}

struct FileReport {
    exit: u8,
    text: String,
    json: Value,
}

fn load(path: &Path, common: &Common) -> Result<FamilyFile> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    let file = FamilyFile::parse(&text)?;
    match common.trunc {
        Some(t) => file.with_trunc(t as usize),
        None => Ok(file),
    }
}

fn config_for(cmd: &Command, file: &FamilyFile) -> RunConfig {
    let c = cmd.common();
    RunConfig {
        mode: match c.mode {
            Some(ModeArg::Exact) => Mode::Exact,
            Some(ModeArg::Numeric) => Mode::Numeric,
            None => file.mode.unwrap_or(Mode::Exact),
        },
        precision_bits: c.precision.or(file.precision).unwrap_or(DEFAULT_PRECISION),
        json: c.json,
        trials: c.trials,
        seed: c.seed,
        check: c.check,
        method: match cmd {
            Command::Vertex { method, .. } => *method,
            _ => MethodArg::Auto,
        },
        verify_truncation: matches!(cmd, Command::Type { verify_truncation: true, .. }),
    }
}

fn run_file(cmd: &Command, path: &Path) -> FileReport {
    let start = Instant::now();
    let file_name = path.display().to_string();
    let outcome = load(path, cmd.common()).and_then(|file| {
        let cfg = config_for(cmd, &file);
        let inputs = json!({
            "file": file_name,
            "ring": file.ring.as_str(),
            "trunc": file.trunc,
            "mode": cfg.mode.as_str(),
            "precision_bits": cfg.precision_bits,
            "trials": cfg.trials,
            "seed": cfg.seed,
            "family": file.to_text(),
        });
        commands::dispatch(cmd, &file, &cfg).map(|o| (o, inputs))
    });
    let elapsed_ms = start.elapsed().as_secs_f64() * 1e3;
    match outcome {
        Ok((o, inputs)) => FileReport {
            exit: o.exit,
            text: o.text,
            json: json!({
                "command": cmd.name(),
                "schema_version": SCHEMA_VERSION,
                "inputs": inputs,
                "result": o.result,
                "certificates": o.certificates,
                "timing": {"elapsed_ms": elapsed_ms},
                "exit_code": o.exit,
            }),
        },
        Err(e) => {
            let code = e.exit_code() as u8;
            FileReport {
                exit: code,
                text: format!("error: {e}"),
                json: json!({
                    "command": cmd.name(),
                    "schema_version": SCHEMA_VERSION,
                    "inputs": {"file": file_name},
                    "error": {"message": e.to_string(), "exit_code": code},
                    "timing": {"elapsed_ms": elapsed_ms},
                    "exit_code": code,
                }),
            }
        }
    }
}

fn batch_paths(dir: &Path) -> Result<Vec<PathBuf>> {
    let mut paths: Vec<PathBuf> = std::fs::read_dir(dir)
        .map_err(|e| Error::Io(format!("{}: {e}", dir.display())))?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.is_file())
        .collect();
    paths.sort();
    Ok(paths)
}

/// Runs every file on a pool of scoped threads; reports come back in input order.
fn run_batch(cmd: &Command, paths: &[PathBuf]) -> Vec<FileReport> {
    let workers = std::thread::available_parallelism().map_or(1, |n| n.get()).min(paths.len().max(1));
    let mut slots: Vec<Option<FileReport>> = (0..paths.len()).map(|_| None).collect();
    std::thread::scope(|s| {
        let handles: Vec<_> = (0..workers)
            .map(|w| {
                s.spawn(move || {
                    (w..paths.len())
                        .step_by(workers)
                        .map(|i| (i, run_file(cmd, &paths[i])))
                        .collect::<Vec<_>>()
                })
            })
            .collect();
        for h in handles {
            for (i, r) in h.join().expect("worker thread panicked") {
                slots[i] = Some(r);
            }
        }
    });
    slots.into_iter().map(|r| r.expect("every file is processed")).collect()
}

/// Writes to stdout, ignoring a closed pipe.
fn out(s: &str) {
    use std::io::Write;
    let _ = writeln!(std::io::stdout().lock(), "{s}");
}

fn emit_single(r: &FileReport, json: bool) {
    if json {
        out(&serde_json::to_string_pretty(&r.json).expect("report serializes"));
    } else if r.text.starts_with("error: ") && r.exit != 0 {
        eprintln!("{}", r.text);
    } else {
        out(&r.text);
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let common = cli.command.common();
    let Some(path) = common.input.clone().or_else(|| common.file.clone()) else {
        eprintln!("error: no input file (use --input FILE)");
        return ExitCode::from(2);
    };
    if path.is_dir() {
        let paths = match batch_paths(&path) {
            Ok(p) => p,
            Err(e) => {
                eprintln!("error: {e}");
                return ExitCode::from(e.exit_code() as u8);
            }
        };
        let reports = run_batch(&cli.command, &paths);
        if common.json {
            let all: Vec<&Value> = reports.iter().map(|r| &r.json).collect();
            out(&serde_json::to_string_pretty(&all).expect("report serializes"));
        } else {
            for (p, r) in paths.iter().zip(&reports) {
                out(&format!("== {} ==\n{}\n", p.display(), r.text));
            }
        }
        return ExitCode::from(reports.iter().map(|r| r.exit).max().unwrap_or(0));
    }
    let r = run_file(&cli.command, &path);
    emit_single(&r, common.json);
    ExitCode::from(r.exit)
}
