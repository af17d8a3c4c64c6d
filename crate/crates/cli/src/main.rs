//! `cocycle-engine`: windowed cohomology scans, Godbillon–Vey checks and
//! cocycle decompositions for the Witt and Virasoro algebras.
//!
//! Exit codes: 0 success, 1 usage or input error, 2 verification failure.
//! `COCYCLE_ENGINE_THREADS` caps the worker pool.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use cocycle_core::cochains::text::from_text;
use cocycle_core::cohomology::{
    cohomology_dim, crosscheck_sequences, stabilization_scan, CohomologySetup, DimensionRow, WindowConfig, ESTIMATE_LABEL,
};
use cocycle_core::knowncocycles::{verify_cocycle, verify_nontrivial, NamedCocycle};
use cocycle_core::normalizer::{decompose, propagate_recursions, sample_cohomologous, verify_final_relations};
use cocycle_core::scalar::format_fraction;
use cocycle_core::{algebra::check_jacobi, Algebra, Error, ModuleTag, Rational};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
enum Command {
    Dims,
    Scan,
    VerifyGv,
    Decompose,
    RecursionTable,
    Jacobi,
    Crosscheck,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum Format {
    Json,
    Csv,
}

#[derive(Args, Debug, Clone)]
struct Options {
    #[arg(long, value_parser = parse_algebra, default_value = "witt")]
    algebra: Algebra,
    #[arg(long, value_parser = parse_module, default_value = "trivial")]
    module: ModuleTag,
    #[arg(long, default_value_t = 3)]
    q: usize,
    #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
    d: i64,
    /// Coefficient window N
    #[arg(long)]
    n: Option<u32>,
    /// Source window M for coboundary generators (default 2N)
    #[arg(long)]
    m: Option<u32>,
    /// Condition-window margin (default max(3, N-3))
    #[arg(long)]
    margin: Option<u32>,
    /// Window ladder `a..b`
    #[arg(long, value_parser = parse_ladder)]
    ladder: Option<(u32, u32)>,
    /// Expected dimension; a mismatch exits with code 2
    #[arg(long)]
    expect: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Cochain in canonical text form
    #[arg(long = "in")]
    input: Option<PathBuf>,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
}

fn parse_algebra(s: &str) -> Result<Algebra, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_module(s: &str) -> Result<ModuleTag, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_ladder(s: &str) -> Result<(u32, u32), String> {
    let (a, b) = s.split_once("..").ok_or_else(|| format!("expected `a..b`, got `{s}`"))?;
    let a: u32 = a.parse().map_err(|_| format!("bad ladder start `{a}`"))?;
    let b: u32 = b.parse().map_err(|_| format!("bad ladder end `{b}`"))?;
    if a == 0 || b < a {
        return Err(format!("ladder needs 1 <= a <= b, got {a}..{b}"));
    }
    Ok((a, b))
}

/// A failed run: `Usage` maps to exit 1, `Verification` to exit 2.
enum Failure {
    Usage(String),
    Verification(Value),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::NotACocycle(_)
            | Error::ResidualNonZero(_)
            | Error::ProfileViolation { .. }
            | Error::InclusionViolation { .. }
            | Error::DimensionMismatch(_) => Failure::Verification(json!({ "error": error_name(&e), "message": e.to_string() })),
            other => Failure::Usage(other.to_string()),
        }
    }
}

fn error_name(e: &Error) -> &'static str {
    match e {
        Error::NotACocycle(_) => "NotACocycle",
        Error::ResidualNonZero(_) => "ResidualNonZero",
        Error::ProfileViolation { .. } => "ProfileViolation",
        Error::InclusionViolation { .. } => "InclusionViolation",
        Error::DimensionMismatch(_) => "DimensionMismatch",
        _ => "Error",
    }
}

struct Report {
    body: String,
    verified: bool,
}

fn window(opts: &Options, n: u32) -> Result<WindowConfig, Error> {
    let m = opts.m.unwrap_or(2 * n);
    match opts.margin {
        Some(margin) => WindowConfig::with_margin(n, m, margin),
        None => WindowConfig::new(n, m),
    }
}

fn ladder(opts: &Options, default: (u32, u32)) -> Result<Vec<WindowConfig>, Failure> {
    if opts.m.is_some() {
        return Err(Failure::Usage("--m applies to single windows; ladders use M = 2N".into()));
    }
    let (a, b) = opts.ladder.unwrap_or(default);
    Ok((a..=b).map(|n| window(opts, n)).collect::<Result<_, _>>()?)
}

fn setup(opts: &Options, w: WindowConfig) -> Result<CohomologySetup, Error> {
    CohomologySetup::new(opts.algebra, opts.module, opts.q, opts.d, w)
}

fn csv_rows(rows: &[DimensionRow]) -> String {
    let mut out = String::from("N,M,K,dimZ,dimB,dimH\n");
    for r in rows {
        out.push_str(&format!("{},{},{},{},{},{}\n", r.n, r.m, r.k, r.dim_z, r.dim_b, r.dim_h));
    }
    out
}

fn render(command: Command, opts: &Options, result: Value, verified: bool) -> Report {
    let report = json!({ "config": config_json(command, opts), "result": result });
    Report { body: serde_json::to_string_pretty(&report).expect("serializable") + "\n", verified }
}

fn config_json(command: Command, opts: &Options) -> Value {
    json!({
        "command": command,
        "algebra": opts.algebra,
        "module": opts.module,
        "q": opts.q,
        "d": opts.d,
        "n": opts.n,
        "m": opts.m,
        "margin": opts.margin,
        "ladder": opts.ladder.map(|(a, b)| format!("{a}..{b}")),
        "expect": opts.expect,
        "seed": opts.seed,
        "in": opts.input.as_ref().map(|p| p.display().to_string()),
        "format": opts.format,
    })
}

fn json_only(opts: &Options) -> Result<(), Failure> {
    if opts.format == Format::Csv {
        return Err(Failure::Usage("this command only produces JSON".into()));
    }
    Ok(())
}

fn run(command: Command, opts: &Options) -> Result<Report, Failure> {
    match command {
        Command::Dims => {
            let w = window(opts, opts.n.unwrap_or(6))?;
            let row = cohomology_dim(&setup(opts, w)?)?;
            let verified = opts.expect.is_none_or(|e| e == row.dim_h);
            if opts.format == Format::Csv {
                let body = format!("# {}\n{}", config_json(command, opts), csv_rows(&[row]));
                return Ok(Report { body, verified });
            }
            let result = json!({ "row": row, "label": ESTIMATE_LABEL, "expect_met": verified });
            Ok(render(command, opts, result, verified))
        }
        Command::Scan => {
            let ladder = ladder(opts, (4, 8))?;
            let report = stabilization_scan(&setup(opts, ladder[0])?, &ladder)?;
            let verified = opts.expect.is_none_or(|e| report.stable_dim == Some(e));
            if opts.format == Format::Csv {
                let body = format!("# {}\n{}", config_json(command, opts), csv_rows(&report.ladder));
                return Ok(Report { body, verified });
            }
            Ok(render(command, opts, serde_json::to_value(&report).expect("serializable"), verified))
        }
        Command::VerifyGv => {
            json_only(opts)?;
            let n = opts.n.unwrap_or(6);
            let gv = NamedCocycle::godbillon_vey_for(opts.algebra);
            let cocycle = verify_cocycle::<Rational, _>(&gv, n)?;
            let nontrivial = verify_nontrivial::<Rational, _>(&gv.materialize::<Rational>(n), n)?;
            let verified = cocycle.passed && nontrivial.nontrivial;
            let result = json!({
                "cocycle": cocycle.passed,
                "nontrivial": nontrivial.nontrivial,
                "name": gv.name(),
                "cocycle_check": cocycle,
                "nontrivial_check": nontrivial,
            });
            Ok(render(command, opts, result, verified))
        }
        Command::Decompose => {
            json_only(opts)?;
            let n = opts.n.unwrap_or(9);
            let psi = match &opts.input {
                Some(path) => {
                    let text = fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
                    from_text::<Rational>(&text)?
                }
                None => {
                    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
                    sample_cohomologous::<Rational, _>(opts.algebra, n, opts.m.unwrap_or(n + 4), &mut rng)?.psi
                }
            };
            let d = decompose(&psi, n)?;
            Ok(render(command, opts, serde_json::to_value(d.to_json()).expect("serializable"), d.residual_norm_zero))
        }
        Command::RecursionTable => {
            let table = propagate_recursions::<Rational>(opts.n.unwrap_or(7))?;
            let relations = verify_final_relations(&table)?;
            let verified = match opts.algebra {
                Algebra::Witt => relations.witt_forced_zero,
                Algebra::Virasoro => relations.virasoro_forced_zero,
            };
            if opts.format == Format::Csv {
                let mut body = format!("# {}\nkey,psi_m220,c2m2\n", config_json(command, opts));
                for (key, form) in &table.psi {
                    body.push_str(&format!("{key},{},{}\n", format_fraction(&form.psi), format_fraction(&form.c)));
                }
                return Ok(Report { body, verified });
            }
            let psi: serde_json::Map<String, Value> = table
                .psi
                .iter()
                .map(|(k, f)| (k.to_string(), json!({ "psi_m220": format_fraction(&f.psi), "c2m2": format_fraction(&f.c) })))
                .collect();
            let c: serde_json::Map<String, Value> =
                table.c.iter().map(|(k, f)| (k.to_string(), json!(format_fraction(&f.c)))).collect();
            let form = |f: &cocycle_core::normalizer::SeedForm<Rational>| {
                json!({ "psi_m220": format_fraction(&f.psi), "c2m2": format_fraction(&f.c) })
            };
            let result = json!({
                "window": table.window,
                "psi": psi,
                "c": c,
                "recursion_instances": table.instances.len(),
                "final_relations": {
                    "coc1": form(&relations.coc1),
                    "coc2": form(&relations.coc2),
                    "witt_forced_zero": relations.witt_forced_zero,
                    "virasoro_forced_zero": relations.virasoro_forced_zero,
                },
            });
            Ok(render(command, opts, result, verified))
        }
        Command::Jacobi => {
            json_only(opts)?;
            let n = opts.n.unwrap_or(6);
            let violations = check_jacobi::<Rational, _>(&opts.algebra, n);
            let examples: Vec<String> =
                violations.iter().take(10).map(|v| format!("{:?}: {}", v.triple, v.value)).collect();
            let result = json!({ "window": n, "violations": violations.len(), "examples": examples });
            Ok(render(command, opts, result, violations.is_empty()))
        }
        Command::Crosscheck => {
            json_only(opts)?;
            let ladder = ladder(opts, (4, 8))?;
            let report = crosscheck_sequences(&ladder)?;
            let verified = report.all_agree;
            Ok(render(command, opts, serde_json::to_value(&report).expect("serializable"), verified))
        }
    }
}

#[derive(Parser, Debug)]
#[command(name = "cocycle-engine", version, about = "Exact Chevalley-Eilenberg cohomology of the Witt and Virasoro algebras")]
struct Cli {
    #[command(subcommand)]
    command: RunCommand,
}

#[derive(Subcommand, Debug)]
enum RunCommand {
    /// dimZ, dimB, dimH at one window
    Dims(Options),
    /// Stabilization scan over a ladder of windows
    Scan(Options),
    /// Cocycle and non-triviality checks for the Godbillon-Vey cocycle
    VerifyGv(Options),
    /// Write a degree-0 trivial 3-cocycle as λΨ + δφ
    Decompose(Options),
    /// Coefficients of a normalized 3-cocycle in terms of its two seeds
    RecursionTable(Options),
    /// Jacobi identity on a window
    Jacobi(Options),
    /// Exact-sequence dimension comparisons
    Crosscheck(Options),
}

fn configure_threads() -> Result<(), String> {
    let Ok(value) = std::env::var("COCYCLE_ENGINE_THREADS") else { return Ok(()) };
    let threads: usize = value.parse().ok().filter(|t| *t > 0).ok_or_else(|| format!("COCYCLE_ENGINE_THREADS must be a positive integer, got `{value}`"))?;
    rayon::ThreadPoolBuilder::new().num_threads(threads).build_global().map_err(|e| e.to_string())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(t) => t,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    if let Err(msg) = configure_threads() {
        eprintln!("error: {msg}");
        return ExitCode::from(1);
    }
    let (command, opts) = match cli.command {
        RunCommand::Dims(o) => (Command::Dims, o),
        RunCommand::Scan(o) => (Command::Scan, o),
        RunCommand::VerifyGv(o) => (Command::VerifyGv, o),
        RunCommand::Decompose(o) => (Command::Decompose, o),
        RunCommand::RecursionTable(o) => (Command::RecursionTable, o),
        RunCommand::Jacobi(o) => (Command::Jacobi, o),
        RunCommand::Crosscheck(o) => (Command::Crosscheck, o),
    };
    let (body, code) = match run(command, &opts) {
        Ok(report) => (report.body, if report.verified { 0 } else { 2 }),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            return ExitCode::from(1);
        }
        Err(Failure::Verification(value)) => {
            let report = json!({ "config": config_json(command, &opts), "result": value });
            (serde_json::to_string_pretty(&report).expect("serializable") + "\n", 2)
        }
    };
    match &opts.out {
        Some(path) => {
            if let Err(e) = fs::write(path, &body) {
                eprintln!("error: {}: {e}", path.display());
                return ExitCode::from(1);
            }
        }
        None => print!("{body}"),
    }
    ExitCode::from(code)
}
