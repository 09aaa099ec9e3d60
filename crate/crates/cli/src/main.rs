//! `keywitness`: distillable-key lower bounds from witness readings.
//!
//! Exit codes: 0 ok, 2 domain/input error, 3 parse error, 4 capacity
//! exceeded, 5 internal error. Every failure prints a single
//! `error[kind]: message` line on stderr.

mod gfmt;
mod io;
mod sweep;

use clap::{Args, Parser, Subcommand, ValueEnum};
use keywitness::bounds::{
    find_constants, kd_single_approx, kd_single_central, kd_single_weak1, kd_single_weak2,
    kd_two_full, kd_two_weak, kd_w_wz, log_negativity, BoundReport,
};
use keywitness::dw::{dw_rate_with, DwOptions};
use keywitness::states::{pbit_state, swap_operator, BellDiagonal, BlockForm};
use keywitness::witness::{
    count_settings, count_settings_for_strings, full_tomography_strings, pauli_decompose,
    witness_operator, wz, KeyPattern, WitnessSpec,
};
use keywitness::MultipartiteState;
use serde::Serialize;
use std::path::PathBuf;
use std::process::ExitCode;

use gfmt::g12;
use sweep::Axis;

/// CLI failure with its exit code semantics.
#[derive(Debug)]
pub enum Failure {
    Domain(String),
    Parse(String),
    Capacity(String),
    Internal(String),
}

impl From<keywitness::Error> for Failure {
    fn from(e: keywitness::Error) -> Self {
        match e {
            keywitness::Error::Input(m)
            | keywitness::Error::Domain(m)
            | keywitness::Error::Inconsistency(m) => Failure::Domain(m),
            keywitness::Error::Capacity(m) => Failure::Capacity(m),
            keywitness::Error::Internal(m) => Failure::Internal(m),
        }
    }
}

impl Failure {
    fn kind(&self) -> &'static str {
        match self {
            Failure::Domain(_) => "domain",
            Failure::Parse(_) => "parse",
            Failure::Capacity(_) => "capacity",
            Failure::Internal(_) => "internal",
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Domain(m) | Failure::Parse(m) | Failure::Capacity(m) | Failure::Internal(m) => m,
        }
    }

    fn exit_code(&self) -> u8 {
        match self {
            Failure::Domain(_) => 2,
            Failure::Parse(_) => 3,
            Failure::Capacity(_) => 4,
            Failure::Internal(_) => 5,
        }
    }
}

#[derive(Parser)]
#[command(
    name = "keywitness",
    version,
    about = "Lower bounds on the distillable secret key from witness expectation values"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate a key bound from witness readings or a state file.
    #[command(subcommand)]
    Bound(BoundCommand),
    /// Sweep bound curves and grids into CSV plot data.
    #[command(subcommand)]
    Sweep(SweepCommand),
    /// Pauli-decompose a witness and count measurement settings.
    Decompose(DecomposeArgs),
    /// Independent oracles: Devetak-Winter rate, log-negativity, constants.
    #[command(subcommand)]
    Oracle(OracleCommand),
    /// Generate built-in state and operator files.
    #[command(subcommand)]
    Gen(GenCommand),
}

#[derive(Subcommand)]
enum BoundCommand {
    /// Single-witness bound from the reading w.
    Single(SingleArgs),
    /// Two-observable bound from the readings (wx, wz).
    Two(TwoArgs),
    /// Combined w and wz bound.
    Wwz(WwzArgs),
    /// Read a state file, take the witness expectation, bound the key.
    FromState(FromStateArgs),
}

#[derive(Args)]
struct SingleArgs {
    /// Witness reading w = |<W_key>|.
    #[arg(long)]
    w: f64,
    #[arg(long, value_enum, default_value_t = SingleMethod::Central)]
    method: SingleMethod,
    /// Emit a machine-readable JSON report.
    #[arg(long)]
    json: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum SingleMethod {
    Central,
    Weak1,
    Weak2,
    Approx,
}

#[derive(Args)]
struct TwoArgs {
    #[arg(long)]
    wx: f64,
    #[arg(long)]
    wz: f64,
    #[arg(long, value_enum, default_value_t = TwoMethod::Full)]
    method: TwoMethod,
    #[arg(long)]
    json: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum TwoMethod {
    Full,
    Weak,
}

#[derive(Args)]
struct WwzArgs {
    #[arg(long)]
    w: f64,
    #[arg(long)]
    wz: f64,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct FromStateArgs {
    /// State file (JSON).
    state: PathBuf,
    /// Shield operator file (JSON).
    #[arg(long)]
    witness: PathBuf,
    #[arg(long, value_enum, default_value_t = PatternArg::Corner)]
    key_pattern: PatternArg,
    #[arg(long)]
    json: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum PatternArg {
    Corner,
    Xx,
    Zz,
}

#[derive(Subcommand)]
enum SweepCommand {
    /// Columns w,central,weak1,weak2 over a w range.
    Fig1(RangeArgs),
    /// Columns wx,wz,full,weak over a (wx, wz) grid.
    Fig3(GridArgs),
    /// Columns w,wz,bound,physical over a (w, wz) grid.
    Fig4(GridArgs),
    /// Columns w,central,approx,diff over a w range.
    Fig5(Fig5Args),
}

#[derive(Args)]
struct RangeArgs {
    #[arg(long, default_value_t = 0.0)]
    min: f64,
    #[arg(long, default_value_t = 1.0)]
    max: f64,
    #[arg(long, default_value_t = 500)]
    steps: usize,
    /// Output CSV path.
    #[arg(long)]
    output: PathBuf,
}

#[derive(Args)]
struct Fig5Args {
    #[arg(long, default_value_t = 0.8)]
    min: f64,
    #[arg(long, default_value_t = 1.0)]
    max: f64,
    #[arg(long, default_value_t = 201)]
    steps: usize,
    #[arg(long)]
    output: PathBuf,
}

#[derive(Args)]
struct GridArgs {
    /// Steps per axis (the grid is steps x steps).
    #[arg(long, default_value_t = 100)]
    steps: usize,
    #[arg(long, default_value_t = 0.0)]
    min: f64,
    #[arg(long, default_value_t = 1.0)]
    max: f64,
    #[arg(long)]
    output: PathBuf,
}

#[derive(Args)]
struct DecomposeArgs {
    /// Operator file (JSON) to decompose.
    #[arg(long, conflicts_with = "builtin")]
    operator: Option<PathBuf>,
    /// Built-in operator: the d=2 p-bit swap witness.
    #[arg(long, value_parser = ["pbit-swap"])]
    builtin: Option<String>,
}

#[derive(Subcommand)]
enum OracleCommand {
    /// Devetak-Winter one-way rate of a state file.
    Dw(DwArgs),
    /// Log-negativity of a state file across a cut.
    Logneg(LognegArgs),
    /// Reproduce the threshold constants by root-finding.
    Constants,
}

#[derive(Args)]
struct DwArgs {
    #[arg(long)]
    state: PathBuf,
    /// Keep Bob's shield on his side of the Holevo difference.
    #[arg(long)]
    bob_keeps_shield: bool,
}

#[derive(Args)]
struct LognegArgs {
    #[arg(long)]
    state: PathBuf,
    /// First group of the bipartition, e.g. AA' (the complement is
    /// transposed).
    #[arg(long)]
    cut: String,
}

#[derive(Subcommand)]
enum GenCommand {
    /// The d (x) d shield p-bit state.
    Pbit(GenPbitArgs),
    /// The d (x) d swap operator as a shield-operator file.
    Swap(GenSwapArgs),
    /// The Bell-diagonal (Werner) state of given fidelity.
    Bell(GenBellArgs),
}

#[derive(Args)]
struct GenPbitArgs {
    #[arg(long, default_value_t = 2)]
    d: usize,
    #[arg(long)]
    output: PathBuf,
}

#[derive(Args)]
struct GenSwapArgs {
    #[arg(long, default_value_t = 2)]
    d: usize,
    #[arg(long)]
    output: PathBuf,
}

#[derive(Args)]
struct GenBellArgs {
    #[arg(long)]
    fidelity: f64,
    #[arg(long)]
    output: PathBuf,
}

#[derive(Serialize)]
struct JsonReport<'a> {
    method: &'a str,
    value: f64,
    certified: bool,
    argmin: Option<f64>,
    iterations: usize,
    residual: f64,
    note: Option<&'a str>,
    #[serde(skip_serializing_if = "Option::is_none")]
    readings: Option<Readings>,
}

#[derive(Serialize)]
struct Readings {
    #[serde(skip_serializing_if = "Option::is_none")]
    w: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    wx: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    wz: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    branch: Option<&'static str>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error[{}]: {}", f.kind(), f.message());
            ExitCode::from(f.exit_code())
        }
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    install_thread_pool()?;
    match cli.command {
        Command::Bound(cmd) => run_bound(cmd),
        Command::Sweep(cmd) => run_sweep(cmd),
        Command::Decompose(args) => run_decompose(args),
        Command::Oracle(cmd) => run_oracle(cmd),
        Command::Gen(cmd) => run_gen(cmd),
    }
}

/// KEYWITNESS_THREADS overrides the worker count for sweeps; the default
/// is the number of available cores. Output is deterministic either way.
fn install_thread_pool() -> Result<(), Failure> {
    if let Ok(raw) = std::env::var("KEYWITNESS_THREADS") {
        let n: usize = raw
            .parse()
            .map_err(|_| Failure::Domain(format!("KEYWITNESS_THREADS must be a positive integer, got {raw:?}")))?;
        if n == 0 {
            return Err(Failure::Domain(
                "KEYWITNESS_THREADS must be a positive integer".into(),
            ));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| Failure::Internal(format!("thread pool: {e}")))?;
    }
    Ok(())
}

fn print_report(report: &BoundReport, readings: Option<Readings>, json: bool) -> Result<(), Failure> {
    if json {
        let rep = JsonReport {
            method: report.method,
            value: report.value,
            certified: report.certified(),
            argmin: report.argmin,
            iterations: report.iterations,
            residual: report.residual,
            note: report.note.as_deref(),
            readings,
        };
        let text = serde_json::to_string_pretty(&rep)
            .map_err(|e| Failure::Internal(format!("json: {e}")))?;
        println!("{text}");
        return Ok(());
    }
    if let Some(r) = &readings {
        let mut parts = Vec::new();
        if let Some(w) = r.w {
            parts.push(format!("w = {}", g12(w)));
        }
        if let Some(wx) = r.wx {
            parts.push(format!("wx = {}", g12(wx)));
        }
        if let Some(wz) = r.wz {
            parts.push(format!("wz = {}", g12(wz)));
        }
        if let Some(branch) = r.branch {
            parts.push(format!("branch = {branch}"));
        }
        println!("readings: {}", parts.join(", "));
    }
    println!("method:    {}", report.method);
    println!("value:     {}", g12(report.value));
    println!("certified: {}", report.certified());
    if let Some(x) = report.argmin {
        println!("argmin:    {}", g12(x));
    }
    if report.iterations > 0 {
        println!("iterations: {}", report.iterations);
    }
    if report.residual != 0.0 {
        println!("residual:  {}", g12(report.residual));
    }
    if let Some(note) = &report.note {
        println!("note:      {note}");
    }
    Ok(())
}

fn run_bound(cmd: BoundCommand) -> Result<(), Failure> {
    match cmd {
        BoundCommand::Single(args) => {
            let report = match args.method {
                SingleMethod::Central => kd_single_central(args.w),
                SingleMethod::Weak1 => kd_single_weak1(args.w),
                SingleMethod::Weak2 => kd_single_weak2(args.w),
                SingleMethod::Approx => kd_single_approx(args.w),
            }?;
            print_report(&report, None, args.json)
        }
        BoundCommand::Two(args) => {
            let report = match args.method {
                TwoMethod::Full => kd_two_full(args.wx, args.wz),
                TwoMethod::Weak => kd_two_weak(args.wx, args.wz),
            }?;
            print_report(&report, None, args.json)
        }
        BoundCommand::Wwz(args) => {
            let report = kd_w_wz(args.w, args.wz)?;
            print_report(&report, None, args.json)
        }
        BoundCommand::FromState(args) => run_from_state(args),
    }
}

fn run_from_state(args: FromStateArgs) -> Result<(), Failure> {
    let state = io::load_state(&args.state)?;
    let block = BlockForm::from_state(&state)?;
    let (shield, _dims) = io::load_operator(&args.witness)?;
    let z = wz(&block);
    let branch = if z.raw >= 0.0 {
        "correlated"
    } else {
        "anticorrelated (folded)"
    };

    match args.key_pattern {
        PatternArg::Corner => {
            let spec = WitnessSpec::new(shield, KeyPattern::Corner)?;
            let reading = keywitness::witness::w(&spec, &block)?;
            let report = kd_single_central(reading)?;
            print_report(
                &report,
                Some(Readings {
                    w: Some(reading),
                    wx: None,
                    wz: None,
                    branch: Some(branch),
                }),
                args.json,
            )
        }
        PatternArg::Xx => {
            let spec = WitnessSpec::new(shield, KeyPattern::Xx)?;
            let wx_reading = keywitness::witness::wx(&spec, &block)?;
            let report = kd_two_full(wx_reading, z.value)?;
            print_report(
                &report,
                Some(Readings {
                    w: None,
                    wx: Some(wx_reading),
                    wz: Some(z.value),
                    branch: Some(branch),
                }),
                args.json,
            )
        }
        PatternArg::Zz => {
            // wz alone certifies nothing; report the reading and sector
            // weights.
            let report = BoundReport {
                value: f64::NAN,
                method: "zz-reading",
                argmin: None,
                iterations: 0,
                residual: 0.0,
                note: Some(format!(
                    "wz = {}, p+ = {}, p- = {}; combine with w or wx for a key bound",
                    g12(z.value),
                    g12(z.p_plus),
                    g12(z.p_minus)
                )),
            };
            print_report(
                &report,
                Some(Readings {
                    w: None,
                    wx: None,
                    wz: Some(z.value),
                    branch: Some(branch),
                }),
                args.json,
            )
        }
    }
}

fn run_sweep(cmd: SweepCommand) -> Result<(), Failure> {
    match cmd {
        SweepCommand::Fig1(a) => sweep::fig1(
            Axis {
                min: a.min,
                max: a.max,
                steps: a.steps,
            },
            &a.output,
        ),
        SweepCommand::Fig3(a) => {
            let axis = Axis {
                min: a.min,
                max: a.max,
                steps: a.steps,
            };
            sweep::fig3(axis, axis, &a.output)
        }
        SweepCommand::Fig4(a) => {
            let axis = Axis {
                min: a.min,
                max: a.max,
                steps: a.steps,
            };
            sweep::fig4(axis, axis, &a.output)
        }
        SweepCommand::Fig5(a) => sweep::fig5(
            Axis {
                min: a.min,
                max: a.max,
                steps: a.steps,
            },
            &a.output,
        ),
    }
}

fn run_decompose(args: DecomposeArgs) -> Result<(), Failure> {
    let op = match (&args.operator, &args.builtin) {
        (Some(path), None) => io::load_operator(path)?.0,
        (None, Some(_)) => {
            let spec = WitnessSpec::new(swap_operator(2), KeyPattern::Corner)?;
            witness_operator(&spec)?
        }
        _ => {
            return Err(Failure::Domain(
                "decompose needs exactly one of --operator FILE or --builtin pbit-swap".into(),
            ))
        }
    };
    let dec = pauli_decompose(&op)?;
    println!("qubits: {}", dec.n_qubits);
    println!("terms:  {}", dec.terms.len());
    for term in &dec.terms {
        println!("  {}  {}", term.label(), g12(term.coefficient));
    }
    let settings = count_settings(&dec)?;
    let tomography = count_settings_for_strings(dec.n_qubits, &full_tomography_strings(dec.n_qubits))?;
    println!("settings:   {settings}");
    println!("tomography: {tomography}");
    Ok(())
}

fn run_oracle(cmd: OracleCommand) -> Result<(), Failure> {
    match cmd {
        OracleCommand::Dw(args) => {
            let state = io::load_state(&args.state)?;
            let rate = dw_rate_with(
                &state,
                DwOptions {
                    bob_keeps_shield: args.bob_keeps_shield,
                },
            )?;
            println!("dw_rate: {}", g12(rate));
            Ok(())
        }
        OracleCommand::Logneg(args) => {
            let state = io::load_state(&args.state)?;
            let first = parse_cut(&args.cut, &state)?;
            let transposed: Vec<&str> = state
                .labels()
                .into_iter()
                .filter(|l| !first.iter().any(|f| f == l))
                .collect();
            if transposed.is_empty() || first.is_empty() {
                return Err(Failure::Domain(format!(
                    "cut {:?} must split the subsystems into two nonempty groups",
                    args.cut
                )));
            }
            let value = log_negativity(&state, &transposed)?;
            println!("log_negativity: {}", g12(value));
            Ok(())
        }
        OracleCommand::Constants => {
            let c = find_constants()?;
            println!("w_star:  {}  (residual {})", g12(c.w_star), g12(c.w_star_residual));
            println!("p_star:  {}  (residual {})", g12(c.p_star), g12(c.p_star_residual));
            println!("wz_min:  {}", g12(c.wz_min));
            Ok(())
        }
    }
}

/// Parse a compact cut specification such as `AA'` or `A,B` into labels.
fn parse_cut(cut: &str, state: &MultipartiteState) -> Result<Vec<String>, Failure> {
    let mut out = Vec::new();
    if cut.contains(',') {
        out.extend(cut.split(',').map(|s| s.trim().to_owned()));
    } else {
        let mut chars = cut.chars().peekable();
        while let Some(c) = chars.next() {
            let mut label = c.to_string();
            if chars.peek() == Some(&'\'') {
                label.push(chars.next().unwrap());
            }
            out.push(label);
        }
    }
    let labels = state.labels();
    for l in &out {
        if !labels.contains(&l.as_str()) {
            return Err(Failure::Domain(format!(
                "unknown subsystem {l:?} in cut {cut:?} (state has {labels:?})"
            )));
        }
    }
    Ok(out)
}

fn run_gen(cmd: GenCommand) -> Result<(), Failure> {
    match cmd {
        GenCommand::Pbit(args) => {
            let state = pbit_state(args.d)?.assemble()?;
            io::save_state(&args.output, &state)?;
            println!("wrote p-bit state (d = {}) to {}", args.d, args.output.display());
            Ok(())
        }
        GenCommand::Swap(args) => {
            if args.d < 2 {
                return Err(Failure::Domain(format!(
                    "swap operator needs d >= 2, got {}",
                    args.d
                )));
            }
            let v = swap_operator(args.d);
            io::save_operator(&args.output, &v, &[args.d, args.d])?;
            println!("wrote swap operator (d = {}) to {}", args.d, args.output.display());
            Ok(())
        }
        GenCommand::Bell(args) => {
            let f = args.fidelity;
            if !(0.0..=1.0).contains(&f) {
                return Err(Failure::Domain(format!(
                    "fidelity must lie in [0, 1], got {f}"
                )));
            }
            let tail = (1.0 - f) / 3.0;
            let state = BellDiagonal::new([f, tail, tail, tail])?.state()?;
            io::save_state(&args.output, &state)?;
            println!(
                "wrote Bell-diagonal state (F = {}) to {}",
                g12(f),
                args.output.display()
            );
            Ok(())
        }
    }
}
