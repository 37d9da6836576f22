//! Command-line front end for `sqwell-core`.
//!
//! Every flag can also be set through an environment variable named
//! `SQWELL_<FLAG>` (e.g. `SQWELL_V0`, `SQWELL_PMAX`). Exit codes:
//! 0 success, 1 usage error, 2 verification failure, 3 numerical failure.

use std::ffi::OsString;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;

use sqwell_core::verify::{run_all, VerifyConfig};
use sqwell_core::{
    fourier_oracle, intensity, momentum_moment, p2_expectation, p4_expectation, solve_all, BoundState, Error,
    MomentRequest, Parity, SpectrumRequest, UnitSystem, WellSpec,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_VERIFY: i32 = 2;
pub const EXIT_NUMERIC: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "sqwell", version, about = "Finite square well in position and momentum space")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Bound-state table: n, parity, β, E, α, d, A.
    Spectrum(CommonArgs),
    /// Plot-ready data behind one of the six figures.
    Figure(FigureArgs),
    /// Run every verification check; exit 2 if any fails.
    Verify(CommonArgs),
    /// ⟨p^s⟩ in closed form and by momentum-space quadrature.
    Moments(MomentsArgs),
}

#[derive(Debug, Clone, Args)]
pub struct CommonArgs {
    /// Well depth V0.
    #[arg(long, env = "SQWELL_V0", allow_negative_numbers = true, default_value_t = 10.0)]
    pub v0: f64,
    /// Well width a.
    #[arg(long, env = "SQWELL_A", allow_negative_numbers = true, default_value_t = 2.0)]
    pub a: f64,
    /// Particle mass (0.5 gives 2m = 1).
    #[arg(long, env = "SQWELL_MASS", allow_negative_numbers = true, default_value_t = 0.5)]
    pub mass: f64,
    #[arg(long, env = "SQWELL_HBAR", allow_negative_numbers = true, default_value_t = 1.0)]
    pub hbar: f64,
    /// Restrict output to one state (0-based).
    #[arg(long, env = "SQWELL_STATE")]
    pub state: Option<usize>,
    /// Momentum cutoff P of the truncated moments.
    #[arg(long, env = "SQWELL_PMAX", allow_negative_numbers = true, default_value_t = 100.0)]
    pub pmax: f64,
    /// Grid points of the momentum figures.
    #[arg(long, env = "SQWELL_SAMPLES", default_value_t = 2001)]
    pub samples: usize,
    /// Absolute quadrature tolerance.
    #[arg(long, env = "SQWELL_TOL", allow_negative_numbers = true, default_value_t = 1e-9)]
    pub tol: f64,
    #[arg(long, env = "SQWELL_FORMAT", value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// Write to this file instead of stdout.
    #[arg(long, env = "SQWELL_OUTPUT")]
    pub output: Option<std::path::PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct FigureArgs {
    #[arg(long, value_enum)]
    pub which: Figure,
    /// Half-range of the p grid for fig1 to fig4.
    #[arg(long, env = "SQWELL_PRANGE", allow_negative_numbers = true, default_value_t = 30.0)]
    pub prange: f64,
    /// Smallest V0 of the fig5/fig6 sweep.
    #[arg(long, env = "SQWELL_SWEEP_MIN", allow_negative_numbers = true, default_value_t = 2.0)]
    pub sweep_min: f64,
    #[arg(long, env = "SQWELL_SWEEP_MAX", allow_negative_numbers = true, default_value_t = 50.0)]
    pub sweep_max: f64,
    /// Log-spaced V0 points of the sweep.
    #[arg(long, env = "SQWELL_SWEEP_POINTS", default_value_t = 40)]
    pub sweep_points: usize,
    #[command(flatten)]
    pub common: CommonArgs,
}

#[derive(Debug, Clone, Args)]
pub struct MomentsArgs {
    /// Moment order.
    #[arg(long = "s", value_parser = ["2", "4"])]
    pub s: String,
    #[command(flatten)]
    pub common: CommonArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Figure {
    Fig1,
    Fig2,
    Fig3,
    Fig4,
    Fig5,
    Fig6,
}

/// Result of one invocation: exit code, payload and diagnostics.
#[derive(Debug)]
pub struct Outcome {
    pub code: i32,
    pub stdout: Vec<u8>,
    pub stderr: String,
    /// Where the payload should go; stdout when `None`.
    pub output: Option<std::path::PathBuf>,
}

impl Outcome {
    fn fail(code: i32, msg: impl Into<String>) -> Self {
        Self {
            code,
            stdout: Vec::new(),
            stderr: msg.into(),
            output: None,
        }
    }
}

#[derive(Debug)]
enum CliError {
    Usage(String),
    Numeric(String),
    Io(String),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::Domain(_) => CliError::Usage(e.to_string()),
            _ => CliError::Numeric(e.to_string()),
        }
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        CliError::Io(e.to_string())
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Io(e.to_string())
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

#[derive(Debug, Serialize)]
struct SpectrumRow {
    n: usize,
    parity: Parity,
    beta: f64,
    energy: f64,
    alpha: f64,
    d: f64,
    norm: f64,
}

#[derive(Debug, Serialize)]
struct IntensityRow {
    p: f64,
    #[serde(rename = "I_analytic")]
    i_analytic: f64,
    #[serde(rename = "I_oracle")]
    i_oracle: f64,
}

#[derive(Debug, Serialize)]
struct WeightedRow {
    p: f64,
    #[serde(rename = "p4I")]
    p4i: f64,
}

#[derive(Debug, Serialize)]
struct SweepRow {
    v0: f64,
    state: usize,
    moment_position_space: f64,
    moment_momentum_space: f64,
}

#[derive(Debug, Serialize)]
struct MomentRow {
    state: usize,
    s: u32,
    position_space: f64,
    momentum_space: f64,
    quadrature: f64,
    tail_estimate: f64,
    abs_error_estimate: f64,
    relative_difference: f64,
}

#[derive(Debug, Serialize)]
struct CheckRow<'a> {
    name: &'a str,
    state: Option<usize>,
    value: f64,
    tolerance: f64,
    passed: bool,
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            return if code == EXIT_OK {
                Outcome {
                    code,
                    stdout: text.into_bytes(),
                    stderr: String::new(),
                    output: None,
                }
            } else {
                Outcome::fail(code, text)
            };
        }
    };
    match execute(&cli.command) {
        Ok(outcome) => Outcome {
            output: common(&cli.command).output.clone(),
            ..outcome
        },
        Err(CliError::Usage(m)) => Outcome::fail(EXIT_USAGE, format!("error: {m}\n")),
        Err(CliError::Numeric(m)) => Outcome::fail(EXIT_NUMERIC, format!("error: {m}\n")),
        Err(CliError::Io(m)) => Outcome::fail(EXIT_USAGE, format!("error: {m}\n")),
    }
}

/// The shared flags of any command.
pub fn common(command: &Command) -> &CommonArgs {
    match command {
        Command::Spectrum(c) | Command::Verify(c) => c,
        Command::Figure(f) => &f.common,
        Command::Moments(m) => &m.common,
    }
}

fn execute(command: &Command) -> CliResult<Outcome> {
    let args = common(command);
    let well = validate(args)?;
    let ok = |stdout| Outcome {
        code: EXIT_OK,
        stdout,
        stderr: String::new(),
        output: None,
    };
    match command {
        Command::Spectrum(_) => {
            let rows: Vec<SpectrumRow> = select(args, solve_all(&SpectrumRequest::new(well))?)?
                .iter()
                .map(|s| SpectrumRow {
                    n: s.n,
                    parity: s.parity,
                    beta: s.beta,
                    energy: s.energy,
                    alpha: s.alpha,
                    d: s.d,
                    norm: s.norm,
                })
                .collect();
            Ok(ok(emit(&rows, args.format)?))
        }
        Command::Figure(f) => Ok(ok(figure(f, well)?)),
        Command::Moments(m) => {
            let order: u32 = m.s.parse().map_err(|_| CliError::Usage(format!("bad order {}", m.s)))?;
            let states = select(args, solve_all(&SpectrumRequest::new(well))?)?;
            let rows = states
                .iter()
                .map(|s| moment_row(s, order, args))
                .collect::<CliResult<Vec<_>>>()?;
            Ok(ok(emit(&rows, args.format)?))
        }
        Command::Verify(_) => {
            let config = VerifyConfig {
                p_max: args.pmax,
                ..VerifyConfig::default()
            };
            let report = run_all(well, &config)?;
            let stdout = match args.format {
                Format::Json => to_json(&report)?,
                Format::Csv => {
                    let rows: Vec<CheckRow> = report
                        .checks
                        .iter()
                        .map(|c| CheckRow {
                            name: &c.name,
                            state: c.state,
                            value: c.value,
                            tolerance: c.tolerance,
                            passed: c.passed,
                        })
                        .collect();
                    emit(&rows, Format::Csv)?
                }
            };
            let mut stderr = String::new();
            for c in report.failures() {
                let state = c.state.map_or("-".to_string(), |n| n.to_string());
                stderr += &format!("FAILED {} state {}: |{:e}| > {:e}\n", c.name, state, c.value, c.tolerance);
            }
            let code = if report.all_passed() { EXIT_OK } else { EXIT_VERIFY };
            Ok(Outcome {
                code,
                stdout,
                stderr,
                output: None,
            })
        }
    }
}

fn validate(args: &CommonArgs) -> CliResult<WellSpec> {
    if args.samples < 3 {
        return Err(CliError::Usage(format!("samples must be at least 3, got {}", args.samples)));
    }
    if !(args.pmax.is_finite() && args.pmax > 0.0) {
        return Err(CliError::Usage(format!("pmax must be positive, got {}", args.pmax)));
    }
    if !(args.tol.is_finite() && args.tol > 0.0) {
        return Err(CliError::Usage(format!("tol must be positive, got {}", args.tol)));
    }
    Ok(WellSpec::new(args.v0, args.a, UnitSystem::new(args.mass, args.hbar)?)?)
}

fn select(args: &CommonArgs, states: Vec<BoundState>) -> CliResult<Vec<BoundState>> {
    match args.state {
        None => Ok(states),
        Some(n) if n < states.len() => Ok(vec![states[n]]),
        Some(n) => Err(CliError::Usage(format!("well supports {} bound states, state {n} requested", states.len()))),
    }
}

fn moment_row(s: &BoundState, order: u32, args: &CommonArgs) -> CliResult<MomentRow> {
    let position = if order == 2 { p2_expectation(s) } else { p4_expectation(s) };
    let m = momentum_moment(&MomentRequest::new(s, order).p_max(args.pmax).tol(args.tol))?;
    let q = m.quadrature;
    if !q.converged {
        return Err(CliError::Numeric(format!(
            "<p^{order}> of state {} did not converge: error estimate {:e} after {} panels",
            s.n, q.abs_error_estimate, q.panels
        )));
    }
    Ok(MomentRow {
        state: s.n,
        s: order,
        position_space: position,
        momentum_space: m.total(),
        quadrature: m.quadrature.value,
        tail_estimate: m.tail_estimate,
        abs_error_estimate: m.quadrature.abs_error_estimate,
        relative_difference: m.total() / position - 1.0,
    })
}

fn figure(f: &FigureArgs, well: WellSpec) -> CliResult<Vec<u8>> {
    let args = &f.common;
    match f.which {
        Figure::Fig1 | Figure::Fig2 | Figure::Fig3 | Figure::Fig4 => {
            if !(f.prange.is_finite() && f.prange > 0.0) {
                return Err(CliError::Usage(format!("prange must be positive, got {}", f.prange)));
            }
            let n = if matches!(f.which, Figure::Fig1 | Figure::Fig3) { 0 } else { 1 };
            let states = solve_all(&SpectrumRequest::new(well))?;
            let state = *states
                .get(n)
                .ok_or_else(|| CliError::Usage(format!("well supports {} bound states, state {n} needed", states.len())))?;
            let grid = symmetric_grid(f.prange * well.hbar(), args.samples);
            if matches!(f.which, Figure::Fig1 | Figure::Fig2) {
                let rows = grid
                    .par_iter()
                    .map(|&p| {
                        Ok(IntensityRow {
                            p,
                            i_analytic: intensity(&state, p),
                            i_oracle: fourier_oracle(&state, p, args.tol)?.norm_sqr(),
                        })
                    })
                    .collect::<CliResult<Vec<_>>>()?;
                emit(&rows, args.format)
            } else {
                let rows: Vec<WeightedRow> = grid
                    .par_iter()
                    .map(|&p| WeightedRow {
                        p,
                        p4i: p.powi(4) * intensity(&state, p),
                    })
                    .collect();
                emit(&rows, args.format)
            }
        }
        Figure::Fig5 | Figure::Fig6 => {
            let order = if f.which == Figure::Fig5 { 2 } else { 4 };
            let v0s = sweep(f)?;
            let units = UnitSystem::new(args.mass, args.hbar)?;
            let rows = v0s
                .par_iter()
                .map(|&v0| {
                    let states = solve_all(&SpectrumRequest::new(WellSpec::new(v0, args.a, units)?))?;
                    states
                        .iter()
                        .take(2)
                        .map(|s| {
                            let r = moment_row(s, order, args)?;
                            Ok(SweepRow {
                                v0,
                                state: s.n,
                                moment_position_space: r.position_space,
                                moment_momentum_space: r.momentum_space,
                            })
                        })
                        .collect::<CliResult<Vec<_>>>()
                })
                .collect::<CliResult<Vec<_>>>()?;
            let rows: Vec<SweepRow> = rows.into_iter().flatten().collect();
            emit(&rows, args.format)
        }
    }
}

/// `samples` points evenly spaced over `[−half, half]`, exactly symmetric.
pub fn symmetric_grid(half: f64, samples: usize) -> Vec<f64> {
    let last = (samples - 1) as f64;
    (0..samples)
        .map(|i| {
            let i = i as f64;
            let t = (2.0 * i - last) / last;
            half * t
        })
        .collect()
}

fn sweep(f: &FigureArgs) -> CliResult<Vec<f64>> {
    let (lo, hi, n) = (f.sweep_min, f.sweep_max, f.sweep_points);
    if !(lo > 0.0 && hi >= lo && hi.is_finite()) || n == 0 {
        return Err(CliError::Usage(format!("bad sweep [{lo}, {hi}] with {n} points")));
    }
    if n == 1 {
        return Ok(vec![lo]);
    }
    let ratio = (hi / lo).ln();
    Ok((0..n)
        .map(|i| {
            if i == n - 1 {
                hi
            } else {
                lo * (ratio * i as f64 / (n - 1) as f64).exp()
            }
        })
        .collect())
}

fn emit<T: Serialize>(rows: &[T], format: Format) -> CliResult<Vec<u8>> {
    match format {
        Format::Json => to_json(&rows),
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            for r in rows {
                w.serialize(r)?;
            }
            w.into_inner().map_err(|e| CliError::Io(e.to_string()))
        }
    }
}

fn to_json<T: Serialize + ?Sized>(value: &T) -> CliResult<Vec<u8>> {
    let mut out = serde_json::to_vec_pretty(value)?;
    out.push(b'\n');
    Ok(out)
}
