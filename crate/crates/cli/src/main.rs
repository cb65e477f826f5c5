//! `darboux`: spectrum, densities, entropies and table regeneration for the
//! Darboux III oscillator.
//!
//! Exit codes: 0 success, 1 usage or invalid input, 2 numerical convergence
//! failure, 3 a check failed (golden-table deviation or uncertainty bound).

use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use darboux::entropy_momentum::{entropy_momentum, uncertainty_check, UncertaintyReport};
use darboux::entropy_position::{entropy_position_nd, EntropyReport};
use darboux::model::{energy, frequency};
use darboux::tables::{self, TableReport, TABLE_IDS};
use darboux::transform::{sample_density, Space, TransformSpec};
use darboux::{Error, ModelParams, QuadratureSpec, QuantumNumbers};
use serde::Serialize;

const TOL_ENV: &str = "DARBOUX_QUAD_TOL";

#[derive(Parser)]
#[command(name = "darboux", version, about = "Darboux III oscillator: spectrum, densities and information entropies")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Energies and frequencies for n = 0..=n-max.
    Spectrum {
        #[command(flatten)]
        model: ModelArgs,
        #[arg(long, default_value_t = 9)]
        n_max: usize,
        #[arg(long, default_value_t = 0)]
        l: usize,
        /// Round to 4 significant digits (CSV only).
        #[arg(long)]
        rounded: bool,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Sample a position or momentum density on a grid.
    Density {
        #[command(flatten)]
        model: ModelArgs,
        #[command(flatten)]
        state: StateArgs,
        #[arg(long, value_enum, default_value_t = SpaceArg::Position)]
        space: SpaceArg,
        /// min:max:count
        #[arg(long, value_parser = parse_grid)]
        grid: Grid,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Shannon entropy of one eigenstate.
    Entropy {
        #[command(flatten)]
        model: ModelArgs,
        #[command(flatten)]
        state: StateArgs,
        #[arg(long, value_enum, default_value_t = SpaceArg::Position)]
        space: SpaceArg,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Regenerate reference tables and diff them against the embedded values.
    Tables {
        /// Comma-separated table ids in 1..=8 (default: all).
        #[arg(long, value_delimiter = ',')]
        ids: Vec<u8>,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
        #[arg(long)]
        tol: Option<f64>,
        /// Directory for per-table files and the diff report.
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Position and momentum entropies against the bound N(1 + ln π).
    CheckUncertainty {
        #[command(flatten)]
        model: ModelArgs,
        #[command(flatten)]
        state: StateArgs,
        /// Check every n from --n up to this value.
        #[arg(long)]
        n_max: Option<usize>,
        #[command(flatten)]
        out: OutputArgs,
    },
}

#[derive(Args, Clone, Copy)]
struct ModelArgs {
    #[arg(long, default_value_t = 1)]
    dim: usize,
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    lambda: f64,
    #[arg(long, default_value_t = 1.0)]
    omega: f64,
    #[arg(long, default_value_t = 1.0)]
    hbar: f64,
}

#[derive(Args, Clone, Copy)]
struct StateArgs {
    #[arg(long, default_value_t = 0)]
    n: usize,
    #[arg(long, default_value_t = 0)]
    l: usize,
    #[arg(long, default_value_t = 0, allow_negative_numbers = true)]
    m: i64,
}

#[derive(Args, Clone)]
struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
    /// Relative quadrature tolerance.
    #[arg(long)]
    tol: Option<f64>,
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SpaceArg {
    Position,
    Momentum,
}

impl From<SpaceArg> for Space {
    fn from(s: SpaceArg) -> Self {
        match s {
            SpaceArg::Position => Space::Position,
            SpaceArg::Momentum => Space::Momentum,
        }
    }
}

#[derive(Clone, Debug)]
struct Grid {
    min: f64,
    max: f64,
    count: usize,
}

impl Grid {
    fn points(&self) -> Vec<f64> {
        if self.count == 1 {
            return vec![self.min];
        }
        let step = (self.max - self.min) / (self.count - 1) as f64;
        (0..self.count).map(|i| if i + 1 == self.count { self.max } else { self.min + step * i as f64 }).collect()
    }
}

fn parse_grid(s: &str) -> Result<Grid, String> {
    let parts: Vec<&str> = s.split(':').collect();
    if parts.len() != 3 {
        return Err(format!("expected min:max:count, got '{s}'"));
    }
    let num = |t: &str| t.trim().parse::<f64>().map_err(|e| format!("bad number '{t}': {e}"));
    let (min, max) = (num(parts[0])?, num(parts[1])?);
    let count: usize = parts[2].trim().parse().map_err(|e| format!("bad count '{}': {e}", parts[2]))?;
    if count == 0 {
        return Err("grid count must be at least 1".into());
    }
    if !min.is_finite() || !max.is_finite() || (count > 1 && !(max > min)) {
        return Err(format!("grid needs finite min < max, got {min}:{max}"));
    }
    Ok(Grid { min, max, count })
}

enum Failure {
    Usage(String),
    Numerical(Error),
    Check(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Numerical(e)
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Usage(format!("i/o error: {e}"))
    }
}

impl Failure {
    fn exit_code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 1,
            Failure::Numerical(Error::Convergence { .. }) => 2,
            Failure::Numerical(_) => 1,
            Failure::Check(_) => 3,
        }
    }

    fn message(&self) -> String {
        match self {
            Failure::Usage(m) | Failure::Check(m) => m.clone(),
            Failure::Numerical(e) => e.to_string(),
        }
    }
}

type CliResult<T> = std::result::Result<T, Failure>;

fn quad_spec(tol: Option<f64>) -> CliResult<QuadratureSpec> {
    let tol = match tol {
        Some(t) => Some(t),
        None => match std::env::var(TOL_ENV) {
            Ok(v) => Some(v.trim().parse::<f64>().map_err(|e| Failure::Usage(format!("{TOL_ENV}='{v}': {e}")))?),
            Err(_) => None,
        },
    };
    let spec = match tol {
        Some(t) => QuadratureSpec::default().with_tolerance(t, t * 1e-2),
        None => QuadratureSpec::default(),
    };
    spec.validate().map_err(|e| Failure::Usage(e.to_string()))?;
    Ok(spec)
}

fn transform_spec(tol: Option<f64>) -> CliResult<TransformSpec> {
    Ok(TransformSpec { quad: quad_spec(tol)?, ..TransformSpec::default() })
}

fn params(m: &ModelArgs) -> CliResult<ModelParams> {
    ModelParams::new(m.lambda, m.omega, m.hbar, m.dim).map_err(|e| Failure::Usage(e.to_string()))
}

fn quantum_numbers(dim: usize, s: &StateArgs) -> CliResult<QuantumNumbers> {
    let abs_m = s.m.unsigned_abs() as usize;
    let q = match dim {
        1 => {
            if s.l != 0 || s.m != 0 {
                return Err(Failure::Usage("--l and --m do not apply in one dimension".into()));
            }
            QuantumNumbers::one_dim(s.n)
        }
        2 => {
            if abs_m != s.l {
                return Err(Failure::Usage("in two dimensions |m| must equal l".into()));
            }
            QuantumNumbers::with_chain(s.n, vec![s.l])
        }
        3 => QuantumNumbers::three_dim(s.n, s.l, s.m),
        d => {
            let mut chain = vec![abs_m; d - 1];
            chain[0] = s.l;
            QuantumNumbers::with_chain(s.n, chain)
        }
    };
    q.validate(dim).map_err(|e| Failure::Usage(e.to_string()))?;
    Ok(q)
}

fn num(v: f64) -> String {
    format!("{v:?}")
}

fn rounded(v: f64) -> String {
    let r: f64 = format!("{v:.3e}").parse().unwrap_or(v);
    format!("{r}")
}

fn csv_text(header: &[&str], rows: &[Vec<String>]) -> CliResult<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let map = |e: csv::Error| Failure::Usage(format!("csv error: {e}"));
    w.write_record(header).map_err(map)?;
    for r in rows {
        w.write_record(r).map_err(map)?;
    }
    let bytes = w.into_inner().map_err(|e| Failure::Usage(format!("csv error: {e}")))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

fn json_text<T: Serialize>(value: &T) -> CliResult<String> {
    let mut s = serde_json::to_string_pretty(value).map_err(|e| Failure::Usage(format!("json error: {e}")))?;
    s.push('\n');
    Ok(s)
}

fn emit(text: &str, output: &Option<PathBuf>) -> CliResult<()> {
    match output {
        Some(path) => fs::write(path, text)?,
        None => io::stdout().lock().write_all(text.as_bytes())?,
    }
    Ok(())
}

#[derive(Serialize)]
struct SpectrumRow {
    lambda: f64,
    n: usize,
    l: usize,
    energy: f64,
    frequency: f64,
}

fn cmd_spectrum(model: &ModelArgs, n_max: usize, l: usize, round: bool, out: &OutputArgs) -> CliResult<()> {
    if n_max > 200 {
        return Err(Failure::Usage(format!("--n-max must be at most 200, got {n_max}")));
    }
    let p = params(model)?;
    let mut rows = Vec::new();
    for n in 0..=n_max {
        let q = quantum_numbers(p.dim, &StateArgs { n, l, m: 0 })?;
        rows.push(SpectrumRow { lambda: p.lambda, n, l, energy: energy(&p, &q)?, frequency: frequency(&p, &q)? });
    }
    let text = match out.format {
        Format::Json => json_text(&serde_json::json!({ "params": p, "rows": rows }))?,
        Format::Csv => {
            let fmt = if round { rounded } else { num };
            let body: Vec<Vec<String>> = rows
                .iter()
                .map(|r| vec![num(r.lambda), r.n.to_string(), r.l.to_string(), fmt(r.energy), fmt(r.frequency)])
                .collect();
            csv_text(&["lambda", "n", "l", "energy", "frequency"], &body)?
        }
    };
    emit(&text, &out.output)
}

fn cmd_density(model: &ModelArgs, state: &StateArgs, space: SpaceArg, grid: &Grid, out: &OutputArgs) -> CliResult<()> {
    let p = params(model)?;
    let q = quantum_numbers(p.dim, state)?;
    let curve = sample_density(&p, &q, space.into(), &grid.points(), &transform_spec(out.tol)?)?;
    let text = match out.format {
        Format::Json => json_text(&curve)?,
        Format::Csv => {
            let body: Vec<Vec<String>> =
                curve.abscissae.iter().zip(&curve.values).map(|(a, v)| vec![num(*a), num(*v)]).collect();
            csv_text(&["abscissa", "value"], &body)?
        }
    };
    emit(&text, &out.output)
}

#[derive(Serialize)]
struct EntropyOutput<'a> {
    params: ModelParams,
    state: &'a QuantumNumbers,
    space: Space,
    report: EntropyReport,
}

fn cmd_entropy(model: &ModelArgs, state: &StateArgs, space: SpaceArg, out: &OutputArgs) -> CliResult<()> {
    let p = params(model)?;
    let q = quantum_numbers(p.dim, state)?;
    let tspec = transform_spec(out.tol)?;
    let report = match space {
        SpaceArg::Position => entropy_position_nd(&p, &q, &tspec.quad)?,
        SpaceArg::Momentum => entropy_momentum(&p, &q, &tspec)?,
    };
    let text = match out.format {
        Format::Json => json_text(&EntropyOutput { params: p, state: &q, space: space.into(), report })?,
        Format::Csv => {
            let mut body = vec![vec!["entropy".to_string(), num(report.entropy)], vec!["err_est".to_string(), num(report.err_est)]];
            body.extend(report.breakdown.iter().map(|t| vec![t.name.clone(), num(t.value)]));
            csv_text(&["quantity", "value"], &body)?
        }
    };
    emit(&text, &out.output)
}

#[derive(Serialize)]
struct UncertaintyRow {
    n: usize,
    l: usize,
    m: i64,
    #[serde(flatten)]
    report: UncertaintyReport,
}

fn cmd_check_uncertainty(model: &ModelArgs, state: &StateArgs, n_max: Option<usize>, out: &OutputArgs) -> CliResult<()> {
    let p = params(model)?;
    let tspec = transform_spec(out.tol)?;
    let last = n_max.unwrap_or(state.n);
    if last < state.n {
        return Err(Failure::Usage(format!("--n-max ({last}) is below --n ({})", state.n)));
    }
    let mut rows = Vec::new();
    for n in state.n..=last {
        let q = quantum_numbers(p.dim, &StateArgs { n, ..*state })?;
        rows.push(UncertaintyRow { n, l: state.l, m: state.m, report: uncertainty_check(&p, &q, &tspec)? });
    }
    let text = match out.format {
        Format::Json => json_text(&serde_json::json!({ "params": p, "rows": rows }))?,
        Format::Csv => {
            let body: Vec<Vec<String>> = rows
                .iter()
                .map(|r| {
                    let u = &r.report;
                    vec![
                        r.n.to_string(),
                        r.l.to_string(),
                        r.m.to_string(),
                        num(u.s_rho),
                        num(u.s_gamma),
                        num(u.total),
                        num(u.bbm_bound),
                        num(u.margin),
                        num(u.err_est),
                        u.saturated.to_string(),
                    ]
                })
                .collect();
            csv_text(
                &["n", "l", "m", "s_rho", "s_gamma", "total", "bbm_bound", "margin", "err_est", "saturated"],
                &body,
            )?
        }
    };
    emit(&text, &out.output)?;
    let violations: Vec<String> = rows.iter().filter(|r| !r.report.holds()).map(|r| format!("n={}", r.n)).collect();
    if violations.is_empty() {
        Ok(())
    } else {
        Err(Failure::Check(format!("uncertainty bound violated for {}", violations.join(", "))))
    }
}

fn cmd_tables(ids: &[u8], format: Format, tol: Option<f64>, output: &Option<PathBuf>) -> CliResult<()> {
    let ids: Vec<u8> = if ids.is_empty() { TABLE_IDS.to_vec() } else { ids.to_vec() };
    if let Some(bad) = ids.iter().find(|id| !TABLE_IDS.contains(id)) {
        return Err(Failure::Usage(format!("table id must be in 1..=8, got {bad}")));
    }
    let tspec = transform_spec(tol)?;
    let reports: Vec<TableReport> = ids.iter().map(|&id| tables::regenerate(id, &tspec)).collect::<Result<_, _>>()?;
    let diff: String = reports.iter().map(TableReport::diff_report).collect();
    let render = |r: &TableReport| -> CliResult<String> {
        match format {
            Format::Csv => Ok(r.to_csv()),
            Format::Json => json_text(r),
        }
    };
    match output {
        Some(dir) => {
            fs::create_dir_all(dir)?;
            let ext = if format == Format::Json { "json" } else { "csv" };
            for r in &reports {
                fs::write(dir.join(format!("table{}.{ext}", r.id)), render(r)?)?;
            }
            fs::write(dir.join("diff_report.txt"), &diff)?;
        }
        None => {
            let body = match format {
                Format::Csv => reports.iter().map(TableReport::to_csv).collect::<String>(),
                Format::Json => json_text(&reports)?,
            };
            emit(&body, &None)?;
        }
    }
    eprint!("{diff}");
    let failed: Vec<String> = reports.iter().filter(|r| !r.passed()).map(|r| r.id.to_string()).collect();
    if failed.is_empty() {
        Ok(())
    } else {
        Err(Failure::Check(format!("golden deviation beyond tolerance in table(s) {}", failed.join(", "))))
    }
}

fn run(cli: Cli) -> CliResult<()> {
    match &cli.command {
        Command::Spectrum { model, n_max, l, rounded, out } => cmd_spectrum(model, *n_max, *l, *rounded, out),
        Command::Density { model, state, space, grid, out } => cmd_density(model, state, *space, grid, out),
        Command::Entropy { model, state, space, out } => cmd_entropy(model, state, *space, out),
        Command::Tables { ids, format, tol, output } => cmd_tables(ids, *format, *tol, output),
        Command::CheckUncertainty { model, state, n_max, out } => cmd_check_uncertainty(model, state, *n_max, out),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message());
            ExitCode::from(f.exit_code())
        }
    }
}
