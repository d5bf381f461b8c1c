//! Parameter sweeps over the channel error probability and the
//! closed-form verification report behind the `qecsim` binary.

use std::fmt;
use std::io::{self, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use qecsim::metrics::{bmax, concurrence};
use qecsim::protocols::{dense_coding_with, teleportation_with};
use qecsim::qec::{resource_state, QecScheme};
use qecsim::{BellIndex, Case, Probability};
use serde::Serialize;

pub const EXIT_OK: u8 = 0;
pub const EXIT_VERIFY_FAILED: u8 = 1;
pub const EXIT_USAGE: u8 = 2;
pub const EXIT_IO: u8 = 3;

pub const DEFAULT_STEPS: usize = 101;
pub const DEFAULT_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Parser)]
#[command(name = "qecsim", version, about = "Noisy Bell pairs with and without three-qubit error correction")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Tabulate simulated values next to their closed forms.
    Sweep(SweepArgs),
    /// Compare every quantity against its closed form on the full grid.
    Verify(VerifyArgs),
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[arg(long, value_enum, default_value_t = CaseSel::Both)]
    pub case: CaseSel,
    #[arg(long, value_enum, default_value_t = QuantitySel::All)]
    pub quantity: QuantitySel,
    #[arg(long, default_value_t = 0.0)]
    pub p_min: f64,
    #[arg(long, default_value_t = 1.0)]
    pub p_max: f64,
    #[arg(long, default_value_t = DEFAULT_STEPS)]
    pub steps: usize,
    #[arg(long, value_enum, default_value_t = QecSel::Both)]
    pub qec: QecSel,
    #[arg(long, visible_alias = "format", value_enum, default_value_t = OutputFormat::Csv)]
    pub output_format: OutputFormat,
    /// Defaults to standard output.
    #[arg(long)]
    pub output_path: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long, default_value_t = DEFAULT_TOLERANCE)]
    pub tolerance: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CaseSel {
    #[value(name = "I")]
    I,
    #[value(name = "II")]
    II,
    Both,
}

impl CaseSel {
    fn cases(self) -> Vec<Case> {
        match self {
            CaseSel::I => vec![Case::I],
            CaseSel::II => vec![Case::II],
            CaseSel::Both => Case::ALL.to_vec(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum QuantitySel {
    Concurrence,
    Bmax,
    #[value(name = "mutual_info", alias = "mutual-info")]
    MutualInfo,
    Fidelity,
    All,
}

impl QuantitySel {
    fn quantities(self) -> Vec<Quantity> {
        match self {
            QuantitySel::Concurrence => vec![Quantity::Concurrence],
            QuantitySel::Bmax => vec![Quantity::Bmax],
            QuantitySel::MutualInfo => vec![Quantity::MutualInfo],
            QuantitySel::Fidelity => vec![Quantity::Fidelity],
            QuantitySel::All => Quantity::ALL.to_vec(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum QecSel {
    On,
    Off,
    Both,
}

impl QecSel {
    fn flags(self) -> Vec<bool> {
        match self {
            QecSel::On => vec![true],
            QecSel::Off => vec![false],
            QecSel::Both => vec![false, true],
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Quantity {
    Concurrence,
    Bmax,
    MutualInfo,
    Fidelity,
}

impl Quantity {
    pub const ALL: [Quantity; 4] = [Quantity::Concurrence, Quantity::Bmax, Quantity::MutualInfo, Quantity::Fidelity];

    pub fn name(self) -> &'static str {
        match self {
            Quantity::Concurrence => "concurrence",
            Quantity::Bmax => "bmax",
            Quantity::MutualInfo => "mutual_info",
            Quantity::Fidelity => "fidelity",
        }
    }
}

impl fmt::Display for Quantity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Io(io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Io(_) => EXIT_IO,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(msg) => write!(f, "usage error: {msg}"),
            CliError::Io(e) => write!(f, "I/O error: {e}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::Io(e)
    }
}

/// A validated sweep request.
#[derive(Debug, Clone)]
pub struct SweepConfig {
    pub cases: Vec<Case>,
    pub quantities: Vec<Quantity>,
    pub grid: Vec<Probability>,
    pub qec: Vec<bool>,
    pub output_format: OutputFormat,
    pub output_path: Option<PathBuf>,
}

impl SweepConfig {
    pub fn from_args(args: &SweepArgs) -> Result<Self, CliError> {
        let usage = |e: qecsim::Error| CliError::Usage(e.to_string());
        let p_min = Probability::new(args.p_min).map_err(usage)?;
        let p_max = Probability::new(args.p_max).map_err(usage)?;
        let grid = Probability::linspace(p_min, p_max, args.steps).map_err(usage)?;
        Ok(Self {
            cases: args.case.cases(),
            quantities: args.quantity.quantities(),
            grid,
            qec: args.qec.flags(),
            output_format: args.output_format,
            output_path: args.output_path.clone(),
        })
    }

    /// Every case, quantity and QEC setting on the default grid.
    pub fn full() -> Self {
        Self {
            cases: Case::ALL.to_vec(),
            quantities: Quantity::ALL.to_vec(),
            grid: Probability::grid(DEFAULT_STEPS).expect("default grid"),
            qec: vec![false, true],
            output_format: OutputFormat::Csv,
            output_path: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Row {
    pub p: f64,
    pub case: String,
    pub qec: &'static str,
    pub quantity: &'static str,
    pub simulated: f64,
    pub closed_form: f64,
    pub abs_error: f64,
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct SweepResult {
    pub rows: Vec<Row>,
}

fn binary_entropy(x: f64) -> f64 {
    if x <= 0.0 || x >= 1.0 {
        0.0
    } else {
        -x * x.log2() - (1.0 - x) * (1.0 - x).log2()
    }
}

fn logical_flip(p: f64) -> f64 {
    p * p * (3.0 - 2.0 * p)
}

/// Analytic value of `quantity` for the given scenario.
pub fn closed_form(case: Case, qec: bool, quantity: Quantity, p: f64) -> f64 {
    let sqrt2 = std::f64::consts::SQRT_2;
    if qec {
        let f = 1.0 - 6.0 * p * p + 4.0 * p * p * p;
        let pl = logical_flip(p);
        return match quantity {
            Quantity::Concurrence => f * f,
            Quantity::Bmax => 2.0 * (1.0 + f.powi(4)).sqrt(),
            Quantity::MutualInfo => 2.0 - binary_entropy(2.0 * pl * (1.0 - pl)),
            Quantity::Fidelity => {
                1.0 - 4.0 / 3.0 * p * p * (1.0 - p) * (1.0 - p) * (3.0 - 2.0 * p) * (1.0 + 2.0 * p)
            }
        };
    }
    match (case, quantity) {
        (Case::I, Quantity::Concurrence) => (1.0 - 2.0 * p).powi(2),
        (Case::I, Quantity::Bmax) => 2.0 * (1.0 + (1.0 - 2.0 * p).powi(4)).sqrt(),
        (Case::I, Quantity::MutualInfo) => 2.0 - binary_entropy(2.0 * p * (1.0 - p)),
        (Case::I, Quantity::Fidelity) => 1.0 - 4.0 / 3.0 * p * (1.0 - p),
        (Case::II, Quantity::Concurrence) => {
            let p0 = 1.0 - 1.0 / sqrt2;
            if p <= p0 {
                2.0 * p * p - 4.0 * p + 1.0
            } else if p >= 1.0 - p0 {
                2.0 * p * p - 1.0
            } else {
                0.0
            }
        }
        (Case::II, Quantity::Bmax) => 2.0 * sqrt2 * (1.0 - 2.0 * p).abs(),
        (Case::II, Quantity::MutualInfo) => 2.0 * (1.0 - binary_entropy(p)),
        (Case::II, Quantity::Fidelity) => 1.0 - 2.0 / 3.0 * p * (2.0 - p),
    }
}

/// Simulation back end; the correction scheme is swappable so that
/// defective codes can be run through the same report.
#[derive(Debug, Clone)]
pub struct Model {
    scheme: QecScheme,
}

impl Default for Model {
    fn default() -> Self {
        Self::standard()
    }
}

impl Model {
    pub fn standard() -> Self {
        Self { scheme: QecScheme::standard() }
    }

    pub fn with_scheme(scheme: QecScheme) -> Self {
        Self { scheme }
    }

    fn scheme(&self, qec: bool) -> Option<&QecScheme> {
        qec.then_some(&self.scheme)
    }

    /// Simulated values of `quantities`, in the same order.
    pub fn simulate(&self, case: Case, qec: bool, p: Probability, quantities: &[Quantity]) -> Vec<f64> {
        let scheme = self.scheme(qec);
        let needs_pair = quantities.iter().any(|q| matches!(q, Quantity::Concurrence | Quantity::Bmax));
        let pair = needs_pair.then(|| resource_state(case, p, BellIndex::ALL[0], scheme));
        quantities
            .iter()
            .map(|q| match q {
                Quantity::Concurrence => concurrence(pair.as_ref().expect("pair built")).expect("two-qubit state"),
                Quantity::Bmax => bmax(pair.as_ref().expect("pair built")).expect("two-qubit state"),
                Quantity::MutualInfo => dense_coding_with(case, p, scheme).mutual_information,
                Quantity::Fidelity => teleportation_with(case, p, scheme).avg_fidelity,
            })
            .collect()
    }

    /// Rows ordered by p, then case, QEC flag (off first) and quantity.
    pub fn run_sweep(&self, config: &SweepConfig) -> SweepResult {
        let mut cases = config.cases.clone();
        cases.sort();
        cases.dedup();
        let mut quantities = config.quantities.clone();
        quantities.sort();
        quantities.dedup();
        let mut flags = config.qec.clone();
        flags.sort();
        flags.dedup();

        let mut rows = Vec::new();
        for &p in &config.grid {
            for &case in &cases {
                for &qec in &flags {
                    let values = self.simulate(case, qec, p, &quantities);
                    for (&quantity, simulated) in quantities.iter().zip(values) {
                        let closed = closed_form(case, qec, quantity, p.value());
                        rows.push(Row {
                            p: p.value(),
                            case: case.to_string(),
                            qec: if qec { "on" } else { "off" },
                            quantity: quantity.name(),
                            simulated,
                            closed_form: closed,
                            abs_error: (simulated - closed).abs(),
                        });
                    }
                }
            }
        }
        SweepResult { rows }
    }
}

pub fn run_sweep(config: &SweepConfig) -> SweepResult {
    Model::standard().run_sweep(config)
}

/// Decimal with 15 significant digits; scientific below 1e-5.
pub fn format_number(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let exponent = x.abs().log10().floor() as i32;
    if exponent < -5 {
        return format!("{x:.14e}");
    }
    let decimals = (14 - exponent).max(0) as usize;
    format!("{x:.decimals$}")
}

pub const CSV_HEADER: &str = "p,case,qec,quantity,simulated,closed_form,abs_error";

pub fn write_csv<W: Write>(result: &SweepResult, mut out: W) -> io::Result<()> {
    writeln!(out, "{CSV_HEADER}")?;
    for r in &result.rows {
        writeln!(
            out,
            "{},{},{},{},{},{},{}",
            format_number(r.p),
            r.case,
            r.qec,
            r.quantity,
            format_number(r.simulated),
            format_number(r.closed_form),
            format_number(r.abs_error)
        )?;
    }
    out.flush()
}

pub fn write_json<W: Write>(result: &SweepResult, mut out: W) -> io::Result<()> {
    serde_json::to_writer_pretty(&mut out, &result.rows)?;
    writeln!(out)?;
    out.flush()
}

pub fn write_result<W: Write>(result: &SweepResult, format: OutputFormat, out: W) -> io::Result<()> {
    match format {
        OutputFormat::Csv => write_csv(result, out),
        OutputFormat::Json => write_json(result, out),
    }
}

/// Sweep and write to the configured destination.
pub fn sweep(model: &Model, config: &SweepConfig) -> Result<SweepResult, CliError> {
    let result = model.run_sweep(config);
    match &config.output_path {
        None => write_result(&result, config.output_format, io::stdout().lock())?,
        Some(path) => {
            let file = std::fs::File::create(path)?;
            write_result(&result, config.output_format, io::BufWriter::new(file))?;
        }
    }
    Ok(result)
}

#[derive(Debug, Clone, PartialEq)]
pub struct VerifyReport {
    pub tolerance: f64,
    /// Largest deviation per quantity with the row where it occurs.
    pub worst: Vec<(Quantity, Row)>,
    pub offending: Vec<Row>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.offending.is_empty()
    }

    pub fn exit_code(&self) -> u8 {
        if self.passed() {
            EXIT_OK
        } else {
            EXIT_VERIFY_FAILED
        }
    }

    pub fn write<W: Write>(&self, mut out: W) -> io::Result<()> {
        writeln!(out, "{:<12} {:>12}  {:>8} {:>4} {:>4}", "quantity", "max_error", "p", "case", "qec")?;
        for (q, row) in &self.worst {
            writeln!(
                out,
                "{:<12} {:>12.3e}  {:>8.4} {:>4} {:>4}",
                q.name(),
                row.abs_error,
                row.p,
                row.case,
                row.qec
            )?;
        }
        if self.passed() {
            writeln!(out, "PASS: all deviations <= {:e}", self.tolerance)?;
        } else {
            writeln!(out, "FAIL: {} row(s) exceed {:e}", self.offending.len(), self.tolerance)?;
            for r in &self.offending {
                writeln!(
                    out,
                    "  case={} qec={} quantity={} p={} error={:.3e}",
                    r.case,
                    r.qec,
                    r.quantity,
                    format_number(r.p),
                    r.abs_error
                )?;
            }
        }
        out.flush()
    }
}

pub fn verify(model: &Model, tolerance: f64) -> Result<VerifyReport, CliError> {
    if !(tolerance >= 0.0 && tolerance.is_finite()) {
        return Err(CliError::Usage(format!("tolerance must be a non-negative number, got {tolerance}")));
    }
    let result = model.run_sweep(&SweepConfig::full());
    let mut worst: Vec<(Quantity, Row)> = Vec::new();
    for q in Quantity::ALL {
        let top = result
            .rows
            .iter()
            .filter(|r| r.quantity == q.name())
            .max_by(|a, b| a.abs_error.total_cmp(&b.abs_error))
            .expect("every quantity is swept");
        worst.push((q, top.clone()));
    }
    let offending = result
        .rows
        .into_iter()
        .filter(|r| r.abs_error > tolerance || r.abs_error.is_nan())
        .collect();
    Ok(VerifyReport { tolerance, worst, offending })
}

/// Parses arguments, runs the command and returns the process exit code.
pub fn run<I, T>(args: I, model: &Model) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    let outcome = match cli.command {
        Command::Sweep(args) => SweepConfig::from_args(&args).and_then(|c| sweep(model, &c)).map(|_| EXIT_OK),
        Command::Verify(args) => verify(model, args.tolerance).and_then(|report| {
            report.write(io::stdout().lock())?;
            Ok(report.exit_code())
        }),
    };
    match outcome {
        Ok(code) => code,
        Err(e) => {
            eprintln!("qecsim: {e}");
            e.exit_code()
        }
    }
}
