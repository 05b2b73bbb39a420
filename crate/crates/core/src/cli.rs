//! Command-line front end: argument parsing, dispatch and output encoding.
//!
//! Every subcommand computes all of its rows before writing anything, so a
//! failing run never leaves a header or partial table on standard output.

use std::fmt::Write as _;
use std::io::{self, Write};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::error::KgoError;
use crate::oracle::{self, profile_effective_potential};
use crate::params::OscillatorParams;
use crate::spectrum::{self, TableFormula};
use crate::wavefn::{self, GridSpec};

pub const EXIT_OK: i32 = 0;
pub const EXIT_RUNTIME: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

pub const TABLE_FORMULA_WARNING: &str = "warning: e_rel follows sqrt(1+2b(n+1)), inferred from the printed values of the published energy table; the derived spectrum is sqrt(1+2b(n+1/2)) (--formula eq21)";

const DEFAULT_WAVEFN_POINTS: usize = 801;
const DEFAULT_ORACLE_POINTS: usize = 2001;
const DEFAULT_VEFF_POINTS: usize = 401;
/// Default bisection width for `oracle`, in units of λ.
const DEFAULT_RELATIVE_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Default)]
pub enum OutputFormat {
    #[default]
    Csv,
    Tsv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Default)]
pub enum ParityChoice {
    Even,
    Odd,
    #[default]
    Combined,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Default)]
pub enum Expansion {
    #[default]
    Exact,
    SecondOrder,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Default)]
pub enum FormulaArg {
    #[default]
    Eq21,
    Table,
}

impl From<FormulaArg> for TableFormula {
    fn from(f: FormulaArg) -> Self {
        match f {
            FormulaArg::Eq21 => TableFormula::Eq21,
            FormulaArg::Table => TableFormula::Table,
        }
    }
}

fn positive_real(s: &str) -> Result<f64, String> {
    let v: f64 = s.parse().map_err(|_| format!("`{s}` is not a number"))?;
    if v.is_finite() && v > 0.0 {
        Ok(v)
    } else {
        Err(format!("`{s}` must be positive and finite"))
    }
}

fn finite_real(s: &str) -> Result<f64, String> {
    let v: f64 = s.parse().map_err(|_| format!("`{s}` is not a number"))?;
    if v.is_finite() {
        Ok(v)
    } else {
        Err(format!("`{s}` must be finite"))
    }
}

fn odd_points(s: &str) -> Result<usize, String> {
    let v: usize = s
        .parse()
        .map_err(|_| format!("`{s}` is not a non-negative integer"))?;
    if v >= 3 && v % 2 == 1 {
        Ok(v)
    } else {
        Err(format!("`{s}` must be an odd integer of at least 3"))
    }
}

fn level_index(s: &str) -> Result<usize, String> {
    let v: usize = s
        .parse()
        .map_err(|_| format!("`{s}` is not a non-negative integer"))?;
    if v <= spectrum::MAX_LEVEL {
        Ok(v)
    } else {
        Err(format!(
            "`{s}` exceeds the level cap {}",
            spectrum::MAX_LEVEL
        ))
    }
}

fn positive_count(s: &str) -> Result<usize, String> {
    let v: usize = s
        .parse()
        .map_err(|_| format!("`{s}` is not a non-negative integer"))?;
    if v > 0 {
        Ok(v)
    } else {
        Err(format!("`{s}` must be at least 1"))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Args, Default)]
pub struct OutputOptions {
    /// Output encoding.
    #[arg(long, value_enum, default_value_t = OutputFormat::Csv)]
    pub format: OutputFormat,
    /// Fixed number of decimals (half-to-even) instead of 6 significant digits.
    #[arg(long)]
    pub decimals: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Subcommand)]
pub enum Task {
    /// Dimensionless energy table for every (n, b) pair.
    Table {
        /// Comma-separated strength parameters b = ħω/mc².
        #[arg(long = "b", required = true, value_delimiter = ',', value_parser = positive_real, allow_negative_numbers = true)]
        b: Vec<f64>,
        /// Rows n = 0..=n-max.
        #[arg(long, value_parser = level_index)]
        n_max: usize,
        #[arg(long, value_enum, default_value_t = FormulaArg::Eq21)]
        formula: FormulaArg,
        #[command(flatten)]
        output: OutputOptions,
    },
    /// A single level of the closed-form spectrum.
    Spectrum {
        #[arg(long = "b", value_parser = positive_real, allow_negative_numbers = true)]
        b: f64,
        /// Level index within the chosen parity branch.
        #[arg(long, value_parser = level_index)]
        n: usize,
        #[arg(long, value_enum, default_value_t = ParityChoice::Combined)]
        parity: ParityChoice,
        #[arg(long, value_enum, default_value_t = Expansion::Exact)]
        expansion: Expansion,
        /// Add the binding energy Ē − 1.
        #[arg(long)]
        binding: bool,
        #[command(flatten)]
        output: OutputOptions,
    },
    /// Normalized stationary state sampled on a symmetric grid.
    Wavefn {
        #[arg(long, value_parser = level_index)]
        n: usize,
        /// λ = mω/ħ.
        #[arg(long, value_parser = positive_real, allow_negative_numbers = true)]
        lambda: f64,
        #[arg(long, value_parser = positive_real, allow_negative_numbers = true)]
        x_max: Option<f64>,
        #[arg(long, value_parser = odd_points, default_value_t = DEFAULT_WAVEFN_POINTS)]
        points: usize,
        #[command(flatten)]
        output: OutputOptions,
    },
    /// Finite-difference eigenvalues compared with the closed form.
    Oracle {
        #[arg(long = "b", value_parser = positive_real, allow_negative_numbers = true)]
        b: f64,
        #[arg(long, value_parser = positive_count)]
        count: usize,
        #[arg(long, value_parser = odd_points, default_value_t = DEFAULT_ORACLE_POINTS)]
        points: usize,
        /// Absolute bisection width on k² (default 1e-10·λ).
        #[arg(long, value_parser = positive_real, allow_negative_numbers = true)]
        tol: Option<f64>,
        #[command(flatten)]
        output: OutputOptions,
    },
    /// Effective potential of the vector-coupled oscillator.
    Veff {
        #[arg(long = "b", value_parser = positive_real, allow_negative_numbers = true)]
        b: f64,
        /// Total energy in units of mc².
        #[arg(long, value_parser = finite_real, allow_negative_numbers = true)]
        energy: f64,
        #[arg(long, value_parser = positive_real, allow_negative_numbers = true)]
        x_max: Option<f64>,
        #[arg(long, value_parser = odd_points, default_value_t = DEFAULT_VEFF_POINTS)]
        points: usize,
        #[command(flatten)]
        output: OutputOptions,
    },
}

#[derive(Debug, Parser)]
#[command(
    name = "kgo",
    version,
    about = "Spectrum of the one-dimensional Klein-Gordon oscillator"
)]
struct Cli {
    #[command(subcommand)]
    task: Task,
}

/// A fully validated invocation.
#[derive(Debug, Clone, PartialEq)]
pub struct Command {
    pub task: Task,
}

impl Command {
    pub fn output(&self) -> OutputOptions {
        match &self.task {
            Task::Table { output, .. }
            | Task::Spectrum { output, .. }
            | Task::Wavefn { output, .. }
            | Task::Oracle { output, .. }
            | Task::Veff { output, .. } => *output,
        }
    }

    pub fn name(&self) -> &'static str {
        match self.task {
            Task::Table { .. } => "table",
            Task::Spectrum { .. } => "spectrum",
            Task::Wavefn { .. } => "wavefn",
            Task::Oracle { .. } => "oracle",
            Task::Veff { .. } => "veff",
        }
    }
}

/// Rejected command line. `--help` and `--version` also land here with exit code 0.
#[derive(Debug)]
pub struct UsageError {
    pub message: String,
    pub exit_code: i32,
}

impl std::fmt::Display for UsageError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.message)
    }
}

impl std::error::Error for UsageError {}

/// Parses arguments, excluding the program name.
pub fn parse_args<I, S>(argv: I) -> Result<Command, UsageError>
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let args =
        std::iter::once(std::ffi::OsString::from("kgo")).chain(argv.into_iter().map(Into::into));
    match Cli::try_parse_from(args) {
        Ok(cli) => Ok(Command { task: cli.task }),
        Err(e) => {
            let exit_code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            Err(UsageError {
                message: e.render().to_string(),
                exit_code,
            })
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct RunReport {
    pub rows_emitted: usize,
    pub warnings: Vec<String>,
    pub exit_code: i32,
}

#[derive(Debug, Clone, PartialEq)]
enum Cell {
    Int(usize),
    Real(f64),
    /// Echoed input, printed in shortest round-trip form.
    Input(f64),
    Text(&'static str),
}

#[derive(Debug, Clone, PartialEq, Default)]
struct Output {
    columns: Vec<&'static str>,
    rows: Vec<Vec<Cell>>,
    /// Extra `key = value` facts, emitted as comments in csv/tsv.
    facts: Vec<(&'static str, bool)>,
    warnings: Vec<String>,
}

/// `decimals` fixed places, or 6 significant digits when `None`.
///
/// Magnitudes outside `[1e-4, 1e6)` switch to scientific notation in the
/// 6-significant-digit mode. Negative zero prints as zero.
pub fn format_number(v: f64, decimals: Option<usize>) -> String {
    let s = match decimals {
        Some(d) => format!("{v:.d$}"),
        None => {
            let mag = v.abs();
            if v == 0.0 {
                "0.00000".to_string()
            } else if !(1e-4..1e6).contains(&mag) {
                format!("{v:.5e}")
            } else {
                // Exponent after rounding to 6 significant digits.
                let sci = format!("{v:.5e}");
                let exp: i32 = sci[sci.find('e').unwrap() + 1..].parse().unwrap();
                let places = (5 - exp).max(0) as usize;
                format!("{v:.places$}")
            }
        }
    };
    match s.strip_prefix('-') {
        Some(rest) if rest.chars().all(|c| c == '0' || c == '.') => rest.to_string(),
        _ => s,
    }
}

fn render_cell(cell: &Cell, decimals: Option<usize>) -> String {
    match cell {
        Cell::Int(n) => n.to_string(),
        Cell::Real(v) => format_number(*v, decimals),
        Cell::Input(v) => v.to_string(),
        Cell::Text(t) => t.to_string(),
    }
}

fn json_string(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    out.push('"');
    for c in s.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            c if (c as u32) < 0x20 => {
                let _ = write!(out, "\\u{:04x}", c as u32);
            }
            c => out.push(c),
        }
    }
    out.push('"');
    out
}

fn encode(command: &str, output: &Output, options: OutputOptions) -> String {
    let mut s = String::new();
    match options.format {
        OutputFormat::Csv | OutputFormat::Tsv => {
            let sep = if options.format == OutputFormat::Csv {
                ","
            } else {
                "\t"
            };
            s.push_str(&output.columns.join(sep));
            s.push('\n');
            for row in &output.rows {
                let cells: Vec<String> = row
                    .iter()
                    .map(|c| render_cell(c, options.decimals))
                    .collect();
                s.push_str(&cells.join(sep));
                s.push('\n');
            }
            for (key, value) in &output.facts {
                let _ = writeln!(s, "# {key}={value}");
            }
            for w in &output.warnings {
                let _ = writeln!(s, "# {w}");
            }
        }
        OutputFormat::Json => {
            let _ = write!(s, "{{\"command\":{},\"columns\":[", json_string(command));
            let cols: Vec<String> = output.columns.iter().map(|c| json_string(c)).collect();
            s.push_str(&cols.join(","));
            s.push_str("],\"rows\":[");
            let rows: Vec<String> = output
                .rows
                .iter()
                .map(|row| {
                    let fields: Vec<String> = output
                        .columns
                        .iter()
                        .zip(row)
                        .map(|(col, cell)| {
                            let value = match cell {
                                Cell::Text(t) => json_string(t),
                                other => render_cell(other, options.decimals),
                            };
                            format!("{}:{}", json_string(col), value)
                        })
                        .collect();
                    format!("{{{}}}", fields.join(","))
                })
                .collect();
            s.push_str(&rows.join(","));
            s.push(']');
            for (key, value) in &output.facts {
                let _ = write!(s, ",{}:{}", json_string(key), value);
            }
            let warnings: Vec<String> = output.warnings.iter().map(|w| json_string(w)).collect();
            let _ = writeln!(s, ",\"warnings\":[{}]}}", warnings.join(","));
        }
    }
    s
}

fn compute(task: &Task) -> Result<Output, KgoError> {
    match *task {
        Task::Table {
            ref b,
            n_max,
            formula,
            ..
        } => {
            let n_values: Vec<usize> = (0..=n_max).collect();
            let rows = spectrum::generate_table(b, &n_values, formula.into())?;
            let mut warnings = Vec::new();
            if formula == FormulaArg::Table {
                warnings.push(TABLE_FORMULA_WARNING.to_string());
            }
            Ok(Output {
                columns: vec!["n", "b", "e_rel", "e_nr_plus_one"],
                rows: rows
                    .iter()
                    .map(|r| {
                        vec![
                            Cell::Int(r.n),
                            Cell::Input(r.b),
                            Cell::Real(r.e_rel),
                            Cell::Real(r.e_nr_plus_one),
                        ]
                    })
                    .collect(),
                warnings,
                ..Output::default()
            })
        }
        Task::Spectrum {
            b,
            n,
            parity,
            expansion,
            binding,
            ..
        } => {
            OscillatorParams::from_b(b)?;
            let level = match parity {
                ParityChoice::Even => 2 * n,
                ParityChoice::Odd => 2 * n + 1,
                ParityChoice::Combined => n,
            };
            let energy = match (expansion, parity) {
                (Expansion::SecondOrder, _) => spectrum::energy_second_order(level, b),
                (Expansion::Exact, ParityChoice::Even) => spectrum::energy_even(n, b).value(),
                (Expansion::Exact, ParityChoice::Odd) => spectrum::energy_odd(n, b).value(),
                (Expansion::Exact, ParityChoice::Combined) => {
                    spectrum::energy_combined(n, b).value()
                }
            };
            let parity_name = match spectrum::Parity::of(level) {
                spectrum::Parity::Even => "even",
                spectrum::Parity::Odd => "odd",
            };
            let mut columns = vec!["n", "level", "parity", "b", "energy"];
            let mut row = vec![
                Cell::Int(n),
                Cell::Int(level),
                Cell::Text(parity_name),
                Cell::Input(b),
                Cell::Real(energy),
            ];
            if binding {
                columns.push("binding");
                row.push(Cell::Real(energy - 1.0));
            }
            Ok(Output {
                columns,
                rows: vec![row],
                ..Output::default()
            })
        }
        Task::Wavefn {
            n,
            lambda,
            x_max,
            points,
            ..
        } => {
            let extent = x_max.unwrap_or_else(|| GridSpec::default_extent(n, lambda));
            let grid = GridSpec::symmetric(extent, points)?;
            let sampled = wavefn::sample(n, &grid, lambda)?;
            Ok(Output {
                columns: vec!["x", "psi"],
                rows: grid
                    .nodes()
                    .zip(&sampled.values)
                    .map(|(x, &v)| vec![Cell::Real(x), Cell::Real(v)])
                    .collect(),
                ..Output::default()
            })
        }
        Task::Oracle {
            b,
            count,
            points,
            tol,
            ..
        } => {
            let params = OscillatorParams::from_b(b)?;
            let lambda = params.lambda();
            let grid = oracle::default_grid(count, lambda, points)?;
            let tol = tol.unwrap_or(DEFAULT_RELATIVE_TOL * lambda);
            let results = oracle::oracle_energies(&params, count, &grid, tol)?;
            Ok(Output {
                columns: vec!["n", "k_squared", "e_oracle", "e_eq21", "rel_diff"],
                rows: results
                    .iter()
                    .map(|r| {
                        let oracle_e = r.energy_dimensionless.unwrap_or(f64::NAN);
                        let closed = spectrum::energy_combined(r.index, b).value();
                        vec![
                            Cell::Int(r.index),
                            Cell::Real(r.k_squared),
                            Cell::Real(oracle_e),
                            Cell::Real(closed),
                            Cell::Real((oracle_e - closed).abs() / closed),
                        ]
                    })
                    .collect(),
                ..Output::default()
            })
        }
        Task::Veff {
            b,
            energy,
            x_max,
            points,
            ..
        } => {
            let params = OscillatorParams::from_b(b)?;
            let absolute = energy * params.rest_energy();
            let extent = x_max.unwrap_or_else(|| {
                let zero = oracle::effective_potential_zero(&params, absolute);
                if zero > 0.0 {
                    2.0 * zero
                } else {
                    5.0 / params.lambda().sqrt()
                }
            });
            let grid = GridSpec::symmetric(extent, points)?;
            let profile = profile_effective_potential(&params, absolute, &grid)?;
            Ok(Output {
                columns: vec!["x", "v_eff"],
                rows: profile
                    .samples
                    .iter()
                    .map(|&(x, v)| vec![Cell::Real(x), Cell::Real(v)])
                    .collect(),
                facts: vec![("unbounded_below_detected", profile.unbounded_below_detected)],
                ..Output::default()
            })
        }
    }
}

/// Executes a parsed command, writing data to `stdout` and diagnostics to `stderr`.
pub fn run(cmd: &Command, stdout: &mut dyn Write, stderr: &mut dyn Write) -> RunReport {
    let output = match compute(&cmd.task) {
        Ok(output) => output,
        Err(e) => {
            let _ = writeln!(stderr, "kgo {}: {e}", cmd.name());
            return RunReport {
                exit_code: EXIT_RUNTIME,
                ..RunReport::default()
            };
        }
    };
    let text = encode(cmd.name(), &output, cmd.output());
    let exit_code = match stdout
        .write_all(text.as_bytes())
        .and_then(|_| stdout.flush())
    {
        Ok(()) => EXIT_OK,
        Err(e) if e.kind() == io::ErrorKind::BrokenPipe => EXIT_OK,
        Err(e) => {
            let _ = writeln!(stderr, "kgo {}: {e}", cmd.name());
            EXIT_RUNTIME
        }
    };
    RunReport {
        rows_emitted: output.rows.len(),
        warnings: output.warnings,
        exit_code,
    }
}

/// Parses `argv` (without program name), runs it, and returns the exit code.
pub fn main_with(argv: Vec<String>, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32 {
    match parse_args(argv) {
        Ok(cmd) => run(&cmd, stdout, stderr).exit_code,
        Err(e) => {
            let sink: &mut dyn Write = if e.exit_code == EXIT_OK {
                stdout
            } else {
                stderr
            };
            let _ = sink.write_all(e.message.as_bytes());
            e.exit_code
        }
    }
}
