//! `imbcost` command line.
//!
//! Exit status is 0 on success, 2 for usage, input or parse errors, and 3
//! when a numerical solution cannot be found.

use std::ffi::OsString;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use imbcost_core::costs;
use imbcost_core::report::{self, TABLE2_DEFAULT_N, TABLE3_MEASURES, TABLE3_P2};
use imbcost_core::{GaussianScenario, MeasureId};

use crate::loader::{self, InputFormat};
use crate::output::{OutputFormat, Table};
use crate::render;

pub const EXIT_OK: u8 = 0;
pub const EXIT_USAGE: u8 = 2;
pub const EXIT_NUMERICAL: u8 = 3;

/// Lower end of the default log-spaced p2 grid of `costs`.
const COSTS_GRID_MIN: f64 = 1e-5;
const COSTS_GRID_MAX: f64 = 0.5;
const COSTS_GRID_DEFAULT: usize = 16;
/// Points of the linear p2 grid used for the cost-shape figure.
const FIG3_POINTS: usize = 99;

#[derive(Debug, Parser)]
#[command(
    name = "imbcost",
    version,
    about = "Classification measures, their implied misclassification costs, and Gaussian optimum boundaries"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate all twelve measures for every confusion matrix in a file.
    Metrics(MetricsArgs),
    /// Print the cost functions of one measure over population rates.
    Costs(CostsArgs),
    /// BER and F1 with their costs for E1 = 0.1, E2 = p2/2.
    Scenario1(Scenario1Args),
    /// Measure-optimal thresholds for two Gaussian classes.
    Scenario2(Scenario2Args),
    /// Plot-ready data series.
    Figures(FiguresArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum InputArg {
    Csv,
    Json,
}

impl From<InputArg> for InputFormat {
    fn from(v: InputArg) -> Self {
        match v {
            InputArg::Csv => InputFormat::Csv,
            InputArg::Json => InputFormat::Json,
        }
    }
}

#[derive(Debug, Args)]
pub struct MetricsArgs {
    /// Input file with one confusion matrix per record (keys tn, fp, fn, tp).
    #[arg(long)]
    pub input: PathBuf,
    /// Format of the input file; the output uses the same format.
    #[arg(long, value_enum)]
    pub format: InputArg,
    /// Additionally evaluate F-beta for each given beta (repeatable).
    #[arg(long = "beta", value_name = "B", num_args = 1..)]
    pub betas: Vec<f64>,
    /// Write to this file instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct CostsArgs {
    /// Measure name, e.g. BER, F1, GAI, MCC.
    #[arg(long, value_parser = parse_measure)]
    pub measure: MeasureId,
    /// Evaluate at a single population rate of class 2.
    #[arg(long, conflicts_with = "p2_grid")]
    pub p2: Option<f64>,
    /// Number of log-spaced points in [1e-5, 0.5] (default 16).
    #[arg(long, value_name = "N")]
    pub p2_grid: Option<usize>,
    /// Output format.
    #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
    pub format: OutputFormat,
    /// Write to this file instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct Scenario1Args {
    /// Number of samples behind each confusion matrix.
    #[arg(long, default_value_t = TABLE2_DEFAULT_N)]
    pub n: f64,
    /// Output format.
    #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
    pub format: OutputFormat,
    /// Write to this file instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct Scenario2Args {
    /// Mean of class 1.
    #[arg(long, default_value_t = -1.0, allow_negative_numbers = true)]
    pub mu1: f64,
    /// Mean of class 2 (must exceed mu1).
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    pub mu2: f64,
    /// Standard deviation of class 1.
    #[arg(long, default_value_t = 1.0)]
    pub sigma1: f64,
    /// Standard deviation of class 2.
    #[arg(long, default_value_t = 1.0)]
    pub sigma2: f64,
    /// Comma-separated population rates of class 2.
    #[arg(long, value_delimiter = ',', default_values_t = TABLE3_P2.to_vec())]
    pub p2_list: Vec<f64>,
    /// Comma-separated measure names.
    #[arg(
        long,
        value_delimiter = ',',
        value_parser = parse_measure,
        default_values_t = TABLE3_MEASURES.to_vec()
    )]
    pub measures: Vec<MeasureId>,
    /// Output format.
    #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
    pub format: OutputFormat,
    /// Write to this file instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Also write the E2/p2 vs p1/p2 series (CSV or JSON per --format) to this file.
    #[arg(long)]
    pub series_out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Figure {
    #[value(name = "3")]
    CostShapes,
    #[value(name = "4")]
    FixedErrorCosts,
    #[value(name = "5")]
    GaussianCollapse,
}

#[derive(Debug, Args)]
pub struct FiguresArgs {
    /// 3: cost-function shapes, 4: BER/F1 costs vs p2, 5: optimal E2/p2 vs p1/p2.
    #[arg(long, value_enum)]
    pub which: Figure,
    /// Output format.
    #[arg(long, value_enum, default_value_t = OutputFormat::Csv)]
    pub format: OutputFormat,
    /// Write to this file instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

fn parse_measure(s: &str) -> Result<MeasureId, String> {
    s.parse::<MeasureId>().map_err(|_| {
        format!(
            "unknown measure `{s}` (expected one of AT, APR, GPR, QPR, F1, AAI, GAI, QAI, HAI, BER, MCC, KAPPA, FBETA:<beta>)"
        )
    })
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Numerical(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Usage(_) => EXIT_USAGE,
            Failure::Numerical(_) => EXIT_NUMERICAL,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Usage(m) | Failure::Numerical(m) => m,
        }
    }
}

fn usage(e: impl std::fmt::Display) -> Failure {
    Failure::Usage(e.to_string())
}

/// Runs the binary with process arguments and standard streams.
pub fn main() -> ExitCode {
    let stdout = io::stdout();
    let stderr = io::stderr();
    let code = run(std::env::args_os(), &mut stdout.lock(), &mut stderr.lock());
    ExitCode::from(code)
}

/// Parses `args` (including the program name) and executes the command.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let rendered = e.render().to_string();
            if e.use_stderr() {
                let _ = stderr.write_all(rendered.as_bytes());
                return EXIT_USAGE;
            }
            let _ = stdout.write_all(rendered.as_bytes());
            return EXIT_OK;
        }
    };
    let result = match cli.command {
        Command::Metrics(a) => run_metrics(&a, stdout),
        Command::Costs(a) => run_costs(&a, stdout),
        Command::Scenario1(a) => run_scenario1(&a, stdout),
        Command::Scenario2(a) => run_scenario2(&a, stdout),
        Command::Figures(a) => run_figures(&a, stdout),
    };
    match result {
        Ok(()) => EXIT_OK,
        Err(f) => {
            let _ = writeln!(stderr, "imbcost: {}", f.message());
            f.code()
        }
    }
}

fn emit(out: Option<&Path>, stdout: &mut dyn Write, text: &str) -> Result<(), Failure> {
    match out {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| usage(format_args!("cannot write {}: {e}", path.display()))),
        None => stdout
            .write_all(text.as_bytes())
            .map_err(|e| usage(format_args!("cannot write output: {e}"))),
    }
}

fn encode(table: &Table, format: OutputFormat, text: impl FnOnce() -> String) -> String {
    match format {
        OutputFormat::Text => text(),
        OutputFormat::Csv => table.to_csv(),
        OutputFormat::Json => table.to_json(),
    }
}

fn run_metrics(a: &MetricsArgs, stdout: &mut dyn Write) -> Result<(), Failure> {
    if let Some(bad) = a.betas.iter().find(|b| !(b.is_finite() && **b > 0.0)) {
        return Err(usage(format_args!("--beta must be positive, got {bad}")));
    }
    let text = std::fs::read_to_string(&a.input)
        .map_err(|e| usage(format_args!("cannot read {}: {e}", a.input.display())))?;
    let loaded = loader::load_matrices(&text, a.format.into())
        .map_err(|e| usage(format_args!("{}: {e}", a.input.display())))?;
    let mut records = Vec::with_capacity(loaded.len());
    for (i, m) in loaded.iter().enumerate() {
        let rates = m
            .matrix
            .normalize()
            .map_err(|e| usage(format_args!("{}: {}: {e}", a.input.display(), m.at)))?;
        records.push(render::metrics_record(
            i + 1,
            m.at.to_string(),
            &m.matrix,
            &rates,
            &a.betas,
        ));
    }
    let body = match a.format {
        InputArg::Csv => render::metrics_table(&records).to_csv(),
        InputArg::Json => render::metrics_json(&records),
    };
    emit(a.out.as_deref(), stdout, &body)
}

fn run_costs(a: &CostsArgs, stdout: &mut dyn Write) -> Result<(), Failure> {
    let profile = costs::cost_profile(a.measure).map_err(usage)?;
    let grid = match (a.p2, a.p2_grid) {
        (Some(p2), _) => vec![p2],
        (None, Some(0)) => return Err(usage("--p2-grid needs at least one point")),
        (None, n) => report::log_grid(
            COSTS_GRID_MIN,
            COSTS_GRID_MAX,
            n.unwrap_or(COSTS_GRID_DEFAULT),
        ),
    };
    let table = render::costs_table(&profile, &grid).map_err(usage)?;
    let body = match a.format {
        OutputFormat::Text => render::costs_text(&profile, &grid).map_err(usage)?,
        _ => encode(&table, a.format, String::new),
    };
    emit(a.out.as_deref(), stdout, &body)
}

fn run_scenario1(a: &Scenario1Args, stdout: &mut dyn Write) -> Result<(), Failure> {
    let t = report::table2(a.n).map_err(usage)?;
    let body = encode(&render::table2_table(&t), a.format, || {
        render::table2_text(&t)
    });
    emit(a.out.as_deref(), stdout, &body)
}

fn run_scenario2(a: &Scenario2Args, stdout: &mut dyn Write) -> Result<(), Failure> {
    let first_p2 = *a
        .p2_list
        .first()
        .ok_or_else(|| usage("--p2-list is empty"))?;
    if a.measures.is_empty() {
        return Err(usage("--measures is empty"));
    }
    let template =
        GaussianScenario::new(a.mu1, a.mu2, a.sigma1, a.sigma2, first_p2).map_err(usage)?;
    if let Some(bad) = a.p2_list.iter().find(|p| !(**p > 0.0 && **p < 1.0)) {
        return Err(usage(format_args!(
            "p2 values must lie in (0, 1), got {bad}"
        )));
    }
    let t = report::table3_for(&template, &a.measures, &a.p2_list);
    let failure = t
        .sweep
        .first_error()
        .map(|e| Failure::Numerical(e.to_string()));
    let table = render::table3_table(&t);
    let series = report::fig5_series(&t).ok();
    let series_table = series.as_ref().map(|s| render::series_table("fig5", s));

    let body = match a.format {
        OutputFormat::Text => {
            let mut text = render::table3_text(&t);
            if let Some(s) = &series {
                text.push('\n');
                text.push_str(&render::series_text(
                    "E2/p2 at the optimum vs class-imbalance ratio p1/p2",
                    s,
                ));
            }
            text
        }
        OutputFormat::Csv => table.to_csv(),
        OutputFormat::Json => scenario2_json(&table, series_table.as_ref()),
    };
    emit(a.out.as_deref(), stdout, &body)?;
    if let (Some(path), Some(st)) = (a.series_out.as_deref(), series_table.as_ref()) {
        let text = match a.format {
            OutputFormat::Json => st.to_json(),
            _ => st.to_csv(),
        };
        emit(Some(path), stdout, &text)?;
    }
    match failure {
        Some(f) => Err(f),
        None => Ok(()),
    }
}

fn scenario2_json(table: &Table, series: Option<&Table>) -> String {
    use serde::ser::{SerializeMap, Serializer};
    let mut buf = Vec::new();
    let mut ser = serde_json::Serializer::pretty(&mut buf);
    let mut map = ser.serialize_map(Some(3)).expect("json");
    map.serialize_entry("schema", &table.schema).expect("json");
    map.serialize_entry("rows", &table.json_rows())
        .expect("json");
    if let Some(s) = series {
        map.serialize_entry("series", &s.json_rows()).expect("json");
    }
    map.end().expect("json");
    let mut out = String::from_utf8(buf).expect("utf-8 json");
    out.push('\n');
    out
}

fn run_figures(a: &FiguresArgs, stdout: &mut dyn Write) -> Result<(), Failure> {
    let (schema, title, series) = match a.which {
        Figure::CostShapes => {
            let grid: Vec<f64> = (1..=FIG3_POINTS)
                .map(|i| i as f64 / (FIG3_POINTS + 1) as f64)
                .collect();
            (
                "fig3",
                "Cost functions vs p2",
                report::fig3_series(&grid).map_err(usage)?,
            )
        }
        Figure::FixedErrorCosts => {
            let t = report::table2(TABLE2_DEFAULT_N).map_err(usage)?;
            (
                "fig4",
                "BER and F1 costs vs p2 (E1 = 0.1, E2 = p2/2)",
                report::fig4_series(&t),
            )
        }
        Figure::GaussianCollapse => {
            let t = report::table3();
            let series = report::fig5_series(&t).map_err(|e| Failure::Numerical(e.to_string()))?;
            ("fig5", "Optimal E2/p2 vs p1/p2", series)
        }
    };
    let table = render::series_table(schema, &series);
    let body = encode(&table, a.format, || render::series_text(title, &series));
    emit(a.out.as_deref(), stdout, &body)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_capture(args: &[&str]) -> (u8, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run(
            std::iter::once("imbcost").chain(args.iter().copied()),
            &mut out,
            &mut err,
        );
        (
            code,
            String::from_utf8(out).unwrap(),
            String::from_utf8(err).unwrap(),
        )
    }

    #[test]
    fn costs_single_point() {
        let (code, out, _) = run_capture(&["costs", "--measure", "BER", "--p2", "0.01"]);
        assert_eq!(code, 0);
        assert!(out.contains("1.010") && out.contains("100.000"), "{out}");
    }

    #[test]
    fn costs_rejects_out_of_domain_and_fbeta() {
        assert_eq!(
            run_capture(&["costs", "--measure", "BER", "--p2", "1.5"]).0,
            EXIT_USAGE
        );
        assert_eq!(
            run_capture(&["costs", "--measure", "FBETA:2"]).0,
            EXIT_USAGE
        );
        assert_eq!(
            run_capture(&["costs", "--measure", "BER", "--p2", "0.1", "--p2-grid", "3"]).0,
            EXIT_USAGE
        );
    }

    #[test]
    fn unknown_flags_and_missing_subcommand() {
        assert_eq!(run_capture(&["scenario1", "--bogus"]).0, EXIT_USAGE);
        assert_eq!(run_capture(&[]).0, EXIT_USAGE);
        assert_eq!(run_capture(&["costs", "--measure", "nope"]).0, EXIT_USAGE);
    }

    #[test]
    fn help_exits_zero() {
        let (code, out, _) = run_capture(&["scenario2", "--help"]);
        assert_eq!(code, 0);
        assert!(out.contains("--p2-list"));
    }

    #[test]
    fn scenario2_rejects_bad_scenarios() {
        assert_eq!(run_capture(&["scenario2", "--mu1", "2"]).0, EXIT_USAGE);
        assert_eq!(
            run_capture(&["scenario2", "--p2-list", "0.5,1.2"]).0,
            EXIT_USAGE
        );
        assert_eq!(run_capture(&["scenario2", "--sigma1", "0"]).0, EXIT_USAGE);
    }

    #[test]
    fn scenario2_accepts_negative_means() {
        let (code, out, err) = run_capture(&[
            "scenario2",
            "--mu1",
            "-2",
            "--mu2",
            "-0.5",
            "--p2-list",
            "0.2",
            "--measures",
            "BER",
            "--format",
            "csv",
        ]);
        assert_eq!(code, 0, "{err}");
        assert_eq!(out.lines().count(), 2);
    }
}
