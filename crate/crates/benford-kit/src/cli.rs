//! Command-line surface.
//!
//! Four subcommands cover the workflow end to end: `eval` runs the exact
//! criterion on a named density, `scan` emits the exponential error
//! envelope as CSV, `analyze` screens a dataset file, and `generate` writes
//! reproducible samples. Every command is deterministic given its full flag
//! set.
//!
//! Exit codes: `0` conforms, `3` violates, `2` usage/parse/IO errors, `4`
//! numerical tolerance not met or no classifiable data.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};

use crate::conformance::{
    conformance_verdict, er_scan, error_report_base, log_spaced_rates, DigitEr, ErrorReport,
    Verdict, DEFAULT_THRESHOLD,
};
use crate::density::{
    BenfordExact, Density, Exponential, ExponentialMixture, PiecewiseLinear, TruncatedNormal,
    Uniform, DEFAULT_TOL,
};
use crate::empirical::{analyze_dataset, Alpha, ConformanceReport, SignificancePolicy};
use crate::error::{Error, Result};

pub const EXIT_CONFORMS: i32 = 0;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_VIOLATES: i32 = 3;
pub const EXIT_TOLERANCE: i32 = 4;

/// Top-level invocation configuration.
#[derive(Debug, Parser)]
#[command(
    name = "benford-kit",
    version,
    about = "Exact leading-digit distributions, conformance criteria, and dataset screening"
)]
pub struct RunConfig {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum Format {
    #[default]
    Table,
    Json,
    Csv,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Exact digit distribution and criterion report for a named density.
    ///
    /// Density specs: `benford-exact`, `exponential:rate=1` (also `λ=1`),
    /// `uniform:lo=1,hi=2`, `mixture:file=PATH`, `tabulated:file=PATH`,
    /// `truncated-normal:mean=50,sd=10`.
    Eval {
        /// Density spec, e.g. `exponential:rate=1`.
        density: String,
        /// Digit base for the report.
        #[arg(long, default_value_t = 10)]
        base: u32,
        /// Certified numerical tolerance per digit probability.
        #[arg(long, default_value_t = DEFAULT_TOL)]
        tol: f64,
        /// Conformance threshold on max |er|.
        #[arg(long, default_value_t = DEFAULT_THRESHOLD)]
        threshold: f64,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
        /// Write the report here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Exponential-rate error scan: CSV with columns `d,lambda,er`, one
    /// summary row `d,max,<max_abs_er>` per digit.
    Scan {
        /// Number of log-spaced rates covering [lambda-min, lambda-max).
        #[arg(long, default_value_t = 256)]
        points: usize,
        #[arg(long, default_value_t = 1.0)]
        lambda_min: f64,
        #[arg(long, default_value_t = 10.0)]
        lambda_max: f64,
        /// Series truncation tolerance.
        #[arg(long, default_value_t = 1e-12)]
        tol: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Screen a dataset file: newline-delimited numbers, or CSV with
    /// `--column NAME|IDX`.
    Analyze {
        /// Input file path.
        input: PathBuf,
        /// CSV column to read, by header name or zero-based index.
        #[arg(long)]
        column: Option<String>,
        #[arg(long, default_value_t = 10)]
        base: u32,
        /// Leading-digit pattern length.
        #[arg(long = "digits", default_value_t = 1)]
        digits: usize,
        /// Chi-square significance level: 0.05 or 0.01.
        #[arg(long, default_value = "0.01")]
        alpha: String,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Write reproducible samples from a density, newline-delimited, with
    /// shortest round-trip formatting.
    Generate {
        /// Density spec, e.g. `benford-exact`.
        density: String,
        /// Number of samples.
        #[arg(short = 'n', long = "count")]
        count: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// Parses a density spec of the form `name` or `name:key=value,...`.
pub fn parse_density_spec(spec: &str) -> Result<Box<dyn Density>> {
    let (name, params) = match spec.split_once(':') {
        Some((n, p)) => (n, p),
        None => (spec, ""),
    };
    let mut pairs: Vec<(&str, &str)> = Vec::new();
    if !params.is_empty() {
        for field in params.split(',') {
            let (key, value) = field.split_once('=').ok_or_else(|| {
                Error::parse(format!("expected key=value in density spec, got {field:?}"))
            })?;
            pairs.push((key.trim(), value.trim()));
        }
    }
    let get = |keys: &[&str]| -> Option<&str> {
        pairs
            .iter()
            .find(|(k, _)| keys.contains(k))
            .map(|(_, v)| *v)
    };
    let num = |keys: &[&str]| -> Result<f64> {
        let raw = get(keys).ok_or_else(|| {
            Error::parse(format!(
                "density {name:?} needs parameter {} (got {spec:?})",
                keys[0]
            ))
        })?;
        raw.parse::<f64>()
            .map_err(|_| Error::parse(format!("bad numeric value {raw:?} in density spec")))
    };
    match name {
        "benford-exact" => Ok(Box::new(BenfordExact::new())),
        "exponential" => {
            // `rate=`, `lambda=`, and the spelled-out `λ=` are synonyms.
            let rate = num(&["rate", "lambda", "λ"])?;
            Ok(Box::new(Exponential::new(rate)?))
        }
        "uniform" => {
            let lo = num(&["lo"])?;
            let hi = num(&["hi"])?;
            Ok(Box::new(Uniform::new(lo, hi)?))
        }
        "truncated-normal" => {
            let mean = num(&["mean", "mu"])?;
            let sd = num(&["sd", "sigma"])?;
            Ok(Box::new(TruncatedNormal::new(mean, sd)?))
        }
        "mixture" => {
            let path = get(&["file"])
                .ok_or_else(|| Error::parse("mixture density needs file=PATH".to_string()))?;
            let text = std::fs::read_to_string(path)?;
            Ok(Box::new(parse_mixture_table(&text)?))
        }
        "tabulated" => {
            let path = get(&["file"])
                .ok_or_else(|| Error::parse("tabulated density needs file=PATH".to_string()))?;
            let text = std::fs::read_to_string(path)?;
            Ok(Box::new(PiecewiseLinear::from_table_str(&text)?))
        }
        other => Err(Error::parse(format!("unrecognized density name {other:?}"))),
    }
}

/// Parses mixture component lines: `weight rate` per line, whitespace- or
/// comma-separated, `#` comments allowed.
pub fn parse_mixture_table(text: &str) -> Result<ExponentialMixture> {
    let mut components = Vec::new();
    for (idx, raw_line) in text.lines().enumerate() {
        let line = raw_line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let mut fields = line
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|f| !f.is_empty());
        let (Some(w), Some(r), None) = (fields.next(), fields.next(), fields.next()) else {
            return Err(Error::parse(format!(
                "line {}: expected `weight rate`, got {raw_line:?}",
                idx + 1
            )));
        };
        let weight: f64 = w
            .parse()
            .map_err(|_| Error::parse(format!("line {}: bad weight {w:?}", idx + 1)))?;
        let rate: f64 = r
            .parse()
            .map_err(|_| Error::parse(format!("line {}: bad rate {r:?}", idx + 1)))?;
        components.push((weight, rate));
    }
    ExponentialMixture::new(&components)
}

/// Reads dataset values: newline-delimited numbers, or one CSV column.
pub fn read_values(path: &Path, column: Option<&str>) -> Result<Vec<f64>> {
    let text = std::fs::read_to_string(path)?;
    match column {
        None => {
            let mut values = Vec::new();
            for (idx, raw_line) in text.lines().enumerate() {
                let line = raw_line.trim();
                if line.is_empty() {
                    continue;
                }
                let v: f64 = line.parse().map_err(|_| {
                    Error::parse(format!("line {}: not a number: {line:?}", idx + 1))
                })?;
                values.push(v);
            }
            Ok(values)
        }
        Some(selector) => read_csv_column(&text, selector),
    }
}

fn csv_fields(line: &str) -> Vec<String> {
    line.split(',')
        .map(|f| f.trim().trim_matches('"').to_string())
        .collect()
}

fn read_csv_column(text: &str, selector: &str) -> Result<Vec<f64>> {
    let mut lines = text
        .lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty());
    let Some((_, first)) = lines.next() else {
        return Ok(Vec::new());
    };
    let header = csv_fields(first);
    let by_index = selector.parse::<usize>().ok();
    let (index, skip_first) = match by_index {
        Some(idx) => {
            if idx >= header.len() {
                return Err(Error::parse(format!(
                    "column index {idx} out of range; row has {} fields",
                    header.len()
                )));
            }
            // a numeric first cell means there is no header row
            (idx, header[idx].parse::<f64>().is_err())
        }
        None => {
            let idx = header.iter().position(|h| h == selector).ok_or_else(|| {
                Error::parse(format!(
                    "column {selector:?} not found in header {header:?}"
                ))
            })?;
            (idx, true)
        }
    };
    let mut values = Vec::new();
    if !skip_first {
        let cell = &header[index];
        values.push(
            cell.parse::<f64>()
                .map_err(|_| Error::parse(format!("not a number in column {index}: {cell:?}")))?,
        );
    }
    for (idx, line) in lines {
        let fields = csv_fields(line);
        let cell = fields
            .get(index)
            .ok_or_else(|| Error::parse(format!("line {}: missing column {index}", idx + 1)))?;
        let v: f64 = cell
            .parse()
            .map_err(|_| Error::parse(format!("line {}: not a number: {cell:?}", idx + 1)))?;
        values.push(v);
    }
    Ok(values)
}

// ---------------------------------------------------------------------------
// Report rendering
// ---------------------------------------------------------------------------

#[derive(serde::Serialize)]
struct EvalOutput<'a> {
    command: &'static str,
    density: &'a str,
    base: u32,
    tol: f64,
    threshold: f64,
    digits: &'a [DigitEr],
    max_abs_er: f64,
    verdict: Verdict,
}

fn render_eval(
    spec: &str,
    report: &ErrorReport,
    threshold: f64,
    verdict: Verdict,
    format: Format,
) -> Result<String> {
    match format {
        Format::Json => {
            let out = EvalOutput {
                command: "eval",
                density: spec,
                base: report.base,
                tol: report.tol,
                threshold,
                digits: &report.entries,
                max_abs_er: report.max_abs_er,
                verdict,
            };
            Ok(serde_json::to_string_pretty(&out).expect("report serializes") + "\n")
        }
        Format::Csv => {
            let mut s = String::from("digit,probability,error_bound,reference,er\n");
            for e in &report.entries {
                s.push_str(&format!(
                    "{},{},{},{},{}\n",
                    e.digit, e.probability, e.error_bound, e.reference, e.er
                ));
            }
            Ok(s)
        }
        Format::Table => {
            let mut s = format!("density: {spec}   base: {}\n\n", report.base);
            s.push_str("digit    probability     reference          er    error_bound\n");
            for e in &report.entries {
                s.push_str(&format!(
                    "{:>5}   {:>12.9}   {:>11.9}   {:>+9.6}   {:>12.3e}\n",
                    e.digit, e.probability, e.reference, e.er, e.error_bound
                ));
            }
            s.push_str(&format!(
                "\nmax |er| = {:.9}   threshold = {}   verdict = {verdict}\n",
                report.max_abs_er, threshold
            ));
            Ok(s)
        }
    }
}

#[derive(serde::Serialize)]
struct AnalyzeOutput<'a> {
    command: &'static str,
    input: String,
    #[serde(flatten)]
    report: &'a ConformanceReport,
}

fn render_analyze(input: &Path, report: &ConformanceReport, format: Format) -> Result<String> {
    match format {
        Format::Json => {
            let out = AnalyzeOutput {
                command: "analyze",
                input: input.display().to_string(),
                report,
            };
            Ok(serde_json::to_string_pretty(&out).expect("report serializes") + "\n")
        }
        Format::Csv => {
            let mut s = String::from("pattern,observed,observed_freq,expected_freq\n");
            for row in &report.rows {
                s.push_str(&format!(
                    "{},{},{},{}\n",
                    pattern_label(&row.pattern, report.base),
                    row.observed,
                    row.observed_freq,
                    row.expected_freq
                ));
            }
            Ok(s)
        }
        Format::Table => {
            let mut s = format!(
                "input: {}   base: {}   pattern length: {}\n",
                input.display(),
                report.base,
                report.pattern_len
            );
            s.push_str(&format!(
                "classified: {}   excluded: {}\n\n",
                report.total, report.excluded
            ));
            s.push_str("pattern    observed    observed_freq    expected_freq\n");
            for row in &report.rows {
                s.push_str(&format!(
                    "{:>7}   {:>9}   {:>14.9}   {:>14.9}\n",
                    pattern_label(&row.pattern, report.base),
                    row.observed,
                    row.observed_freq,
                    row.expected_freq
                ));
            }
            s.push_str(&format!(
                "\nchi-square = {:.6}   dof = {}   critical({}) = {:.6}\n",
                report.chi_square, report.dof, report.alpha, report.chi_square_critical
            ));
            s.push_str(&format!(
                "MAD = {:.9}\nverdict = {}\n",
                report.mad, report.verdict
            ));
            Ok(s)
        }
    }
}

fn pattern_label(pattern: &[u32], base: u32) -> String {
    let mut s = String::new();
    for (i, d) in pattern.iter().enumerate() {
        if i > 0 && base > 10 {
            s.push('.');
        }
        s.push_str(&d.to_string());
    }
    s
}

fn write_output(out: Option<&Path>, content: &str) -> Result<()> {
    match out {
        Some(path) => std::fs::write(path, content).map_err(Error::from),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(content.as_bytes()).map_err(Error::from)
        }
    }
}

// ---------------------------------------------------------------------------
// Command implementations
// ---------------------------------------------------------------------------

fn cmd_eval(
    spec: &str,
    base: u32,
    tol: f64,
    threshold: f64,
    format: Format,
    out: Option<&Path>,
) -> Result<i32> {
    let density = parse_density_spec(spec)?;
    let report = error_report_base(&density, base, tol)?;
    let verdict = conformance_verdict(&report, threshold);
    let rendered = render_eval(spec, &report, threshold, verdict, format)?;
    write_output(out, &rendered)?;
    Ok(match verdict {
        Verdict::Conforms => EXIT_CONFORMS,
        Verdict::Violates => EXIT_VIOLATES,
    })
}

fn cmd_scan(
    points: usize,
    lambda_min: f64,
    lambda_max: f64,
    tol: f64,
    out: Option<&Path>,
) -> Result<i32> {
    let rates = log_spaced_rates(lambda_min, lambda_max, points)?;
    let mut csv = String::from("d,lambda,er\n");
    let mut summaries = Vec::with_capacity(9);
    for d in 1..=9u32 {
        let scan = er_scan(d, &rates, tol)?;
        for (rate, er) in &scan.values {
            csv.push_str(&format!("{d},{rate},{er}\n"));
        }
        summaries.push((d, scan.max_abs));
    }
    for (d, max_abs) in summaries {
        csv.push_str(&format!("{d},max,{max_abs}\n"));
    }
    write_output(out, &csv)?;
    Ok(EXIT_CONFORMS)
}

fn cmd_analyze(
    input: &Path,
    column: Option<&str>,
    base: u32,
    k: usize,
    alpha: &str,
    format: Format,
    out: Option<&Path>,
) -> Result<i32> {
    let alpha: Alpha = alpha.parse()?;
    let values = read_values(input, column)?;
    let report = analyze_dataset(&values, base, k, SignificancePolicy { alpha })?;
    let rendered = render_analyze(input, &report, format)?;
    write_output(out, &rendered)?;
    Ok(match report.verdict {
        Verdict::Conforms => EXIT_CONFORMS,
        Verdict::Violates => EXIT_VIOLATES,
    })
}

fn cmd_generate(spec: &str, count: usize, seed: u64, out: Option<&Path>) -> Result<i32> {
    let density = parse_density_spec(spec)?;
    let samples = density.sample(count, seed)?;
    let mut text = String::with_capacity(samples.len() * 20);
    for v in samples {
        // shortest round-trip formatting keeps analyze ∘ generate lossless
        text.push_str(&format!("{v}\n"));
    }
    write_output(out, &text)?;
    Ok(EXIT_CONFORMS)
}

/// Dispatches a parsed configuration. Returns the process exit code.
pub fn execute(config: RunConfig) -> i32 {
    let result = match &config.command {
        Command::Eval {
            density,
            base,
            tol,
            threshold,
            format,
            out,
        } => cmd_eval(density, *base, *tol, *threshold, *format, out.as_deref()),
        Command::Scan {
            points,
            lambda_min,
            lambda_max,
            tol,
            out,
        } => cmd_scan(*points, *lambda_min, *lambda_max, *tol, out.as_deref()),
        Command::Analyze {
            input,
            column,
            base,
            digits,
            alpha,
            format,
            out,
        } => cmd_analyze(
            input,
            column.as_deref(),
            *base,
            *digits,
            alpha,
            *format,
            out.as_deref(),
        ),
        Command::Generate {
            density,
            count,
            seed,
            out,
        } => cmd_generate(density, *count, *seed, out.as_deref()),
    };
    match result {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            match err {
                Error::ToleranceNotMet { .. } | Error::EmptyDataset { .. } => EXIT_TOLERANCE,
                _ => EXIT_USAGE,
            }
        }
    }
}

/// Parses command-line arguments and runs. Returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match RunConfig::try_parse_from(args) {
        Ok(config) => execute(config),
        Err(err) => {
            // --help / --version arrive here; they are not failures
            let code = if err.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = err.print();
            code
        }
    }
}
