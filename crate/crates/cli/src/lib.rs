//! Command-line front end: evaluation, Mills-bound tables, envelope tables and
//! grid verification runs.
//!
//! Exit codes: 0 success, 1 verified violation, 2 usage or domain error,
//! 3 numerical failure.

use std::ffi::OsString;
use std::fmt;
use std::io::{self, Write};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use coulomb_core::bounds::F3_THRESHOLD;
use coulomb_core::verifier::{turan_point, TuranPoint};
use coulomb_core::{
    mills_bounds, run_suite, vq, vq_envelope, Error, Grid, MillsBoundRow, Order, RunConfig, Suite,
    TolerancePolicy, VerificationReport, VqMethod,
};

/// Environment variable overriding the default relative tolerance of `verify`.
pub const TOLERANCE_ENV: &str = "COULOMB_REL_TOL";
/// Allowed range of the environment override.
pub const ENV_TOL_RANGE: (f64, f64) = (1e-13, 1e-6);

pub const EXIT_OK: i32 = 0;
pub const EXIT_VIOLATION: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_NUMERICAL: i32 = 3;

#[derive(Debug)]
pub enum CliError {
    Core(Error),
    Usage(String),
    Io(io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(Error::NumericalFailure { .. }) => EXIT_NUMERICAL,
            CliError::Io(_) => EXIT_NUMERICAL,
            _ => EXIT_USAGE,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Core(e) => write!(f, "{e}"),
            CliError::Usage(m) => write!(f, "usage error: {m}"),
            CliError::Io(e) => write!(f, "i/o error: {e}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Core(e)
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::Io(e)
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Io(e.into())
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;

#[derive(Debug, Parser)]
#[command(
    name = "coulomb",
    version,
    about = "Regularized 1D Coulomb potential V_q(x), Mills ratio bounds and inequality verification"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate V_q(x).
    Eval(EvalArgs),
    /// Tabulate the Mills ratio and its bounds f1..f5.
    Figure(FigureArgs),
    /// Run verification suites on a grid.
    Verify(VerifyArgs),
    /// Tabulate the lower and upper envelopes of V_q.
    Envelope(EnvelopeArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    Auto,
    Quadrature,
    Psi,
    ClosedForm,
    Recurrence,
}

impl From<MethodArg> for VqMethod {
    fn from(m: MethodArg) -> Self {
        match m {
            MethodArg::Auto => VqMethod::Auto,
            MethodArg::Quadrature => VqMethod::Quadrature,
            MethodArg::Psi => VqMethod::Psi,
            MethodArg::ClosedForm => VqMethod::ClosedForm,
            MethodArg::Recurrence => VqMethod::Recurrence,
        }
    }
}

fn parse_precision(s: &str) -> std::result::Result<usize, String> {
    let p: usize = s.parse().map_err(|_| format!("'{s}' is not an integer"))?;
    if (6..=17).contains(&p) {
        Ok(p)
    } else {
        Err(format!("precision must lie in [6, 17], got {p}"))
    }
}

#[derive(Debug, Args)]
pub struct EvalArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub q: f64,
    #[arg(long, allow_hyphen_values = true)]
    pub x: f64,
    #[arg(long, value_enum, default_value_t = MethodArg::Auto)]
    pub method: MethodArg,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Significant digits of printed numbers.
    #[arg(long, default_value_t = 17, value_parser = parse_precision)]
    pub precision: usize,
}

#[derive(Debug, Args)]
pub struct FigureArgs {
    #[arg(long, default_value_t = 0.7, allow_hyphen_values = true)]
    pub x_min: f64,
    #[arg(long, default_value_t = 3.0, allow_hyphen_values = true)]
    pub x_max: f64,
    /// Number of grid points, endpoints included.
    #[arg(long, default_value_t = 231)]
    pub steps: usize,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    #[arg(long, default_value_t = 12, value_parser = parse_precision)]
    pub precision: usize,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Suites to run (monotonicity, convexity, turan, logconvexity, simon, bounds, all).
    #[arg(long = "suite", value_delimiter = ',', default_value = "all")]
    pub suites: Vec<String>,
    /// Single order; with --x selects single-point mode.
    #[arg(long, allow_hyphen_values = true)]
    pub q: Option<f64>,
    /// Single argument; with --q selects single-point mode.
    #[arg(long, allow_hyphen_values = true)]
    pub x: Option<f64>,
    /// Comma-separated orders replacing the default list.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub q_values: Option<Vec<f64>>,
    /// Comma-separated arguments replacing the default list.
    #[arg(long, value_delimiter = ',')]
    pub x_values: Option<Vec<f64>>,
    /// Relative tolerance; overrides the environment.
    #[arg(long)]
    pub rel_tol: Option<f64>,
    #[arg(long)]
    pub abs_tol: Option<f64>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Evaluate on one thread.
    #[arg(long)]
    pub serial: bool,
    /// Violations listed in text output.
    #[arg(long, default_value_t = 20)]
    pub max_listed: usize,
}

#[derive(Debug, Args)]
pub struct EnvelopeArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub q: f64,
    #[arg(long, default_value_t = 0.1)]
    pub x_min: f64,
    #[arg(long, default_value_t = 10.0)]
    pub x_max: f64,
    #[arg(long, default_value_t = 50)]
    pub steps: usize,
    /// Space points logarithmically instead of linearly.
    #[arg(long)]
    pub log: bool,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    #[arg(long, default_value_t = 12, value_parser = parse_precision)]
    pub precision: usize,
}

/// Rounds `v` to `digits` significant digits.
pub fn round_sig(v: f64, digits: usize) -> f64 {
    if v == 0.0 || !v.is_finite() {
        return v;
    }
    format!("{:.*e}", digits - 1, v).parse().unwrap_or(v)
}

/// Shortest round-trip text of `v` after rounding to `digits` significant digits.
pub fn fmt_num(v: f64, digits: usize) -> String {
    let r = round_sig(v, digits);
    let a = r.abs();
    if r != 0.0 && !(1e-5..1e16).contains(&a) {
        format!("{r:e}")
    } else {
        format!("{r}")
    }
}

fn opt_num(v: Option<f64>, digits: usize) -> String {
    v.map(|v| fmt_num(v, digits)).unwrap_or_default()
}

/// `steps` points on `[lo, hi]`, rounded to `digits` significant digits.
pub fn grid_points(
    lo: f64,
    hi: f64,
    steps: usize,
    log: bool,
    digits: usize,
) -> CliResult<Vec<f64>> {
    if !(lo > 0.0 && lo < hi && hi.is_finite()) {
        return Err(CliError::Usage(format!(
            "need 0 < x_min < x_max, got [{lo}, {hi}]"
        )));
    }
    if steps < 2 {
        return Err(CliError::Usage(format!(
            "need at least 2 steps, got {steps}"
        )));
    }
    let n = (steps - 1) as f64;
    Ok((0..steps)
        .map(|i| {
            let t = i as f64;
            let x = if log {
                ((lo.ln() * (n - t) + hi.ln() * t) / n).exp()
            } else {
                (lo * (n - t) + hi * t) / n
            };
            round_sig(x, digits)
        })
        .collect())
}

fn json_row<T: Serialize>(v: &T) -> CliResult<String> {
    Ok(serde_json::to_string(v)?)
}

#[derive(Serialize)]
struct EvalOut {
    q: f64,
    x: f64,
    value: f64,
    abs_err_est: f64,
    method: String,
}

pub fn cmd_eval(a: &EvalArgs, out: &mut dyn Write) -> CliResult<i32> {
    let q = Order::new(a.q)?;
    let r = vq(q, a.x, Some(a.method.into()))?;
    let p = a.precision;
    match a.format {
        Format::Json => {
            let o = EvalOut {
                q: a.q,
                x: a.x,
                value: round_sig(r.value, p),
                abs_err_est: round_sig(r.abs_err_est, 3),
                method: r.method.to_string(),
            };
            writeln!(out, "{}", json_row(&o)?)?;
        }
        Format::Csv => {
            writeln!(out, "q,x,value,abs_err_est,method")?;
            writeln!(
                out,
                "{},{},{},{},{}",
                a.q,
                a.x,
                fmt_num(r.value, p),
                fmt_num(r.abs_err_est, 3),
                r.method
            )?;
        }
        Format::Text => {
            writeln!(out, "V_{}({}) = {}", a.q, a.x, fmt_num(r.value, p))?;
            writeln!(out, "method: {}", r.method)?;
            writeln!(out, "abs_err_est: {}", fmt_num(r.abs_err_est, 3))?;
        }
    }
    Ok(EXIT_OK)
}

pub const FIGURE_HEADER: &str = "x,f1,f2,f3,f4,f5,m";

/// Mills-ratio bound rows on the figure grid.
pub fn figure_rows(
    x_min: f64,
    x_max: f64,
    steps: usize,
    precision: usize,
) -> CliResult<Vec<MillsBoundRow>> {
    grid_points(x_min, x_max, steps, false, precision)?
        .into_iter()
        .map(|x| mills_bounds(x).map_err(CliError::from))
        .collect()
}

fn rounded_row(r: &MillsBoundRow, p: usize) -> MillsBoundRow {
    MillsBoundRow {
        x: round_sig(r.x, p),
        f1: round_sig(r.f1, p),
        f2: round_sig(r.f2, p),
        f3: r.f3.map(|v| round_sig(v, p)),
        f4: round_sig(r.f4, p),
        f5: round_sig(r.f5, p),
        m: round_sig(r.m, p),
    }
}

pub fn cmd_figure(a: &FigureArgs, out: &mut dyn Write) -> CliResult<i32> {
    let rows = figure_rows(a.x_min, a.x_max, a.steps, a.precision)?;
    let p = a.precision;
    match a.format {
        Format::Json => {
            let rows: Vec<MillsBoundRow> = rows.iter().map(|r| rounded_row(r, p)).collect();
            writeln!(out, "{}", serde_json::to_string_pretty(&rows)?)?;
        }
        Format::Csv | Format::Text => {
            writeln!(out, "{FIGURE_HEADER}")?;
            for r in &rows {
                writeln!(
                    out,
                    "{},{},{},{},{},{},{}",
                    fmt_num(r.x, p),
                    fmt_num(r.f1, p),
                    fmt_num(r.f2, p),
                    opt_num(r.f3, p),
                    fmt_num(r.f4, p),
                    fmt_num(r.f5, p),
                    fmt_num(r.m, p)
                )?;
            }
        }
    }
    Ok(EXIT_OK)
}

/// Relative tolerance from flag, else environment, else the default.
pub fn resolve_tolerance(
    flag_rel: Option<f64>,
    flag_abs: Option<f64>,
    env_rel: Option<&str>,
) -> CliResult<TolerancePolicy> {
    let mut tol = TolerancePolicy::default();
    if let Some(raw) = env_rel.filter(|_| flag_rel.is_none()) {
        let v: f64 = raw
            .trim()
            .parse()
            .map_err(|_| CliError::Usage(format!("{TOLERANCE_ENV}='{raw}' is not a number")))?;
        let (lo, hi) = ENV_TOL_RANGE;
        if !(lo..=hi).contains(&v) {
            return Err(CliError::Usage(format!(
                "{TOLERANCE_ENV}={v} outside [{lo:e}, {hi:e}]"
            )));
        }
        tol = tol.with_rel(v)?;
    }
    if let Some(r) = flag_rel {
        tol = tol.with_rel(r)?;
    }
    if let Some(a) = flag_abs {
        tol = TolerancePolicy::new(tol.rel, a)?;
    }
    Ok(tol)
}

fn verify_grid(a: &VerifyArgs) -> CliResult<Grid> {
    match (a.q, a.x) {
        (Some(q), Some(x)) => return Ok(Grid::single(q, x)?),
        (None, None) => {}
        _ => {
            return Err(CliError::Usage(
                "single-point mode needs both --q and --x".into(),
            ))
        }
    }
    let d = Grid::default();
    if a.q_values.is_none() && a.x_values.is_none() {
        return Ok(d);
    }
    let q = a.q_values.clone().unwrap_or(d.q_values);
    let x = a.x_values.clone().unwrap_or(d.x_values);
    let desc = format!("custom: {} orders, {} arguments", q.len(), x.len());
    Ok(Grid::new(q, x, desc)?)
}

#[derive(Serialize)]
struct VerifyOut<'a> {
    #[serde(flatten)]
    report: &'a VerificationReport,
    #[serde(skip_serializing_if = "Option::is_none")]
    turan_point: Option<TuranPoint>,
}

pub fn verify_exit_code(r: &VerificationReport) -> i32 {
    if !r.failures.is_empty() {
        EXIT_NUMERICAL
    } else if !r.pass {
        EXIT_VIOLATION
    } else {
        EXIT_OK
    }
}

pub fn cmd_verify(a: &VerifyArgs, env_rel: Option<&str>, out: &mut dyn Write) -> CliResult<i32> {
    let suites = Suite::parse_list(&a.suites)?;
    let grid = verify_grid(a)?;
    let tolerance = resolve_tolerance(a.rel_tol, a.abs_tol, env_rel)?;
    let cfg = RunConfig {
        suites: suites.clone(),
        grid,
        tolerance,
        parallel: !a.serial,
    };
    let report = run_suite(&cfg)?;
    let point = match (a.q, a.x) {
        (Some(q), Some(x)) if suites.contains(&Suite::Turan) => Some(turan_point(q, x)?),
        _ => None,
    };
    match a.format {
        Format::Json => {
            let o = VerifyOut {
                report: &report,
                turan_point: point,
            };
            writeln!(out, "{}", serde_json::to_string_pretty(&o)?)?;
        }
        Format::Text | Format::Csv => write_report(&report, point.as_ref(), a.max_listed, out)?,
    }
    Ok(verify_exit_code(&report))
}

fn write_report(
    r: &VerificationReport,
    point: Option<&TuranPoint>,
    max_listed: usize,
    out: &mut dyn Write,
) -> io::Result<()> {
    let names: Vec<&str> = r.suite.iter().map(|s| s.name()).collect();
    writeln!(out, "suites: {}", names.join(", "))?;
    writeln!(out, "grid: {}", r.grid.description)?;
    writeln!(
        out,
        "tolerance: rel {:e}, abs {:e}",
        r.tolerance.rel, r.tolerance.abs
    )?;
    if let Some(t) = point {
        writeln!(out, "turan at q={}, x={}:", t.q, t.x)?;
        writeln!(
            out,
            "  left   (q+2)(2q+1)/((q+1)(2q+3)) V_q V_q+2 = {}",
            fmt_num(t.left, 12)
        )?;
        writeln!(
            out,
            "  middle V_q+1^2                              = {}",
            fmt_num(t.middle, 12)
        )?;
        writeln!(
            out,
            "  right  (q+2)/(q+1) V_q V_q+2                = {}",
            fmt_num(t.right, 12)
        )?;
    }
    for c in &r.checks {
        writeln!(
            out,
            "{} {:<13} {:<60} n={:<5} min rel margin {}",
            if c.pass() { "PASS" } else { "FAIL" },
            c.suite.name(),
            c.check,
            c.checked,
            fmt_num(c.min_rel_margin, 3)
        )?;
    }
    if !r.observations.is_empty() {
        writeln!(out, "observations (not asserted):")?;
        for o in &r.observations {
            let s = &o.summary;
            writeln!(
                out,
                "  {:<13} {:<60} holds at {}/{}, min rel margin {}",
                s.suite.name(),
                s.check,
                s.checked - s.violations,
                s.checked,
                fmt_num(s.min_rel_margin, 3)
            )?;
        }
    }
    for v in r.violations.iter().take(max_listed) {
        let y = v.y.map(|y| format!(" y={y}")).unwrap_or_default();
        writeln!(
            out,
            "violation: {} / {} at q={} x={}{}: lhs={} rhs={} margin={}",
            v.suite.name(),
            v.check,
            v.q,
            v.x,
            y,
            fmt_num(v.lhs, 12),
            fmt_num(v.rhs, 12),
            fmt_num(v.margin, 3)
        )?;
    }
    for f in &r.failures {
        writeln!(
            out,
            "evaluation failure: {} / {} at q={} x={}: {}",
            f.suite.name(),
            f.check,
            f.q,
            f.x,
            f.message
        )?;
    }
    writeln!(
        out,
        "result: {} ({} violations, {} evaluation failures)",
        if r.pass && r.failures.is_empty() {
            "pass"
        } else {
            "fail"
        },
        r.violations.len(),
        r.failures.len()
    )
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EnvelopeRow {
    pub x: f64,
    pub lower_exp: f64,
    pub lower_kratzel: f64,
    pub vq: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub upper_agm: Option<f64>,
}

pub fn envelope_rows(q: f64, xs: &[f64]) -> CliResult<Vec<EnvelopeRow>> {
    let order = Order::new(q)?;
    if order.is_sentinel() {
        return Err(Error::Domain("the envelope needs q > -1".into()).into());
    }
    xs.iter()
        .map(|&x| {
            let e = vq_envelope(order, x)?;
            Ok(EnvelopeRow {
                x,
                lower_exp: e.lower_exp,
                lower_kratzel: e.lower_kratzel,
                vq: vq(order, x, None)?.value,
                upper_agm: e.upper_agm,
            })
        })
        .collect()
}

pub fn cmd_envelope(a: &EnvelopeArgs, out: &mut dyn Write, err: &mut dyn Write) -> CliResult<i32> {
    let xs = grid_points(a.x_min, a.x_max, a.steps, a.log, a.precision)?;
    let rows = envelope_rows(a.q, &xs)?;
    let agm = a.q > -0.75;
    if !agm {
        writeln!(
            err,
            "notice: upper_agm needs q > -3/4; column dropped for q = {}",
            a.q
        )?;
    }
    let p = a.precision;
    match a.format {
        Format::Json => {
            let rows: Vec<EnvelopeRow> = rows
                .iter()
                .map(|r| EnvelopeRow {
                    x: round_sig(r.x, p),
                    lower_exp: round_sig(r.lower_exp, p),
                    lower_kratzel: round_sig(r.lower_kratzel, p),
                    vq: round_sig(r.vq, p),
                    upper_agm: r.upper_agm.map(|v| round_sig(v, p)),
                })
                .collect();
            writeln!(out, "{}", serde_json::to_string_pretty(&rows)?)?;
        }
        Format::Csv | Format::Text => {
            writeln!(
                out,
                "x,lower_exp,lower_kratzel,vq{}",
                if agm { ",upper_agm" } else { "" }
            )?;
            for r in &rows {
                write!(
                    out,
                    "{},{},{},{}",
                    fmt_num(r.x, p),
                    fmt_num(r.lower_exp, p),
                    fmt_num(r.lower_kratzel, p),
                    fmt_num(r.vq, p)
                )?;
                if agm {
                    write!(out, ",{}", opt_num(r.upper_agm, p))?;
                }
                writeln!(out)?;
            }
        }
    }
    Ok(EXIT_OK)
}

/// Parses `args` and runs the command; returns the process exit code.
pub fn run<I, T>(args: I, env_rel: Option<&str>, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                write!(err, "{text}")
            } else {
                write!(out, "{text}")
            };
            return code;
        }
    };
    let result = match &cli.command {
        Command::Eval(a) => cmd_eval(a, out),
        Command::Figure(a) => cmd_figure(a, out),
        Command::Verify(a) => cmd_verify(a, env_rel, out),
        Command::Envelope(a) => cmd_envelope(a, out, err),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

/// `sqrt(sqrt 2 - 1)`, below which `f3` is left empty.
pub fn f3_threshold() -> f64 {
    F3_THRESHOLD
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn number_formatting() {
        assert_eq!(fmt_num(0.5, 12), "0.5");
        assert_eq!(fmt_num(1.0, 12), "1");
        assert_eq!(fmt_num(0.655_679_542_418_798_5, 12), "0.655679542419");
        assert_eq!(fmt_num(1.5e-7, 12), "1.5e-7");
        assert_eq!(fmt_num(-2.0, 6), "-2");
        assert_eq!(round_sig(0.999_999_999_999_9, 12), 1.0);
    }

    #[test]
    fn figure_grid_hits_round_values() {
        let xs = grid_points(0.7, 3.0, 231, false, 12).unwrap();
        assert_eq!(xs.len(), 231);
        assert_eq!(xs[0], 0.7);
        assert_eq!(xs[30], 1.0);
        assert_eq!(xs[230], 3.0);
        assert!(grid_points(3.0, 0.7, 10, false, 12).is_err());
        assert!(grid_points(0.7, 3.0, 1, false, 12).is_err());
    }

    #[test]
    fn tolerance_resolution() {
        assert_eq!(
            resolve_tolerance(None, None, None).unwrap(),
            TolerancePolicy::default()
        );
        assert_eq!(
            resolve_tolerance(None, None, Some("1e-7")).unwrap().rel,
            1e-7
        );
        assert_eq!(
            resolve_tolerance(Some(1e-10), None, Some("1e-7"))
                .unwrap()
                .rel,
            1e-10
        );
        assert!(resolve_tolerance(None, None, Some("1e-3")).is_err());
        assert!(resolve_tolerance(None, None, Some("abc")).is_err());
        assert_eq!(resolve_tolerance(None, Some(0.0), None).unwrap().abs, 0.0);
    }

    #[test]
    fn error_codes() {
        assert_eq!(
            CliError::Core(Error::Domain("d".into())).exit_code(),
            EXIT_USAGE
        );
        assert_eq!(
            CliError::Core(Error::Usage("u".into())).exit_code(),
            EXIT_USAGE
        );
        let f = Error::NumericalFailure {
            method: "quadrature",
            message: "m".into(),
        };
        assert_eq!(CliError::Core(f).exit_code(), EXIT_NUMERICAL);
    }
}
