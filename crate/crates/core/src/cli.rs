//! Command-line front end.
//!
//! Exit codes: 0 on success, 1 for usage, parse and I/O errors, 2 when the
//! channel or weights fall outside the solvable domain (including degenerate
//! channels).

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::acceptance::{run_all, Fixtures};
use crate::error::Error;
use crate::kkt::{find_kkt_points, trace_g1, Kind, DEFAULT_KKT_TOL, DEFAULT_SEED_GRID};
use crate::model::Corner;
use crate::solver::{region_boundary, solve, Location, Method, Solution, DEFAULT_EPS, DEFAULT_GRID, DEFAULT_SWEEP};
use crate::{Channel, Weights};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_DOMAIN: i32 = 2;

const DEFAULT_TRACE_GRID: usize = 400;

#[derive(Debug, Parser)]
#[command(name = "bmac", version, about = "Weighted sum-rate optimization for the two-user binary multiple-access channel")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Maximize w1·R1 + w2·R2 over the capacity region.
    Solve(SolveArgs),
    /// Trace the capacity-region boundary by sweeping the weights.
    Region(RegionArgs),
    /// Enumerate and classify the KKT points of the weighted objective.
    Kkt(KktArgs),
    /// Trace the outline of the corner-point image region G1.
    G1(G1Args),
    /// Run the acceptance suite.
    Verify(VerifyArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Unit {
    Nats,
    Bits,
}

impl Unit {
    fn scale(self, nats: f64) -> f64 {
        match self {
            Unit::Nats => nats,
            Unit::Bits => nats / std::f64::consts::LN_2,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Args)]
pub struct Output {
    /// Rate unit.
    #[arg(long, value_enum, default_value_t = Unit::Nats)]
    pub unit: Unit,
    /// Output file; stdout when omitted.
    #[arg(short = 'o', long = "output", value_name = "PATH")]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SolveArgs {
    /// Transition probabilities a,b,c,d (decimals or n/m).
    #[arg(long, value_name = "A,B,C,D", allow_hyphen_values = true)]
    pub channel: String,
    /// Positive weights w1,w2.
    #[arg(long, value_name = "W1,W2", allow_hyphen_values = true)]
    pub weights: String,
    /// Tolerance on p2 of the one-dimensional searches.
    #[arg(long, default_value_t = DEFAULT_EPS)]
    pub eps: f64,
    /// Intervals of the general p2 scan.
    #[arg(long, default_value_t = DEFAULT_GRID)]
    pub grid: usize,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    #[command(flatten)]
    pub out: Output,
}

#[derive(Debug, Args)]
pub struct RegionArgs {
    #[arg(long, value_name = "A,B,C,D", allow_hyphen_values = true)]
    pub channel: String,
    #[arg(long, default_value_t = DEFAULT_EPS)]
    pub eps: f64,
    #[arg(long, default_value_t = DEFAULT_GRID)]
    pub grid: usize,
    /// Number of swept weight vectors.
    #[arg(long, default_value_t = DEFAULT_SWEEP)]
    pub sweep: usize,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    #[command(flatten)]
    pub out: Output,
}

#[derive(Debug, Args)]
pub struct KktArgs {
    #[arg(long, value_name = "A,B,C,D", allow_hyphen_values = true)]
    pub channel: String,
    #[arg(long, value_name = "W1,W2", allow_hyphen_values = true)]
    pub weights: String,
    /// Side of the Newton seed grid.
    #[arg(long, default_value_t = DEFAULT_SEED_GRID)]
    pub grid: usize,
    /// Largest KKT violation accepted for a reported point.
    #[arg(long, default_value_t = DEFAULT_KKT_TOL)]
    pub tol: f64,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    #[command(flatten)]
    pub out: Output,
}

#[derive(Debug, Args)]
pub struct G1Args {
    #[arg(long, value_name = "A,B,C,D", allow_hyphen_values = true)]
    pub channel: String,
    /// Side of the input grid.
    #[arg(long, default_value_t = DEFAULT_TRACE_GRID)]
    pub grid: usize,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    #[command(flatten)]
    pub out: Output,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// JSON file overriding the built-in fixture channels.
    #[arg(long, value_name = "PATH")]
    pub fixtures: Option<PathBuf>,
    /// Report file; stdout when omitted.
    #[arg(short = 'o', long = "output", value_name = "PATH")]
    pub output: Option<PathBuf>,
}

/// Serialized form of a [`Solution`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SolutionRecord {
    pub p1: f64,
    pub p2: f64,
    pub rate1: f64,
    pub rate2: f64,
    pub value: f64,
    pub unit: Unit,
    pub location: Location,
    pub corner: Corner,
    pub method: Method,
    pub p2_tolerance: Option<f64>,
}

impl SolutionRecord {
    pub fn new(s: &Solution, unit: Unit) -> Self {
        Self {
            p1: s.input.p1(),
            p2: s.input.p2(),
            rate1: unit.scale(s.rates.r1),
            rate2: unit.scale(s.rates.r2),
            value: unit.scale(s.value),
            unit,
            location: s.location,
            corner: s.corner,
            method: s.method,
            p2_tolerance: s.p2_tolerance,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VertexRecord {
    pub r1: f64,
    pub r2: f64,
    pub w1: Option<f64>,
    pub w2: Option<f64>,
    pub p1: f64,
    pub p2: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RegionRecord {
    pub unit: Unit,
    pub e1: f64,
    pub e2: f64,
    pub vertices: Vec<VertexRecord>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct KktRecord {
    pub p1: f64,
    pub p2: f64,
    pub value: f64,
    pub residual: f64,
    pub kind: Kind,
    pub on_boundary: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RateRecord {
    pub r1: f64,
    pub r2: f64,
}

/// Failure of a subcommand, carrying its exit code.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Self {
            code: if e.is_domain() { EXIT_DOMAIN } else { EXIT_USAGE },
            message: e.to_string(),
        }
    }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure {
        code: EXIT_USAGE,
        message: message.into(),
    }
}

/// Formats like C's `%.12g`.
pub fn sig12(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let sci = format!("{x:.11e}");
    let (mantissa, exp) = sci.split_once('e').expect("scientific format");
    let exp: i32 = exp.parse().expect("exponent");
    let trim = |s: &str| {
        if s.contains('.') {
            s.trim_end_matches('0').trim_end_matches('.').to_string()
        } else {
            s.to_string()
        }
    };
    if (-5..12).contains(&exp) {
        let decimals = (11 - exp).max(0) as usize;
        trim(&format!("{x:.decimals$}"))
    } else {
        format!("{}e{}{:02}", trim(mantissa), if exp < 0 { '-' } else { '+' }, exp.abs())
    }
}

/// Serialized name of a unit enum variant, for CSV cells.
fn tag<T: Serialize>(v: &T) -> String {
    match serde_json::to_value(v).expect("serializable") {
        serde_json::Value::String(s) => s,
        other => other.to_string(),
    }
}

fn opt12(x: Option<f64>) -> String {
    x.map(sig12).unwrap_or_default()
}

fn parse_channel(text: &str) -> Result<Channel, Failure> {
    Ok(text.parse::<Channel>()?)
}

fn parse_weights(text: &str) -> Result<Weights, Failure> {
    Ok(text.parse::<Weights>()?)
}

fn check_eps(eps: f64) -> Result<(), Failure> {
    if eps > 0.0 && eps < 0.5 {
        Ok(())
    } else {
        Err(usage(format!("--eps must lie in (0, 0.5), got {eps}")))
    }
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}

fn emit(path: Option<&Path>, text: &str) -> Result<(), Failure> {
    match path {
        Some(p) => std::fs::write(p, text).map_err(|e| usage(format!("cannot write {}: {e}", p.display()))),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())
                .and_then(|_| out.flush())
                .map_err(|e| usage(format!("cannot write to stdout: {e}")))
        }
    }
}

pub fn cmd_solve(args: &SolveArgs) -> Result<String, Failure> {
    let ch = parse_channel(&args.channel)?;
    let w = parse_weights(&args.weights)?;
    check_eps(args.eps)?;
    let s = solve(&ch, &w, args.grid, args.eps)?;
    let rec = SolutionRecord::new(&s, args.out.unit);
    Ok(match args.format {
        Format::Json => to_json(&rec),
        Format::Csv => {
            format!(
                "p1,p2,rate1,rate2,value,unit,location,corner,method,p2_tolerance\n{},{},{},{},{},{},{},{},{},{}\n",
                sig12(rec.p1),
                sig12(rec.p2),
                sig12(rec.rate1),
                sig12(rec.rate2),
                sig12(rec.value),
                tag(&rec.unit),
                tag(&rec.location),
                tag(&rec.corner),
                tag(&rec.method),
                opt12(rec.p2_tolerance)
            )
        }
    })
}

pub fn cmd_region(args: &RegionArgs) -> Result<String, Failure> {
    let ch = parse_channel(&args.channel)?;
    check_eps(args.eps)?;
    let rb = region_boundary(&ch, args.sweep, args.grid, args.eps)?;
    let unit = args.out.unit;
    let rows: Vec<VertexRecord> = rb
        .vertices
        .iter()
        .map(|v| VertexRecord {
            r1: unit.scale(v.rate.r1),
            r2: unit.scale(v.rate.r2),
            w1: v.weights.map(|w| w.w1()),
            w2: v.weights.map(|w| w.w2()),
            p1: v.input.p1(),
            p2: v.input.p2(),
        })
        .collect();
    Ok(match args.format {
        Format::Json => to_json(&RegionRecord {
            unit,
            e1: unit.scale(rb.e1),
            e2: unit.scale(rb.e2),
            vertices: rows,
        }),
        Format::Csv => {
            let mut s = String::from("r1,r2,w1,w2,p1,p2\n");
            for r in &rows {
                let _ = writeln!(
                    s,
                    "{},{},{},{},{},{}",
                    sig12(r.r1),
                    sig12(r.r2),
                    opt12(r.w1),
                    opt12(r.w2),
                    sig12(r.p1),
                    sig12(r.p2)
                );
            }
            s
        }
    })
}

pub fn cmd_kkt(args: &KktArgs) -> Result<String, Failure> {
    let ch = parse_channel(&args.channel)?;
    let w = parse_weights(&args.weights)?;
    if let Some(why) = ch.degeneracy() {
        return Err(Error::DegenerateChannel(why).into());
    }
    if args.grid == 0 {
        return Err(usage("--grid must be positive"));
    }
    let unit = args.out.unit;
    let pts: Vec<KktRecord> = find_kkt_points(&ch, &w, args.grid, args.tol)?
        .iter()
        .map(|k| KktRecord {
            p1: k.input.p1(),
            p2: k.input.p2(),
            value: unit.scale(k.value),
            residual: unit.scale(k.residual),
            kind: k.kind,
            on_boundary: k.on_boundary,
        })
        .collect();
    Ok(match args.format {
        Format::Json => to_json(&pts),
        Format::Csv => {
            let mut s = String::from("p1,p2,value,residual,kind,on_boundary\n");
            for k in &pts {
                let _ = writeln!(
                    s,
                    "{},{},{},{},{:?},{}",
                    sig12(k.p1),
                    sig12(k.p2),
                    sig12(k.value),
                    sig12(k.residual),
                    k.kind,
                    k.on_boundary
                );
            }
            s
        }
    })
}

pub fn cmd_g1(args: &G1Args) -> Result<String, Failure> {
    let ch = parse_channel(&args.channel)?;
    if args.grid == 0 {
        return Err(usage("--grid must be positive"));
    }
    let unit = args.out.unit;
    let pts: Vec<RateRecord> = trace_g1(&ch, args.grid)
        .iter()
        .map(|r| RateRecord {
            r1: unit.scale(r.r1),
            r2: unit.scale(r.r2),
        })
        .collect();
    Ok(match args.format {
        Format::Json => to_json(&pts),
        Format::Csv => {
            let mut s = String::from("r1,r2\n");
            for r in &pts {
                let _ = writeln!(s, "{},{}", sig12(r.r1), sig12(r.r2));
            }
            s
        }
    })
}

/// Runs the suite; the report text and whether every criterion passed.
pub fn cmd_verify(args: &VerifyArgs) -> Result<(String, bool), Failure> {
    let fixtures = match &args.fixtures {
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| usage(format!("cannot read fixture file {}: {e}", path.display())))?;
            serde_json::from_str::<Fixtures>(&text)
                .map_err(|e| usage(format!("invalid fixture file {}: {e}", path.display())))?
        }
        None => Fixtures::default(),
    };
    let reports = run_all(&fixtures);
    let mut text = String::new();
    for r in &reports {
        let _ = writeln!(text, "{r}");
    }
    let passed = reports.iter().filter(|r| r.passed).count();
    let _ = writeln!(text, "{passed}/{} criteria passed", reports.len());
    Ok((text, passed == reports.len()))
}

fn dispatch(cli: &Cli) -> Result<i32, Failure> {
    let (text, path, code) = match &cli.command {
        Command::Solve(a) => (cmd_solve(a)?, a.out.output.as_deref(), EXIT_OK),
        Command::Region(a) => (cmd_region(a)?, a.out.output.as_deref(), EXIT_OK),
        Command::Kkt(a) => (cmd_kkt(a)?, a.out.output.as_deref(), EXIT_OK),
        Command::G1(a) => (cmd_g1(a)?, a.out.output.as_deref(), EXIT_OK),
        Command::Verify(a) => {
            let (text, ok) = cmd_verify(a)?;
            (text, a.output.as_deref(), if ok { EXIT_OK } else { EXIT_DOMAIN })
        }
    };
    emit(path, &text)?;
    Ok(code)
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    match dispatch(&cli) {
        Ok(code) => code,
        Err(f) => {
            eprintln!("error: {}", f.message);
            f.code
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn twelve_significant_digits() {
        assert_eq!(sig12(0.0), "0");
        assert_eq!(sig12(std::f64::consts::LN_2), "0.69314718056");
        assert_eq!(sig12(1.0), "1");
        assert_eq!(sig12(-0.25), "-0.25");
        assert_eq!(sig12(123456.7890123456), "123456.789012");
        assert_eq!(sig12(1e-7), "1e-07");
        assert_eq!(sig12(1.5e15), "1.5e+15");
        assert_eq!(sig12(0.00012345678901234), "0.000123456789012");
    }

    #[test]
    fn bits_are_nats_over_ln2() {
        assert_eq!(Unit::Bits.scale(std::f64::consts::LN_2), 1.0);
        assert_eq!(Unit::Nats.scale(0.3), 0.3);
    }
}
