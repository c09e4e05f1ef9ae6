//! The `costas` command line: `table`, `bounds`, `verify`, `grid` and
//! `costas-check`.
//!
//! Exit codes: 0 on success (and when every verdict holds), 1 when a
//! verification fails or a checked permutation is not Costas, 2 on usage or
//! input errors. Results go to stdout; progress and diagnostics to stderr.

use std::ffi::OsString;
use std::io::Write;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand};

use crate::arrays::{FamilyId, MemberLabel, Permutation};
use crate::bounds::{ScanFn, TheoremId};
use crate::error::{Error, Result};
use crate::numthy::{primes_in, PrimeContext};
use crate::report::{
    bounds_row, build_table, build_verify, costas_check, render_bounds, render_costas_check,
    render_grid, render_table, render_table4, render_verify, table4_rows, OutputFormat,
};
use crate::xcorr::{correlation_grid, ScanEngine, ShiftFilter, Workers};

pub const EXIT_OK: u8 = 0;
pub const EXIT_FAILED: u8 = 1;
pub const EXIT_USAGE: u8 = 2;

/// Ranges past this prime are accepted but slow.
const TABULATED_SPAN_END: u64 = 277;

#[derive(Debug, Parser)]
#[command(
    name = "costas",
    version,
    about = "Exhaustive cross-correlation of Welch and power-permutation families over F_p"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Maximal cross-correlation per prime for the chosen families.
    Table(RangeArgs),
    /// Closed-form bound values per prime.
    Bounds(BoundsArgs),
    /// Compare every applicable bound with its exhaustive maximum.
    Verify(VerifyArgs),
    /// Dump the full correlation grid of two permutations.
    Grid(GridArgs),
    /// Check a literal permutation for the Costas property.
    CostasCheck(CheckArgs),
}

#[derive(Debug, Args)]
struct CommonArgs {
    /// Inclusive prime range, `LO..HI` (or a single prime).
    #[arg(long, default_value = "5..277")]
    primes: String,
    /// Output format: csv, markdown or json.
    #[arg(long, default_value = "markdown")]
    format: String,
    /// Worker threads for the exhaustive scans, or `auto`.
    #[arg(long, default_value = "auto")]
    workers: String,
}

#[derive(Debug, Args)]
struct RangeArgs {
    #[command(flatten)]
    common: CommonArgs,
    /// Comma-separated families: Wp, Wpl, Wpel, Pp, PWp, PWpl.
    #[arg(long, default_value = "Wp,Wpel")]
    families: String,
    /// Shift filter applied to every family.
    #[arg(long, default_value = "ALL")]
    filter: String,
}

#[derive(Debug, Args)]
struct BoundsArgs {
    #[command(flatten)]
    common: CommonArgs,
    /// Print floor(4 p log_p alpha) at the least primitive root, nontrivial rows only.
    #[arg(long)]
    table4_compat: bool,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    #[command(flatten)]
    common: CommonArgs,
    /// Comma-separated theorem ids (default: all).
    #[arg(long)]
    theorems: Option<String>,
    /// Also report exhaustive maxima for cases with no claimed bound.
    #[arg(long)]
    open_cases: bool,
}

#[derive(Debug, Args)]
struct GridArgs {
    /// First member: `welch-exp:A`, `welch-log:A`, `power:D` or a literal like `3,2,6,4,5,1`.
    a: String,
    /// Second member, same forms.
    b: String,
    /// Prime for constructed members.
    #[arg(long)]
    prime: Option<u64>,
    #[arg(long, default_value = "markdown")]
    format: String,
}

#[derive(Debug, Args)]
struct CheckArgs {
    /// Comma-separated one-indexed permutation.
    permutation: String,
    #[arg(long, default_value = "markdown")]
    format: String,
}

/// Validated batch settings.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunConfig {
    pub prime_range: (u64, u64),
    pub families: Vec<FamilyId>,
    pub filter: ShiftFilter,
    pub output_format: OutputFormat,
    pub workers: Workers,
    pub table4_compat: bool,
}

impl RunConfig {
    pub fn primes(&self) -> Vec<u64> {
        primes_in(self.prime_range.0, self.prime_range.1)
    }
}

pub fn parse_prime_range(s: &str) -> Result<(u64, u64)> {
    let num = |x: &str| {
        x.trim()
            .parse::<u64>()
            .map_err(|_| Error::Parse(format!("bad prime range {s:?}")))
    };
    let (lo, hi) = match s.split_once("..") {
        Some((lo, hi)) => (num(lo)?, num(hi.trim_start_matches('='))?),
        None => {
            let p = num(s)?;
            (p, p)
        }
    };
    if lo < 5 {
        return Err(Error::Parse(format!("prime range must start at 5 or above, got {lo}")));
    }
    if hi < lo {
        return Err(Error::Parse(format!("empty prime range {lo}..{hi}")));
    }
    Ok((lo, hi))
}

pub fn parse_workers(s: &str) -> Result<Workers> {
    if s.eq_ignore_ascii_case("auto") {
        return Ok(Workers::Auto);
    }
    match s.parse::<usize>() {
        Ok(k) if k > 0 => Ok(Workers::Fixed(k)),
        _ => Err(Error::Parse(format!("workers must be a positive integer or auto, got {s:?}"))),
    }
}

fn parse_list<T: FromStr<Err = Error>>(s: &str) -> Result<Vec<T>> {
    s.split(',').filter(|x| !x.trim().is_empty()).map(T::from_str).collect()
}

fn common_config(c: &CommonArgs) -> Result<RunConfig> {
    Ok(RunConfig {
        prime_range: parse_prime_range(&c.primes)?,
        families: Vec::new(),
        filter: ShiftFilter::All,
        output_format: c.format.parse()?,
        workers: parse_workers(&c.workers)?,
        table4_compat: false,
    })
}

/// A grid operand: a constructed member (needs a prime) or a literal permutation.
fn resolve_member(spec: &str, prime: Option<u64>) -> Result<Permutation> {
    if spec.contains(':') {
        let label: MemberLabel = spec.parse()?;
        let p = prime.ok_or_else(|| Error::Parse(format!("member {spec:?} needs --prime")))?;
        label.build(&PrimeContext::new(p)?)
    } else {
        spec.parse()
    }
}

/// Runs the CLI with the built-in scan engine.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    run_with_scan(args, out, err, None)
}

/// Runs the CLI, optionally replacing the exhaustive scan used by `table`
/// and `verify`.
pub fn run_with_scan<I, T>(
    args: I,
    out: &mut dyn Write,
    err: &mut dyn Write,
    scan_override: Option<&ScanFn<'_>>,
) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                err.write_all(text.as_bytes())
            } else {
                out.write_all(text.as_bytes())
            };
            return code;
        }
    };
    match dispatch(cli.command, out, err, scan_override) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_USAGE
        }
    }
}

fn warn_if_large(cfg: &RunConfig, err: &mut dyn Write) {
    if cfg.prime_range.1 > TABULATED_SPAN_END {
        let _ = writeln!(
            err,
            "warning: primes above {TABULATED_SPAN_END} requested; exhaustive scans grow roughly as p^4"
        );
    }
}

fn dispatch(
    command: Command,
    out: &mut dyn Write,
    err: &mut dyn Write,
    scan_override: Option<&ScanFn<'_>>,
) -> Result<u8> {
    let io = |e: std::io::Error| Error::Parse(format!("write failed: {e}"));
    match command {
        Command::Table(args) => {
            let mut cfg = common_config(&args.common)?;
            cfg.families = parse_list(&args.families)?;
            if cfg.families.is_empty() {
                return Err(Error::Parse("no families requested".into()));
            }
            cfg.filter = args.filter.parse()?;
            warn_if_large(&cfg, err);
            let engine = ScanEngine::new(cfg.workers);
            let default_scan = |c: &PrimeContext, f, s, a| engine.family_max(c, f, s, a);
            let scan: &ScanFn<'_> = scan_override.unwrap_or(&default_scan);
            let report = build_table(&cfg.primes(), &cfg.families, cfg.filter, scan, |p| {
                let _ = writeln!(err, "table: p = {p}");
            })?;
            out.write_all(render_table(&report, cfg.output_format).as_bytes())
                .map_err(io)?;
            Ok(EXIT_OK)
        }
        Command::Bounds(args) => {
            let mut cfg = common_config(&args.common)?;
            cfg.table4_compat = args.table4_compat;
            let primes = cfg.primes();
            let text = if cfg.table4_compat {
                render_table4(&table4_rows(&primes)?, cfg.output_format)
            } else {
                let rows = primes
                    .iter()
                    .map(|&p| bounds_row(&PrimeContext::new(p)?))
                    .collect::<Result<Vec<_>>>()?;
                render_bounds(&rows, cfg.output_format)
            };
            out.write_all(text.as_bytes()).map_err(io)?;
            Ok(EXIT_OK)
        }
        Command::Verify(args) => {
            let cfg = common_config(&args.common)?;
            let theorems = match &args.theorems {
                Some(list) => parse_list(list)?,
                None => TheoremId::ALL.to_vec(),
            };
            warn_if_large(&cfg, err);
            let engine = ScanEngine::new(cfg.workers);
            let default_scan = |c: &PrimeContext, f, s, a| engine.family_max(c, f, s, a);
            let scan: &ScanFn<'_> = scan_override.unwrap_or(&default_scan);
            let report = build_verify(&cfg.primes(), &theorems, args.open_cases, scan, |p| {
                let _ = writeln!(err, "verify: p = {p}");
            })?;
            out.write_all(render_verify(&report, cfg.output_format).as_bytes())
                .map_err(io)?;
            Ok(if report.all_hold { EXIT_OK } else { EXIT_FAILED })
        }
        Command::Grid(args) => {
            let format: OutputFormat = args.format.parse()?;
            let a = resolve_member(&args.a, args.prime)?;
            let b = resolve_member(&args.b, args.prime)?;
            let grid = correlation_grid(&a, &b)?;
            out.write_all(render_grid(&grid, &args.a, &args.b, format).as_bytes())
                .map_err(io)?;
            Ok(EXIT_OK)
        }
        Command::CostasCheck(args) => {
            let format: OutputFormat = args.format.parse()?;
            let f: Permutation = args.permutation.parse()?;
            let check = costas_check(&f);
            out.write_all(render_costas_check(&check, format).as_bytes())
                .map_err(io)?;
            Ok(if check.is_costas() { EXIT_OK } else { EXIT_FAILED })
        }
    }
}
