//! Command-line front end for the `latpath` binary.

use std::ffi::OsString;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand, ValueEnum};

use crate::cltlab::{convergence_report, ReportRow};
use crate::enumerate::{enumerate_restricted, enumerate_simple, enumerate_unrestricted};
use crate::error::{Error, Result};
use crate::exactmath::{ratio_to_f64, Count};
use crate::genfunc::path_length_poly;
use crate::pathcount::{total_paths, LatticePoint};
use crate::strategy::{CountKind, StrategyRegistry, DEFAULT_STRATEGY};
use crate::verify::{run_all, DEFAULT_MAX_PQ};
use crate::zeckseq::{build_sequence, decompositions};

#[derive(Parser, Debug)]
#[command(name = "latpath", version, about = "Exact counts of jump paths on integer lattices")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Count paths from a point, optionally of a fixed length.
    Count(CountArgs),
    /// List paths from a planar point by brute force.
    Enumerate {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        q: u64,
        /// Only paths ending at the origin.
        #[arg(long)]
        restricted: bool,
        /// Only chains that decrease every coordinate at each step.
        #[arg(long, conflicts_with = "restricted")]
        simple: bool,
        #[arg(long)]
        list: bool,
    },
    /// Coefficients of the path-length generating function.
    Genfun {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        q: u64,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
    /// Values of the planar decomposition sequence.
    Sequence {
        #[arg(long)]
        diagonals: u64,
        #[arg(long, value_enum, default_value_t = CsvOnly::Csv)]
        format: CsvOnly,
    },
    /// Legal decompositions of a positive integer.
    Decompose {
        #[arg(long)]
        value: u64,
        #[arg(long)]
        diagonals: u64,
        #[arg(long)]
        list: bool,
    },
    /// Exact against asymptotic path-length statistics along q = c p.
    Clt {
        #[arg(long)]
        c: f64,
        #[arg(long = "n-list", value_delimiter = ',', required = true)]
        n_list: Vec<u64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the invariant suite.
    Verify {
        #[arg(long = "max-pq", default_value_t = DEFAULT_MAX_PQ)]
        max_pq: u64,
    },
    /// List registered counting methods.
    Methods,
}

#[derive(clap::Args, Debug)]
struct CountArgs {
    #[arg(long, requires = "q", conflicts_with = "point")]
    p: Option<u64>,
    #[arg(long, requires = "p")]
    q: Option<u64>,
    /// Comma-separated coordinates, any dimension.
    #[arg(long, required_unless_present = "p")]
    point: Option<String>,
    #[arg(long)]
    n: Option<u64>,
    #[arg(long, value_enum)]
    kind: Option<Kind>,
    /// Counting method; defaults to closed-form in 2-D and
    /// inclusion-exclusion otherwise.
    #[arg(long)]
    method: Option<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Kind {
    U,
    G,
    Total,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum CsvOnly {
    Csv,
}

/// Parses `args` (program name first), writes results to `out` and
/// diagnostics to `err`, and returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{text}");
                    0
                }
                _ => {
                    let _ = write!(err, "{text}");
                    2
                }
            };
        }
    };
    match dispatch(cli.command, out) {
        Ok(code) => code,
        Err(Failure::Io(e)) => {
            let _ = writeln!(err, "error: {e}");
            1
        }
        Err(Failure::Lib(e)) => {
            let _ = writeln!(err, "error: {e}");
            match e {
                Error::InvalidArgument(_) | Error::UnknownStrategy(_) => 2,
                _ => 1,
            }
        }
    }
}

enum Failure {
    Lib(Error),
    Io(io::Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e)
    }
}

fn dispatch(command: Command, out: &mut dyn Write) -> std::result::Result<i32, Failure> {
    match command {
        Command::Count(args) => writeln!(out, "{}", count(&args)?)?,
        Command::Enumerate {
            p,
            q,
            restricted,
            simple,
            list,
        } => {
            let point = LatticePoint::planar(p, q);
            let paths = if simple {
                enumerate_simple(&point)?
            } else if restricted {
                enumerate_restricted(&point)?
            } else {
                enumerate_unrestricted(&point, None)?
            };
            writeln!(out, "{}", paths.len())?;
            if list {
                for path in &paths {
                    writeln!(out, "{path}")?;
                }
            }
        }
        Command::Genfun { p, q, format } => {
            let counts = path_length_poly(p, q).counts();
            match format {
                Format::Csv => {
                    writeln!(out, "k,count")?;
                    for (k, c) in counts.iter().enumerate() {
                        writeln!(out, "{k},{c}")?;
                    }
                }
                Format::Json => {
                    let strings: Vec<String> = counts.iter().map(Count::to_string).collect();
                    let json = serde_json::to_string(&strings).map_err(io::Error::from)?;
                    writeln!(out, "{json}")?;
                }
            }
        }
        Command::Sequence { diagonals, .. } => {
            let grid = build_sequence(diagonals)?;
            writeln!(out, "x,y,order,value")?;
            for (order, (point, value)) in grid.entries().enumerate() {
                let c = point.coords();
                writeln!(out, "{},{},{order},{value}", c[0], c[1])?;
            }
        }
        Command::Decompose {
            value,
            diagonals,
            list,
        } => {
            let grid = build_sequence(diagonals)?;
            let found = decompositions(value, &grid)?;
            writeln!(out, "{}", found.len())?;
            if list {
                for d in &found {
                    writeln!(out, "{d}")?;
                }
            }
        }
        Command::Clt { c, n_list, out: path } => {
            let rows = convergence_report(c, &n_list)?;
            match path {
                Some(path) => {
                    let mut file = BufWriter::new(File::create(path)?);
                    write_report(&rows, &mut file)?;
                    file.flush()?;
                }
                None => write_report(&rows, out)?,
            }
        }
        Command::Verify { max_pq } => {
            let report = run_all(max_pq);
            let total = report.outcomes.len();
            let mut failed = 0;
            for o in report.failures() {
                failed += 1;
                writeln!(out, "FAIL {}: {}", o.name, o.failure.as_deref().unwrap_or(""))?;
            }
            writeln!(out, "{} of {total} checks passed", total - failed)?;
            return Ok(if failed == 0 { 0 } else { 1 });
        }
        Command::Methods => {
            for s in StrategyRegistry::builtin().iter() {
                writeln!(out, "{}\t{}", s.name(), s.summary())?;
            }
        }
    }
    Ok(0)
}

fn count(args: &CountArgs) -> Result<Count> {
    let point = match (&args.point, args.p, args.q) {
        (Some(text), _, _) => parse_point(text)?,
        (None, Some(p), Some(q)) => LatticePoint::planar(p, q),
        _ => return Err(Error::InvalidArgument("give --p and --q, or --point".into())),
    };
    let kind = match (args.kind, args.n) {
        (Some(k), _) => k,
        (None, Some(_)) if args.point.is_none() => Kind::U,
        (None, Some(_)) => Kind::G,
        (None, None) => Kind::Total,
    };
    if args.point.is_some() && kind == Kind::U {
        return Err(Error::InvalidArgument(
            "--point supports kinds g and total only".into(),
        ));
    }
    let registry = StrategyRegistry::builtin();
    let method = match &args.method {
        Some(m) => m.as_str(),
        None if point.dim() == 2 => DEFAULT_STRATEGY,
        None => "inclusion-exclusion",
    };
    let strategy = registry.get(method)?;
    match (kind, args.n) {
        (Kind::Total, Some(_)) => Err(Error::InvalidArgument(
            "kind `total` sums over all lengths and takes no --n".into(),
        )),
        (Kind::Total, None) if args.method.is_none() => total_paths(&point),
        (Kind::Total, None) => Ok(strategy.table(CountKind::Unrestricted, &point)?.total()),
        (k, n) => {
            let kind = if k == Kind::U {
                CountKind::Unrestricted
            } else {
                CountKind::Restricted
            };
            match n {
                Some(n) => strategy.count(kind, &point, n),
                None => Ok(strategy.table(kind, &point)?.total()),
            }
        }
    }
}

fn parse_point(text: &str) -> Result<LatticePoint> {
    let coords = text
        .split(',')
        .map(|s| {
            s.trim()
                .parse::<u64>()
                .map_err(|_| Error::InvalidArgument(format!("bad coordinate `{s}` in --point")))
        })
        .collect::<Result<Vec<_>>>()?;
    LatticePoint::new(coords)
}

fn write_report(rows: &[ReportRow], out: &mut dyn Write) -> io::Result<()> {
    writeln!(out, "n,p,q,mean_exact,mean_asymp,var_exact,var_asymp,ks,tail_mass")?;
    for r in rows {
        writeln!(
            out,
            "{},{},{},{},{},{},{},{},{}",
            r.n,
            r.p,
            r.q,
            sig12(ratio_to_f64(&r.mean_exact)),
            sig12(r.mean_asymp),
            sig12(ratio_to_f64(&r.var_exact)),
            sig12(r.var_asymp),
            sig12(r.ks),
            sig12(r.tail_mass),
        )?;
    }
    Ok(())
}

/// Plain decimal with 12 significant digits.
pub fn sig12(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return if x == 0.0 { "0".into() } else { x.to_string() };
    }
    let magnitude = x.abs().log10().floor() as i32;
    let decimals = (11 - magnitude).max(0) as usize;
    format!("{x:.decimals$}")
}
