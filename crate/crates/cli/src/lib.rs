//! Command-line driver for ideal-Shi verification campaigns.

pub mod campaign;
pub mod listing;
pub mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use idealshi::cache::LatticeCache;
use idealshi::{LatticeBounds, RootSystem, RootSystemType, Sign};

use campaign::{Context, Method, Subset};
use report::{Record, Report};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    #[default]
    Pretty,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SignChoice {
    Plus,
    Minus,
    Both,
}

impl SignChoice {
    fn signs(self) -> Vec<Sign> {
        match self {
            SignChoice::Plus => vec![Sign::Plus],
            SignChoice::Minus => vec![Sign::Minus],
            SignChoice::Both => vec![Sign::Plus, Sign::Minus],
        }
    }
}

fn parse_sign(s: &str) -> Result<SignChoice, String> {
    match s {
        "+" | "plus" => Ok(SignChoice::Plus),
        "-" | "minus" => Ok(SignChoice::Minus),
        "both" | "+-" | "±" => Ok(SignChoice::Both),
        _ => Err(format!("expected +, -, or both, got {s:?}")),
    }
}

#[derive(Debug, Parser)]
#[command(name = "idealshi", version, about = "Exact checks on ideal-Shi arrangements of root systems")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Pretty)]
    pub format: Format,

    /// Write output to this file instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    /// Directory for cached lattice summaries.
    #[arg(long, global = true, env = "IDEALSHI_CACHE")]
    pub cache_dir: Option<PathBuf>,

    /// Worker threads for case-level parallelism.
    #[arg(long, global = true, default_value_t = 1)]
    pub jobs: usize,

    /// Record per-case wall-clock times (makes reports non-reproducible).
    #[arg(long, global = true)]
    pub timings: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Positive roots in canonical order with heights.
    Roots {
        #[arg(value_name = "TYPE")]
        ty: RootSystemType,
    },
    /// Ideals of the root poset with their exponents.
    Ideals {
        #[arg(value_name = "TYPE")]
        ty: RootSystemType,
    },
    /// Weyl exponents, and predicted Shi exponents for selected ideals.
    Exponents {
        #[arg(value_name = "TYPE")]
        ty: RootSystemType,
        #[command(flatten)]
        scope: Scope,
    },
    /// Run the check matrix on Shi^k_{±Σ}.
    Verify {
        #[arg(value_name = "TYPE")]
        ty: RootSystemType,
        #[command(flatten)]
        scope: Scope,
    },
    /// Walk the saturated filtration of the cone of the affine Weyl arrangement.
    Filtration {
        #[arg(value_name = "TYPE")]
        ty: RootSystemType,
        /// Number of steps A_1, ..., A_N.
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        steps: u64,
        #[arg(long, default_value_t = 80)]
        max_hyperplanes: usize,
    },
    /// Characteristic polynomial of Shi^k_{±Σ}.
    Charpoly {
        #[arg(value_name = "TYPE")]
        ty: RootSystemType,
        #[command(flatten)]
        scope: Scope,
        #[arg(long, value_enum, default_value_t = Method::Mobius)]
        method: Method,
    },
}

#[derive(Debug, Args)]
pub struct Scope {
    /// Shift parameter k >= 1.
    #[arg(short = 'k', default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
    pub k: u64,

    /// +, -, or both.
    #[arg(long, value_parser = parse_sign, default_value = "both", allow_hyphen_values = true)]
    pub sign: SignChoice,

    /// Comma-separated roots such as "a1+a2,a1"; "none" is the empty set. Repeatable.
    #[arg(long)]
    pub subset: Vec<String>,

    /// Index into the ideal enumeration (see `ideals`). Repeatable.
    #[arg(long)]
    pub ideal: Vec<usize>,

    /// Every ideal of the root poset.
    #[arg(long)]
    pub all_ideals: bool,

    /// Skip cases with more hyperplanes than this.
    #[arg(long, default_value_t = 80)]
    pub max_hyperplanes: usize,
}

impl Scope {
    fn cases(&self, rs: &RootSystem, default_empty: bool) -> Result<Vec<Subset>, CliError> {
        let mut out = Vec::new();
        if self.all_ideals {
            out.extend(campaign::all_ideals(rs)?);
        }
        for &i in &self.ideal {
            out.push(campaign::ideal_by_index(rs, i)?);
        }
        for s in &self.subset {
            out.push(campaign::parse_subset(rs, s)?);
        }
        if out.is_empty() {
            if !default_empty {
                return Err(CliError::Usage("choose cases with --all-ideals, --ideal, or --subset".into()));
            }
            out.push(campaign::parse_subset(rs, "none")?);
        }
        Ok(out)
    }
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Lib(#[from] idealshi::Error),
    #[error("{0}")]
    Io(#[from] std::io::Error),
}

/// Output text and whether any expectation failed.
pub struct Output {
    pub text: String,
    pub failed: bool,
}

fn context(cli: &Cli, max_hyperplanes: usize) -> Result<Context, CliError> {
    let cache = cli.cache_dir.as_ref().map(LatticeCache::open).transpose()?;
    Ok(Context { cache, bounds: LatticeBounds::default(), max_hyperplanes, timings: cli.timings })
}

/// Evaluates `f` over `items` on `jobs` threads, keeping input order.
fn run_cases<T, F>(jobs: usize, items: &[T], f: F) -> Vec<Result<Record, idealshi::Error>>
where
    T: Sync,
    F: Fn(&T) -> Result<Record, idealshi::Error> + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if jobs > 1 {
        use rayon::prelude::*;
        let pool = rayon::ThreadPoolBuilder::new().num_threads(jobs).build().expect("thread pool");
        return pool.install(|| items.par_iter().map(&f).collect());
    }
    let _ = jobs;
    items.iter().map(f).collect()
}

fn render(report: &Report, format: Format) -> Output {
    let text = match format {
        Format::Json => report.to_json(),
        Format::Csv => report.to_csv(),
        Format::Pretty => report.to_pretty(),
    };
    Output { text, failed: report.has_failures() }
}

fn report_from(command: &str, results: Vec<Result<Record, idealshi::Error>>) -> Result<Report, CliError> {
    let records = results.into_iter().collect::<Result<Vec<_>, _>>()?;
    Ok(Report::new(command, records))
}

pub fn execute(cli: &Cli) -> Result<Output, CliError> {
    let plain = |text: String| Output { text, failed: false };
    match &cli.command {
        Command::Roots { ty } => Ok(plain(listing::roots(&RootSystem::build(*ty), cli.format))),
        Command::Ideals { ty } => Ok(plain(listing::ideals(&RootSystem::build(*ty), cli.format)?)),
        Command::Exponents { ty, scope } => {
            let rs = RootSystem::build(*ty);
            let cases = if scope.all_ideals || !scope.ideal.is_empty() || !scope.subset.is_empty() {
                scope.cases(&rs, false)?
            } else {
                Vec::new()
            };
            Ok(plain(listing::exponents(&rs, scope.k, &cases, &scope.sign.signs(), cli.format)?))
        }
        Command::Verify { ty, scope } => {
            let rs = RootSystem::build(*ty);
            let ctx = context(cli, scope.max_hyperplanes)?;
            let items: Vec<(Subset, Sign)> = scope
                .cases(&rs, false)?
                .into_iter()
                .flat_map(|s| scope.sign.signs().into_iter().map(move |sign| (s.clone(), sign)))
                .collect();
            let results = run_cases(cli.jobs, &items, |(s, sign)| campaign::verify_case(&ctx, &rs, scope.k, s, *sign));
            Ok(render(&report_from("verify", results)?, cli.format))
        }
        Command::Filtration { ty, steps, max_hyperplanes } => {
            let rs = RootSystem::build(*ty);
            let ctx = context(cli, *max_hyperplanes)?;
            let records = campaign::filtration_records(&ctx, &rs, *steps as usize)?;
            Ok(render(&Report::new("filtration", records), cli.format))
        }
        Command::Charpoly { ty, scope, method } => {
            let rs = RootSystem::build(*ty);
            let ctx = context(cli, scope.max_hyperplanes)?;
            let items: Vec<(Subset, Sign)> = scope
                .cases(&rs, true)?
                .into_iter()
                .flat_map(|s| scope.sign.signs().into_iter().map(move |sign| (s.clone(), sign)))
                .collect();
            let results =
                run_cases(cli.jobs, &items, |(s, sign)| campaign::charpoly_case(&ctx, &rs, scope.k, s, *sign, *method));
            Ok(render(&report_from("charpoly", results)?, cli.format))
        }
    }
}

/// Parses arguments, runs, and maps the outcome to an exit code:
/// 0 all expectations met, 1 an unexpected verdict, 2 usage or input error.
pub fn main_with_args<I, T>(args: I) -> ExitCode
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(e.exit_code() as u8);
        }
    };
    match execute(&cli) {
        Ok(out) => {
            let written = match &cli.out {
                Some(path) => std::fs::write(path, &out.text),
                None => {
                    print!("{}", out.text);
                    Ok(())
                }
            };
            if let Err(e) = written {
                eprintln!("error: {e}");
                return ExitCode::from(2);
            }
            if out.failed {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
