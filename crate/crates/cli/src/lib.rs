//! The `wpcurve` command line. [`run`] takes the argument vector and two
//! streams and returns the process exit code:
//!
//! | code | meaning                                         |
//! |------|-------------------------------------------------|
//! | 0    | success                                         |
//! | 2    | domain error (invalid curve, bad cycles, ...)   |
//! | 3    | a resource cap or search bound was hit          |
//! | 64   | usage error (unknown subcommand, flag, config)  |

mod commands;
pub mod config;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};
use serde_json::json;

pub use config::{Config, ConfigError, Format};

/// Version of the JSON envelope emitted with `--format json`.
pub const SCHEMA_VERSION: u32 = 1;

pub const EXIT_OK: u8 = 0;
pub const EXIT_DOMAIN: u8 = 2;
pub const EXIT_RESOURCE: u8 = 3;
pub const EXIT_USAGE: u8 = 64;

#[derive(Parser, Debug)]
#[command(name = "wpcurve", version, about = "Invariants, quotients and realizations of weighted projective curves")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug)]
pub struct GlobalArgs {
    /// Output format
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Configuration file of `key = value` lines
    #[arg(long, global = true, value_name = "FILE")]
    pub config: Option<PathBuf>,
    /// Maximal number of group elements stored while computing orders
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    pub cap: Option<u64>,
    /// Worker threads for parallel searches
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    pub workers: Option<u64>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Orbifold Euler characteristic, e.g. `chi g=0 w=2,3,7`
    Chi(CurveArgs),
    /// Spherical, parabolic, hyperbolic, or excluded
    Classify(CurveArgs),
    /// Averaged Euler form of two classes given by rank and degree
    K0(K0Args),
    /// Permutation arithmetic in cycle notation
    #[command(subcommand)]
    Perm(PermCommand),
    /// Presentation of the orbifold fundamental group
    Presentation(CurveArgs),
    /// Search permutations c1, c2, c3 = (c1 c2)^-1 of orders a, b, c
    Witness(WitnessArgs),
    /// Verify a finite quotient and certify its torsionfree kernel
    Certify(CertifyArgs),
    /// Twisted companion curve of a weighted projective line
    Companion(CompanionArgs),
    /// Polyhedral realization `realize <P> <eps> <a> <r>`, e.g. `realize D5 0,1,0 3 0`
    Realize(RealizeArgs),
    /// Recompute the strange-duality table
    Arnold {
        /// Append the consistency audit
        #[arg(long)]
        audit: bool,
    },
    /// Dominance graph of spherical weighted projective lines
    Dominance {
        #[arg(long, default_value_t = 6)]
        nmax: u64,
        #[arg(long, default_value_t = 3)]
        amax: u64,
    },
}

#[derive(Args, Debug)]
pub struct CurveArgs {
    /// `g=<genus>` and `w=<a1,a2,...>`; both optional
    #[arg(value_name = "g=G w=A1,...")]
    pub curve: Vec<String>,
}

#[derive(Args, Debug)]
pub struct K0Args {
    #[command(flatten)]
    pub curve: CurveArgs,
    /// Rank of x, then optionally of y
    #[arg(long, num_args = 1, allow_negative_numbers = true, required = true)]
    pub rank: Vec<String>,
    /// Degree of x, then optionally of y
    #[arg(long, num_args = 1, allow_negative_numbers = true, required = true)]
    pub degree: Vec<String>,
    /// Use the simple sheaf at a point of this weight as y
    #[arg(long, value_name = "WEIGHT")]
    pub simple: Option<u64>,
}

#[derive(Subcommand, Debug)]
pub enum PermCommand {
    /// Order of a permutation
    Order { perm: String },
    /// Left-to-right product
    Mul {
        #[arg(required = true)]
        perms: Vec<String>,
    },
    /// Order of the generated group
    GroupOrder {
        #[arg(required = true)]
        gens: Vec<String>,
    },
    /// Whether the generated group is simple
    Simple {
        #[arg(required = true)]
        gens: Vec<String>,
    },
}

#[derive(Args, Debug)]
pub struct WitnessArgs {
    pub a: u64,
    pub b: u64,
    pub c: u64,
    /// Largest permutation degree searched
    #[arg(long)]
    pub max_degree: Option<usize>,
    /// Also verify the witness and report the index
    #[arg(long)]
    pub certify: bool,
}

#[derive(Args, Debug)]
pub struct CertifyArgs {
    /// JSON file with `presentation` and `images`
    #[arg(long, value_name = "FILE", conflicts_with = "curve")]
    pub images: Option<PathBuf>,
    /// Certify a curve given as `g=.. w=..` by searching images
    #[arg(value_name = "g=G w=A1,...")]
    pub curve: Vec<String>,
    #[arg(long)]
    pub max_degree: Option<usize>,
}

#[derive(Args, Debug)]
pub struct CompanionArgs {
    /// Comma-separated weights
    pub weights: String,
    /// Opaque moduli parameter
    #[arg(long)]
    pub lambda: Option<String>,
}

#[derive(Args, Debug)]
pub struct RealizeArgs {
    /// `C<n>`, `D<n>`, `A4`, `S4`, `A5`
    pub group: String,
    /// Three flags, `0,1,0` or `010`
    pub eps: String,
    pub a: u64,
    pub r: u64,
}

/// Failure of a command, mapped to an exit code.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Library(#[from] wpcurve::Error),
    #[error("{0}")]
    Input(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Library(e) if e.is_resource() => EXIT_RESOURCE,
            CliError::Library(_) | CliError::Input(_) => EXIT_DOMAIN,
        }
    }
}

/// Rendered result of a command in every format it supports.
pub struct Output {
    pub command: &'static str,
    pub text: String,
    pub json: serde_json::Value,
    pub dot: Option<String>,
}

/// Parses `args` (including the program name), runs the command and writes
/// the result to `out` and diagnostics to `err`.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{}", e.render());
                    EXIT_OK
                }
                _ => {
                    let _ = write!(err, "{}", e.render());
                    EXIT_USAGE
                }
            };
        }
    };
    let env_workers = std::env::var("WPCURVE_WORKERS").ok();
    match execute(&cli, env_workers.as_deref()) {
        Ok(rendered) => {
            let _ = out.write_all(rendered.as_bytes());
            EXIT_OK
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

/// Resolves the configuration: defaults, then the config file, then the
/// worker override from the environment, then flags.
pub fn resolve_config(global: &GlobalArgs, env_workers: Option<&str>) -> Result<Config, CliError> {
    let mut config = Config::default();
    if let Some(path) = &global.config {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Usage(format!("cannot read config {}: {e}", path.display())))?;
        config = config
            .merge_file(&text)
            .map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
    }
    if let Some(w) = env_workers {
        config.worker_count = w
            .trim()
            .parse()
            .ok()
            .filter(|&n: &usize| n >= 1)
            .ok_or_else(|| CliError::Usage(format!("WPCURVE_WORKERS must be a positive integer, got `{w}`")))?;
    }
    if let Some(f) = global.format {
        config.output_format = f;
    }
    if let Some(c) = global.cap {
        config.max_group_order_cap = c;
    }
    if let Some(w) = global.workers {
        config.worker_count = w as usize;
    }
    Ok(config)
}

fn execute(cli: &Cli, env_workers: Option<&str>) -> Result<String, CliError> {
    let config = resolve_config(&cli.global, env_workers)?;
    let output = commands::dispatch(&cli.command, &config)?;
    match config.output_format {
        Format::Text => {
            let mut text = output.text;
            if !text.ends_with('\n') {
                text.push('\n');
            }
            Ok(text)
        }
        Format::Json => {
            let doc = json!({
                "schema_version": SCHEMA_VERSION,
                "tool_version": wpcurve::TOOL_VERSION,
                "command": output.command,
                "result": output.json,
            });
            Ok(serde_json::to_string_pretty(&doc).expect("JSON values serialize") + "\n")
        }
        Format::Dot => output.dot.ok_or_else(|| {
            CliError::Usage(format!("--format dot is not available for `{}`", output.command))
        }),
    }
}
