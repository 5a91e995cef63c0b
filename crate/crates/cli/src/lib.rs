//! `zlab` command line: each subcommand wraps one `zlab-core` operation and
//! prints JSON (or CSV where the output is a table) on standard output.
//!
//! Exit codes: 0 on success, 1 on usage errors, 2 on domain errors. Errors
//! are printed to standard error as `{"error": kind, "details": [...]}`.

mod commands;
mod output;
pub mod surface;

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use zlab_core::Error;

pub use surface::{parse_surface, serialize_surface};

/// Environment variable overriding the orbit size cap of `weyl-orbit`.
pub const ORBIT_CAP_VAR: &str = "ZLAB_ORBIT_CAP";

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("invalid surface file: {}", .0.join("; "))]
    Schema(Vec<String>),
    #[error("{0}")]
    Signature(String),
    #[error("{0}")]
    AmpleWitness(String),
    #[error("{0}")]
    CurvePairing(String),
    #[error(transparent)]
    Domain(#[from] Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 1,
            _ => 2,
        }
    }

    pub fn kind(&self) -> String {
        match self {
            CliError::Usage(_) => "UsageError".into(),
            CliError::Schema(_) => "SchemaError".into(),
            CliError::Signature(_) => "SignatureError".into(),
            CliError::AmpleWitness(_) => "AmpleWitnessError".into(),
            CliError::CurvePairing(_) => "CurvePairingError".into(),
            CliError::Domain(e) => {
                let name = format!("{e:?}");
                name.split(['(', ' ', '{']).next().unwrap_or_default().to_string()
            }
        }
    }

    fn details(&self) -> Vec<String> {
        match self {
            CliError::Schema(issues) => issues.clone(),
            other => vec![other.to_string()],
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Parser)]
#[command(name = "zlab", version, about = "Zariski decompositions, chambers and volumes on surfaces")]
pub struct Cli {
    /// Output format; CSV is available for chambers-enum, walk and cutkosky-scan.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct SurfaceArgs {
    /// Surface JSON file.
    #[arg(long, value_name = "FILE", required_unless_present = "r", conflicts_with = "r")]
    pub surface: Option<PathBuf>,
    /// Use the plane blown up in R general points (1..=8) instead of a file.
    #[arg(long, value_name = "R")]
    pub r: Option<usize>,
}

#[derive(Debug, Args)]
pub struct ClassArgs {
    #[command(flatten)]
    pub surface: SurfaceArgs,
    /// Coordinates in the surface basis, comma separated, e.g. `3,-1,-1/2`.
    #[arg(long, value_name = "COORDS", allow_hyphen_values = true)]
    pub class: String,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Zariski decomposition D = P + N.
    Zariski(ClassArgs),
    /// Chamber containing D and whether D lies on a wall.
    Chamber(ClassArgs),
    /// Volume of D.
    Volume(ClassArgs),
    /// Volume polynomial of one chamber, as a symmetric matrix.
    Volpoly {
        #[command(flatten)]
        surface: SurfaceArgs,
        /// Comma-separated curve labels of the chamber support; empty for the nef chamber.
        #[arg(long, value_name = "LABELS", default_value = "", allow_hyphen_values = true)]
        chamber: String,
    },
    /// All chambers with a nef witness for each.
    ChambersEnum(SurfaceArgs),
    /// Walk along L − λA and report the destabilizing numbers.
    Walk {
        #[command(flatten)]
        surface: SurfaceArgs,
        #[arg(long, value_name = "COORDS", allow_hyphen_values = true)]
        l: String,
        /// Ample direction; defaults to the surface's ample witness.
        #[arg(long, value_name = "COORDS", allow_hyphen_values = true)]
        a: Option<String>,
    },
    /// Stable base locus of a stable divisor.
    StableBaseLocus(ClassArgs),
    /// Print the del Pezzo model on R points as a surface file.
    Delpezzo {
        #[arg(long, value_name = "R")]
        r: usize,
        /// Print only the number of exceptional curves.
        #[arg(long)]
        count_curves: bool,
    },
    /// Orbit of a class under the simple-root reflections.
    WeylOrbit(ClassArgs),
    /// Order of the group generated by the simple-root reflections (R ≤ 6).
    WeylOrder(SurfaceArgs),
    /// Volume of the reflection of a nef class in a (−2)-curve.
    K3Reflect {
        #[command(flatten)]
        class: ClassArgs,
        /// Label of the curve to reflect in.
        #[arg(long)]
        curve: String,
    },
    /// Exact volume of the ruled threefold class L(ε).
    CutkoskyVol {
        #[arg(long, value_name = "EPS", allow_hyphen_values = true)]
        eps: String,
    },
    /// (ε, vol) samples on an evenly spaced grid of [FROM, TO].
    CutkoskyScan {
        #[arg(long, default_value = "0", allow_hyphen_values = true)]
        from: String,
        #[arg(long, default_value = "1", allow_hyphen_values = true)]
        to: String,
        /// Number of intervals; STEPS + 1 samples are printed.
        #[arg(long, default_value_t = 20)]
        steps: u32,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => Outcome { code: 0, stdout: text, stderr: String::new() },
                _ => Outcome { code: 1, stdout: String::new(), stderr: text },
            };
        }
    };
    match commands::execute(&cli) {
        Ok(stdout) => Outcome { code: 0, stdout, stderr: String::new() },
        Err(e) => {
            let body = serde_json::json!({ "error": e.kind(), "details": e.details() });
            Outcome { code: e.exit_code(), stdout: String::new(), stderr: format!("{body}\n") }
        }
    }
}
