//! Command-line front end: manifold file ingestion, command dispatch and
//! report rendering. [`run`] returns the exit code and both output streams
//! so commands can be tested without spawning a process.
//!
//! Exit codes: `0` success, `2` domain error (invalid data or violated
//! precondition), `3` parse error (bad file or argument syntax).

pub mod args;
mod commands;
pub mod error;
pub mod manifest;
pub mod report;

use clap::{Args, Parser, Subcommand, ValueEnum};
use std::path::PathBuf;

pub use error::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Default)]
pub enum Format {
    #[default]
    Text,
    Json,
}

#[derive(Debug, Parser)]
#[command(
    name = "swcalc",
    version,
    about = "Exact Seiberg-Witten invariant arithmetic for closed oriented 4-manifolds",
    after_help = "Vectors are comma-separated coordinates in the basis of the manifold file, \
                  e.g. `--c 3` on CP2 or `--c 2,-4` on S2xS2. Rationals are written p or p/q."
)]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check a manifold file against every structural invariant.
    Validate {
        file: PathBuf,
        /// Print the canonical form of the file instead of a report.
        #[arg(long)]
        echo: bool,
    },
    /// Expected dimensions: abelian w_c, or the PU(2) dimension with --pu2.
    Dim(DimArgs),
    /// Admissibility of p (Spin^Sp(1)) or of (p, c) (Spin^U(2)).
    Admissible {
        file: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        p: i64,
        #[arg(long, allow_hyphen_values = true)]
        c: Option<String>,
    },
    /// SW+ / SW- table for b1 = 0, b+ = 1 from PSC and/or Kähler facts.
    SwTable(SwTableArgs),
    /// Uhlenbeck strata of a PU(2) moduli space.
    Strata {
        file: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        p1: i64,
        #[arg(long, allow_hyphen_values = true)]
        c1: String,
        #[arg(long)]
        max_l: Option<u32>,
    },
    /// Chamber of (h, b) relative to the wall of c (b+ = 1).
    Chamber {
        file: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        c: String,
        /// Twisting class; defaults to 0.
        #[arg(long, allow_hyphen_values = true)]
        b: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        h: String,
        /// Component the ray represents: 1 or -1.
        #[arg(long, default_value_t = 1, allow_hyphen_values = true)]
        component: i64,
    },
    /// Wall-crossing difference (SW+ - SW-)(lambda) for b+ = 1.
    WallCross {
        file: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        c: String,
        /// Homogeneous form, e.g. `1` or `3:1,2;-1:3,4`.
        #[arg(long, default_value = "1", allow_hyphen_values = true)]
        lambda: String,
        #[arg(long, default_value_t = 1, allow_hyphen_values = true)]
        o1: i64,
        /// Ray in the component H0; defaults to the file's PSC or Kähler ray.
        #[arg(long, allow_hyphen_values = true)]
        h0: Option<String>,
    },
    /// Stability predicates on slopes and Hilbert polynomials.
    #[command(subcommand)]
    Stability(StabilityCommand),
}

#[derive(Debug, Args)]
pub struct DimArgs {
    pub file: PathBuf,
    #[arg(long, allow_hyphen_values = true, conflicts_with = "pu2")]
    pub c: Option<String>,
    #[arg(long, requires_all = ["p1", "c1"])]
    pub pu2: bool,
    #[arg(long, allow_hyphen_values = true)]
    pub p1: Option<i64>,
    #[arg(long, allow_hyphen_values = true)]
    pub c1: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Default)]
pub enum Via {
    #[default]
    Auto,
    Psc,
    Kahler,
}

#[derive(Debug, Args)]
pub struct SwTableArgs {
    pub file: PathBuf,
    /// Lower bound for every coordinate of c.
    #[arg(long, allow_hyphen_values = true)]
    pub cmin: i64,
    /// Upper bound for every coordinate of c.
    #[arg(long, allow_hyphen_values = true)]
    pub cmax: i64,
    #[arg(long, value_enum, default_value_t = Via::Auto)]
    pub via: Via,
    /// Orientation of H^1: 1 or -1.
    #[arg(long, default_value_t = 1, allow_hyphen_values = true)]
    pub o1: i64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum EStability {
    Stable,
    Polystable,
    Neither,
}

#[derive(Debug, Subcommand)]
pub enum StabilityCommand {
    /// mu = degree / rank.
    Slope {
        #[arg(long, allow_hyphen_values = true)]
        degree: String,
        #[arg(long)]
        rank: u32,
    },
    /// Rank-2 oriented pair; omit --mu-div for phi = 0.
    Pair {
        #[arg(long, allow_hyphen_values = true)]
        mu_e: String,
        #[arg(long, allow_hyphen_values = true)]
        mu_div: Option<String>,
        #[arg(long, value_enum, default_value_t = EStability::Neither)]
        e_stability: EStability,
    },
    /// Split pair O(D) + L(-D) with phi cutting out D.
    SplitPair {
        #[arg(long, allow_hyphen_values = true)]
        deg_d: String,
        #[arg(long, allow_hyphen_values = true)]
        deg_l: String,
    },
    /// rho-stability interval, from bounds or from witness slopes.
    Rho {
        #[arg(long, allow_hyphen_values = true)]
        under: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        over: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        mu_e: Option<String>,
        /// Slope of a reflexive subsheaf (repeatable).
        #[arg(long = "sub", allow_hyphen_values = true)]
        subs: Vec<String>,
        /// Slope of E/F for a subsheaf F containing phi (repeatable).
        #[arg(long = "quot", allow_hyphen_values = true)]
        quots: Vec<String>,
    },
    /// Eventual-dominance comparison of two polynomials.
    Compare {
        #[arg(long, allow_hyphen_values = true)]
        p: String,
        #[arg(long, allow_hyphen_values = true)]
        q: String,
    },
    /// delta = P_E - (rk E / rk K) P_K.
    Delta {
        #[arg(long, allow_hyphen_values = true)]
        pe: String,
        #[arg(long)]
        rk_e: u32,
        #[arg(long, allow_hyphen_values = true)]
        pker: String,
        #[arg(long)]
        rk_ker: u32,
    },
    /// Semistability of an oriented sheaf relative to supplied subsheaves.
    Semistable {
        #[arg(long)]
        rk_e: u32,
        #[arg(long, allow_hyphen_values = true)]
        pe: String,
        #[arg(long)]
        phi_injective: bool,
        #[arg(long)]
        epsilon_iso: bool,
        /// ker(phi)_max as rank:coeffs.
        #[arg(long, allow_hyphen_values = true)]
        kermax: Option<String>,
        /// Test subsheaf as rank:coeffs (repeatable).
        #[arg(long = "sub", allow_hyphen_values = true)]
        subs: Vec<String>,
    },
}

/// Result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

pub fn run<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 3,
            };
            let text = e.render().to_string();
            return if code == 0 {
                Outcome {
                    code,
                    stdout: text,
                    stderr: String::new(),
                }
            } else {
                Outcome {
                    code,
                    stdout: String::new(),
                    stderr: text,
                }
            };
        }
    };
    match commands::execute(&cli) {
        Ok(stdout) => Outcome {
            code: 0,
            stdout,
            stderr: String::new(),
        },
        Err(e) => Outcome {
            code: e.exit_code(),
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        },
    }
}
