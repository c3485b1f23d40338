use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "hohlov",
    version,
    about = "Coefficient bounds and numerical checks for the Hohlov-operator class R(a,b;c)"
)]
pub struct Cli {
    /// Output format; each command has its own default.
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,

    /// Write the result here instead of standard output.
    #[arg(long, short, global = true)]
    pub output: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

/// `--a/--b/--c`, or a named specialization.
#[derive(Debug, Clone, Args)]
pub struct ParamArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub a: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub b: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub c: Option<f64>,
    /// NAME[:P1[,P2]], e.g. alexander, ruscheweyh:1, carlson_shaffer:2,1.
    #[arg(long, conflicts_with_all = ["a", "b", "c"])]
    pub preset: Option<String>,
}

#[derive(Debug, Clone, Args)]
pub struct CircleArgs {
    #[arg(long, default_value_t = 0.999)]
    pub radius: f64,
    #[arg(long, default_value_t = 4096)]
    pub samples: usize,
}

#[derive(Debug, Clone, Args)]
pub struct SearchArgs {
    #[arg(long, default_value_t = 41)]
    pub grid_p: usize,
    #[arg(long, default_value_t = 24)]
    pub grid_angle: usize,
    #[arg(long, default_value_t = 6)]
    pub x_radii: usize,
    #[arg(long, default_value_t = 3)]
    pub zeta_radii: usize,
    #[arg(long, default_value_t = 8)]
    pub phases: usize,
    #[arg(long, default_value_t = 100_000)]
    pub atoms: usize,
    #[arg(long, default_value_t = 4)]
    pub max_atoms: usize,
    #[arg(long, default_value_t = 24)]
    pub rotations: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 4096)]
    pub certify_order: usize,
    #[arg(long, default_value_t = 0.999)]
    pub radius: f64,
    #[arg(long, default_value_t = 4096)]
    pub samples: usize,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Multipliers psi_1..psi_n of the operator.
    Psi {
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long, default_value_t = 8)]
        n: usize,
    },
    /// Closed-form bound of one functional.
    Bound {
        /// fs, fs_real, fs_complex, a2, a3, a4, a5, h21, h22, a2a3_a4, h31.
        functional: String,
        #[command(flatten)]
        params: ParamArgs,
        /// RE or RE,IM.
        #[arg(long, allow_hyphen_values = true)]
        mu: Option<String>,
    },
    /// Brute-force maximum of a functional, compared with its bound.
    Search {
        functional: String,
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long, allow_hyphen_values = true)]
        mu: Option<String>,
        #[command(flatten)]
        search: SearchArgs,
    },
    /// Membership test for a series file.
    Member {
        #[arg(long)]
        series: PathBuf,
        #[command(flatten)]
        params: ParamArgs,
        #[command(flatten)]
        circle: CircleArgs,
    },
    /// Coefficients of the member with I f/z = sqrt(1 + z^k).
    Extremal {
        #[arg(long)]
        k: usize,
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long, default_value_t = 8)]
        order: usize,
    },
    /// Checks the ratio premise and the power conclusion for a series file.
    Suffcond {
        #[arg(long)]
        series: PathBuf,
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long)]
        gamma: f64,
        #[arg(long, default_value_t = 0.99)]
        radius: f64,
        #[arg(long, default_value_t = 4096)]
        samples: usize,
    },
    /// Bounds of a specialization over a grid of mu.
    Table {
        #[arg(long)]
        preset: String,
        /// Comma-separated functional ids.
        #[arg(long, default_value = "fs,a2,a3,a4,a5,h21,h22,a2a3_a4,h31")]
        functionals: String,
        /// START:STOP:STEP, or entries RE or RE,IM separated by ';'.
        #[arg(long, default_value = "0", allow_hyphen_values = true)]
        mu_grid: String,
    },
    /// Searches every functional at one or more parameter triples.
    Discrepancy {
        /// Triples a,b,c separated by ';'.
        #[arg(long, default_value = "1,1,1")]
        params: String,
        #[arg(long, default_value = "0;1;2", allow_hyphen_values = true)]
        mu_grid: String,
        #[command(flatten)]
        search: SearchArgs,
    },
}
