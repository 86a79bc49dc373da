use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use nivat_core::sft::Budget;

#[derive(Debug, Parser)]
#[command(name = "nivat", version, about = "Algebraic tools for low-complexity colorings of the grid")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Coefficient domain for polynomials given as text: Z, Q, F2, F3, ...
    #[arg(long, global = true, default_value = "Z")]
    pub field: String,

    /// Write the JSON report here and print a short summary instead.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    /// Seed for randomized re-checks; never changes a result.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Args)]
pub struct GridArgs {
    /// Grid text file (rows of integers, one row per y) or Source JSON.
    pub grid: PathBuf,

    /// Read a text grid as a finite patch at the origin instead of a torus.
    #[arg(long)]
    pub patch: bool,
}

#[derive(Debug, Args)]
pub struct BudgetArgs {
    #[arg(long, default_value_t = Budget::default().max_window)]
    pub max_window: usize,
    #[arg(long, default_value_t = Budget::default().max_torus)]
    pub max_torus: usize,
    /// Node limit for each individual search.
    #[arg(long, default_value_t = Budget::default().max_nodes)]
    pub max_nodes: u64,
}

impl BudgetArgs {
    pub fn budget(&self) -> Budget {
        Budget { max_window: self.max_window, max_torus: self.max_torus, max_nodes: self.max_nodes }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum RoleArg {
    Annihilates,
    Periodizes,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Number of distinct shape patterns in a grid.
    Complexity {
        #[command(flatten)]
        grid: GridArgs,
        /// Shape file, `rect:WxH` or `plus`.
        #[arg(long)]
        shape: String,
    },
    /// Rectangle pattern counts for every n × m up to the given sizes.
    Profile {
        #[command(flatten)]
        grid: GridArgs,
        #[arg(long, default_value_t = 3)]
        max_n: usize,
        #[arg(long, default_value_t = 3)]
        max_m: usize,
    },
    /// An annihilating polynomial from the patterns of a grid.
    Annihilate {
        #[command(flatten)]
        grid: GridArgs,
        #[arg(long, required_unless_present = "binomial")]
        shape: Option<String>,
        /// Search for a product of difference binomials instead.
        #[arg(long)]
        binomial: bool,
        /// Largest max-norm of a binomial vector.
        #[arg(long, default_value_t = 6)]
        max_t: i64,
        /// Largest number of binomial factors (at most 3).
        #[arg(long, default_value_t = 2)]
        max_m: usize,
    },
    /// Split a polynomial into line-polynomial factors and a line-free rest.
    FactorLines {
        /// Polynomial text, or a file holding text or JSON.
        poly: String,
    },
    /// Periodicity verdict implied by a polynomial.
    Classify {
        poly: String,
        #[arg(long, value_enum, default_value = "annihilates")]
        role: RoleArg,
    },
    /// Eliminate each variable from two polynomials over a prime field.
    EliminateFp {
        f: String,
        g: String,
    },
    /// Decide emptiness of a subshift of finite type. Exit 0 nonempty, 1 empty, 2 unknown.
    DecideSft {
        /// JSON with shape, alphabet and allowed patterns.
        spec: PathBuf,
        #[command(flatten)]
        budget: BudgetArgs,
    },
    /// Antenna placement problems.
    Antenna {
        #[command(subcommand)]
        action: AntennaAction,
    },
    /// Co-tilers of cluster tiles.
    Cotiler {
        #[command(subcommand)]
        action: CotilerAction,
    },
    /// Re-check a report emitted by any subcommand. Exit 0 pass, 1 fail.
    Verify {
        cert: PathBuf,
        /// Grid the certificate refers to, for grid-based commands.
        input: Option<PathBuf>,
    },
}

#[derive(Debug, Args)]
pub struct AntennaArgs {
    #[arg(long)]
    pub shape: String,
    /// Broadcasts heard by each non-antenna cell.
    #[arg(long)]
    pub a: i64,
    /// Broadcasts heard by each antenna cell.
    #[arg(long)]
    pub b: i64,
}

#[derive(Debug, Subcommand)]
pub enum AntennaAction {
    /// Periodicity of every solution.
    Classify {
        #[command(flatten)]
        problem: AntennaArgs,
    },
    /// Check a {0,1} torus against the antenna condition. Exit 0 pass, 1 fail.
    Verify {
        torus: PathBuf,
        #[command(flatten)]
        problem: AntennaArgs,
    },
}

#[derive(Debug, Subcommand)]
pub enum CotilerAction {
    /// Search for a periodic co-tiler. Exit 0 found, 1 none exists, 2 unknown.
    Find {
        #[arg(long)]
        shape: String,
        #[command(flatten)]
        budget: BudgetArgs,
    },
    /// Check that a {0,1} torus is an exact co-tiler. Exit 0 pass, 1 fail.
    Verify {
        torus: PathBuf,
        #[arg(long)]
        shape: String,
    },
}
