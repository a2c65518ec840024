use std::net::IpAddr;
use std::path::PathBuf;

use clap::{ArgGroup, Args, Parser, Subcommand};

/// Exact vendor selection with fixed vendor handling costs.
///
/// Exit codes: 0 success, 2 input error, 3 infeasible, 4 size cap exceeded.
#[derive(Debug, Parser)]
#[command(name = "mivs", version, about, long_about = None)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Find the cheapest vendor subset and item assignment.
    Solve {
        /// Bid-matrix CSV (header `item,<vendors...>`, last row `FIXED_COST`).
        csv: PathBuf,
        #[command(flatten)]
        constraints: ConstraintArgs,
        #[command(flatten)]
        solver: SolverArgs,
        /// Print the solution as JSON.
        #[arg(long)]
        json: bool,
        /// Write the solution JSON to a file.
        #[arg(short = 'o', long = "output")]
        output: Option<PathBuf>,
    },
    /// Evaluate a baseline procurement policy.
    #[command(group(ArgGroup::new("which").required(true).args(["alt1", "alt2"])))]
    Policy {
        csv: PathBuf,
        /// Single vendor with the least purchasing cost.
        #[arg(long)]
        alt1: bool,
        /// Each item from its cheapest bidder.
        #[arg(long)]
        alt2: bool,
        #[arg(long)]
        json: bool,
    },
    /// Best total for every vendor count.
    Curve {
        csv: PathBuf,
        #[command(flatten)]
        constraints: ConstraintArgs,
        #[command(flatten)]
        solver: SolverArgs,
        /// Bucket all subsets by size in a single sweep instead of one solve per count.
        #[arg(long)]
        single_sweep: bool,
        #[arg(long)]
        json: bool,
    },
    /// Write the integer program in LP format.
    ExportLp {
        csv: PathBuf,
        #[arg(short = 'o', long = "output")]
        output: Option<PathBuf>,
    },
    /// Generate a random bid-matrix CSV.
    Gen {
        #[arg(long, short = 'm')]
        items: usize,
        #[arg(long, short = 'n')]
        vendors: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Probability that a vendor bids on an item.
        #[arg(long, default_value_t = 1.0)]
        density: f64,
        #[arg(long, default_value_t = 5)]
        price_min: u64,
        #[arg(long, default_value_t = 100)]
        price_max: u64,
        #[arg(long, default_value_t = 10)]
        fixed_min: u64,
        #[arg(long, default_value_t = 200)]
        fixed_max: u64,
        #[arg(short = 'o', long = "output")]
        output: Option<PathBuf>,
    },
    /// Time the exhaustive solve over a grid of vendor and item counts.
    Bench {
        #[arg(long, value_delimiter = ',', default_values_t = [10, 12, 14])]
        vendors: Vec<usize>,
        #[arg(long, value_delimiter = ',', default_values_t = [100, 200, 400])]
        items: Vec<usize>,
        #[arg(long, default_value_t = 1)]
        workers: usize,
        #[arg(long, default_value_t = 3)]
        reps: usize,
        #[arg(long)]
        prune: bool,
        #[arg(long, default_value_t = 2024)]
        seed: u64,
        /// Write the records as CSV to a file instead of stdout.
        #[arg(short = 'o', long = "output")]
        output: Option<PathBuf>,
    },
    /// Run the HTTP API.
    Serve {
        #[arg(long, default_value_t = 8080)]
        port: u16,
        #[arg(long, default_value = "127.0.0.1")]
        host: IpAddr,
        #[arg(long, default_value_t = 64)]
        max_instances: usize,
        /// Per-request solve budget in seconds.
        #[arg(long, default_value_t = 30)]
        time_budget_secs: u64,
        #[arg(long)]
        cors_origin: Option<String>,
        #[command(flatten)]
        solver: SolverArgs,
    },
}

#[derive(Debug, Args)]
pub struct ConstraintArgs {
    /// Vendors that must be selected (ids or 1-based numbers, comma separated).
    #[arg(long, value_delimiter = ',')]
    pub require: Vec<String>,
    /// Vendors that must not be selected.
    #[arg(long, value_delimiter = ',')]
    pub forbid: Vec<String>,
    /// Select exactly K vendors.
    #[arg(long, value_name = "K", conflicts_with = "max_vendors")]
    pub exact_vendors: Option<usize>,
    /// Select at most K vendors.
    #[arg(long, value_name = "K")]
    pub max_vendors: Option<usize>,
    /// Allow uncovered items; the most items possible are covered.
    #[arg(long)]
    pub partial: bool,
}

#[derive(Debug, Args)]
pub struct SolverArgs {
    /// Skip subsets whose lower bound cannot beat the incumbent.
    #[arg(long)]
    pub prune: bool,
    #[arg(long, default_value_t = 1)]
    pub workers: usize,
    /// Largest vendor count accepted by the exhaustive solver.
    #[arg(long, default_value_t = mivs_core::solver::DEFAULT_VENDOR_CAP)]
    pub vendor_cap: usize,
}
