//! Bid-matrix CSV, result JSON, synthetic instances and the scaling bench.

pub mod bench;
pub mod csv;
pub mod generate;
pub mod json;

pub use self::bench::{bench_csv, run_bench, BenchConfig, BenchRecord};
pub use self::csv::{parse_bid_csv, write_bid_csv, FIXED_COST_ROW};
pub use self::generate::{generate_instance, GeneratorParams};
pub use self::json::{
    curve_json, descriptor_json, policies_json, policy_json, solution_json, write_solution_json, SolutionJson,
};
