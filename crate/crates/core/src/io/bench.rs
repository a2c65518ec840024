//! Scaling benchmark: wall time of the exhaustive solve over a grid of
//! vendor and item counts.

use std::fmt::Write;
use std::time::Duration;

use crate::error::{Error, Result};
use crate::io::generate::{generate_instance, GeneratorParams};
use crate::scalar::CostScalar;
use crate::solver::{solve_exhaustive, SolverOptions};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BenchRecord {
    pub n: usize,
    pub m: usize,
    pub workers: usize,
    pub pruning: bool,
    pub subsets_evaluated: u64,
    /// Median over repetitions.
    pub wall_time: Duration,
}

#[derive(Debug, Clone)]
pub struct BenchConfig {
    pub vendors: Vec<usize>,
    pub items: Vec<usize>,
    pub workers: usize,
    pub repetitions: usize,
    pub pruning: bool,
    pub seed: u64,
    pub vendor_cap: usize,
}

impl Default for BenchConfig {
    fn default() -> Self {
        BenchConfig {
            vendors: vec![10, 12, 14],
            items: vec![100, 200, 400],
            workers: 1,
            repetitions: 3,
            pruning: false,
            seed: 2024,
            vendor_cap: crate::solver::DEFAULT_VENDOR_CAP,
        }
    }
}

/// One record per `(n, m)` cell, vendors outermost. Each cell solves a
/// full-density generated instance `repetitions` times.
pub fn run_bench<T: CostScalar>(config: &BenchConfig) -> Result<Vec<BenchRecord>> {
    if config.repetitions == 0 {
        return Err(Error::BadParameters("repetitions must be at least 1".into()));
    }
    let options = SolverOptions::default()
        .with_workers(config.workers)
        .with_pruning(config.pruning)
        .with_vendor_cap(config.vendor_cap);
    let mut records = Vec::with_capacity(config.vendors.len() * config.items.len());
    for &n in &config.vendors {
        if n > config.vendor_cap {
            return Err(Error::TooManyVendors { n, cap: config.vendor_cap });
        }
        for &m in &config.items {
            let seed = config.seed ^ ((n as u64) << 32) ^ m as u64;
            let instance = generate_instance::<T>(&GeneratorParams::new(m, n, seed))?;
            let mut times = Vec::with_capacity(config.repetitions);
            let mut evaluated = None;
            for _ in 0..config.repetitions {
                let report = solve_exhaustive(&instance, &options)?;
                match evaluated {
                    None => evaluated = Some(report.stats.evaluated),
                    Some(e) => debug_assert_eq!(e, report.stats.evaluated),
                }
                times.push(report.wall_time);
            }
            times.sort_unstable();
            records.push(BenchRecord {
                n,
                m,
                workers: config.workers,
                pruning: config.pruning,
                subsets_evaluated: evaluated.unwrap_or_default(),
                wall_time: times[times.len() / 2],
            });
        }
    }
    Ok(records)
}

pub const BENCH_CSV_HEADER: &str = "n,m,workers,pruning,subsets_evaluated,wall_time_ms";

pub fn bench_csv(records: &[BenchRecord]) -> String {
    let mut out = String::from(BENCH_CSV_HEADER);
    out.push('\n');
    for r in records {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{:.3}",
            r.n,
            r.m,
            r.workers,
            r.pruning,
            r.subsets_evaluated,
            r.wall_time.as_secs_f64() * 1e3
        );
    }
    out
}
