//! Exhaustive search over vendor subsets.
//!
//! Solution ids `1..=2^n - 1` are swept in ascending order. With several
//! workers the id range is cut into contiguous chunks, each worker keeps a
//! local incumbent, and the merge takes the lowest `(uncovered, total, id)`
//! key, so the answer does not depend on the worker count. Optional pruning
//! skips a subset when its fixed cost plus the cheapest-possible acquisition
//! cannot beat the incumbent.

use std::time::{Duration, Instant};

use crate::assign::{build_price_index, PriceIndex};
use crate::codec::{decode_subset, max_id, MAX_VENDORS};
use crate::error::{Error, Result};
use crate::model::{Constraints, CoverageMode, Instance, Solution, SubsetFilter};
use crate::scalar::CostScalar;

/// Default largest vendor count accepted by the exhaustive solver.
pub const DEFAULT_VENDOR_CAP: usize = 24;

const DEADLINE_CHECK_INTERVAL: u64 = 1 << 12;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolverOptions {
    pub pruning: bool,
    pub workers: usize,
    pub vendor_cap: usize,
    /// Abort with [`Error::TimeBudgetExceeded`] once this much time has passed.
    pub time_budget: Option<Duration>,
}

impl Default for SolverOptions {
    fn default() -> Self {
        SolverOptions { pruning: false, workers: 1, vendor_cap: DEFAULT_VENDOR_CAP, time_budget: None }
    }
}

impl SolverOptions {
    pub fn with_pruning(mut self, pruning: bool) -> Self {
        self.pruning = pruning;
        self
    }

    pub fn with_workers(mut self, workers: usize) -> Self {
        self.workers = workers;
        self
    }

    pub fn with_vendor_cap(mut self, cap: usize) -> Self {
        self.vendor_cap = cap;
        self
    }

    pub fn with_time_budget(mut self, budget: Duration) -> Self {
        self.time_budget = Some(budget);
        self
    }

    fn check(&self) -> Result<()> {
        if self.workers == 0 {
            return Err(Error::BadParameters("workers must be at least 1".into()));
        }
        if self.vendor_cap > MAX_VENDORS {
            return Err(Error::BadParameters(format!("vendor cap {} exceeds {MAX_VENDORS}", self.vendor_cap)));
        }
        Ok(())
    }
}

/// Sweep counters. `evaluated + pruned + infeasible == candidates`, where
/// candidates are the subsets passing the constraint filter.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SolveStats {
    pub candidates: u64,
    pub evaluated: u64,
    pub pruned: u64,
    pub infeasible: u64,
}

impl SolveStats {
    fn merge(&mut self, other: &SolveStats) {
        self.candidates += other.candidates;
        self.evaluated += other.evaluated;
        self.pruned += other.pruned;
        self.infeasible += other.infeasible;
    }
}

#[derive(Debug, Clone)]
pub struct SolveReport<T> {
    pub best: Solution<T>,
    pub best_id: u64,
    pub stats: SolveStats,
    pub wall_time: Duration,
    pub constraints: Constraints,
    pub options: SolverOptions,
}

/// Ordering key of a candidate: fewer uncovered items first, then cheaper,
/// then smaller solution id.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub(crate) struct Key<T> {
    pub uncovered: usize,
    pub total: T,
    pub id: u64,
}

/// Admissible lower bound on the total cost of any subset whose members'
/// fixed costs sum to `committed`: the committed fixed cost plus every item
/// bought at its cheapest bid overall.
pub fn lower_bound<T: CostScalar>(instance: &Instance<T>, committed: T) -> T {
    (0..instance.m())
        .filter_map(|i| instance.row(i).iter().flatten().copied().min())
        .fold(committed, |acc, p| acc + p)
}

/// Global optimum under full coverage and no other constraints.
pub fn solve_exhaustive<T: CostScalar>(instance: &Instance<T>, options: &SolverOptions) -> Result<SolveReport<T>> {
    solve_with_constraints(instance, &Constraints::none(), options)
}

/// Optimum over subsets satisfying `constraints`. Under partial coverage the
/// optimum covers as many items as possible, then minimizes the total.
pub fn solve_with_constraints<T: CostScalar>(
    instance: &Instance<T>,
    constraints: &Constraints,
    options: &SolverOptions,
) -> Result<SolveReport<T>> {
    let started = Instant::now();
    let plan = Plan::new(instance, constraints, options)?;
    let index = build_price_index(instance);
    let (buckets, stats) = plan.sweep(&index, false)?;
    let key = buckets[0].ok_or_else(|| no_feasible(constraints))?;
    let best = plan.finish(&index, key)?;
    Ok(SolveReport {
        best,
        best_id: key.id,
        stats,
        wall_time: started.elapsed(),
        constraints: constraints.clone(),
        options: options.clone(),
    })
}

/// Best subset of every size `k` (index `k`; index 0 unused) in one sweep.
pub fn solve_by_cardinality<T: CostScalar>(
    instance: &Instance<T>,
    constraints: &Constraints,
    options: &SolverOptions,
) -> Result<(Vec<Option<Solution<T>>>, SolveStats)> {
    let plan = Plan::new(instance, constraints, options)?;
    let index = build_price_index(instance);
    let (buckets, stats) = plan.sweep(&index, true)?;
    let solutions = buckets.into_iter().map(|b| b.map(|key| plan.finish(&index, key)).transpose()).collect::<Result<_>>()?;
    Ok((solutions, stats))
}

/// Scatter the low bits of `value` onto the set bits of `positions`.
fn deposit(mut value: u64, positions: u64) -> u64 {
    let mut out = 0;
    let mut bits = positions;
    while bits != 0 && value != 0 {
        let low = bits & bits.wrapping_neg();
        if value & 1 == 1 {
            out |= low;
        }
        value >>= 1;
        bits &= bits - 1;
    }
    out
}

fn no_feasible(constraints: &Constraints) -> Error {
    let what = if constraints == &Constraints::none() {
        "no subset covers every item".to_string()
    } else {
        "no subset satisfies the constraints".to_string()
    };
    Error::NoFeasibleSubset(what)
}

struct Plan<'a, T> {
    instance: &'a Instance<T>,
    filter: SubsetFilter,
    coverage: CoverageMode,
    options: &'a SolverOptions,
    deadline: Option<Instant>,
}

impl<'a, T: CostScalar> Plan<'a, T> {
    fn new(instance: &'a Instance<T>, constraints: &Constraints, options: &'a SolverOptions) -> Result<Self> {
        options.check()?;
        let filter = constraints.compile(instance)?;
        let free_vendors = instance.n() - (filter.required | filter.forbidden).count_ones() as usize;
        if free_vendors > options.vendor_cap {
            return Err(Error::TooManyVendors { n: free_vendors, cap: options.vendor_cap });
        }
        if constraints.coverage == CoverageMode::Full {
            let missing = instance.zero_bid_items();
            if !missing.is_empty() {
                let ids: Vec<_> = missing.iter().map(|&i| instance.items()[i].id.as_str()).collect();
                return Err(Error::NoFeasibleSubset(format!("no bids for item(s) {}", ids.join(", "))));
            }
        }
        Ok(Plan {
            instance,
            filter,
            coverage: constraints.coverage,
            options,
            deadline: options.time_budget.map(|b| Instant::now() + b),
        })
    }

    /// Vendors neither required nor forbidden, as a bitmask.
    fn free_mask(&self) -> u64 {
        max_id(self.instance.n()) & !(self.filter.required | self.filter.forbidden)
    }

    /// Run the sweep. With `by_cardinality` the result has one bucket per
    /// subset size `0..=n`, otherwise a single bucket.
    ///
    /// Only the free vendors are enumerated: sweep position `t` maps to the
    /// id whose free bits are the bits of `t` and whose other bits are the
    /// required vendors. The map is increasing, so ids are still visited in
    /// ascending order.
    fn sweep(&self, index: &PriceIndex<'_, T>, by_cardinality: bool) -> Result<(Vec<Option<Key<T>>>, SolveStats)> {
        let n = self.instance.n();
        let first = u64::from(self.filter.required == 0);
        let end = 1_u64 << self.free_mask().count_ones();
        let span = end.saturating_sub(first);
        let workers = (self.options.workers as u64).min(span).max(1);
        let chunk = span.div_ceil(workers).max(1);
        let ranges: Vec<(u64, u64)> = (0..workers)
            .map(|w| (first + w * chunk, (first + (w + 1) * chunk).min(end)))
            .filter(|(lo, hi)| lo < hi)
            .collect();
        if ranges.is_empty() {
            return Ok((vec![None; if by_cardinality { n + 1 } else { 1 }], SolveStats::default()));
        }
        let bucket_count = if by_cardinality { n + 1 } else { 1 };

        let partials: Vec<Result<(Vec<Option<Key<T>>>, SolveStats)>> = if ranges.len() == 1 {
            vec![self.sweep_range(index, ranges[0], bucket_count)]
        } else {
            std::thread::scope(|scope| {
                let handles: Vec<_> = ranges
                    .iter()
                    .map(|&range| scope.spawn(move || self.sweep_range(index, range, bucket_count)))
                    .collect();
                handles.into_iter().map(|h| h.join().expect("solver worker panicked")).collect()
            })
        };

        let mut buckets: Vec<Option<Key<T>>> = vec![None; bucket_count];
        let mut stats = SolveStats::default();
        for partial in partials {
            let (local, local_stats) = partial?;
            stats.merge(&local_stats);
            for (slot, candidate) in buckets.iter_mut().zip(local) {
                *slot = match (*slot, candidate) {
                    (Some(a), Some(b)) => Some(a.min(b)),
                    (a, b) => a.or(b),
                };
            }
        }
        Ok((buckets, stats))
    }

    fn sweep_range(
        &self,
        index: &PriceIndex<'_, T>,
        (lo, hi): (u64, u64),
        bucket_count: usize,
    ) -> Result<(Vec<Option<Key<T>>>, SolveStats)> {
        let m = self.instance.m();
        let fixed = self.instance.fixed_costs();
        let best_uncovered = m - index.coverable_items();
        let acquisition_bound = index.min_price_sum();
        let mut buckets: Vec<Option<Key<T>>> = vec![None; bucket_count];
        let mut stats = SolveStats::default();
        let free = self.free_mask();
        let mut free_bits = deposit(lo, free);

        for t in lo..hi {
            let mask = free_bits | self.filter.required;
            free_bits = ((free_bits | !free).wrapping_add(1)) & free;
            if (t - lo) % DEADLINE_CHECK_INTERVAL == 0 {
                if let Some(deadline) = self.deadline {
                    if Instant::now() > deadline {
                        let millis = self.options.time_budget.unwrap_or_default().as_millis();
                        return Err(Error::TimeBudgetExceeded { millis });
                    }
                }
            }
            if !self.filter.admits(mask) {
                continue;
            }
            stats.candidates += 1;
            let slot = if bucket_count == 1 { 0 } else { mask.count_ones() as usize };
            let mut fixed_cost = T::zero();
            let mut bits = mask;
            while bits != 0 {
                fixed_cost = fixed_cost + fixed[bits.trailing_zeros() as usize];
                bits &= bits - 1;
            }
            if self.options.pruning {
                if let Some(inc) = buckets[slot] {
                    if inc.uncovered == best_uncovered && fixed_cost + acquisition_bound >= inc.total {
                        stats.pruned += 1;
                        continue;
                    }
                }
            }
            let (acquisition, covered) = index.evaluate_mask(mask);
            if self.coverage == CoverageMode::Full && covered < m {
                stats.infeasible += 1;
                continue;
            }
            stats.evaluated += 1;
            let key = Key { uncovered: m - covered, total: acquisition + fixed_cost, id: mask };
            if buckets[slot].is_none_or(|inc| key < inc) {
                buckets[slot] = Some(key);
            }
        }
        Ok((buckets, stats))
    }

    fn finish(&self, index: &PriceIndex<'_, T>, key: Key<T>) -> Result<Solution<T>> {
        let subset = decode_subset(key.id, self.instance.n())?;
        let solution = index.build_solution(&subset, self.coverage)?;
        debug_assert_eq!(solution.total_cost(), key.total);
        Ok(solution)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::tests::{sample, sample_raw};
    use crate::model::{validate_instance, Cardinality, Item, RawInstance, Vendor};

    fn numbers(s: &Solution<i64>) -> Vec<usize> {
        s.subset().members().map(|j| j + 1).collect()
    }

    #[test]
    fn sample_optimum() {
        let report = solve_exhaustive(&sample(), &SolverOptions::default()).unwrap();
        assert_eq!(numbers(&report.best), vec![4, 5]);
        assert_eq!(report.best_id, 24);
        assert_eq!(report.best.acquisition_cost(), 10_800);
        assert_eq!(report.best.fixed_cost(), 1_900);
        assert_eq!(report.best.total_cost(), 12_700);
        assert_eq!(report.stats, SolveStats { candidates: 31, evaluated: 31, pruned: 0, infeasible: 0 });
    }

    #[test]
    fn single_vendor_instance() {
        let inst = validate_instance(RawInstance {
            items: vec![Item::new("A"), Item::new("B")],
            vendors: vec![Vendor::new("V")],
            prices: vec![vec![Some(300_i64)], vec![Some(400)]],
            fixed_costs: vec![50],
        })
        .unwrap();
        let report = solve_exhaustive(&inst, &SolverOptions::default()).unwrap();
        assert_eq!(report.best_id, 1);
        assert_eq!(report.best.total_cost(), 750);
    }

    #[test]
    fn sample_constrained_optima() {
        let inst = sample();
        let opts = SolverOptions::default();
        let k1 = solve_with_constraints(&inst, &Constraints::none().with_cardinality(Cardinality::exactly(1)), &opts).unwrap();
        assert_eq!((numbers(&k1.best), k1.best.total_cost()), (vec![5], 14_200));
        let k3 = solve_with_constraints(&inst, &Constraints::none().with_cardinality(Cardinality::exactly(3)), &opts).unwrap();
        assert_eq!((numbers(&k3.best), k3.best.total_cost()), (vec![1, 4, 5], 13_500));
        assert_eq!(k3.stats.candidates, 10);
        let no5 = solve_with_constraints(&inst, &Constraints::none().forbid(4), &opts).unwrap();
        assert_eq!((numbers(&no5.best), no5.best.total_cost()), (vec![1, 4], 14_900));
        assert_eq!(no5.stats.candidates, 15);
        let with3 = solve_with_constraints(&inst, &Constraints::none().require(2), &opts).unwrap();
        assert!(with3.best.subset().contains(2));
    }

    #[test]
    fn conflicting_and_bad_constraints() {
        let inst = sample();
        let opts = SolverOptions::default();
        assert!(matches!(
            solve_with_constraints(&inst, &Constraints::none().require(0).forbid(0), &opts),
            Err(Error::ConflictingConstraints(_))
        ));
        assert!(matches!(
            solve_with_constraints(&inst, &Constraints::none().with_cardinality(Cardinality::exactly(7)), &opts),
            Err(Error::BadConstraint(_))
        ));
        let all_forbidden = (0..5).fold(Constraints::none(), |c, j| c.forbid(j));
        assert!(matches!(solve_with_constraints(&inst, &all_forbidden, &opts), Err(Error::NoFeasibleSubset(_))));
    }

    #[test]
    fn zero_bid_item_is_infeasible_under_full_coverage_only() {
        let mut raw = sample_raw();
        raw.prices[8] = vec![None; 5];
        let inst = validate_instance(raw).unwrap();
        let opts = SolverOptions::default();
        assert!(matches!(solve_exhaustive(&inst, &opts), Err(Error::NoFeasibleSubset(msg)) if msg.contains("P9")));
        let partial = Constraints::none().with_coverage(CoverageMode::Partial);
        let report = solve_with_constraints(&inst, &partial, &opts).unwrap();
        assert_eq!(report.best.items_covered(), 8);
        let pruned = solve_with_constraints(&inst, &partial, &opts.clone().with_pruning(true)).unwrap();
        assert_eq!((pruned.best_id, pruned.best.total_cost()), (report.best_id, report.best.total_cost()));
    }

    #[test]
    fn uncoverable_subsets_counted_as_infeasible() {
        let mut raw = sample_raw();
        raw.prices[0] = vec![Some(1900), None, None, None, None];
        let inst = validate_instance(raw).unwrap();
        let report = solve_exhaustive(&inst, &SolverOptions::default()).unwrap();
        assert_eq!(report.stats.infeasible, 15);
        assert_eq!(report.stats.evaluated, 16);
        assert!(report.best.subset().contains(0));
    }

    #[test]
    fn vendor_cap_and_option_errors() {
        let inst = sample();
        assert_eq!(
            solve_exhaustive(&inst, &SolverOptions::default().with_vendor_cap(4)).unwrap_err(),
            Error::TooManyVendors { n: 5, cap: 4 }
        );
        assert!(matches!(solve_exhaustive(&inst, &SolverOptions::default().with_workers(0)), Err(Error::BadParameters(_))));
        assert!(matches!(solve_exhaustive(&inst, &SolverOptions::default().with_vendor_cap(63)), Err(Error::BadParameters(_))));
        // pinned vendors do not count against the cap
        let pinned = Constraints::none().require(0).forbid(1);
        let r = solve_with_constraints(&inst, &pinned, &SolverOptions::default().with_vendor_cap(3)).unwrap();
        assert_eq!(r.stats.candidates, 8);
    }

    #[test]
    fn deposit_is_increasing_bit_scatter() {
        assert_eq!(deposit(0b101, 0b1011_0000), 0b1000_0000 | 0b0001_0000);
        assert_eq!(deposit(0, 0b1111), 0);
        let free = 0b1101_0110_u64;
        let mut prev = None;
        for t in 0..(1 << free.count_ones()) {
            let d = deposit(t, free);
            assert_eq!(d & !free, 0);
            assert!(prev < Some(d));
            prev = Some(d);
        }
    }

    #[test]
    fn every_worker_count_covers_pinned_space() {
        let inst = sample();
        for workers in [1, 2, 3, 5, 8, 40] {
            let c = Constraints::none().require(3).forbid(0);
            let r = solve_with_constraints(&inst, &c, &SolverOptions::default().with_workers(workers)).unwrap();
            assert_eq!(r.stats.candidates, 8);
            assert_eq!((r.best_id, r.best.total_cost()), (24, 12_700));
            let all = (0..5).fold(Constraints::none(), |c, j| c.require(j));
            let r = solve_with_constraints(&inst, &all, &SolverOptions::default().with_workers(workers)).unwrap();
            assert_eq!((r.best_id, r.stats.candidates), (31, 1));
        }
    }

    #[test]
    fn exhausted_time_budget_aborts() {
        let opts = SolverOptions::default().with_time_budget(Duration::ZERO);
        std::thread::sleep(Duration::from_millis(2));
        assert!(matches!(solve_exhaustive(&sample(), &opts), Err(Error::TimeBudgetExceeded { .. })));
    }

    #[test]
    fn workers_and_pruning_agree_on_sample() {
        let inst = sample();
        for workers in [1, 2, 3, 8, 64] {
            for pruning in [false, true] {
                let opts = SolverOptions::default().with_workers(workers).with_pruning(pruning);
                let r = solve_exhaustive(&inst, &opts).unwrap();
                assert_eq!((r.best_id, r.best.total_cost()), (24, 12_700));
                assert_eq!(r.stats.evaluated + r.stats.pruned + r.stats.infeasible, 31);
            }
        }
    }

    #[test]
    fn lower_bound_values() {
        let inst = sample();
        assert_eq!(lower_bound(&inst, 0), 10_300);
        assert_eq!(lower_bound(&inst, inst.fixed_costs().iter().sum()), 16_000);
        let single = validate_instance(RawInstance {
            items: vec![Item::new("A")],
            vendors: vec![Vendor::new("V")],
            prices: vec![vec![Some(7_i64)]],
            fixed_costs: vec![0],
        })
        .unwrap();
        assert_eq!(lower_bound(&single, 0), 7);
    }

    #[test]
    fn by_cardinality_matches_per_k_solves() {
        let inst = sample();
        let opts = SolverOptions::default();
        let (per_k, stats) = solve_by_cardinality(&inst, &Constraints::none(), &opts).unwrap();
        assert_eq!(stats.candidates, 31);
        assert!(per_k[0].is_none());
        for k in 1..=5 {
            let c = Constraints::none().with_cardinality(Cardinality::exactly(k));
            let direct = solve_with_constraints(&inst, &c, &opts).unwrap();
            assert_eq!(per_k[k].as_ref(), Some(&direct.best));
        }
    }
}
