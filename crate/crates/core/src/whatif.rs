//! What-if analysis: the best total for each vendor count, and differences
//! between two solutions.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::model::{Cardinality, Constraints, Instance, Solution};
use crate::scalar::CostScalar;
use crate::solver::{solve_by_cardinality, solve_with_constraints, SolverOptions};

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub enum CurveMode {
    /// One constrained solve per vendor count.
    #[default]
    PerCount,
    /// A single sweep that buckets subsets by size.
    SingleSweep,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CurveEntry<T> {
    pub k: usize,
    /// `None` when no admissible subset of size `k` exists.
    pub solution: Option<Solution<T>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CostCurve<T> {
    pub entries: Vec<CurveEntry<T>>,
    /// Vendor count and total of the best entry.
    pub optimum: (usize, T),
}

impl<T: CostScalar> CostCurve<T> {
    pub fn entry(&self, k: usize) -> Option<&CurveEntry<T>> {
        self.entries.iter().find(|e| e.k == k)
    }
}

/// Best solution for every vendor count allowed by `base`.
pub fn cost_curve<T: CostScalar>(
    instance: &Instance<T>,
    base: &Constraints,
    options: &SolverOptions,
    mode: CurveMode,
) -> Result<CostCurve<T>> {
    // surfaces conflicting or out-of-range constraints before any sweep
    base.compile(instance)?;
    let range = base.cardinality.unwrap_or(Cardinality { min: 1, max: instance.n() });
    let entries: Vec<CurveEntry<T>> = match mode {
        CurveMode::PerCount => (range.min..=range.max)
            .map(|k| {
                let constraints = base.clone().with_cardinality(Cardinality::exactly(k));
                match solve_with_constraints(instance, &constraints, options) {
                    Ok(report) => Ok(CurveEntry { k, solution: Some(report.best) }),
                    Err(Error::NoFeasibleSubset(_)) => Ok(CurveEntry { k, solution: None }),
                    Err(e) => Err(e),
                }
            })
            .collect::<Result<_>>()?,
        CurveMode::SingleSweep => {
            let (mut by_k, _) = solve_by_cardinality(instance, base, options)?;
            (range.min..=range.max).map(|k| CurveEntry { k, solution: by_k[k].take() }).collect()
        }
    };
    let m = instance.m();
    let optimum = entries
        .iter()
        .filter_map(|e| e.solution.as_ref().map(|s| (m - s.items_covered(), s.total_cost(), s.solution_id(), e.k)))
        .min()
        .map(|(_, total, _, k)| (k, total))
        .ok_or_else(|| Error::NoFeasibleSubset("no vendor count admits a feasible subset".into()))?;
    Ok(CostCurve { entries, optimum })
}

/// An item whose vendor differs between two solutions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ItemChange {
    pub item: usize,
    pub from: Option<usize>,
    pub to: Option<usize>,
}

/// Differences going from solution `a` to solution `b`; every numeric
/// delta is `b - a`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolutionDelta {
    pub total: i128,
    pub acquisition: i128,
    pub fixed: i128,
    pub items_covered: i64,
    pub changed_items: Vec<ItemChange>,
    /// Selected in `b` but not in `a`.
    pub vendors_entering: Vec<usize>,
    /// Selected in `a` but not in `b`.
    pub vendors_leaving: Vec<usize>,
}

impl SolutionDelta {
    pub fn is_zero(&self) -> bool {
        self.total == 0
            && self.acquisition == 0
            && self.fixed == 0
            && self.items_covered == 0
            && self.changed_items.is_empty()
            && self.vendors_entering.is_empty()
            && self.vendors_leaving.is_empty()
    }
}

pub fn compare_solutions<T: CostScalar>(a: &Solution<T>, b: &Solution<T>) -> Result<SolutionDelta> {
    if a.instance_fingerprint() != b.instance_fingerprint() || a.assignment().len() != b.assignment().len() {
        return Err(Error::InstanceMismatch);
    }
    let changed_items = a
        .assignment()
        .iter()
        .zip(b.assignment())
        .enumerate()
        .filter(|(_, (x, y))| x != y)
        .map(|(item, (&from, &to))| ItemChange { item, from, to })
        .collect();
    let sa: BTreeSet<usize> = a.subset().members().collect();
    let sb: BTreeSet<usize> = b.subset().members().collect();
    Ok(SolutionDelta {
        total: b.total_cost().to_wide() - a.total_cost().to_wide(),
        acquisition: b.acquisition_cost().to_wide() - a.acquisition_cost().to_wide(),
        fixed: b.fixed_cost().to_wide() - a.fixed_cost().to_wide(),
        items_covered: b.items_covered() as i64 - a.items_covered() as i64,
        changed_items,
        vendors_entering: sb.difference(&sa).copied().collect(),
        vendors_leaving: sa.difference(&sb).copied().collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::tests::{sample, sample_raw};
    use crate::model::{validate_instance, CoverageMode};
    use crate::policy::policy_cheapest_per_item;
    use crate::solver::solve_exhaustive;

    fn totals(curve: &CostCurve<i64>) -> Vec<(usize, Option<i64>)> {
        curve.entries.iter().map(|e| (e.k, e.solution.as_ref().map(|s| s.total_cost() / 100))).collect()
    }

    #[test]
    fn sample_curve() {
        let inst = sample();
        for mode in [CurveMode::PerCount, CurveMode::SingleSweep] {
            let curve = cost_curve(&inst, &Constraints::none(), &SolverOptions::default(), mode).unwrap();
            assert_eq!(
                totals(&curve),
                vec![(1, Some(142)), (2, Some(127)), (3, Some(135)), (4, Some(146)), (5, Some(160))]
            );
            assert_eq!(curve.optimum, (2, 12_700));
            for e in &curve.entries {
                assert_eq!(e.solution.as_ref().unwrap().subset().len(), e.k);
            }
        }
    }

    #[test]
    fn curve_with_forbidden_vendor() {
        let inst = sample();
        let base = Constraints::none().forbid(4);
        let curve = cost_curve(&inst, &base, &SolverOptions::default(), CurveMode::PerCount).unwrap();
        let k2 = curve.entry(2).unwrap().solution.as_ref().unwrap();
        assert_eq!(k2.subset().members().map(|j| j + 1).collect::<Vec<_>>(), vec![1, 4]);
        assert_eq!(k2.total_cost(), 14_900);
        assert!(curve.entry(5).unwrap().solution.is_none());
        let sweep = cost_curve(&inst, &base, &SolverOptions::default(), CurveMode::SingleSweep).unwrap();
        assert_eq!(sweep, curve);
    }

    #[test]
    fn curve_on_single_vendor_instance() {
        let mut raw = sample_raw();
        raw.vendors.truncate(1);
        raw.fixed_costs.truncate(1);
        for row in &mut raw.prices {
            row.truncate(1);
        }
        let inst = validate_instance(raw).unwrap();
        let curve = cost_curve(&inst, &Constraints::none(), &SolverOptions::default(), CurveMode::PerCount).unwrap();
        assert_eq!(curve.entries.len(), 1);
        assert_eq!(curve.optimum, (1, 16_700 + 1_000));
    }

    #[test]
    fn curve_propagates_errors() {
        let inst = sample();
        let conflicting = Constraints::none().require(0).forbid(0);
        assert!(matches!(
            cost_curve(&inst, &conflicting, &SolverOptions::default(), CurveMode::PerCount),
            Err(Error::ConflictingConstraints(_))
        ));
        let mut raw = sample_raw();
        raw.prices[0] = vec![None; 5];
        let unbid = validate_instance(raw).unwrap();
        for mode in [CurveMode::PerCount, CurveMode::SingleSweep] {
            assert!(matches!(
                cost_curve(&unbid, &Constraints::none(), &SolverOptions::default(), mode),
                Err(Error::NoFeasibleSubset(_))
            ));
        }
        let partial = Constraints::none().with_coverage(CoverageMode::Partial);
        let curve = cost_curve(&unbid, &partial, &SolverOptions::default(), CurveMode::PerCount).unwrap();
        assert_eq!(curve.entries.len(), 5);
    }

    #[test]
    fn compare_optimum_with_cheapest_per_item() {
        let inst = sample();
        let opt = solve_exhaustive(&inst, &SolverOptions::default()).unwrap().best;
        let alt2 = policy_cheapest_per_item(&inst).unwrap().solution;
        let d = compare_solutions(&alt2, &opt).unwrap();
        assert_eq!(d.total, -2_300);
        let back = compare_solutions(&opt, &alt2).unwrap();
        assert_eq!((back.total, back.acquisition, back.fixed), (-d.total, -d.acquisition, -d.fixed));
        assert_eq!(back.vendors_entering, d.vendors_leaving);
    }

    #[test]
    fn compare_k1_with_k2() {
        let inst = sample();
        let curve = cost_curve(&inst, &Constraints::none(), &SolverOptions::default(), CurveMode::PerCount).unwrap();
        let k1 = curve.entry(1).unwrap().solution.as_ref().unwrap();
        let k2 = curve.entry(2).unwrap().solution.as_ref().unwrap();
        let d = compare_solutions(k1, k2).unwrap();
        assert_eq!(d.total, -1_500);
        assert_eq!(d.vendors_entering, vec![3]);
        assert!(d.vendors_leaving.is_empty());
        assert!(compare_solutions(k1, k1).unwrap().is_zero());
    }

    #[test]
    fn compare_rejects_foreign_solutions() {
        let a = solve_exhaustive(&sample(), &SolverOptions::default()).unwrap().best;
        let mut raw = sample_raw();
        raw.fixed_costs[0] += 1;
        let other = validate_instance(raw).unwrap();
        let b = solve_exhaustive(&other, &SolverOptions::default()).unwrap().best;
        assert_eq!(compare_solutions(&a, &b), Err(Error::InstanceMismatch));
    }
}
