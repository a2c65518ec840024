//! JSON documents shared by the CLI and the HTTP service.
//!
//! Money is written as a string in major units with two decimals so that
//! float-based readers cannot corrupt cents. Key order is fixed by the
//! struct definitions and no timing data is included, so identical inputs
//! always produce identical bytes.

use serde::Serialize;

use crate::error::Result;
use crate::model::{Instance, Solution};
use crate::policy::PolicyResult;
use crate::scalar::{format_amount, CostScalar};
use crate::solver::{SolveReport, SolveStats};
use crate::whatif::CostCurve;

#[derive(Debug, Clone, Serialize)]
pub struct AssignmentJson {
    pub item: String,
    pub vendor: Option<String>,
    pub price: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct StatsJson {
    pub candidates: u64,
    pub evaluated: u64,
    pub pruned: u64,
    pub infeasible: u64,
}

impl From<&SolveStats> for StatsJson {
    fn from(s: &SolveStats) -> Self {
        StatsJson { candidates: s.candidates, evaluated: s.evaluated, pruned: s.pruned, infeasible: s.infeasible }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SolutionJson {
    pub solution_id: u64,
    pub vendors: Vec<String>,
    pub effective_vendors: Vec<String>,
    pub assignments: Vec<AssignmentJson>,
    pub acquisition_cost: String,
    pub fixed_cost: String,
    pub total_cost: String,
    pub items_covered: usize,
    pub uncovered_items: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub stats: Option<StatsJson>,
}

pub fn solution_json<T: CostScalar>(instance: &Instance<T>, solution: &Solution<T>) -> SolutionJson {
    let vendor_id = |j: usize| instance.vendors()[j].id.clone();
    let assignments = solution
        .assignment()
        .iter()
        .enumerate()
        .map(|(i, a)| AssignmentJson {
            item: instance.items()[i].id.clone(),
            vendor: a.map(vendor_id),
            price: a.and_then(|j| instance.price(i, j)).map(format_amount),
        })
        .collect();
    SolutionJson {
        solution_id: solution.solution_id(),
        vendors: solution.subset().members().map(vendor_id).collect(),
        effective_vendors: solution.effective_vendors().into_iter().map(vendor_id).collect(),
        assignments,
        acquisition_cost: format_amount(solution.acquisition_cost()),
        fixed_cost: format_amount(solution.fixed_cost()),
        total_cost: format_amount(solution.total_cost()),
        items_covered: solution.items_covered(),
        uncovered_items: solution.uncovered_items().map(|i| instance.items()[i].id.clone()).collect(),
        stats: None,
    }
}

fn to_text<S: Serialize>(value: &S) -> String {
    let mut text = serde_json::to_string_pretty(value).expect("JSON documents serialize");
    text.push('\n');
    text
}

/// The solve result document.
pub fn write_solution_json<T: CostScalar>(instance: &Instance<T>, report: &SolveReport<T>) -> String {
    let mut doc = solution_json(instance, &report.best);
    doc.stats = Some(StatsJson::from(&report.stats));
    to_text(&doc)
}

#[derive(Serialize)]
struct CurveEntryJson {
    k: usize,
    feasible: bool,
    solution_id: Option<u64>,
    vendors: Vec<String>,
    total_cost: Option<String>,
    items_covered: Option<usize>,
}

#[derive(Serialize)]
struct CurveOptimumJson {
    k: usize,
    total_cost: String,
}

#[derive(Serialize)]
struct CurveJson {
    entries: Vec<CurveEntryJson>,
    optimum: CurveOptimumJson,
}

pub fn curve_json<T: CostScalar>(instance: &Instance<T>, curve: &CostCurve<T>) -> String {
    let entries = curve
        .entries
        .iter()
        .map(|e| CurveEntryJson {
            k: e.k,
            feasible: e.solution.is_some(),
            solution_id: e.solution.as_ref().map(Solution::solution_id),
            vendors: e
                .solution
                .as_ref()
                .map(|s| s.subset().members().map(|j| instance.vendors()[j].id.clone()).collect())
                .unwrap_or_default(),
            total_cost: e.solution.as_ref().map(|s| format_amount(s.total_cost())),
            items_covered: e.solution.as_ref().map(Solution::items_covered),
        })
        .collect();
    let (k, total) = curve.optimum;
    to_text(&CurveJson { entries, optimum: CurveOptimumJson { k, total_cost: format_amount(total) } })
}

#[derive(Serialize)]
struct RankingJson {
    vendor: String,
    purchasing_cost: String,
    items_offered: usize,
    full_coverage: bool,
}

#[derive(Serialize)]
struct PolicyJson {
    policy: &'static str,
    solution: SolutionJson,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    ranking: Vec<RankingJson>,
}

#[derive(Serialize)]
struct PolicyOutcomeJson {
    #[serde(skip_serializing_if = "Option::is_none")]
    result: Option<PolicyJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    error: Option<String>,
}

fn policy_doc<T: CostScalar>(instance: &Instance<T>, result: &PolicyResult<T>) -> PolicyJson {
    PolicyJson {
        policy: result.policy.tag(),
        solution: solution_json(instance, &result.solution),
        ranking: result
            .ranking
            .iter()
            .map(|r| RankingJson {
                vendor: instance.vendors()[r.vendor].id.clone(),
                purchasing_cost: format_amount(r.purchasing_cost),
                items_offered: r.items_offered,
                full_coverage: r.full_coverage,
            })
            .collect(),
    }
}

pub fn policy_json<T: CostScalar>(instance: &Instance<T>, result: &PolicyResult<T>) -> String {
    to_text(&policy_doc(instance, result))
}

/// Both baseline policies; a policy that does not apply carries its error
/// message instead of a result.
pub fn policies_json<T: CostScalar>(
    instance: &Instance<T>,
    single_vendor: &Result<PolicyResult<T>>,
    cheapest_per_item: &Result<PolicyResult<T>>,
) -> String {
    let outcome = |r: &Result<PolicyResult<T>>| match r {
        Ok(p) => PolicyOutcomeJson { result: Some(policy_doc(instance, p)), error: None },
        Err(e) => PolicyOutcomeJson { result: None, error: Some(e.to_string()) },
    };
    #[derive(Serialize)]
    struct Both {
        single_vendor: PolicyOutcomeJson,
        cheapest_per_item: PolicyOutcomeJson,
    }
    to_text(&Both { single_vendor: outcome(single_vendor), cheapest_per_item: outcome(cheapest_per_item) })
}

#[derive(Serialize)]
struct DescriptorJson<'a> {
    id: &'a str,
    m: usize,
    n: usize,
    vendors: Vec<&'a str>,
    flagged_items: Vec<&'a str>,
}

/// Summary of a stored instance.
pub fn descriptor_json<T: CostScalar>(id: &str, instance: &Instance<T>) -> String {
    to_text(&DescriptorJson {
        id,
        m: instance.m(),
        n: instance.n(),
        vendors: instance.vendors().iter().map(|v| v.id.as_str()).collect(),
        flagged_items: instance.zero_bid_items().into_iter().map(|i| instance.items()[i].id.as_str()).collect(),
    })
}
