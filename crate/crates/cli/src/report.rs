//! Plain-text rendering for terminal output.

use std::fmt::Write;

use mivs_core::scalar::format_amount;
use mivs_core::{CostCurve, Instance, PolicyResult, Solution};

pub fn solution_text(instance: &Instance, solution: &Solution) -> String {
    let mut out = String::new();
    let vendor = |j: usize| instance.vendors()[j].id.as_str();
    let members: Vec<&str> = solution.subset().members().map(vendor).collect();
    let _ = writeln!(out, "solution id       {}", solution.solution_id());
    let _ = writeln!(out, "vendors           {}", members.join(", "));
    let _ = writeln!(out, "acquisition cost  {:>12}", format_amount(solution.acquisition_cost()));
    let _ = writeln!(out, "fixed cost        {:>12}", format_amount(solution.fixed_cost()));
    let _ = writeln!(out, "total cost        {:>12}", format_amount(solution.total_cost()));
    let _ = writeln!(out, "items covered     {} of {}", solution.items_covered(), instance.m());
    for j in solution.subset().members() {
        let won: Vec<usize> = (0..instance.m()).filter(|&i| solution.assignment()[i] == Some(j)).collect();
        let _ = writeln!(out, "\n{} ({} items)", vendor(j), won.len());
        for i in won {
            let price = instance.price(i, j).map(format_amount).unwrap_or_default();
            let _ = writeln!(out, "  {:<24} {:>12}", instance.items()[i].id, price);
        }
    }
    let uncovered: Vec<&str> = solution.uncovered_items().map(|i| instance.items()[i].id.as_str()).collect();
    if !uncovered.is_empty() {
        let _ = writeln!(out, "\nuncovered: {}", uncovered.join(", "));
    }
    out
}

pub fn policy_text(instance: &Instance, result: &PolicyResult) -> String {
    let mut out = format!("policy            {}\n", result.policy.tag());
    if !result.ranking.is_empty() {
        out.push_str("\nvendor   purchasing cost   items  full\n");
        for r in &result.ranking {
            let _ = writeln!(
                out,
                "{:<8} {:>15}   {:>5}  {}",
                instance.vendors()[r.vendor].id,
                format_amount(r.purchasing_cost),
                r.items_offered,
                if r.full_coverage { "yes" } else { "no" }
            );
        }
        out.push('\n');
    }
    out.push_str(&solution_text(instance, &result.solution));
    out
}

pub fn curve_text(instance: &Instance, curve: &CostCurve) -> String {
    let mut out = String::from(" k        total  vendors\n");
    for e in &curve.entries {
        match &e.solution {
            Some(s) => {
                let vendors: Vec<&str> = s.subset().members().map(|j| instance.vendors()[j].id.as_str()).collect();
                let marker = if e.k == curve.optimum.0 { "  *" } else { "" };
                let _ = writeln!(out, "{:>2} {:>12}  {}{marker}", e.k, format_amount(s.total_cost()), vendors.join(","));
            }
            None => {
                let _ = writeln!(out, "{:>2} {:>12}", e.k, "infeasible");
            }
        }
    }
    out
}
