//! Baseline procurement policies: one vendor for everything, or the cheapest
//! bidder for each item.

use crate::assign::build_price_index;
use crate::error::{Error, Result};
use crate::model::{CoverageMode, Instance, Solution, VendorSubset};
use crate::scalar::CostScalar;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PolicyKind {
    /// Alternative I: the single vendor with the least purchasing cost.
    SingleVendor,
    /// Alternative II: every item from its cheapest bidder.
    CheapestPerItem,
}

impl PolicyKind {
    pub fn tag(self) -> &'static str {
        match self {
            PolicyKind::SingleVendor => "single_vendor",
            PolicyKind::CheapestPerItem => "cheapest_per_item",
        }
    }
}

/// One row of the single-vendor ranking.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VendorRanking<T> {
    pub vendor: usize,
    /// Sum of the vendor's bids over the items it offers.
    pub purchasing_cost: T,
    pub items_offered: usize,
    pub full_coverage: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolicyResult<T> {
    pub policy: PolicyKind,
    pub solution: Solution<T>,
    /// Only filled for [`PolicyKind::SingleVendor`]: full-coverage vendors
    /// first, each group by ascending purchasing cost then vendor index.
    pub ranking: Vec<VendorRanking<T>>,
}

/// Alternative I. Vendors are ranked by purchasing cost alone; the chosen
/// vendor's fixed cost is added to the reported total.
pub fn policy_single_vendor<T: CostScalar>(instance: &Instance<T>) -> Result<PolicyResult<T>> {
    let m = instance.m();
    let mut ranking: Vec<VendorRanking<T>> = (0..instance.n())
        .map(|j| {
            let bids = (0..m).filter_map(|i| instance.price(i, j));
            let (cost, count) = bids.fold((T::zero(), 0), |(c, k), p| (c + p, k + 1));
            VendorRanking { vendor: j, purchasing_cost: cost, items_offered: count, full_coverage: count == m }
        })
        .collect();
    ranking.sort_by_key(|r| (!r.full_coverage, r.purchasing_cost, r.vendor));
    let chosen = ranking.first().filter(|r| r.full_coverage).ok_or(Error::NoFullCoverageVendor)?.vendor;
    let subset = VendorSubset::from_indices([chosen], instance.n())?;
    let solution = build_price_index(instance).build_solution(&subset, CoverageMode::Full)?;
    Ok(PolicyResult { policy: PolicyKind::SingleVendor, solution, ranking })
}

/// Alternative II. Each item goes to its globally cheapest bidder (lowest
/// index on ties); only vendors that win an item pay their fixed cost.
pub fn policy_cheapest_per_item<T: CostScalar>(instance: &Instance<T>) -> Result<PolicyResult<T>> {
    if let Some(&i) = instance.zero_bid_items().first() {
        return Err(Error::UncoveredItem(instance.items()[i].id.clone()));
    }
    let index = build_price_index(instance);
    let winners: Vec<usize> = (0..instance.m()).filter_map(|i| index.bids(i).next().map(|(j, _)| j)).collect();
    let subset = VendorSubset::from_indices(winners.iter().copied(), instance.n())?;
    let assignment = winners.into_iter().map(Some).collect();
    let solution = Solution::assemble(instance, subset, assignment);
    Ok(PolicyResult { policy: PolicyKind::CheapestPerItem, solution, ranking: Vec::new() })
}
