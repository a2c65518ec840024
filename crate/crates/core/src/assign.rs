//! Cheapest-selected-bidder assignment for a fixed vendor subset.

use crate::error::{Error, Result};
use crate::model::{CoverageMode, Instance, Solution, VendorSubset};
use crate::scalar::CostScalar;

/// Per-item bids sorted by `(price, vendor index)`, stored flat.
///
/// The first bid in an item's list whose vendor belongs to a subset is the
/// cheapest selected bidder, with ties going to the lowest vendor index.
#[derive(Debug, Clone)]
pub struct PriceIndex<'a, T> {
    instance: &'a Instance<T>,
    offsets: Vec<usize>,
    vendors: Vec<u32>,
    prices: Vec<T>,
    min_price_sum: T,
    coverable: usize,
}

pub fn build_price_index<T: CostScalar>(instance: &Instance<T>) -> PriceIndex<'_, T> {
    let mut offsets = Vec::with_capacity(instance.m() + 1);
    let mut vendors = Vec::with_capacity(instance.bid_count());
    let mut prices = Vec::with_capacity(instance.bid_count());
    let mut min_price_sum = T::zero();
    let mut coverable = 0;
    offsets.push(0);
    let mut bids: Vec<(T, usize)> = Vec::with_capacity(instance.n());
    for i in 0..instance.m() {
        bids.clear();
        bids.extend(instance.row(i).iter().enumerate().filter_map(|(j, p)| p.map(|p| (p, j))));
        bids.sort_unstable();
        if let Some(&(p, _)) = bids.first() {
            min_price_sum = min_price_sum + p;
            coverable += 1;
        }
        for &(p, j) in &bids {
            vendors.push(j as u32);
            prices.push(p);
        }
        offsets.push(vendors.len());
    }
    PriceIndex { instance, offsets, vendors, prices, min_price_sum, coverable }
}

impl<'a, T: CostScalar> PriceIndex<'a, T> {
    pub fn instance(&self) -> &'a Instance<T> {
        self.instance
    }

    /// `(vendor, price)` bids for an item, cheapest first.
    pub fn bids(&self, item: usize) -> impl Iterator<Item = (usize, T)> + '_ {
        let range = self.offsets[item]..self.offsets[item + 1];
        self.vendors[range.clone()].iter().zip(&self.prices[range]).map(|(&j, &p)| (j as usize, p))
    }

    /// Cheapest bidder for `item` among the vendors set in `mask`.
    #[inline]
    pub fn cheapest_in(&self, item: usize, mask: u64) -> Option<(usize, T)> {
        let (lo, hi) = (self.offsets[item], self.offsets[item + 1]);
        (lo..hi).find(|&k| mask >> self.vendors[k] & 1 == 1).map(|k| (self.vendors[k] as usize, self.prices[k]))
    }

    /// Acquisition cost and number of covered items for the subset `mask`.
    #[inline]
    pub fn evaluate_mask(&self, mask: u64) -> (T, usize) {
        let mut acquisition = T::zero();
        let mut covered = 0;
        for item in 0..self.offsets.len() - 1 {
            let (lo, hi) = (self.offsets[item], self.offsets[item + 1]);
            for k in lo..hi {
                if mask >> self.vendors[k] & 1 == 1 {
                    acquisition = acquisition + self.prices[k];
                    covered += 1;
                    break;
                }
            }
        }
        (acquisition, covered)
    }

    /// Sum over items of the cheapest bid from any vendor.
    pub fn min_price_sum(&self) -> T {
        self.min_price_sum
    }

    /// Number of items with at least one bid.
    pub fn coverable_items(&self) -> usize {
        self.coverable
    }

    /// Assignment of every item to its cheapest bidder within `subset`.
    pub fn assignment(&self, subset: &VendorSubset) -> Vec<Option<usize>> {
        (0..self.instance.m()).map(|i| self.cheapest_in(i, subset.id()).map(|(j, _)| j)).collect()
    }

    /// The minimum-cost completion of `subset`. Every member pays its fixed
    /// cost, including members that win no item.
    pub fn build_solution(&self, subset: &VendorSubset, coverage: CoverageMode) -> Result<Solution<T>> {
        if subset.n() != self.instance.n() {
            return Err(Error::DimensionMismatch(format!(
                "subset over {} vendors for an instance with {}",
                subset.n(),
                self.instance.n()
            )));
        }
        let solution = Solution::assemble(self.instance, *subset, self.assignment(subset));
        if coverage == CoverageMode::Full && solution.items_covered() < self.instance.m() {
            let uncovered = solution.uncovered_items().map(|i| self.instance.items()[i].id.clone()).collect();
            return Err(Error::InfeasibleSubset { uncovered });
        }
        Ok(solution)
    }
}

/// One-shot form of [`PriceIndex::build_solution`].
pub fn build_solution<T: CostScalar>(
    instance: &Instance<T>,
    subset: &VendorSubset,
    coverage: CoverageMode,
) -> Result<Solution<T>> {
    build_price_index(instance).build_solution(subset, coverage)
}
