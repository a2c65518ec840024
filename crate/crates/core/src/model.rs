//! Domain types: instances, vendor subsets, solutions and constraints.

use std::collections::hash_map::DefaultHasher;
use std::collections::{BTreeSet, HashSet};
use std::hash::{Hash, Hasher};

use crate::codec::MAX_VENDORS;
use crate::error::{Error, Result};
use crate::scalar::CostScalar;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Item {
    pub id: String,
    pub name: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Vendor {
    pub id: String,
    pub name: String,
}

impl Item {
    pub fn new(id: impl Into<String>) -> Self {
        let id = id.into();
        Item { name: id.clone(), id }
    }
}

impl Vendor {
    pub fn new(id: impl Into<String>) -> Self {
        let id = id.into();
        Vendor { name: id.clone(), id }
    }
}

/// Unvalidated instance data. `prices[i][j]` is item `i`'s bid from vendor
/// `j`, `None` when the vendor does not offer the item.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RawInstance<T> {
    pub items: Vec<Item>,
    pub vendors: Vec<Vendor>,
    pub prices: Vec<Vec<Option<T>>>,
    pub fixed_costs: Vec<T>,
}

/// A validated, immutable bid matrix with per-vendor fixed costs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance<T> {
    items: Vec<Item>,
    vendors: Vec<Vendor>,
    /// Row-major `m x n`.
    prices: Vec<Option<T>>,
    fixed_costs: Vec<T>,
    bid_counts: Vec<usize>,
    fingerprint: u64,
}

/// Validate raw instance data.
///
/// Items without any bid are accepted and flagged through
/// [`Instance::zero_bid_items`]; they only matter once a solve asks for full
/// coverage. The grand total of all prices and fixed costs must fit `T`, which
/// guarantees that no solution cost computed later can overflow.
pub fn validate_instance<T: CostScalar>(raw: RawInstance<T>) -> Result<Instance<T>> {
    let RawInstance { items, vendors, prices, fixed_costs } = raw;
    let m = items.len();
    let n = vendors.len();
    if m == 0 || n == 0 {
        return Err(Error::EmptyInstance);
    }
    if prices.len() != m {
        return Err(Error::DimensionMismatch(format!("{} price rows for {m} items", prices.len())));
    }
    if let Some((i, row)) = prices.iter().enumerate().find(|(_, row)| row.len() != n) {
        return Err(Error::DimensionMismatch(format!(
            "price row {} has {} entries for {n} vendors",
            i + 1,
            row.len()
        )));
    }
    if fixed_costs.len() != n {
        return Err(Error::DimensionMismatch(format!("{} fixed costs for {n} vendors", fixed_costs.len())));
    }
    check_ids("item", items.iter().map(|it| it.id.as_str()))?;
    check_ids("vendor", vendors.iter().map(|v| v.id.as_str()))?;

    let zero = T::zero();
    let mut total = zero;
    for (j, &c) in fixed_costs.iter().enumerate() {
        if c < zero {
            return Err(Error::NegativeFixedCost { vendor: vendors[j].id.clone() });
        }
        total = total.checked_add(&c).ok_or(Error::AmountOverflow)?;
    }
    let mut bid_counts = vec![0; m];
    for (i, row) in prices.iter().enumerate() {
        for (j, p) in row.iter().enumerate() {
            if let Some(p) = *p {
                if p <= zero {
                    return Err(Error::NonPositivePrice { item: items[i].id.clone(), vendor: vendors[j].id.clone() });
                }
                bid_counts[i] += 1;
                total = total.checked_add(&p).ok_or(Error::AmountOverflow)?;
            }
        }
    }

    let prices: Vec<Option<T>> = prices.into_iter().flatten().collect();
    let mut hasher = DefaultHasher::new();
    (&items, &vendors, &prices, &fixed_costs).hash(&mut hasher);
    Ok(Instance { items, vendors, prices, fixed_costs, bid_counts, fingerprint: hasher.finish() })
}

fn check_ids<'a>(kind: &'static str, ids: impl Iterator<Item = &'a str>) -> Result<()> {
    let mut seen = HashSet::new();
    for id in ids {
        if id.trim().is_empty() {
            return Err(Error::EmptyId(kind));
        }
        if !seen.insert(id) {
            return Err(Error::DuplicateId { kind, id: id.to_string() });
        }
    }
    Ok(())
}

impl<T: CostScalar> Instance<T> {
    /// Number of items.
    pub fn m(&self) -> usize {
        self.items.len()
    }

    /// Number of vendors.
    pub fn n(&self) -> usize {
        self.vendors.len()
    }

    pub fn items(&self) -> &[Item] {
        &self.items
    }

    pub fn vendors(&self) -> &[Vendor] {
        &self.vendors
    }

    pub fn price(&self, item: usize, vendor: usize) -> Option<T> {
        self.prices[item * self.n() + vendor]
    }

    pub fn row(&self, item: usize) -> &[Option<T>] {
        let n = self.n();
        &self.prices[item * n..(item + 1) * n]
    }

    pub fn fixed_cost(&self, vendor: usize) -> T {
        self.fixed_costs[vendor]
    }

    pub fn fixed_costs(&self) -> &[T] {
        &self.fixed_costs
    }

    /// Number of vendors bidding on each item.
    pub fn bid_counts(&self) -> &[usize] {
        &self.bid_counts
    }

    /// Items nobody bids on.
    pub fn zero_bid_items(&self) -> Vec<usize> {
        (0..self.m()).filter(|&i| self.bid_counts[i] == 0).collect()
    }

    pub fn bid_count(&self) -> usize {
        self.bid_counts.iter().sum()
    }

    /// Content hash identifying the instance; solutions carry it.
    pub fn fingerprint(&self) -> u64 {
        self.fingerprint
    }

    pub fn vendor_index(&self, id: &str) -> Option<usize> {
        self.vendors.iter().position(|v| v.id == id)
    }

    /// Resolve a vendor reference: an id, or failing that a 1-based number.
    pub fn resolve_vendor(&self, reference: &str) -> Result<usize> {
        let reference = reference.trim();
        if let Some(j) = self.vendor_index(reference) {
            return Ok(j);
        }
        match reference.parse::<usize>() {
            Ok(k) if (1..=self.n()).contains(&k) => Ok(k - 1),
            _ => Err(Error::UnknownVendor(reference.to_string())),
        }
    }

    /// Sum of the fixed costs of a subset's members.
    pub fn subset_fixed_cost(&self, subset: &VendorSubset) -> T {
        subset.members().fold(T::zero(), |acc, j| acc + self.fixed_costs[j])
    }

    pub fn to_raw(&self) -> RawInstance<T> {
        RawInstance {
            items: self.items.clone(),
            vendors: self.vendors.clone(),
            prices: self.prices.chunks(self.n()).map(<[_]>::to_vec).collect(),
            fixed_costs: self.fixed_costs.clone(),
        }
    }
}

/// Total cost of buying at `acquisition` from `vendor_count` vendors that each
/// charge the same fixed handling cost.
pub fn cost_accounting<T: CostScalar>(acquisition: T, vendor_count: u64, per_vendor_fixed: T) -> T {
    acquisition + T::from_u64(vendor_count).expect("vendor count fits the cost type") * per_vendor_fixed
}

/// Nonempty set of vendor indices, stored as the bitmask of its solution id:
/// bit `j` set means vendor `j` (0-based) is selected.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VendorSubset {
    mask: u64,
    n: usize,
}

impl VendorSubset {
    /// Caller guarantees `mask != 0`, `n <= 62` and no bit at or above `n`.
    pub(crate) fn from_mask(mask: u64, n: usize) -> Self {
        debug_assert!(mask != 0 && n <= MAX_VENDORS && mask >> n == 0);
        VendorSubset { mask, n }
    }

    /// Build a subset from 0-based vendor indices.
    pub fn from_indices(members: impl IntoIterator<Item = usize>, n: usize) -> Result<Self> {
        if n > MAX_VENDORS {
            return Err(Error::UnsupportedWidth { n });
        }
        let mut mask = 0_u64;
        for j in members {
            if j >= n {
                return Err(Error::IndexOutOfRange { index: j, n });
            }
            mask |= 1 << j;
        }
        if mask == 0 {
            return Err(Error::EmptySubset);
        }
        Ok(VendorSubset { mask, n })
    }

    /// All `n` vendors.
    pub fn all(n: usize) -> Result<Self> {
        Self::from_indices(0..n, n)
    }

    /// Solution id `r`: the sum of `2^j` over members.
    pub fn id(&self) -> u64 {
        self.mask
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.mask.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn contains(&self, vendor: usize) -> bool {
        vendor < self.n && self.mask >> vendor & 1 == 1
    }

    /// Member indices, ascending.
    pub fn members(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.n).filter(move |&j| self.mask >> j & 1 == 1)
    }

    pub fn is_subset_of(&self, other: &VendorSubset) -> bool {
        self.mask & !other.mask == 0
    }
}

/// The completed solution for one vendor subset.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Solution<T> {
    pub(crate) subset: VendorSubset,
    pub(crate) assignment: Vec<Option<usize>>,
    pub(crate) acquisition_cost: T,
    pub(crate) fixed_cost: T,
    pub(crate) total_cost: T,
    pub(crate) items_covered: usize,
    pub(crate) instance: u64,
}

impl<T: CostScalar> Solution<T> {
    /// Assemble a solution, deriving every cost field from the assignment.
    pub(crate) fn assemble(instance: &Instance<T>, subset: VendorSubset, assignment: Vec<Option<usize>>) -> Self {
        let mut acquisition = T::zero();
        let mut covered = 0;
        for (i, a) in assignment.iter().enumerate() {
            if let Some(j) = *a {
                acquisition = acquisition + instance.price(i, j).expect("assigned vendor bids on item");
                covered += 1;
            }
        }
        let fixed = instance.subset_fixed_cost(&subset);
        Solution {
            subset,
            assignment,
            acquisition_cost: acquisition,
            fixed_cost: fixed,
            total_cost: acquisition + fixed,
            items_covered: covered,
            instance: instance.fingerprint(),
        }
    }

    pub fn subset(&self) -> &VendorSubset {
        &self.subset
    }

    pub fn solution_id(&self) -> u64 {
        self.subset.id()
    }

    /// Vendor assigned to each item, `None` for uncovered items.
    pub fn assignment(&self) -> &[Option<usize>] {
        &self.assignment
    }

    pub fn acquisition_cost(&self) -> T {
        self.acquisition_cost
    }

    pub fn fixed_cost(&self) -> T {
        self.fixed_cost
    }

    pub fn total_cost(&self) -> T {
        self.total_cost
    }

    pub fn items_covered(&self) -> usize {
        self.items_covered
    }

    pub fn uncovered_items(&self) -> impl Iterator<Item = usize> + '_ {
        self.assignment.iter().enumerate().filter(|(_, a)| a.is_none()).map(|(i, _)| i)
    }

    /// Vendors that win at least one item, ascending.
    pub fn effective_vendors(&self) -> Vec<usize> {
        let winners: BTreeSet<usize> = self.assignment.iter().flatten().copied().collect();
        winners.into_iter().collect()
    }

    pub fn instance_fingerprint(&self) -> u64 {
        self.instance
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash)]
pub enum CoverageMode {
    /// Every item must be assigned.
    #[default]
    Full,
    /// Uncovered items are allowed and reported.
    Partial,
}

/// Inclusive bounds on the number of selected vendors.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Cardinality {
    pub min: usize,
    pub max: usize,
}

impl Cardinality {
    pub fn exactly(k: usize) -> Self {
        Cardinality { min: k, max: k }
    }

    pub fn at_most(k: usize) -> Self {
        Cardinality { min: 1, max: k }
    }

    pub fn contains(&self, k: usize) -> bool {
        (self.min..=self.max).contains(&k)
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Constraints {
    pub required: BTreeSet<usize>,
    pub forbidden: BTreeSet<usize>,
    pub cardinality: Option<Cardinality>,
    pub coverage: CoverageMode,
}

impl Constraints {
    pub fn none() -> Self {
        Self::default()
    }

    pub fn with_cardinality(mut self, cardinality: Cardinality) -> Self {
        self.cardinality = Some(cardinality);
        self
    }

    pub fn require(mut self, vendor: usize) -> Self {
        self.required.insert(vendor);
        self
    }

    pub fn forbid(mut self, vendor: usize) -> Self {
        self.forbidden.insert(vendor);
        self
    }

    pub fn with_coverage(mut self, coverage: CoverageMode) -> Self {
        self.coverage = coverage;
        self
    }

    /// Check the constraints against an instance and lower them to bitmasks.
    pub(crate) fn compile<T: CostScalar>(&self, instance: &Instance<T>) -> Result<SubsetFilter> {
        let n = instance.n();
        for &j in self.required.iter().chain(&self.forbidden) {
            if j >= n {
                return Err(Error::IndexOutOfRange { index: j, n });
            }
        }
        let both: Vec<String> =
            self.required.intersection(&self.forbidden).map(|&j| instance.vendors()[j].id.clone()).collect();
        if !both.is_empty() {
            return Err(Error::ConflictingConstraints(both));
        }
        let (min, max) = match self.cardinality {
            Some(c) => {
                if c.min < 1 || c.max > n || c.min > c.max {
                    return Err(Error::BadConstraint(format!(
                        "vendor count range [{}, {}] must lie within [1, {n}]",
                        c.min, c.max
                    )));
                }
                (c.min as u32, c.max as u32)
            }
            None => (1, n as u32),
        };
        let mask = |set: &BTreeSet<usize>| set.iter().fold(0_u64, |acc, &j| acc | 1 << j);
        Ok(SubsetFilter { required: mask(&self.required), forbidden: mask(&self.forbidden), min, max })
    }
}

/// Build constraints from vendor references (ids or 1-based numbers), as
/// typed on the command line or sent in a query string.
pub fn constraints_from_refs<T: CostScalar, S: AsRef<str>>(
    instance: &Instance<T>,
    required: &[S],
    forbidden: &[S],
    cardinality: Option<Cardinality>,
    coverage: CoverageMode,
) -> Result<Constraints> {
    let resolve = |refs: &[S]| -> Result<BTreeSet<usize>> {
        refs.iter().filter(|r| !r.as_ref().trim().is_empty()).map(|r| instance.resolve_vendor(r.as_ref())).collect()
    };
    let constraints = Constraints { required: resolve(required)?, forbidden: resolve(forbidden)?, cardinality, coverage };
    constraints.compile(instance)?;
    Ok(constraints)
}

/// Bitmask form of [`Constraints`], applied to raw solution ids.
#[derive(Debug, Clone, Copy)]
pub(crate) struct SubsetFilter {
    pub required: u64,
    pub forbidden: u64,
    pub min: u32,
    pub max: u32,
}

impl SubsetFilter {
    #[inline]
    pub fn admits(&self, mask: u64) -> bool {
        let k = mask.count_ones();
        mask & self.required == self.required && mask & self.forbidden == 0 && k >= self.min && k <= self.max
    }
}
