//! Seeded random instances for tests and benchmarks.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::model::{validate_instance, Instance, Item, RawInstance, Vendor};
use crate::scalar::{major, CostScalar};

#[derive(Debug, Clone, PartialEq)]
pub struct GeneratorParams {
    pub items: usize,
    pub vendors: usize,
    pub seed: u64,
    /// Inclusive range of whole-unit prices.
    pub price_range: (u64, u64),
    /// Inclusive range of whole-unit fixed costs.
    pub fixed_range: (u64, u64),
    /// Probability that a vendor bids on an item, in `(0, 1]`.
    pub bid_density: f64,
}

impl GeneratorParams {
    pub fn new(items: usize, vendors: usize, seed: u64) -> Self {
        GeneratorParams { items, vendors, seed, price_range: (5, 100), fixed_range: (10, 200), bid_density: 1.0 }
    }

    pub fn with_density(mut self, density: f64) -> Self {
        self.bid_density = density;
        self
    }

    pub fn with_price_range(mut self, lo: u64, hi: u64) -> Self {
        self.price_range = (lo, hi);
        self
    }

    pub fn with_fixed_range(mut self, lo: u64, hi: u64) -> Self {
        self.fixed_range = (lo, hi);
        self
    }
}

/// Deterministic for a given parameter set. Item `I<k>` and vendor `V<k>`
/// ids are 1-based. An item left without bids after the density draw gets
/// one bid from a uniformly chosen vendor.
pub fn generate_instance<T: CostScalar>(params: &GeneratorParams) -> Result<Instance<T>> {
    let GeneratorParams { items: m, vendors: n, seed, price_range, fixed_range, bid_density } = *params;
    if m == 0 || n == 0 {
        return Err(Error::BadParameters("items and vendors must be at least 1".into()));
    }
    if !(bid_density > 0.0 && bid_density <= 1.0) {
        return Err(Error::BadParameters(format!("bid density {bid_density} outside (0, 1]")));
    }
    if price_range.0 == 0 || price_range.0 > price_range.1 {
        return Err(Error::BadParameters(format!("price range {price_range:?} must be positive and ordered")));
    }
    if fixed_range.0 > fixed_range.1 {
        return Err(Error::BadParameters(format!("fixed cost range {fixed_range:?} must be ordered")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let draw_price = |rng: &mut ChaCha8Rng| major::<T>(rng.random_range(price_range.0..=price_range.1));
    let prices = (0..m)
        .map(|_| {
            let mut row: Vec<Option<T>> =
                (0..n).map(|_| rng.random_bool(bid_density).then(|| draw_price(&mut rng))).collect();
            if row.iter().all(Option::is_none) {
                let j = rng.random_range(0..n);
                row[j] = Some(draw_price(&mut rng));
            }
            row
        })
        .collect();
    let fixed_costs = (0..n).map(|_| major::<T>(rng.random_range(fixed_range.0..=fixed_range.1))).collect();
    validate_instance(RawInstance {
        items: (1..=m).map(|i| Item::new(format!("I{i}"))).collect(),
        vendors: (1..=n).map(|j| Vendor::new(format!("V{j}"))).collect(),
        prices,
        fixed_costs,
    })
    .map_err(|e| Error::BadParameters(e.to_string()))
}
