//! Test-only helpers: a naive enumerator written directly from the model
//! definition, and a seeded random instance suite.
#![allow(dead_code)]

use mivs_core::model::{validate_instance, Item, RawInstance, Vendor};
use mivs_core::Instance;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const SAMPLE_CSV: &str = include_str!("../../../../data/sample.csv");

/// Result of the naive enumerator: `(total, id, acquisition)`.
pub type NaiveBest = (i64, u64, i64);

/// Scan every subset id in ascending order; for each item scan all vendor
/// columns and keep the strictly cheapest selected bid. Subsets leaving an
/// item uncovered are skipped. Ties on total keep the earlier (smaller) id.
pub fn naive_optimum(inst: &Instance, admit: impl Fn(u64) -> bool) -> Option<NaiveBest> {
    let (m, n) = (inst.m(), inst.n());
    let mut best: Option<NaiveBest> = None;
    'subsets: for r in 1..(1_u64 << n) {
        if !admit(r) {
            continue;
        }
        let mut acquisition = 0;
        for i in 0..m {
            let mut cheapest: Option<i64> = None;
            for j in 0..n {
                if r & (1 << j) != 0 {
                    if let Some(p) = inst.price(i, j) {
                        if cheapest.map_or(true, |c| p < c) {
                            cheapest = Some(p);
                        }
                    }
                }
            }
            match cheapest {
                Some(p) => acquisition += p,
                None => continue 'subsets,
            }
        }
        let fixed: i64 = (0..n).filter(|&j| r & (1 << j) != 0).map(|j| inst.fixed_cost(j)).sum();
        let total = acquisition + fixed;
        if best.map_or(true, |(t, _, _)| total < t) {
            best = Some((total, r, acquisition));
        }
    }
    best
}

/// `count` coverable instances with `n` in `1..=6`, `m` in `1..=12` and bid
/// density cycling through sparse, medium and dense. Small price ranges make
/// ties common.
pub fn random_suite(count: usize, seed: u64) -> Vec<Instance> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|k| {
            let n = rng.random_range(1..=6);
            let m = rng.random_range(1..=12);
            let density = [0.35, 0.65, 1.0][k % 3];
            let price_hi = [6, 20, 60][(k / 3) % 3];
            let prices = (0..m)
                .map(|_| {
                    let mut row: Vec<Option<i64>> = (0..n)
                        .map(|_| rng.random_bool(density).then(|| rng.random_range(1..=price_hi) * 100))
                        .collect();
                    if row.iter().all(Option::is_none) {
                        row[rng.random_range(0..n)] = Some(rng.random_range(1..=price_hi) * 100);
                    }
                    row
                })
                .collect();
            let fixed_costs = (0..n).map(|_| rng.random_range(0..=40) * 50).collect();
            validate_instance(RawInstance {
                items: (0..m).map(|i| Item::new(format!("I{}", i + 1))).collect(),
                vendors: (0..n).map(|j| Vendor::new(format!("V{}", j + 1))).collect(),
                prices,
                fixed_costs,
            })
            .expect("generated instance is valid")
        })
        .collect()
}
