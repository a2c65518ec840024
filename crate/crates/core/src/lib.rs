//! Exact solver and decision-support toolkit for multi-item vendor selection
//! with fixed vendor handling costs.
//!
//! Every item is bought from exactly one vendor, and every vendor that is
//! selected charges a fixed handling cost once. The solver enumerates all
//! `2^n - 1` nonempty vendor subsets, completes each one with its cheapest
//! per-item assignment and keeps the cheapest total.
//!
//! The core is generic over the cost scalar ([`CostScalar`]); the aliases at
//! the crate root fix it to [`Money`], an `i64` count of minor currency units.

pub mod assign;
pub mod codec;
pub mod error;
pub mod io;
pub mod milp;
pub mod model;
pub mod policy;
pub mod scalar;
pub mod solver;
pub mod whatif;

pub use error::{Error, ErrorClass, Result};
pub use model::{Cardinality, CoverageMode, Item, Vendor};
pub use scalar::CostScalar;
pub use solver::{SolveStats, SolverOptions};

/// Amount of money in minor units (cents). `i64` leaves headroom for
/// `10^12` minor units summed over `10^6` terms (`10^18 < 2^63`).
pub type Money = i64;

pub type Instance = model::Instance<Money>;
pub type RawInstance = model::RawInstance<Money>;
pub type VendorSubset = model::VendorSubset;
pub type Solution = model::Solution<Money>;
pub type Constraints = model::Constraints;
pub type PriceIndex<'a> = assign::PriceIndex<'a, Money>;
pub type SolveReport = solver::SolveReport<Money>;
pub type PolicyResult = policy::PolicyResult<Money>;
pub type CostCurve = whatif::CostCurve<Money>;
pub type SolutionDelta = whatif::SolutionDelta;
pub type IntegerProgram = milp::IntegerProgram<Money>;
