use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("duplicate {kind} id {id:?}")]
    DuplicateId { kind: &'static str, id: String },
    #[error("empty {0} id")]
    EmptyId(&'static str),
    #[error("price of item {item:?} from vendor {vendor:?} must be positive")]
    NonPositivePrice { item: String, vendor: String },
    #[error("fixed cost of vendor {vendor:?} must not be negative")]
    NegativeFixedCost { vendor: String },
    #[error("instance must have at least one item and one vendor")]
    EmptyInstance,
    #[error("sum of all prices and fixed costs overflows the cost type")]
    AmountOverflow,

    #[error("solution id {id} outside [1, 2^{n} - 1]")]
    OutOfRange { id: u64, n: usize },
    #[error("{n} vendors exceed the 62-bit solution id width")]
    UnsupportedWidth { n: usize },
    #[error("vendor subset must not be empty")]
    EmptySubset,
    #[error("vendor index {index} out of range for {n} vendors")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("unknown vendor {0:?}")]
    UnknownVendor(String),

    #[error("subset leaves {} item(s) uncovered: {}", uncovered.len(), uncovered.join(", "))]
    InfeasibleSubset { uncovered: Vec<String> },
    #[error("{n} unpinned vendors exceed the exhaustive solver cap of {cap}; raise the cap or require/forbid vendors to shrink the search")]
    TooManyVendors { n: usize, cap: usize },
    #[error("no feasible vendor subset: {0}")]
    NoFeasibleSubset(String),
    #[error("vendors both required and forbidden: {}", .0.join(", "))]
    ConflictingConstraints(Vec<String>),
    #[error("bad constraint: {0}")]
    BadConstraint(String),
    #[error("time budget of {millis} ms exceeded")]
    TimeBudgetExceeded { millis: u128 },

    #[error("no single vendor bids on every item")]
    NoFullCoverageVendor,
    #[error("item {0:?} has no bids")]
    UncoveredItem(String),
    #[error("solutions belong to different instances")]
    InstanceMismatch,

    #[error("malformed CSV (line {line}): {reason}")]
    MalformedCsv { line: u64, reason: String },
    #[error("bad number {text:?}: {reason}")]
    BadNumber { text: String, reason: String },
    #[error("bad parameters: {0}")]
    BadParameters(String),
    #[error("I/O error: {0}")]
    Io(String),
}

/// Coarse outcome class, used for CLI exit codes and HTTP status codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorClass {
    Input,
    Infeasible,
    SizeCap,
}

impl Error {
    pub fn class(&self) -> ErrorClass {
        match self {
            Error::InfeasibleSubset { .. }
            | Error::NoFeasibleSubset(_)
            | Error::ConflictingConstraints(_)
            | Error::NoFullCoverageVendor
            | Error::UncoveredItem(_) => ErrorClass::Infeasible,
            Error::TooManyVendors { .. } | Error::UnsupportedWidth { .. } | Error::TimeBudgetExceeded { .. } => {
                ErrorClass::SizeCap
            }
            _ => ErrorClass::Input,
        }
    }

    /// Short machine-readable name of the variant.
    pub fn code(&self) -> &'static str {
        match self {
            Error::DimensionMismatch(_) => "DimensionMismatch",
            Error::DuplicateId { .. } => "DuplicateId",
            Error::EmptyId(_) => "EmptyId",
            Error::NonPositivePrice { .. } => "NonPositivePrice",
            Error::NegativeFixedCost { .. } => "NegativeFixedCost",
            Error::EmptyInstance => "EmptyInstance",
            Error::AmountOverflow => "AmountOverflow",
            Error::OutOfRange { .. } => "OutOfRange",
            Error::UnsupportedWidth { .. } => "UnsupportedWidth",
            Error::EmptySubset => "EmptySubset",
            Error::IndexOutOfRange { .. } => "IndexOutOfRange",
            Error::UnknownVendor(_) => "UnknownVendor",
            Error::InfeasibleSubset { .. } => "InfeasibleSubset",
            Error::TooManyVendors { .. } => "TooManyVendors",
            Error::NoFeasibleSubset(_) => "NoFeasibleSubset",
            Error::ConflictingConstraints(_) => "ConflictingConstraints",
            Error::BadConstraint(_) => "BadConstraint",
            Error::TimeBudgetExceeded { .. } => "TimeBudgetExceeded",
            Error::NoFullCoverageVendor => "NoFullCoverageVendor",
            Error::UncoveredItem(_) => "UncoveredItem",
            Error::InstanceMismatch => "InstanceMismatch",
            Error::MalformedCsv { .. } => "MalformedCsv",
            Error::BadNumber { .. } => "BadNumber",
            Error::BadParameters(_) => "BadParameters",
            Error::Io(_) => "Io",
        }
    }
}
