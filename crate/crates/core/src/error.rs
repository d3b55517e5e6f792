use thiserror::Error;

use crate::group::Element;
use crate::search::SearchOutcome;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("not a group: {0}")]
    NotAGroup(String),

    #[error("identity element is {found}, not index 0; re-index the table")]
    IdentityNotZero { found: Element },

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("{0} is not a prime power")]
    NotPrimePower(u64),

    #[error("group of order {order} exceeds the configured bound {bound}")]
    GroupTooLarge { order: usize, bound: usize },

    #[error("element {element} is outside a group of order {order}")]
    ElementOutOfRange { element: Element, order: usize },

    #[error("invalid family: {0}")]
    InvalidFamily(String),

    #[error("difference is taken against the identity element")]
    IdentityDelta,

    #[error("weight {weight} at position {index} is outside (0, 1]")]
    BadWeight { index: usize, weight: String },

    #[error("expected {expected} weights, got {found}")]
    WeightCount { expected: usize, found: usize },

    #[error("group of order {0} has no non-identity elements")]
    DegenerateGroup(usize),

    #[error("set is not a difference set")]
    NotADifferenceSet,

    #[error("{q} is not congruent to 1 modulo 4")]
    BadResidueClass { q: u64 },

    #[error("subgroups intersect in non-identity element {element}")]
    OverlappingSubgroups { element: Element },

    #[error("element {element} has order {order}, so the group does not have exponent {p}")]
    NotExponentP {
        p: u64,
        element: Element,
        order: usize,
    },

    #[error("subgroup stars do not partition the non-identity elements: {0}")]
    PartitionFailure(String),

    #[error("invalid parameters: {0}")]
    InvalidParameters(String),

    #[error("infeasible parameters: {0}")]
    InfeasibleParameters(String),

    #[error("search stopped after {} nodes with {} partial results", .partial.stats.nodes, .partial.families.len())]
    BudgetExceeded { partial: Box<SearchOutcome> },

    #[error("cannot parse rational {0:?}")]
    ParseRational(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}
