use num_bigint::BigUint;
use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("at least one car is required")]
    NoCars,

    #[error("car {index} has nonpositive length {length}")]
    NonPositiveLength { index: usize, length: i64 },

    #[error("total street length overflows a machine word")]
    StreetOverflow,

    #[error("dimension mismatch: {expected} cars but {found} entries")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("preference {value} of car {index} is outside the street [1, {street}]")]
    PreferenceOutOfRange {
        index: usize,
        value: i64,
        street: usize,
    },

    #[error("not a permutation of [1, {n}]: {reason}")]
    NotAPermutation { n: usize, reason: String },

    #[error("position {position} is outside [1, {n}]")]
    PositionOutOfRange { position: usize, n: usize },

    #[error("assignment is incomplete: car {car} has no spot")]
    IncompleteAssignment { car: usize },

    #[error("assignment is inconsistent: spot {spot} is claimed twice or lies off the street")]
    InconsistentAssignment { spot: usize },

    #[error("search needs {required} simulations, above the budget of {cap}")]
    BudgetExceeded { required: BigUint, cap: u64 },

    #[error("unknown family `{0}` (expected staircase, fibonacci, catalan or unit)")]
    UnknownFamily(String),

    #[error("family `{family}` has only {available} terms, {requested} requested")]
    FamilyTooShort {
        family: String,
        available: usize,
        requested: usize,
    },

    #[error("term {index} of the catalan-shape family does not fit in a machine word")]
    LengthOverflow { index: usize },

    #[error("inexact division computing term {index} of the catalan-shape family")]
    InexactDivision { index: usize },

    #[error("unknown rule `{0}` (expected ps or pa)")]
    UnknownRule(String),
}
