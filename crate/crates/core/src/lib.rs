//! Parking sequences and parking assortments for cars of assorted lengths.
//!
//! Cars `1..=n` with lengths `y` arrive in label order on a one-way street of
//! `m = y_1 + ... + y_n` spots. Each car carries a preferred spot. Under the
//! *sequence* rule a car drives to the first empty spot at or after its
//! preference and fails if its block would run into an occupied spot; under the
//! *assortment* rule it keeps driving until it finds a free window of its length.
//!
//! When every car parks, reading the street left to right yields a permutation,
//! the *parking order*. This crate provides:
//!
//! * [`simulator`]: both parking rules and the outcome map.
//! * [`fibers`]: closed-form counts of the preference lists producing a fixed
//!   parking order, and totals obtained by summing them over all orders.
//! * [`enumerator`]: an exhaustive brute-force oracle used to check every formula.
//! * [`families`]: length families whose identity-order fibers form known
//!   integer sequences.
//!
//! All labels (cars, spots, positions in a parking order) are 1-based.

pub mod enumerator;
pub mod error;
pub mod families;
pub mod fibers;
pub mod par;
pub mod perm;
pub mod simulator;
pub mod types;

pub use enumerator::{
    brute_force, equivalence_check, fiber_witnesses, Budget, OracleOptions, OracleReport, Verdict,
};
pub use error::{Error, Result};
pub use families::{generate_lengths, identity_fiber_sequence, FamilySpec};
pub use fibers::{
    classical_fiber, fiber, fiber_table, l_set, m_index, pa_fiber, pa_pref_count, pa_total_sum,
    ps_fiber, ps_pref_count, ps_total_product, ps_total_sum, t_partition, total_sum, BlockKind,
    BlockPartition, FiberTable, LSet,
};
pub use simulator::{classify, outcome, simulate, simulate_pa, simulate_ps};
pub use types::{
    street_length, validate, Assignment, CarLengths, Count, FailureReason, ParkingOrder,
    ParkingResult, PreferenceList, Rule,
};
