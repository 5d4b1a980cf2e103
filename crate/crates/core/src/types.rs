//! Domain types shared by every module.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;

use crate::error::{Error, Result};

/// Exact nonnegative count. Totals grow super-exponentially, so no fixed-width
/// integer is used for anything that is summed or multiplied across cars.
pub type Count = BigUint;

/// Which parking rule a simulation or count refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Rule {
    /// Parking sequences: drive to the first empty spot, fail on collision.
    Sequence,
    /// Parking assortments: take the first free window of the car's length.
    Assortment,
}

impl Rule {
    pub const ALL: [Rule; 2] = [Rule::Sequence, Rule::Assortment];

    pub fn as_str(self) -> &'static str {
        match self {
            Rule::Sequence => "ps",
            Rule::Assortment => "pa",
        }
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Rule {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "ps" | "sequence" => Ok(Rule::Sequence),
            "pa" | "assortment" => Ok(Rule::Assortment),
            _ => Err(Error::UnknownRule(s.to_string())),
        }
    }
}

/// Car lengths `y_1, ..., y_n`, all positive, with `n >= 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CarLengths {
    lengths: Vec<usize>,
    street: usize,
}

impl CarLengths {
    pub fn new(lengths: Vec<usize>) -> Result<Self> {
        if lengths.is_empty() {
            return Err(Error::NoCars);
        }
        if let Some(pos) = lengths.iter().position(|&y| y == 0) {
            return Err(Error::NonPositiveLength {
                index: pos + 1,
                length: 0,
            });
        }
        let street = lengths
            .iter()
            .try_fold(0usize, |acc, &y| acc.checked_add(y))
            .ok_or(Error::StreetOverflow)?;
        Ok(Self { lengths, street })
    }

    /// Unit lengths `(1, ..., 1)`: the classical parking-function case.
    pub fn unit(n: usize) -> Result<Self> {
        Self::new(vec![1; n])
    }

    /// Number of cars `n`.
    pub fn len(&self) -> usize {
        self.lengths.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lengths.is_empty()
    }

    /// Number of spots `m`, the sum of all lengths.
    pub fn street_length(&self) -> usize {
        self.street
    }

    /// Length of `car` (1-based label).
    ///
    /// Panics if the label is out of range.
    pub fn length(&self, car: usize) -> usize {
        self.lengths[car - 1]
    }

    /// Lengths indexed from 0 (car `i` at index `i - 1`).
    pub fn as_slice(&self) -> &[usize] {
        &self.lengths
    }
}

impl fmt::Display for CarLengths {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_joined(f, &self.lengths)
    }
}

/// Street length of `y`.
pub fn street_length(lengths: &CarLengths) -> usize {
    lengths.street_length()
}

/// A preference list `x` with every entry in `[1, m]` for its car lengths.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PreferenceList(Vec<usize>);

impl PreferenceList {
    pub fn new(lengths: &CarLengths, prefs: Vec<usize>) -> Result<Self> {
        if prefs.len() != lengths.len() {
            return Err(Error::DimensionMismatch {
                expected: lengths.len(),
                found: prefs.len(),
            });
        }
        let street = lengths.street_length();
        if let Some(pos) = prefs.iter().position(|&x| x == 0 || x > street) {
            return Err(Error::PreferenceOutOfRange {
                index: pos + 1,
                value: prefs[pos] as i64,
                street,
            });
        }
        Ok(Self(prefs))
    }

    /// Wraps a list already known to be in range. Used by the enumerator,
    /// whose iteration space is `[1, m]^n` by construction.
    pub(crate) fn from_unchecked(prefs: Vec<usize>) -> Self {
        Self(prefs)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Preferred spot of `car` (1-based label).
    pub fn pref(&self, car: usize) -> usize {
        self.0[car - 1]
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }
}

impl fmt::Display for PreferenceList {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_joined(f, &self.0)
    }
}

/// Validates raw user input, reporting the first offending index (1-based).
///
/// Accepts exactly when all lengths are positive, both lists have the same
/// length, and every preference lies in `[1, m]`.
pub fn validate(lengths: &[i64], prefs: &[i64]) -> Result<(CarLengths, PreferenceList)> {
    let lengths = lengths_from_signed(lengths)?;
    if prefs.len() != lengths.len() {
        return Err(Error::DimensionMismatch {
            expected: lengths.len(),
            found: prefs.len(),
        });
    }
    let street = lengths.street_length();
    let mut checked = Vec::with_capacity(prefs.len());
    for (pos, &x) in prefs.iter().enumerate() {
        if x < 1 || x as u64 > street as u64 {
            return Err(Error::PreferenceOutOfRange {
                index: pos + 1,
                value: x,
                street,
            });
        }
        checked.push(x as usize);
    }
    Ok((lengths, PreferenceList(checked)))
}

/// Builds [`CarLengths`] from signed input, rejecting zero and negative entries.
pub fn lengths_from_signed(lengths: &[i64]) -> Result<CarLengths> {
    if lengths.is_empty() {
        return Err(Error::NoCars);
    }
    let mut checked = Vec::with_capacity(lengths.len());
    for (pos, &y) in lengths.iter().enumerate() {
        if y < 1 {
            return Err(Error::NonPositiveLength {
                index: pos + 1,
                length: y,
            });
        }
        checked.push(y as usize);
    }
    CarLengths::new(checked)
}

/// A parking order in one-line notation: `order[j - 1] = i` means car `i` is
/// the `j`-th car from the left end of the street.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ParkingOrder(Vec<usize>);

impl ParkingOrder {
    pub fn new(order: Vec<usize>) -> Result<Self> {
        let n = order.len();
        if n == 0 {
            return Err(Error::NotAPermutation {
                n,
                reason: "empty".into(),
            });
        }
        let mut seen = vec![false; n];
        for &v in &order {
            if v == 0 || v > n {
                return Err(Error::NotAPermutation {
                    n,
                    reason: format!("value {v} out of range"),
                });
            }
            if std::mem::replace(&mut seen[v - 1], true) {
                return Err(Error::NotAPermutation {
                    n,
                    reason: format!("value {v} repeated"),
                });
            }
        }
        Ok(Self(order))
    }

    pub(crate) fn from_unchecked(order: Vec<usize>) -> Self {
        Self(order)
    }

    /// `12...n`
    pub fn identity(n: usize) -> Self {
        Self((1..=n).collect())
    }

    /// `n...21`
    pub fn decreasing(n: usize) -> Self {
        Self((1..=n).rev().collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Car at street position `position` (1-based).
    pub fn at(&self, position: usize) -> usize {
        self.0[position - 1]
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub(crate) fn check_position(&self, position: usize) -> Result<()> {
        if position == 0 || position > self.len() {
            Err(Error::PositionOutOfRange {
                position,
                n: self.len(),
            })
        } else {
            Ok(())
        }
    }

    pub(crate) fn check_cars(&self, lengths: &CarLengths) -> Result<()> {
        if self.len() != lengths.len() {
            Err(Error::DimensionMismatch {
                expected: lengths.len(),
                found: self.len(),
            })
        } else {
            Ok(())
        }
    }
}

impl fmt::Display for ParkingOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_joined(f, &self.0)
    }
}

impl FromStr for ParkingOrder {
    type Err = Error;

    /// Parses comma-separated one-line notation, e.g. `2,4,5,7,3,6,1`.
    fn from_str(s: &str) -> Result<Self> {
        let values = s
            .split(',')
            .map(|t| t.trim().parse::<usize>())
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(|e| Error::NotAPermutation {
                n: 0,
                reason: format!("cannot parse `{s}`: {e}"),
            })?;
        Self::new(values)
    }
}

/// Leftmost spot occupied by each car.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Assignment {
    starts: Vec<usize>,
}

impl Assignment {
    /// `starts[i - 1]` is the leftmost spot of car `i`. Checks that the blocks
    /// are disjoint and tile `[1, m]`.
    pub fn new(lengths: &CarLengths, starts: Vec<usize>) -> Result<Self> {
        if starts.len() != lengths.len() {
            return Err(Error::IncompleteAssignment {
                car: starts.len().min(lengths.len()) + 1,
            });
        }
        let m = lengths.street_length();
        let mut taken = vec![false; m];
        for (car, (&s, &y)) in starts.iter().zip(lengths.as_slice()).enumerate() {
            if s == 0 {
                return Err(Error::IncompleteAssignment { car: car + 1 });
            }
            for spot in s..s + y {
                if spot > m || std::mem::replace(&mut taken[spot - 1], true) {
                    return Err(Error::InconsistentAssignment { spot });
                }
            }
        }
        Ok(Self { starts })
    }

    pub(crate) fn from_unchecked(starts: Vec<usize>) -> Self {
        Self { starts }
    }

    /// Leftmost spot of `car` (1-based label).
    pub fn start(&self, car: usize) -> usize {
        self.starts[car - 1]
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.starts
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FailureReason {
    /// Sequence rule: the block starting at the first empty spot overlaps a
    /// parked car or runs past the end of the street.
    Collision,
    /// Assortment rule: no free window of the car's length at or after its
    /// preference.
    NoFit,
}

impl FailureReason {
    pub fn as_str(self) -> &'static str {
        match self {
            FailureReason::Collision => "collision",
            FailureReason::NoFit => "no-fit",
        }
    }
}

impl fmt::Display for FailureReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParkingResult {
    Parked(Assignment),
    Failed { car: usize, reason: FailureReason },
}

impl ParkingResult {
    pub fn is_parked(&self) -> bool {
        matches!(self, ParkingResult::Parked(_))
    }

    pub fn assignment(&self) -> Option<&Assignment> {
        match self {
            ParkingResult::Parked(a) => Some(a),
            ParkingResult::Failed { .. } => None,
        }
    }
}

fn write_joined(f: &mut fmt::Formatter<'_>, values: &[usize]) -> fmt::Result {
    for (k, v) in values.iter().enumerate() {
        if k > 0 {
            f.write_str(",")?;
        }
        write!(f, "{v}")?;
    }
    Ok(())
}
