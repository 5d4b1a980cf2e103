//! The parking experiment under both rules, and the outcome map.

use crate::error::{Error, Result};
use crate::types::{
    Assignment, CarLengths, FailureReason, ParkingOrder, ParkingResult, PreferenceList, Rule,
};

/// Occupancy of the street, one cell per spot. Reusable across runs so the
/// enumerator does not allocate per preference list.
#[derive(Debug, Clone)]
pub struct StreetState {
    // cells[s] = car label occupying spot s + 1, or 0 when empty
    cells: Vec<usize>,
    // starts[c] = leftmost spot of car c + 1, or 0 when not parked
    starts: Vec<usize>,
}

impl StreetState {
    pub fn new(lengths: &CarLengths) -> Self {
        Self {
            cells: vec![0; lengths.street_length()],
            starts: vec![0; lengths.len()],
        }
    }

    pub fn clear(&mut self) {
        self.cells.fill(0);
        self.starts.fill(0);
    }

    /// Car occupying `spot` (1-based), if any.
    pub fn occupant(&self, spot: usize) -> Option<usize> {
        match self.cells[spot - 1] {
            0 => None,
            car => Some(car),
        }
    }

    /// Leftmost spot of `car`, if it has parked.
    pub fn start(&self, car: usize) -> Option<usize> {
        match self.starts[car - 1] {
            0 => None,
            s => Some(s),
        }
    }

    /// Parks `car` with preference `pref` under `rule`, returning its leftmost
    /// spot. On failure the street is left unchanged.
    pub fn park(
        &mut self,
        lengths: &CarLengths,
        car: usize,
        pref: usize,
        rule: Rule,
    ) -> std::result::Result<usize, FailureReason> {
        let len = lengths.length(car);
        let start = match rule {
            Rule::Sequence => self.seek_sequence(pref, len),
            Rule::Assortment => self.seek_assortment(pref, len),
        }?;
        self.cells[start - 1..start - 1 + len].fill(car);
        self.starts[car - 1] = start;
        Ok(start)
    }

    /// Removes a parked car.
    pub fn unpark(&mut self, lengths: &CarLengths, car: usize) {
        let start = self.starts[car - 1];
        if start != 0 {
            let len = lengths.length(car);
            self.cells[start - 1..start - 1 + len].fill(0);
            self.starts[car - 1] = 0;
        }
    }

    fn seek_sequence(&self, pref: usize, len: usize) -> std::result::Result<usize, FailureReason> {
        let m = self.cells.len();
        let first_empty = (pref..=m)
            .find(|&s| self.cells[s - 1] == 0)
            .ok_or(FailureReason::Collision)?;
        let end = first_empty + len - 1;
        if end > m || self.cells[first_empty..end].iter().any(|&c| c != 0) {
            return Err(FailureReason::Collision);
        }
        Ok(first_empty)
    }

    fn seek_assortment(
        &self,
        pref: usize,
        len: usize,
    ) -> std::result::Result<usize, FailureReason> {
        let mut run = 0;
        for spot in pref..=self.cells.len() {
            if self.cells[spot - 1] == 0 {
                run += 1;
                if run == len {
                    return Ok(spot + 1 - len);
                }
            } else {
                run = 0;
            }
        }
        Err(FailureReason::NoFit)
    }

    /// Runs all cars in label order. Stops at the first failure, leaving
    /// the earlier cars parked.
    pub fn run(
        &mut self,
        lengths: &CarLengths,
        prefs: &[usize],
        rule: Rule,
    ) -> std::result::Result<(), (usize, FailureReason)> {
        self.clear();
        for (k, &pref) in prefs.iter().enumerate() {
            self.park(lengths, k + 1, pref, rule)
                .map_err(|r| (k + 1, r))?;
        }
        Ok(())
    }

    /// Writes the street order of a fully parked street into `out`.
    pub fn order_into(&self, lengths: &CarLengths, out: &mut Vec<usize>) {
        out.clear();
        let mut spot = 1;
        while spot <= self.cells.len() {
            let car = self.cells[spot - 1];
            debug_assert!(car != 0, "street has a hole at spot {spot}");
            out.push(car);
            spot += lengths.length(car);
        }
    }

    pub fn starts(&self) -> &[usize] {
        &self.starts
    }
}

/// Parking-sequence rule: each car goes to the first empty spot at or after
/// its preference and fails if its block does not fit there.
pub fn simulate_ps(lengths: &CarLengths, prefs: &PreferenceList) -> ParkingResult {
    simulate(lengths, prefs, Rule::Sequence)
}

/// Parking-assortment rule: each car takes the first free window of its length
/// starting at or after its preference.
pub fn simulate_pa(lengths: &CarLengths, prefs: &PreferenceList) -> ParkingResult {
    simulate(lengths, prefs, Rule::Assortment)
}

pub fn simulate(lengths: &CarLengths, prefs: &PreferenceList, rule: Rule) -> ParkingResult {
    let mut street = StreetState::new(lengths);
    match street.run(lengths, prefs.as_slice(), rule) {
        Ok(()) => ParkingResult::Parked(Assignment::from_unchecked(street.starts.clone())),
        Err((car, reason)) => ParkingResult::Failed { car, reason },
    }
}

/// The parking order of a complete assignment: cars sorted by leftmost spot.
pub fn outcome(lengths: &CarLengths, assignment: &Assignment) -> Result<ParkingOrder> {
    let starts = assignment.as_slice();
    if starts.len() != lengths.len() {
        return Err(Error::IncompleteAssignment {
            car: starts.len().min(lengths.len()) + 1,
        });
    }
    if let Some(pos) = starts.iter().position(|&s| s == 0) {
        return Err(Error::IncompleteAssignment { car: pos + 1 });
    }
    let mut cars: Vec<usize> = (1..=lengths.len()).collect();
    cars.sort_by_key(|&c| starts[c - 1]);
    Ok(ParkingOrder::from_unchecked(cars))
}

/// Simulates under `rule` and returns the parking order, or `None` if some
/// car fails to park.
pub fn classify(lengths: &CarLengths, prefs: &PreferenceList, rule: Rule) -> Option<ParkingOrder> {
    match simulate(lengths, prefs, rule) {
        ParkingResult::Parked(a) => outcome(lengths, &a).ok(),
        ParkingResult::Failed { .. } => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::types::validate;

    fn run(y: &[i64], x: &[i64], rule: Rule) -> ParkingResult {
        let (y, x) = validate(y, x).unwrap();
        simulate(&y, &x, rule)
    }

    fn parked(starts: &[usize]) -> ParkingResult {
        ParkingResult::Parked(Assignment::from_unchecked(starts.to_vec()))
    }

    fn order(y: &[i64], x: &[i64], rule: Rule) -> Option<String> {
        let (y, x) = validate(y, x).unwrap();
        classify(&y, &x, rule).map(|o| o.to_string())
    }

    #[test]
    fn sequence_examples() {
        assert_eq!(
            run(&[1, 2, 1], &[3, 1, 4], Rule::Sequence),
            parked(&[3, 1, 4])
        );
        assert_eq!(
            run(&[1, 2, 1], &[2, 1, 1], Rule::Sequence),
            ParkingResult::Failed {
                car: 2,
                reason: FailureReason::Collision
            }
        );
        assert_eq!(run(&[1], &[1], Rule::Sequence), parked(&[1]));
    }

    #[test]
    fn sequence_fails_at_street_end() {
        // car 1 takes spot 1, car 2 finds spot 3 empty but needs 3 and 4
        assert_eq!(
            run(&[1, 2], &[1, 3], Rule::Sequence),
            ParkingResult::Failed {
                car: 2,
                reason: FailureReason::Collision
            }
        );
        // no empty spot at or after the preference
        assert_eq!(
            run(&[1, 1, 1], &[3, 3, 3], Rule::Sequence),
            ParkingResult::Failed {
                car: 2,
                reason: FailureReason::Collision
            }
        );
    }

    #[test]
    fn assortment_examples() {
        assert_eq!(
            run(&[1, 2, 1], &[2, 1, 1], Rule::Assortment),
            parked(&[2, 3, 1])
        );
        assert_eq!(
            run(&[1, 2, 1], &[3, 1, 4], Rule::Assortment),
            parked(&[3, 1, 4])
        );
        assert_eq!(
            run(&[1, 2], &[2, 2], Rule::Assortment),
            ParkingResult::Failed {
                car: 2,
                reason: FailureReason::NoFit
            }
        );
        assert_eq!(run(&[2, 1], &[2, 1], Rule::Assortment), parked(&[2, 1]));
    }

    #[test]
    fn outcome_examples() {
        let y = CarLengths::new(vec![1, 2, 1]).unwrap();
        let a = Assignment::new(&y, vec![3, 1, 4]).unwrap();
        assert_eq!(outcome(&y, &a).unwrap().as_slice(), &[2, 1, 3]);
        let a = Assignment::new(&y, vec![2, 3, 1]).unwrap();
        assert_eq!(outcome(&y, &a).unwrap().as_slice(), &[3, 1, 2]);
        let y1 = CarLengths::new(vec![1]).unwrap();
        let a = Assignment::new(&y1, vec![1]).unwrap();
        assert_eq!(outcome(&y1, &a).unwrap().as_slice(), &[1]);
    }

    #[test]
    fn outcome_rejects_incomplete() {
        let y = CarLengths::new(vec![1, 2, 1]).unwrap();
        assert_eq!(
            outcome(&y, &Assignment::from_unchecked(vec![3, 0, 4])),
            Err(Error::IncompleteAssignment { car: 2 })
        );
        assert!(outcome(&y, &Assignment::from_unchecked(vec![3, 1])).is_err());
    }

    #[test]
    fn classify_examples() {
        assert_eq!(order(&[1, 2, 1], &[2, 1, 1], Rule::Sequence), None);
        assert_eq!(
            order(&[1, 2, 1], &[2, 1, 1], Rule::Assortment).as_deref(),
            Some("3,1,2")
        );
        assert_eq!(
            order(&[1, 1], &[1, 1], Rule::Sequence).as_deref(),
            Some("1,2")
        );
    }

    #[test]
    fn street_order_matches_sorted_starts() {
        let y = CarLengths::new(vec![1, 2, 1]).unwrap();
        let mut street = StreetState::new(&y);
        street.run(&y, &[2, 1, 1], Rule::Assortment).unwrap();
        let mut out = Vec::new();
        street.order_into(&y, &mut out);
        assert_eq!(out, vec![3, 1, 2]);
        assert_eq!(street.occupant(4), Some(2));
        assert_eq!(street.start(2), Some(3));
    }

    #[test]
    fn unpark_restores_state() {
        let y = CarLengths::new(vec![2, 1]).unwrap();
        let mut street = StreetState::new(&y);
        street.park(&y, 1, 2, Rule::Assortment).unwrap();
        street.unpark(&y, 1);
        assert_eq!(street.occupant(2), None);
        assert_eq!(street.start(1), None);
        assert_eq!(street.park(&y, 1, 1, Rule::Sequence), Ok(1));
    }
}
