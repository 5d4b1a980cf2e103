//! Exhaustive brute-force oracle.
//!
//! Nothing here consults the fiber formulas: every count is obtained by
//! simulating preference lists and grouping the successes by parking order.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::fibers::{self, FiberTable};
use crate::par::{self, Jobs};
use crate::perm;
use crate::simulator::{classify, StreetState};
use crate::types::{CarLengths, Count, ParkingOrder, PreferenceList, Rule};

/// Maximum number of simulations a search may perform.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget(pub u64);

impl Budget {
    pub const DEFAULT: Budget = Budget(1_000_000_000);

    fn check(self, required: &BigUint) -> Result<()> {
        if *required > BigUint::from(self.0) {
            Err(Error::BudgetExceeded {
                required: required.clone(),
                cap: self.0,
            })
        } else {
            Ok(())
        }
    }
}

impl Default for Budget {
    fn default() -> Self {
        Budget::DEFAULT
    }
}

#[derive(Debug, Clone, Copy, Default)]
pub struct OracleOptions {
    pub collect_witnesses: bool,
    pub budget: Budget,
    pub jobs: Jobs,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleReport {
    pub rule: Rule,
    pub total: Count,
    /// Every parking order, including those no preference list reaches.
    pub fibers: FiberTable,
    /// Successful preference lists grouped by outcome, each group in
    /// lexicographic order. Present only when requested.
    pub witnesses: Option<BTreeMap<ParkingOrder, Vec<PreferenceList>>>,
    pub simulations: u64,
}

impl OracleReport {
    /// All successful preference lists, if witnesses were collected.
    pub fn success_set(&self) -> Option<BTreeSet<PreferenceList>> {
        self.witnesses
            .as_ref()
            .map(|w| w.values().flatten().cloned().collect())
    }
}

#[derive(Default)]
struct ChunkTally {
    counts: HashMap<Vec<usize>, u64>,
    witnesses: HashMap<Vec<usize>, Vec<PreferenceList>>,
    simulations: u64,
}

/// Simulates every `x ∈ [1, m]^n` under `rule` and groups the successes by
/// parking order. Work is split by the preference of car 1.
pub fn brute_force(lengths: &CarLengths, rule: Rule, opts: OracleOptions) -> Result<OracleReport> {
    let n = lengths.len();
    let m = lengths.street_length();
    opts.budget.check(&BigUint::from(m).pow(n as u32))?;

    let tallies = par::map_chunks(opts.jobs, (1..=m).collect(), |first| {
        sweep_chunk(lengths, rule, first, opts.collect_witnesses)
    });

    let mut counts: BTreeMap<ParkingOrder, u64> = BTreeMap::new();
    let mut witnesses: BTreeMap<ParkingOrder, Vec<PreferenceList>> = BTreeMap::new();
    let mut simulations = 0;
    for tally in tallies {
        simulations += tally.simulations;
        for (order, c) in tally.counts {
            *counts
                .entry(ParkingOrder::from_unchecked(order))
                .or_default() += c;
        }
        for (order, mut lists) in tally.witnesses {
            witnesses
                .entry(ParkingOrder::from_unchecked(order))
                .or_default()
                .append(&mut lists);
        }
    }
    for lists in witnesses.values_mut() {
        lists.sort_unstable();
    }

    let mut fibers = FiberTable::new(rule);
    perm::for_each(n, |order| {
        fibers
            .entries
            .insert(ParkingOrder::from_unchecked(order.to_vec()), Count::zero());
    });
    for (order, c) in counts {
        fibers.entries.insert(order, Count::from(c));
    }
    let total = fibers.total();
    Ok(OracleReport {
        rule,
        total,
        fibers,
        witnesses: opts.collect_witnesses.then_some(witnesses),
        simulations,
    })
}

fn sweep_chunk(lengths: &CarLengths, rule: Rule, first: usize, keep: bool) -> ChunkTally {
    let n = lengths.len();
    let m = lengths.street_length();
    let mut tally = ChunkTally::default();
    let mut street = StreetState::new(lengths);
    let mut prefs = vec![1; n];
    prefs[0] = first;
    let mut order = Vec::with_capacity(n);
    loop {
        tally.simulations += 1;
        if street.run(lengths, &prefs, rule).is_ok() {
            street.order_into(lengths, &mut order);
            match tally.counts.get_mut(order.as_slice()) {
                Some(c) => *c += 1,
                None => {
                    tally.counts.insert(order.clone(), 1);
                }
            }
            if keep {
                tally
                    .witnesses
                    .entry(order.clone())
                    .or_default()
                    .push(PreferenceList::from_unchecked(prefs.clone()));
            }
        }
        // odometer over coordinates 2..=n, last coordinate fastest
        let mut k = n;
        loop {
            if k == 1 {
                return tally;
            }
            k -= 1;
            if prefs[k] < m {
                prefs[k] += 1;
                break;
            }
            prefs[k] = 1;
        }
    }
}

/// All preference lists whose outcome under `rule` is `sigma`.
///
/// Car `σ_j` can only prefer a spot in `[1, s_j]`, where `s_j` is the spot it
/// ends up in, so the search covers that box. Cars are placed in arrival
/// order and a branch is dropped as soon as a car lands anywhere other than
/// its spot in `sigma`. Every surviving list is then re-simulated from
/// scratch and kept only if it reproduces `sigma`.
pub fn fiber_witnesses(
    lengths: &CarLengths,
    sigma: &ParkingOrder,
    rule: Rule,
    budget: Budget,
    jobs: Jobs,
) -> Result<Vec<PreferenceList>> {
    sigma.check_cars(lengths)?;
    let n = lengths.len();
    let mut target = vec![0; n];
    let mut spot = 1;
    for &car in sigma.as_slice() {
        target[car - 1] = spot;
        spot += lengths.length(car);
    }
    budget.check(&witness_box(lengths, sigma))?;

    let chunks = par::map_chunks(jobs, (1..=target[0]).collect(), |first| {
        let mut street = StreetState::new(lengths);
        let mut prefs = vec![0; n];
        let mut found = Vec::new();
        prefs[0] = first;
        if street.park(lengths, 1, first, rule) == Ok(target[0]) {
            descend(
                lengths,
                rule,
                &target,
                2,
                &mut street,
                &mut prefs,
                &mut found,
            );
        }
        found
    });

    Ok(chunks
        .into_iter()
        .flatten()
        .map(PreferenceList::from_unchecked)
        .filter(|x| classify(lengths, x, rule).as_ref() == Some(sigma))
        .collect())
}

fn descend(
    lengths: &CarLengths,
    rule: Rule,
    target: &[usize],
    car: usize,
    street: &mut StreetState,
    prefs: &mut [usize],
    found: &mut Vec<Vec<usize>>,
) {
    if car > target.len() {
        found.push(prefs.to_vec());
        return;
    }
    for pref in 1..=target[car - 1] {
        match street.park(lengths, car, pref, rule) {
            Ok(start) if start == target[car - 1] => {
                prefs[car - 1] = pref;
                descend(lengths, rule, target, car + 1, street, prefs, found);
                street.unpark(lengths, car);
            }
            Ok(_) => street.unpark(lengths, car),
            Err(_) => {}
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mismatch {
    pub order: ParkingOrder,
    pub formula: Count,
    pub oracle: Count,
}

/// Formula-vs-oracle comparison over all parking orders for one rule.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verdict {
    pub rule: Rule,
    pub checked: usize,
    pub formula_total: Count,
    pub oracle_total: Count,
    pub mismatches: Vec<Mismatch>,
}

impl Verdict {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty() && self.formula_total == self.oracle_total
    }
}

/// Runs the oracle and compares it entry by entry with [`fibers::fiber_table`].
pub fn equivalence_check(lengths: &CarLengths, rule: Rule, opts: OracleOptions) -> Result<Verdict> {
    let report = brute_force(
        lengths,
        rule,
        OracleOptions {
            collect_witnesses: false,
            ..opts
        },
    )?;
    Ok(compare(&fibers::fiber_table(lengths, rule), &report))
}

/// Compares a formula table with an oracle report.
pub fn compare(formula: &FiberTable, report: &OracleReport) -> Verdict {
    let orders: BTreeSet<&ParkingOrder> = formula
        .entries
        .keys()
        .chain(report.fibers.entries.keys())
        .collect();
    let mismatches = orders
        .iter()
        .filter_map(|&order| {
            let (f, o) = (formula.get(order), report.fibers.get(order));
            (f != o).then(|| Mismatch {
                order: order.clone(),
                formula: f,
                oracle: o,
            })
        })
        .collect();
    Verdict {
        rule: report.rule,
        checked: orders.len(),
        formula_total: formula.total(),
        oracle_total: report.total.clone(),
        mismatches,
    }
}

/// `m^n`, the size of the full preference space.
pub fn preference_space(lengths: &CarLengths) -> BigUint {
    BigUint::from(lengths.street_length()).pow(lengths.len() as u32)
}

/// Product of the per-car witness search ranges for `sigma`.
pub fn witness_box(lengths: &CarLengths, sigma: &ParkingOrder) -> BigUint {
    let mut spot = 1usize;
    let mut size = BigUint::one();
    for &car in sigma.as_slice() {
        size *= spot;
        spot += lengths.length(car);
    }
    size
}
