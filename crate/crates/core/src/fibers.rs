//! Closed-form fiber cardinalities.
//!
//! For a parking order `σ`, the fiber is the set of preference lists whose
//! outcome is `σ`. Each car's admissible preferences depend only on the cars
//! parked to its left and whether they arrived before or after it, so the
//! fiber size is a product of per-position counts.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::error::Result;
use crate::par::{self, Jobs};
use crate::perm;
use crate::types::{CarLengths, Count, ParkingOrder, Rule};

/// Earlier-arriving cars parked contiguously immediately left of position `i`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct LSet {
    /// Car labels in street order, left to right.
    pub cars: Vec<usize>,
}

impl LSet {
    pub fn is_empty(&self) -> bool {
        self.cars.is_empty()
    }

    pub fn length_sum(&self, lengths: &CarLengths) -> usize {
        self.cars.iter().map(|&c| lengths.length(c)).sum()
    }

    pub fn sorted(&self) -> Vec<usize> {
        let mut v = self.cars.clone();
        v.sort_unstable();
        v
    }
}

/// Returns the L-set of position `i` (1-based): empty when `i = 1` or the car
/// immediately left arrived later, otherwise the maximal contiguous run of
/// smaller labels ending at `i - 1`.
pub fn l_set(lengths: &CarLengths, sigma: &ParkingOrder, i: usize) -> Result<LSet> {
    sigma.check_cars(lengths)?;
    sigma.check_position(i)?;
    let order = sigma.as_slice();
    let v = order[i - 1];
    let run = order[..i - 1].iter().rev().take_while(|&&w| w < v).count();
    Ok(LSet {
        cars: order[i - 1 - run..i - 1].to_vec(),
    })
}

/// Number of sequence-rule preferences placing car `σ_i` at position `i`:
/// `1 + Σ_{k ∈ L} y_k`.
pub fn ps_pref_count(lengths: &CarLengths, sigma: &ParkingOrder, i: usize) -> Result<Count> {
    let l = l_set(lengths, sigma, i)?;
    Ok(Count::from(1 + l.length_sum(lengths)))
}

pub fn ps_fiber(lengths: &CarLengths, sigma: &ParkingOrder) -> Result<Count> {
    fiber(lengths, sigma, Rule::Sequence)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BlockKind {
    /// Cars arriving after the pivot car (larger labels).
    Alpha,
    /// Cars arriving before the pivot car (smaller labels).
    Beta,
}

impl fmt::Display for BlockKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BlockKind::Alpha => "alpha",
            BlockKind::Beta => "beta",
        })
    }
}

/// One maximal run of the prefix left of the pivot.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Block {
    pub kind: BlockKind,
    /// 1 for the block of this kind nearest the pivot, increasing leftward.
    pub index: usize,
    /// First and last street position (1-based, inclusive).
    pub positions: (usize, usize),
    /// Car labels in street order.
    pub cars: Vec<usize>,
}

impl Block {
    pub fn length_sum(&self, lengths: &CarLengths) -> usize {
        self.cars.iter().map(|&c| lengths.length(c)).sum()
    }
}

/// Partition of `σ_1 ... σ_{i-1}` into alternating maximal runs of labels
/// larger (alpha) or smaller (beta) than the pivot `σ_i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockPartition {
    pub pivot_position: usize,
    pub pivot_car: usize,
    /// Leftmost block first.
    pub blocks: Vec<Block>,
}

impl BlockPartition {
    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn alpha(&self, index: usize) -> Option<&Block> {
        self.block(BlockKind::Alpha, index)
    }

    pub fn beta(&self, index: usize) -> Option<&Block> {
        self.block(BlockKind::Beta, index)
    }

    pub fn alpha_count(&self) -> usize {
        self.blocks
            .iter()
            .filter(|b| b.kind == BlockKind::Alpha)
            .count()
    }

    fn block(&self, kind: BlockKind, index: usize) -> Option<&Block> {
        self.blocks
            .iter()
            .find(|b| b.kind == kind && b.index == index)
    }
}

/// Splits the prefix left of position `i` into alpha/beta blocks by a single
/// right-to-left scan.
pub fn t_partition(sigma: &ParkingOrder, i: usize) -> Result<BlockPartition> {
    sigma.check_position(i)?;
    let order = sigma.as_slice();
    let pivot = order[i - 1];
    let mut blocks: Vec<Block> = Vec::new();
    let (mut alphas, mut betas) = (0, 0);
    for pos in (1..i).rev() {
        let car = order[pos - 1];
        let kind = if car > pivot {
            BlockKind::Alpha
        } else {
            BlockKind::Beta
        };
        match blocks.last_mut() {
            Some(b) if b.kind == kind => {
                b.positions.0 = pos;
                b.cars.push(car);
            }
            _ => {
                let index = match kind {
                    BlockKind::Alpha => {
                        alphas += 1;
                        alphas
                    }
                    BlockKind::Beta => {
                        betas += 1;
                        betas
                    }
                };
                blocks.push(Block {
                    kind,
                    index,
                    positions: (pos, pos),
                    cars: vec![car],
                });
            }
        }
    }
    blocks.reverse();
    for b in &mut blocks {
        b.cars.reverse();
    }
    Ok(BlockPartition {
        pivot_position: i,
        pivot_car: pivot,
        blocks,
    })
}

/// Smallest alpha index whose total length is at least `y_{σ_i}`: the nearest
/// gap, at the time car `σ_i` arrives, in which it would fit.
pub fn m_index(lengths: &CarLengths, sigma: &ParkingOrder, i: usize) -> Result<Option<usize>> {
    sigma.check_cars(lengths)?;
    let part = t_partition(sigma, i)?;
    Ok(nearest_fitting_gap(lengths, &part))
}

fn nearest_fitting_gap(lengths: &CarLengths, part: &BlockPartition) -> Option<usize> {
    let need = lengths.length(part.pivot_car);
    (1..=part.alpha_count()).find(|&j| part.alpha(j).is_some_and(|b| b.length_sum(lengths) >= need))
}

/// Number of assortment-rule preferences placing car `σ_i` at position `i`.
///
/// Cases, checked in order:
/// 1. `i = 1` or `σ_{i-1} > σ_i`: only the spot it parks in.
/// 2. every car to the left arrived earlier: those spots plus its own.
/// 3. no alpha gap fits the car: every spot to its left plus its own.
/// 4. the nearest fitting gap is `α_m`: the spots right of `α_m`, plus the
///    rightmost `y_{σ_i} - 1` spots of `α_m`, plus its own spot.
pub fn pa_pref_count(lengths: &CarLengths, sigma: &ParkingOrder, i: usize) -> Result<Count> {
    sigma.check_cars(lengths)?;
    let part = t_partition(sigma, i)?;
    let order = sigma.as_slice();
    if i == 1 || order[i - 2] > order[i - 1] {
        return Ok(Count::one());
    }
    if let [only] = part.blocks.as_slice() {
        if only.kind == BlockKind::Beta {
            return Ok(Count::from(1 + only.length_sum(lengths)));
        }
    }
    let count = match nearest_fitting_gap(lengths, &part) {
        None => {
            1 + order[..i - 1]
                .iter()
                .map(|&c| lengths.length(c))
                .sum::<usize>()
        }
        Some(m) => {
            let right_of_gap: usize = part
                .blocks
                .iter()
                .filter(|b| match b.kind {
                    BlockKind::Beta => b.index <= m,
                    BlockKind::Alpha => b.index < m,
                })
                .map(|b| b.length_sum(lengths))
                .sum();
            right_of_gap + lengths.length(part.pivot_car)
        }
    };
    Ok(Count::from(count))
}

pub fn pa_fiber(lengths: &CarLengths, sigma: &ParkingOrder) -> Result<Count> {
    fiber(lengths, sigma, Rule::Assortment)
}

/// Per-position preference counts for `σ` under `rule`.
pub fn pref_counts(lengths: &CarLengths, sigma: &ParkingOrder, rule: Rule) -> Result<Vec<Count>> {
    sigma.check_cars(lengths)?;
    (1..=sigma.len())
        .map(|i| match rule {
            Rule::Sequence => ps_pref_count(lengths, sigma, i),
            Rule::Assortment => pa_pref_count(lengths, sigma, i),
        })
        .collect()
}

/// Fiber size of `σ` under `rule`.
pub fn fiber(lengths: &CarLengths, sigma: &ParkingOrder, rule: Rule) -> Result<Count> {
    sigma.check_cars(lengths)?;
    Ok(fiber_of_slice(lengths.as_slice(), sigma.as_slice(), rule))
}

// Hot path used when summing over all n! orders. `y` is 0-indexed by label - 1.

fn ps_count_at(y: &[usize], order: &[usize], p: usize) -> usize {
    let v = order[p];
    1 + order[..p]
        .iter()
        .rev()
        .take_while(|&&w| w < v)
        .map(|&w| y[w - 1])
        .sum::<usize>()
}

fn pa_count_at(y: &[usize], order: &[usize], p: usize) -> usize {
    let v = order[p];
    if p == 0 || order[p - 1] > v {
        return 1;
    }
    let need = y[v - 1];
    // `closed` sums the blocks already passed; `open` the block being scanned
    let (mut closed, mut open, mut in_alpha) = (0, 0, false);
    for &w in order[..p].iter().rev() {
        let alpha = w > v;
        if alpha != in_alpha {
            if in_alpha && open >= need {
                return closed + need;
            }
            closed += open;
            open = 0;
            in_alpha = alpha;
        }
        open += y[w - 1];
    }
    if in_alpha && open >= need {
        return closed + need;
    }
    1 + closed + open
}

fn count_at(y: &[usize], order: &[usize], p: usize, rule: Rule) -> usize {
    match rule {
        Rule::Sequence => ps_count_at(y, order, p),
        Rule::Assortment => pa_count_at(y, order, p),
    }
}

fn fiber_of_slice(y: &[usize], order: &[usize], rule: Rule) -> Count {
    match small_fiber(y, order, rule) {
        Some(v) => Count::from(v),
        None => (0..order.len())
            .map(|p| Count::from(count_at(y, order, p, rule)))
            .product(),
    }
}

fn small_fiber(y: &[usize], order: &[usize], rule: Rule) -> Option<u128> {
    (0..order.len()).try_fold(1u128, |acc, p| {
        acc.checked_mul(count_at(y, order, p, rule) as u128)
    })
}

/// Exact running sum that stays in `u128` until it would overflow.
#[derive(Debug, Default)]
struct ExactSum {
    small: u128,
    big: BigUint,
}

impl ExactSum {
    fn add_small(&mut self, v: u128) {
        match self.small.checked_add(v) {
            Some(s) => self.small = s,
            None => {
                self.big += self.small;
                self.small = v;
            }
        }
    }

    fn add_big(&mut self, v: &BigUint) {
        self.big += v;
    }

    fn finish(self) -> Count {
        self.big + self.small
    }
}

/// Multiplies out `(y_1 + n)(y_1 + y_2 + n - 1) ... (y_1 + ... + y_{n-1} + 2)`,
/// the closed-form number of parking sequences. Empty product for `n = 1`.
pub fn ps_total_product(lengths: &CarLengths) -> Count {
    let n = lengths.len();
    let mut prefix = 0;
    let mut total = Count::one();
    for (k, &y) in lengths.as_slice()[..n - 1].iter().enumerate() {
        prefix += y;
        total *= Count::from(prefix + n - k);
    }
    total
}

/// Number of parking sequences as a sum of fibers over all parking orders.
pub fn ps_total_sum(lengths: &CarLengths) -> Count {
    total_sum(lengths, Rule::Sequence, Jobs::default())
}

/// Number of parking assortments as a sum of fibers over all parking orders.
pub fn pa_total_sum(lengths: &CarLengths) -> Count {
    total_sum(lengths, Rule::Assortment, Jobs::default())
}

/// Sums the fiber formula over all `n!` orders, chunked by first entry.
/// Chunk sums are exact and merged in order, so every `jobs` value gives the
/// same result.
pub fn total_sum(lengths: &CarLengths, rule: Rule, jobs: Jobs) -> Count {
    let n = lengths.len();
    let y = lengths.as_slice();
    let partials = par::map_chunks(jobs, (1..=n).collect(), |first| {
        let mut sum = ExactSum::default();
        perm::for_each_with_first(n, first, |order| match small_fiber(y, order, rule) {
            Some(v) => sum.add_small(v),
            None => sum.add_big(&fiber_of_slice(y, order, rule)),
        });
        sum.finish()
    });
    partials.into_iter().fold(Count::zero(), |acc, s| acc + s)
}

/// Fiber size for unit lengths: `∏ ℓ(i; σ)` where `ℓ(i; σ)` is the length of
/// the longest run `σ_j ... σ_i` with every entry at most `σ_i`.
pub fn classical_fiber(sigma: &ParkingOrder) -> Count {
    let order = sigma.as_slice();
    (0..order.len())
        .map(|i| {
            let run = order[..=i]
                .iter()
                .rev()
                .take_while(|&&w| w <= order[i])
                .count();
            Count::from(run)
        })
        .product()
}

/// Fiber sizes for every parking order under one rule.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiberTable {
    pub rule: Rule,
    pub entries: BTreeMap<ParkingOrder, Count>,
}

impl FiberTable {
    pub fn new(rule: Rule) -> Self {
        Self {
            rule,
            entries: BTreeMap::new(),
        }
    }

    /// Size of the fiber of `sigma`; zero when absent.
    pub fn get(&self, sigma: &ParkingOrder) -> Count {
        self.entries.get(sigma).cloned().unwrap_or_default()
    }

    pub fn total(&self) -> Count {
        self.entries.values().sum()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

/// Evaluates the fiber formula for all `n!` orders, in lexicographic order.
pub fn fiber_table(lengths: &CarLengths, rule: Rule) -> FiberTable {
    let mut table = FiberTable::new(rule);
    let y = lengths.as_slice();
    perm::for_each(lengths.len(), |order| {
        table.entries.insert(
            ParkingOrder::from_unchecked(order.to_vec()),
            fiber_of_slice(y, order, rule),
        );
    });
    table
}
