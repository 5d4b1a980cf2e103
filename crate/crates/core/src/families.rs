//! Car-length families and their identity-order fiber sequences.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::fibers::pa_fiber;
use crate::types::{CarLengths, Count, ParkingOrder};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FamilySpec {
    /// `(1, 2, 3, ..., n)`
    Staircase,
    /// `(1, 1, 2, 3, 5, 8, ...)`
    Fibonacci,
    /// `(1, 3, 9, 28, 90, ...)`: term `i` (from 0) is `3/(i+3) · C(2i+2, i)`,
    /// the number of standard tableaux of shape `(i+2, i)`.
    CatalanShape,
    /// `(1, 1, ..., 1)`
    Unit,
    /// Prefixes of a fixed list.
    Explicit(Vec<usize>),
}

impl FamilySpec {
    pub fn name(&self) -> &'static str {
        match self {
            FamilySpec::Staircase => "staircase",
            FamilySpec::Fibonacci => "fibonacci",
            FamilySpec::CatalanShape => "catalan",
            FamilySpec::Unit => "unit",
            FamilySpec::Explicit(_) => "explicit",
        }
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for FamilySpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "staircase" => Ok(FamilySpec::Staircase),
            "fibonacci" | "fib" => Ok(FamilySpec::Fibonacci),
            "catalan" | "catalan-shape" | "catalanshape" => Ok(FamilySpec::CatalanShape),
            "unit" => Ok(FamilySpec::Unit),
            _ => Err(Error::UnknownFamily(s.to_string())),
        }
    }
}

/// First `n` lengths of the family.
pub fn generate_lengths(spec: &FamilySpec, n: usize) -> Result<CarLengths> {
    if n == 0 {
        return Err(Error::NoCars);
    }
    let lengths = match spec {
        FamilySpec::Staircase => (1..=n).collect(),
        FamilySpec::Unit => vec![1; n],
        FamilySpec::Fibonacci => {
            let mut v = Vec::with_capacity(n);
            let (mut a, mut b) = (1usize, 1usize);
            for index in 0..n {
                v.push(a);
                let next = a.checked_add(b).ok_or(Error::LengthOverflow { index })?;
                (a, b) = (b, next);
            }
            v
        }
        FamilySpec::CatalanShape => (0..n).map(catalan_shape_term).collect::<Result<_>>()?,
        FamilySpec::Explicit(all) => {
            if n > all.len() {
                return Err(Error::FamilyTooShort {
                    family: spec.name().into(),
                    available: all.len(),
                    requested: n,
                });
            }
            all[..n].to_vec()
        }
    };
    CarLengths::new(lengths)
}

fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    // running product stays integral: C(n-k+j, j) at each step
    (1..=k).fold(BigUint::one(), |acc, j| acc * (n - k + j) / j)
}

fn catalan_shape_term(index: usize) -> Result<usize> {
    let i = index as u64;
    let numerator = binomial(2 * i + 2, i) * 3u32;
    let divisor = BigUint::from(i + 3);
    if !(&numerator % &divisor).is_zero() {
        return Err(Error::InexactDivision { index });
    }
    (numerator / divisor)
        .to_usize()
        .ok_or(Error::LengthOverflow { index })
}

/// For `n = 1..=n_max`, the fiber of the identity order for the first `n`
/// lengths of the family. Both rules agree on the identity order.
pub fn identity_fiber_sequence(spec: &FamilySpec, n_max: usize) -> Result<Vec<Count>> {
    (1..=n_max)
        .map(|n| {
            let lengths = generate_lengths(spec, n)?;
            pa_fiber(&lengths, &ParkingOrder::identity(n))
        })
        .collect()
}
