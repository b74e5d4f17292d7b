//! Binomial GCD laws and the degree-selection lemmas used to make bundles string.

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_traits::Zero;
use serde::Serialize;
use thiserror::Error;

use crate::exactnum::{binomial, is_prime, ArithError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GcdLawError {
    #[error("n = {n} is outside the valid range (need n >= {min})")]
    OutOfRange { n: u64, min: u64 },
    #[error("the prime must be odd (got {0})")]
    EvenPrime(u64),
    #[error("{0} has no representation as a sum of four positive squares")]
    NoRepresentation(u64),
    #[error(transparent)]
    Arith(#[from] ArithError),
}

pub type Result<T> = std::result::Result<T, GcdLawError>;

/// Which binomial GCD family is meant.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum GcdKind {
    /// `GCD_{1<i<2n} C(2n+1, i)`
    Row,
    /// `GCD_{0<k<n} C(2n, 2k)`
    Even,
    /// `GCD_{1<k<n-1} [C(2n, 2) - C(2n, 2k)]`
    Diff,
}

impl GcdKind {
    pub fn min_n(self) -> u64 {
        match self {
            GcdKind::Row | GcdKind::Even => 2,
            GcdKind::Diff => 4,
        }
    }
}

impl std::str::FromStr for GcdKind {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "row" => Ok(GcdKind::Row),
            "even" => Ok(GcdKind::Even),
            "diff" => Ok(GcdKind::Diff),
            other => Err(format!("unknown gcd kind '{other}' (expected row, even or diff)")),
        }
    }
}

/// The shape of `n` that makes the predicted order equal to one.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum PatternClass {
    /// `2n + 1 = p^i`, `i > 0`
    RowPower { i: u32 },
    /// `2n = p^i + p^j`, `0 <= i <= j`
    TwoPrimePowers { i: u32, j: u32 },
    /// `2n = p^i - 1`, `i > 0`
    PowerMinusOne { i: u32 },
    None,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct OrdPattern {
    pub classifier: PatternClass,
    pub predicted_ord: u32,
}

fn gcd_all(values: impl Iterator<Item = BigInt>) -> BigInt {
    values.fold(BigInt::zero(), |acc, v| acc.gcd(&v))
}

fn check_range(n: u64, min: u64) -> Result<()> {
    if n < min {
        return Err(GcdLawError::OutOfRange { n, min });
    }
    Ok(())
}

pub fn gcd_row(n: u64) -> Result<BigInt> {
    check_range(n, 2)?;
    Ok(gcd_all((2..2 * n).map(|i| binomial(2 * n + 1, i as i64))))
}

pub fn gcd_even(n: u64) -> Result<BigInt> {
    check_range(n, 2)?;
    Ok(gcd_all((1..n).map(|k| binomial(2 * n, 2 * k as i64))))
}

pub fn gcd_diff(n: u64) -> Result<BigInt> {
    check_range(n, 4)?;
    let top = binomial(2 * n, 2);
    Ok(gcd_all((2..n - 1).map(|k| &top - binomial(2 * n, 2 * k as i64))))
}

pub fn gcd_of_kind(kind: GcdKind, n: u64) -> Result<BigInt> {
    match kind {
        GcdKind::Row => gcd_row(n),
        GcdKind::Even => gcd_even(n),
        GcdKind::Diff => gcd_diff(n),
    }
}

/// Powers `p^0, p^1, ...` not exceeding `bound`.
fn powers_up_to(p: u64, bound: u64) -> Vec<u64> {
    let mut out: Vec<u64> = vec![1];
    while let Some(next) = out.last().unwrap().checked_mul(p) {
        if next > bound {
            break;
        }
        out.push(next);
    }
    out
}

fn two_powers(p: u64, target: u64) -> Option<(u32, u32)> {
    let pw = powers_up_to(p, target);
    for (i, &a) in pw.iter().enumerate() {
        for (j, &b) in pw.iter().enumerate().skip(i) {
            if a + b == target {
                return Some((i as u32, j as u32));
            }
        }
    }
    None
}

pub fn classify(kind: GcdKind, n: u64, p: u64) -> Result<OrdPattern> {
    if !is_prime(p) {
        return Err(ArithError::NotPrime(p).into());
    }
    if p == 2 {
        return Err(GcdLawError::EvenPrime(p));
    }
    check_range(n, kind.min_n())?;
    let powers = powers_up_to(p, 2 * n + 1);
    let row_power = powers
        .iter()
        .position(|&q| q == 2 * n + 1)
        .filter(|&i| i > 0)
        .map(|i| PatternClass::RowPower { i: i as u32 });
    let minus_one = powers
        .iter()
        .position(|&q| q == 2 * n + 1)
        .filter(|&i| i > 0)
        .map(|i| PatternClass::PowerMinusOne { i: i as u32 });
    let two = two_powers(p, 2 * n).map(|(i, j)| PatternClass::TwoPrimePowers { i, j });
    let classifier = match kind {
        GcdKind::Row => row_power,
        GcdKind::Even => two,
        GcdKind::Diff => minus_one.or(two),
    }
    .unwrap_or(PatternClass::None);
    let predicted_ord = u32::from(classifier != PatternClass::None);
    Ok(OrdPattern { classifier, predicted_ord })
}

pub fn predicted_ord(kind: GcdKind, n: u64, p: u64) -> Result<u32> {
    Ok(classify(kind, n, p)?.predicted_ord)
}

/// `(a, b)` with `n = 3a + 8b`, i.e. `n + (a + b) = 4a + 9b`.
pub fn two_three_squares(n: u64) -> Result<(u64, u64)> {
    check_range(n, 14)?;
    let c = n.div_ceil(3);
    let a = 3 * n - 8 * c;
    let b = 3 * c - n;
    debug_assert_eq!(3 * a + 8 * b, n);
    Ok((a, b))
}

/// The six values taken by [`four_square_gcd`] for `n = 25, 26, ...`.
pub const FOUR_SQUARE_CYCLE: [u64; 6] = [48, 8, 144, 24, 16, 72];

/// Every representation `target = d1^2 + d2^2 + d3^2 + d4^2` with
/// `0 < d1 <= d2 <= d3 <= d4`.
pub fn four_square_representations(target: u64) -> Vec<[u64; 4]> {
    let mut out = Vec::new();
    let mut d1 = 1;
    while 4 * d1 * d1 <= target {
        let r1 = target - d1 * d1;
        let mut d2 = d1;
        while 3 * d2 * d2 <= r1 {
            let r2 = r1 - d2 * d2;
            let mut d3 = d2;
            while 2 * d3 * d3 <= r2 {
                let r3 = r2 - d3 * d3;
                let d4 = r3.isqrt();
                if d4 * d4 == r3 && d4 >= d3 {
                    out.push([d1, d2, d3, d4]);
                }
                d3 += 1;
            }
            d2 += 1;
        }
        d1 += 1;
    }
    out
}

/// GCD of `d1 d2 d3 d4` over all representations `4n + 5 = sum d_i^2`.
pub fn four_square_gcd(n: u64) -> Result<u64> {
    check_range(n, 25)?;
    let target = 4 * n + 5;
    let reps = four_square_representations(target);
    if reps.is_empty() {
        return Err(GcdLawError::NoRepresentation(target));
    }
    Ok(reps.iter().fold(0u64, |acc, d| acc.gcd(&d.iter().product::<u64>())))
}

/// True when `v = 2^a 3^b` with `a + b > 0`.
pub fn is_two_three_smooth(mut v: u64) -> bool {
    if v <= 1 {
        return false;
    }
    while v % 2 == 0 {
        v /= 2;
    }
    while v % 3 == 0 {
        v /= 3;
    }
    v == 1
}
