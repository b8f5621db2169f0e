//! Exact rational degrees of belief.
//!
//! Revision only ever takes maxima and minima of existing values, so the
//! engine never has to round. Arithmetic is confined to aggregation, the
//! hat transform `1 - v` and margin comparisons, and is checked.

use core::fmt;
use core::str::FromStr;

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{CheckedAdd, CheckedMul, CheckedSub, One, Zero};

use crate::error::Error;

/// Largest denominator accepted by the parser. Keeping inputs inside this
/// range means any sum or difference of two parsed values fits in `i128`.
const MAX_INPUT_DENOM: i128 = 1_000_000_000_000_000_000;

/// Longest decimal expansion printed before falling back to `a/b`.
const MAX_PRINTED_DIGITS: u32 = 9;

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Degree(Ratio<i128>);

impl Degree {
    pub const ZERO: Degree = Degree(Ratio::new_raw(0, 1));
    pub const ONE: Degree = Degree(Ratio::new_raw(1, 1));
    pub const HALF: Degree = Degree(Ratio::new_raw(1, 2));

    /// Builds `numer / denom`, reduced. Panics if `denom` is zero.
    pub fn new(numer: i128, denom: i128) -> Self {
        Degree(Ratio::new(numer, denom))
    }

    pub fn from_integer(n: i128) -> Self {
        Degree(Ratio::from_integer(n))
    }

    pub fn numer(&self) -> i128 {
        *self.0.numer()
    }

    pub fn denom(&self) -> i128 {
        *self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    /// True for values in the closed unit interval.
    pub fn is_unit_interval(&self) -> bool {
        *self >= Self::ZERO && *self <= Self::ONE
    }

    /// `1 - self`.
    pub fn complement(self) -> Self {
        Degree(Ratio::one() - self.0)
    }

    pub fn checked_add(self, rhs: Self) -> Result<Self, Error> {
        self.0.checked_add(&rhs.0).map(Degree).ok_or(Error::Overflow)
    }

    pub fn checked_sub(self, rhs: Self) -> Result<Self, Error> {
        self.0.checked_sub(&rhs.0).map(Degree).ok_or(Error::Overflow)
    }

    pub fn checked_mul(self, rhs: Self) -> Result<Self, Error> {
        self.0.checked_mul(&rhs.0).map(Degree).ok_or(Error::Overflow)
    }

    /// `|self - rhs|`.
    pub fn abs_diff(self, rhs: Self) -> Result<Self, Error> {
        if self >= rhs {
            self.checked_sub(rhs)
        } else {
            rhs.checked_sub(self)
        }
    }

    /// Decides `self - rhs > margin` without losing exactness.
    pub fn exceeds_by(self, rhs: Self, margin: Self) -> Result<bool, Error> {
        Ok(self > rhs.checked_add(margin)?)
    }

    /// Number of decimal digits needed after the point, if the value has a
    /// terminating expansion of at most `max` digits.
    fn decimal_digits(&self, max: u32) -> Option<u32> {
        let d = self.denom();
        (0..=max).find(|&k| 10i128.pow(k).is_multiple_of(&d))
    }
}

impl fmt::Debug for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.numer();
        let d = self.denom();
        match self.decimal_digits(MAX_PRINTED_DIGITS) {
            Some(0) => write!(f, "{n}"),
            Some(k) => {
                let scaled = n * (10i128.pow(k) / d);
                let sign = if scaled < 0 { "-" } else { "" };
                let abs = scaled.unsigned_abs();
                let unit = 10u128.pow(k);
                let mut frac = abs % unit;
                let mut width = k as usize;
                while frac.is_multiple_of(10) && width > 0 {
                    frac /= 10;
                    width -= 1;
                }
                write!(f, "{sign}{}.{:0width$}", abs / unit, frac, width = width)
            }
            None => write!(f, "{n}/{d}"),
        }
    }
}

impl FromStr for Degree {
    type Err = Error;

    /// Accepts integers, decimals (`0.7`, `.70`) and fractions (`2/3`).
    /// Negative values are not accepted.
    fn from_str(s: &str) -> Result<Self, Error> {
        let bad = || Error::InvalidNumber(s.into());
        if s.is_empty() {
            return Err(bad());
        }
        if let Some((a, b)) = s.split_once('/') {
            let numer: i128 = parse_digits(a).ok_or_else(bad)?;
            let denom: i128 = parse_digits(b).ok_or_else(bad)?;
            if denom == 0 || denom > MAX_INPUT_DENOM || numer > MAX_INPUT_DENOM {
                return Err(bad());
            }
            return Ok(Degree::new(numer, denom));
        }
        let (int_part, frac_part) = match s.split_once('.') {
            Some((i, f)) => (i, f),
            None => (s, ""),
        };
        if int_part.is_empty() && frac_part.is_empty() {
            return Err(bad());
        }
        if frac_part.len() > 18 || int_part.len() > 18 {
            return Err(bad());
        }
        let int_val = if int_part.is_empty() {
            0
        } else {
            parse_digits(int_part).ok_or_else(bad)?
        };
        let frac_val = if frac_part.is_empty() {
            0
        } else {
            parse_digits(frac_part).ok_or_else(bad)?
        };
        let scale = 10i128.pow(frac_part.len() as u32);
        Ok(Degree::new(int_val * scale + frac_val, scale))
    }
}

fn parse_digits(s: &str) -> Option<i128> {
    if s.is_empty() || s.len() > 19 || !s.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    s.parse().ok()
}
