//! Exact rational money type used for all bids, valuations, and prices.
//!
//! Floating point would corrupt argmax tie-breaking and make the golden
//! examples irreproducible, so every monetary quantity in the crate is an
//! exact `i64`-backed rational. Values stay tiny (bids are at most a few
//! ten-thousands of milli-units), far inside `i64` range even after the
//! cross-multiplications rational comparison performs.

use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_rational::Ratio;
use num_traits::{Signed, Zero};
use serde::{de, Deserialize, Deserializer, Serialize, Serializer};

/// An exact rational amount of money (bid, valuation, or price).
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Price(Ratio<i64>);

pub const ZERO: Price = Price(Ratio::new_raw(0, 1));

impl Price {
    pub const ZERO: Price = Price(Ratio::new_raw(0, 1));

    pub fn new(numer: i64, denom: i64) -> Self {
        Price(Ratio::new(numer, denom))
    }

    /// Whole currency units.
    pub fn from_int(v: i64) -> Self {
        Price(Ratio::from_integer(v))
    }

    /// Thousandths of a currency unit; the granularity used by the
    /// experiment samplers.
    pub fn from_millis(v: i64) -> Self {
        Price(Ratio::new(v, 1000))
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn numer(&self) -> i64 {
        *self.0.numer()
    }

    pub fn denom(&self) -> i64 {
        *self.0.denom()
    }

    pub fn min(self, other: Self) -> Self {
        if self <= other {
            self
        } else {
            other
        }
    }

    pub fn max(self, other: Self) -> Self {
        if self >= other {
            self
        } else {
            other
        }
    }

    /// Closest `f64`, for reporting and aggregate statistics only.
    pub fn to_f64(&self) -> f64 {
        *self.0.numer() as f64 / *self.0.denom() as f64
    }
}

impl From<i64> for Price {
    fn from(v: i64) -> Self {
        Price::from_int(v)
    }
}

impl Add for Price {
    type Output = Price;
    fn add(self, rhs: Price) -> Price {
        Price(self.0 + rhs.0)
    }
}

impl AddAssign for Price {
    fn add_assign(&mut self, rhs: Price) {
        self.0 += rhs.0;
    }
}

impl Sub for Price {
    type Output = Price;
    fn sub(self, rhs: Price) -> Price {
        Price(self.0 - rhs.0)
    }
}

impl SubAssign for Price {
    fn sub_assign(&mut self, rhs: Price) {
        self.0 -= rhs.0;
    }
}

impl Mul for Price {
    type Output = Price;
    fn mul(self, rhs: Price) -> Price {
        Price(self.0 * rhs.0)
    }
}

impl Neg for Price {
    type Output = Price;
    fn neg(self) -> Price {
        Price(-self.0)
    }
}

impl Sum for Price {
    fn sum<I: Iterator<Item = Price>>(iter: I) -> Price {
        iter.fold(Price::ZERO, |acc, p| acc + p)
    }
}

impl fmt::Display for Price {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if *self.0.denom() == 1 {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

// Debug mirrors Display; the reduced fraction is the canonical form.
impl fmt::Debug for Price {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[derive(Debug, thiserror::Error)]
#[error("invalid price literal {0:?}: expected `n`, `n/d`, or a decimal like `12.5`")]
pub struct ParsePriceError(String);

impl FromStr for Price {
    type Err = ParsePriceError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let bad = || ParsePriceError(s.to_string());
        if let Some((n, d)) = s.split_once('/') {
            let numer: i64 = n.trim().parse().map_err(|_| bad())?;
            let denom: i64 = d.trim().parse().map_err(|_| bad())?;
            if denom == 0 {
                return Err(bad());
            }
            return Ok(Price::new(numer, denom));
        }
        if let Some((whole, frac)) = s.split_once('.') {
            if frac.is_empty() || frac.len() > 18 || !frac.bytes().all(|b| b.is_ascii_digit()) {
                return Err(bad());
            }
            let negative = whole.trim_start().starts_with('-');
            let whole: i64 = if whole == "-" {
                0
            } else {
                whole.parse().map_err(|_| bad())?
            };
            let scale = 10_i64.checked_pow(frac.len() as u32).ok_or_else(bad)?;
            let frac_part: i64 = frac.parse().map_err(|_| bad())?;
            let magnitude = whole
                .abs()
                .checked_mul(scale)
                .and_then(|v| v.checked_add(frac_part))
                .ok_or_else(bad)?;
            let numer = if negative || whole < 0 {
                -magnitude
            } else {
                magnitude
            };
            return Ok(Price::new(numer, scale));
        }
        let v: i64 = s.parse().map_err(|_| bad())?;
        Ok(Price::from_int(v))
    }
}

// Serialized as the canonical string form so documents round-trip
// bit-exactly regardless of denominator.
impl Serialize for Price {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Price {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(de::Error::custom)
    }
}
