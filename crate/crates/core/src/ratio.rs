//! Exact positive rationals for witness thresholds and size bounds.
//!
//! Comparisons against vertex counts are integer cross-multiplications in
//! `i128`, so no threshold test ever touches floating point.

use std::fmt;
use std::str::FromStr;

use num_rational::Ratio;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RationalError {
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("cannot parse {0:?} as a fraction p/q")]
    Malformed(String),
}

/// A reduced fraction `num/den` with `den > 0`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Rational(Ratio<i64>);

impl Rational {
    pub fn new(num: i64, den: i64) -> Result<Self, RationalError> {
        if den == 0 {
            return Err(RationalError::ZeroDenominator);
        }
        Ok(Rational(Ratio::new(num, den)))
    }

    pub fn integer(value: i64) -> Self {
        Rational(Ratio::from_integer(value))
    }

    pub fn num(&self) -> i64 {
        *self.0.numer()
    }

    pub fn den(&self) -> i64 {
        *self.0.denom()
    }

    pub fn is_at_least_one(&self) -> bool {
        self.num() >= self.den()
    }

    /// `self * lhs >= rhs`.
    pub fn scaled_at_least(&self, lhs: usize, rhs: usize) -> bool {
        self.num() as i128 * lhs as i128 >= rhs as i128 * self.den() as i128
    }

    /// `den * (rhs - self * lhs)`: how far `self * lhs` falls short of `rhs`,
    /// scaled to an integer. Negative when the inequality holds with room.
    pub fn scaled_deficit(&self, lhs: usize, rhs: usize) -> i128 {
        rhs as i128 * self.den() as i128 - self.num() as i128 * lhs as i128
    }

    /// `t / (t + 1)`, the size-bound factor attached to threshold `t`.
    pub fn bound_factor(&self) -> Rational {
        Rational(self.0 / (self.0 + 1))
    }

    /// Whether `count <= self * n`.
    pub fn admits(&self, count: usize, n: usize) -> bool {
        count as i128 * self.den() as i128 <= self.num() as i128 * n as i128
    }

    /// Largest integer not exceeding `self * n`.
    pub fn floor_times(&self, n: usize) -> usize {
        (self.num() as i128 * n as i128).div_euclid(self.den() as i128) as usize
    }

    pub fn to_f64(&self) -> f64 {
        self.num() as f64 / self.den() as f64
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num(), self.den())
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Rational {
    type Err = RationalError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let malformed = || RationalError::Malformed(s.to_string());
        let s = s.trim();
        match s.split_once('/') {
            Some((p, q)) => {
                let p = p.trim().parse().map_err(|_| malformed())?;
                let q = q.trim().parse().map_err(|_| malformed())?;
                Rational::new(p, q)
            }
            None => Ok(Rational::integer(s.parse().map_err(|_| malformed())?)),
        }
    }
}

impl Serialize for Rational {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Rational {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Threshold for `K⃗_{1,d}`-free digraphs: `(d² - 2d + 2) / (d - 1)`.
pub fn star_free_threshold(d: u32) -> Rational {
    let d = d as i64;
    Rational::new(d * d - 2 * d + 2, d - 1).expect("d >= 2")
}

/// Threshold for short-cycle-free digraphs with out-degree at most `d`:
/// `(d² + 4) / 4d`.
pub fn short_cycle_free_threshold(d: u32) -> Rational {
    let d = d as i64;
    Rational::new(d * d + 4, 4 * d).expect("d >= 1")
}

/// Threshold for out-degree at most 3.
pub fn out_degree_three_threshold() -> Rational {
    Rational::new(4, 3).expect("nonzero")
}
