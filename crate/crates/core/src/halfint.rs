use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::scalar::{Rational, Scalar};

/// A spin or weight label, stored doubled so that `j = 3/2` is `twice = 3`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct HalfInt {
    pub twice: i64,
}

impl HalfInt {
    pub const ZERO: HalfInt = HalfInt { twice: 0 };
    pub const HALF: HalfInt = HalfInt { twice: 1 };
    pub const ONE: HalfInt = HalfInt { twice: 2 };

    pub const fn from_twice(twice: i64) -> Self {
        HalfInt { twice }
    }

    pub const fn from_int(n: i64) -> Self {
        HalfInt { twice: 2 * n }
    }

    pub fn is_integer(self) -> bool {
        self.twice % 2 == 0
    }

    pub fn to_rational(self) -> Rational {
        Rational::new(BigInt::from(self.twice), BigInt::from(2))
    }

    pub fn to_scalar<T: Scalar>(self) -> T {
        T::from_rational(&self.to_rational())
    }

    pub fn as_f64(self) -> f64 {
        self.twice as f64 / 2.0
    }

    /// `2j + 1` for a spin label.
    pub fn dim(self) -> usize {
        (self.twice + 1).max(0) as usize
    }

    /// Weights `j, j-1, ..., -j` in the crate's basis order.
    pub fn weights(self) -> impl DoubleEndedIterator<Item = HalfInt> + ExactSizeIterator {
        let j = self.twice;
        (0..self.dim()).map(move |i| HalfInt::from_twice(j - 2 * i as i64))
    }

    /// Source weights of the raising operator, `-j, ..., j-1`.
    pub fn raising_sources(self) -> impl Iterator<Item = HalfInt> {
        let j = self.twice;
        (0..self.twice.max(0)).map(move |i| HalfInt::from_twice(-j + 2 * i))
    }

    /// `m` lies on the ladder of spin `self`.
    pub fn contains(self, m: HalfInt) -> bool {
        m.twice.abs() <= self.twice && (self.twice - m.twice) % 2 == 0
    }

    /// `j(j+1)` exactly.
    pub fn casimir(self) -> Rational {
        let j = self.to_rational();
        &j * (&j + Rational::from_integer(1.into()))
    }
}

impl fmt::Display for HalfInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integer() {
            write!(f, "{}", self.twice / 2)
        } else {
            write!(f, "{}/2", self.twice)
        }
    }
}

impl FromStr for HalfInt {
    type Err = Error;

    /// Accepts `"3/2"`, `"-1/2"`, `"2"`, `"1.5"`.
    fn from_str(s: &str) -> Result<Self, Error> {
        let s = s.trim();
        let bad = || Error::Parse(format!("'{s}' is not a half-integer"));
        if let Some((n, d)) = s.split_once('/') {
            let n: i64 = n.trim().parse().map_err(|_| bad())?;
            let d: i64 = d.trim().parse().map_err(|_| bad())?;
            return match d {
                1 => Ok(HalfInt::from_int(n)),
                2 => Ok(HalfInt::from_twice(n)),
                -1 => Ok(HalfInt::from_int(-n)),
                -2 => Ok(HalfInt::from_twice(-n)),
                _ => Err(bad()),
            };
        }
        if let Ok(n) = s.parse::<i64>() {
            return Ok(HalfInt::from_int(n));
        }
        let x: f64 = s.parse().map_err(|_| bad())?;
        let twice = 2.0 * x;
        if (twice - twice.round()).abs() > 1e-12 || !twice.is_finite() {
            return Err(bad());
        }
        Ok(HalfInt::from_twice(twice.round() as i64))
    }
}

impl Add for HalfInt {
    type Output = HalfInt;
    fn add(self, rhs: HalfInt) -> HalfInt {
        HalfInt::from_twice(self.twice + rhs.twice)
    }
}

impl Sub for HalfInt {
    type Output = HalfInt;
    fn sub(self, rhs: HalfInt) -> HalfInt {
        HalfInt::from_twice(self.twice - rhs.twice)
    }
}

impl Neg for HalfInt {
    type Output = HalfInt;
    fn neg(self) -> HalfInt {
        HalfInt::from_twice(-self.twice)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_forms() {
        assert_eq!("3/2".parse::<HalfInt>().unwrap(), HalfInt::from_twice(3));
        assert_eq!("-1/2".parse::<HalfInt>().unwrap(), HalfInt::from_twice(-1));
        assert_eq!("2".parse::<HalfInt>().unwrap(), HalfInt::from_twice(4));
        assert_eq!("2.5".parse::<HalfInt>().unwrap(), HalfInt::from_twice(5));
        assert_eq!("4/2".parse::<HalfInt>().unwrap(), HalfInt::from_twice(4));
        assert!("1/3".parse::<HalfInt>().is_err());
        assert!("0.3".parse::<HalfInt>().is_err());
        assert!("abc".parse::<HalfInt>().is_err());
    }

    #[test]
    fn display_round_trips() {
        for t in -7..8 {
            let h = HalfInt::from_twice(t);
            assert_eq!(h.to_string().parse::<HalfInt>().unwrap(), h);
        }
    }

    #[test]
    fn weights_descend() {
        let w: Vec<_> = HalfInt::from_twice(3).weights().map(|m| m.twice).collect();
        assert_eq!(w, vec![3, 1, -1, -3]);
        let s: Vec<_> = HalfInt::from_twice(3).raising_sources().map(|m| m.twice).collect();
        assert_eq!(s, vec![-3, -1, 1]);
        assert_eq!(HalfInt::ZERO.weights().count(), 1);
        assert_eq!(HalfInt::ZERO.raising_sources().count(), 0);
    }

    #[test]
    fn ladder_membership() {
        let j = HalfInt::from_twice(3);
        assert!(j.contains(HalfInt::from_twice(-3)));
        assert!(!j.contains(HalfInt::from_twice(-5)));
        assert!(!j.contains(HalfInt::from_twice(2)));
    }
}
