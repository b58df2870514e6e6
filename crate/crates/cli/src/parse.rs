//! Flag value parsers.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use nonlinear_sl2::{HalfInt, Rational};

/// `p/q`, an integer, or a decimal such as `-0.3` (read as `-3/10`).
pub fn rational(s: &str) -> Result<Rational, String> {
    let s = s.trim();
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().map_err(|_| format!("bad numerator in {s:?}"))?;
        let d: BigInt = d.trim().parse().map_err(|_| format!("bad denominator in {s:?}"))?;
        if d.is_zero() {
            return Err(format!("zero denominator in {s:?}"));
        }
        return Ok(Rational::new(n, d));
    }
    let (neg, body) = match s.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, s.strip_prefix('+').unwrap_or(s)),
    };
    let (int, frac) = body.split_once('.').unwrap_or((body, ""));
    if int.is_empty() && frac.is_empty() {
        return Err(format!("expected a rational (p/q or decimal), got {s:?}"));
    }
    if !int.chars().chain(frac.chars()).all(|c| c.is_ascii_digit()) {
        return Err(format!("expected a rational (p/q or decimal), got {s:?}"));
    }
    let digits = format!("{int}{frac}");
    let n: BigInt =
        if digits.is_empty() { BigInt::zero() } else { digits.parse().map_err(|_| format!("bad number {s:?}"))? };
    let mut den = BigInt::one();
    for _ in 0..frac.len() {
        den *= 10;
    }
    let r = Rational::new(n, den);
    Ok(if neg { -r } else { r })
}

/// A comma-separated flag value. A newtype so clap treats it as one value.
#[derive(Clone, Debug, PartialEq)]
pub struct RationalList(pub Vec<Rational>);

/// Comma-separated rationals; whitespace around entries is ignored.
pub fn rational_list(s: &str) -> Result<RationalList, String> {
    let items: Vec<&str> = s.split(',').map(str::trim).collect();
    if items.iter().any(|x| x.is_empty()) {
        return Err(format!("empty entry in list {s:?}"));
    }
    items.into_iter().map(rational).collect::<Result<_, _>>().map(RationalList)
}

pub fn half_int(s: &str) -> Result<HalfInt, String> {
    s.trim().parse::<HalfInt>().map_err(|e| format!("{e}"))
}

pub fn real(s: &str) -> Result<f64, String> {
    let x: f64 = s.trim().parse().map_err(|_| format!("expected a real number, got {s:?}"))?;
    if x.is_finite() {
        Ok(x)
    } else {
        Err(format!("expected a finite real number, got {s:?}"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use nonlinear_sl2::scalar::ratio;

    #[test]
    fn decimals_are_exact() {
        assert_eq!(rational("-0.3").unwrap(), ratio(-3, 10));
        assert_eq!(rational("0.25").unwrap(), ratio(1, 4));
        assert_eq!(rational("2").unwrap(), ratio(2, 1));
        assert_eq!(rational(".5").unwrap(), ratio(1, 2));
        assert_eq!(rational("-6/8").unwrap(), ratio(-3, 4));
    }

    #[test]
    fn rejects_garbage() {
        for bad in ["", "-", "1/0", "1e-3", "abc", "0.1.2", "--1"] {
            assert!(rational(bad).is_err(), "{bad}");
        }
        assert!(rational_list("1,,2").is_err());
    }

    #[test]
    fn lists() {
        assert_eq!(rational_list("1, -0.3").unwrap().0, vec![ratio(1, 1), ratio(-3, 10)]);
    }

    #[test]
    fn spins() {
        assert_eq!(half_int("3/2").unwrap(), HalfInt::from_twice(3));
        assert!(half_int("1/3").is_err());
    }
}
