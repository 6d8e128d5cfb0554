//! Exact rational arithmetic used by all certificates.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Q = BigRational;

pub fn q(num: i64, den: i64) -> Q {
    Q::new(BigInt::from(num), BigInt::from(den))
}

pub fn qi(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn q_zero() -> Q {
    Q::zero()
}

pub fn q_one() -> Q {
    Q::one()
}

/// Parses "3/4", "0.01" or "2" into an exact rational.
pub fn parse_q(s: &str) -> Option<Q> {
    let s = s.trim();
    if let Some((a, b)) = s.split_once('/') {
        let num: BigInt = a.trim().parse().ok()?;
        let den: BigInt = b.trim().parse().ok()?;
        if den.is_zero() {
            return None;
        }
        return Some(Q::new(num, den));
    }
    if let Some((int, frac)) = s.split_once('.') {
        let int = if int.is_empty() { "0" } else { int };
        let neg = int.starts_with('-');
        let ipart: BigInt = int.parse().ok()?;
        if frac.is_empty() || !frac.chars().all(|c| c.is_ascii_digit()) {
            return None;
        }
        let fpart: BigInt = frac.parse().ok()?;
        let scale = BigInt::from(10u32).pow(frac.len() as u32);
        let mag = ipart.abs() * &scale + fpart;
        let signed = if neg { -mag } else { mag };
        return Some(Q::new(signed, scale));
    }
    let n: BigInt = s.parse().ok()?;
    Some(Q::from_integer(n))
}

/// Renders a rational as "p/q" (or "p" when integral).
pub fn show_q(x: &Q) -> String {
    if x.denom().is_one() {
        format!("{}", x.numer())
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

pub fn q_f64(x: &Q) -> f64 {
    let n = x.numer();
    let d = x.denom();
    // good enough for reporting; certificates never round-trip through f64
    let nf: f64 = n.to_string().parse().unwrap_or(f64::NAN);
    let df: f64 = d.to_string().parse().unwrap_or(f64::NAN);
    nf / df
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_forms() {
        assert_eq!(parse_q("3/4").unwrap(), q(3, 4));
        assert_eq!(parse_q("0.01").unwrap(), q(1, 100));
        assert_eq!(parse_q("2").unwrap(), qi(2));
        assert_eq!(parse_q("-0.5").unwrap(), q(-1, 2));
        assert!(parse_q("1/0").is_none());
        assert!(parse_q("abc").is_none());
    }

    #[test]
    fn show_roundtrip() {
        assert_eq!(show_q(&q(9303, 10000)), "9303/10000");
        assert_eq!(show_q(&qi(5)), "5");
    }
}
