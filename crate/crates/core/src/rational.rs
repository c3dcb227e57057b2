//! Exact rational scalars and the helpers every module leans on.

use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::ParseError;

/// The scalar field of every model: arbitrary-precision rationals in lowest terms.
pub type Q = BigRational;

pub fn int(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

/// `num / den`; panics on a zero denominator.
pub fn ratio(num: i64, den: i64) -> Q {
    assert!(den != 0, "zero denominator");
    Q::new(BigInt::from(num), BigInt::from(den))
}

pub fn zero() -> Q {
    Q::zero()
}

pub fn one() -> Q {
    Q::one()
}

pub fn max(a: &Q, b: &Q) -> Q {
    if a >= b {
        a.clone()
    } else {
        b.clone()
    }
}

pub fn min(a: &Q, b: &Q) -> Q {
    if a <= b {
        a.clone()
    } else {
        b.clone()
    }
}

pub fn abs(a: &Q) -> Q {
    a.abs()
}

pub fn pow(a: &Q, n: u32) -> Q {
    num_traits::pow(a.clone(), n as usize)
}

/// Parses `-?digits(/digits)?`. Denominators must be positive.
pub fn parse_rational(text: &str) -> Result<Q, ParseError> {
    let s = text.trim();
    let bad = || ParseError::new(0, format!("invalid rational `{s}`"));
    let (neg, body) = match s.strip_prefix('-') {
        Some(rest) => (true, rest.trim_start()),
        None => (false, s),
    };
    let (num, den) = match body.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (body, "1"),
    };
    let digits = |p: &str| !p.is_empty() && p.bytes().all(|b| b.is_ascii_digit());
    if !digits(num) || !digits(den) {
        return Err(bad());
    }
    let num = BigInt::from_str(num).map_err(|_| bad())?;
    let den = BigInt::from_str(den).map_err(|_| bad())?;
    if den.is_zero() {
        return Err(ParseError::new(0, format!("zero denominator in `{s}`")));
    }
    let q = Q::new(num, den);
    Ok(if neg { -q } else { q })
}

/// Parses a comma separated list of rationals, e.g. `1, -2, 3/4`.
pub fn parse_vector(text: &str) -> Result<Vec<Q>, ParseError> {
    text.split(',').map(parse_rational).collect()
}

pub fn format_vector(v: &[Q]) -> String {
    let parts: Vec<String> = v.iter().map(|q| q.to_string()).collect();
    format!("({})", parts.join(", "))
}

/// Lossy conversion for diagnostics only.
pub fn to_f64(q: &Q) -> f64 {
    use num_traits::ToPrimitive;
    q.to_f64().unwrap_or(f64::NAN)
}

/// Smallest rational 2^-k.
pub fn dyadic(k: u32) -> Q {
    Q::new(BigInt::one(), BigInt::one() << k as usize)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_signed_fractions() {
        assert_eq!(parse_rational("3/2").unwrap(), ratio(3, 2));
        assert_eq!(parse_rational(" -4/6 ").unwrap(), ratio(-2, 3));
        assert_eq!(parse_rational("7").unwrap(), int(7));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("1/-2").is_err());
        assert!(parse_rational("x").is_err());
        assert!(parse_rational("").is_err());
    }

    #[test]
    fn vectors_round_trip_through_display() {
        let v = parse_vector("1, -2, 3/4").unwrap();
        assert_eq!(v, vec![int(1), int(-2), ratio(3, 4)]);
        assert_eq!(format_vector(&v), "(1, -2, 3/4)");
    }

    #[test]
    fn dyadics() {
        assert_eq!(dyadic(0), int(1));
        assert_eq!(dyadic(3), ratio(1, 8));
    }
}
