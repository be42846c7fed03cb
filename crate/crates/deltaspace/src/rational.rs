//! Exact rational scalars. `num_rational::BigRational` already keeps values
//! in lowest terms with a positive denominator, which is exactly the
//! canonical form every other module relies on.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rat = num_rational::BigRational;

pub fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn rat2(n: i64, d: i64) -> Rat {
    assert!(d != 0, "zero denominator");
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// Parses "p/q" or "p", with an optional leading sign. Rejects q = 0.
pub fn parse_rat(text: &str) -> Result<Rat> {
    let s = text.trim();
    let err = |msg: &str| Error::Parse {
        pos: 0,
        msg: format!("{msg} in rational {s:?}"),
    };
    let (num_str, den_str) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), Some(d.trim())),
        None => (s, None),
    };
    let num: BigInt = num_str.parse().map_err(|_| err("bad numerator"))?;
    let den: BigInt = match den_str {
        Some(d) => d.parse().map_err(|_| err("bad denominator"))?,
        None => BigInt::one(),
    };
    if den.is_zero() {
        return Err(err("zero denominator"));
    }
    Ok(Rat::new(num, den))
}

/// Renders in the "p/q" form used by every JSON surface ("p" when q = 1).
pub fn render_rat(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn is_positive(r: &Rat) -> bool {
    r.numer().is_positive()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_canonicalizes() {
        assert_eq!(parse_rat("4/6").unwrap(), rat2(2, 3));
        assert_eq!(parse_rat("-3").unwrap(), rat(-3));
        assert_eq!(parse_rat("7/-2").unwrap(), rat2(-7, 2));
        assert_eq!(render_rat(&parse_rat("7/-2").unwrap()), "-7/2");
    }

    #[test]
    fn parse_rejects_zero_denominator() {
        assert!(parse_rat("1/0").is_err());
        assert!(parse_rat("x").is_err());
        assert!(parse_rat("1/").is_err());
    }

    #[test]
    fn render_integer_omits_denominator() {
        assert_eq!(render_rat(&rat(5)), "5");
        assert_eq!(render_rat(&rat2(1, 2)), "1/2");
    }
}
