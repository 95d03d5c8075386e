//! Exact rational scalars.
//!
//! [`Rational`] is an arbitrary-precision fraction kept in lowest terms with a
//! positive denominator. Exponents of the ambient variable `x0` use the
//! fixed-width [`Exp`] instead; they only ever hold small half-integers.

use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use num_traits::{One, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

/// Exponent of the distinguished ambient variable.
pub type Exp = Ratio<i64>;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn exp_to_rational(e: Exp) -> Rational {
    rat(*e.numer(), *e.denom())
}

/// Converts an exact rational to an exponent, failing if it does not fit in 64 bits.
pub fn rational_to_exp(r: &Rational) -> Result<Exp> {
    let num: i64 = r
        .numer()
        .try_into()
        .map_err(|_| Error::Parse(format!("exponent {r} out of range")))?;
    let den: i64 = r
        .denom()
        .try_into()
        .map_err(|_| Error::Parse(format!("exponent {r} out of range")))?;
    Ok(Exp::new(num, den))
}

/// Parses `"p"` or `"p/q"`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational number: `{s}`"));
    match s.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().map_err(|_| bad())?;
            let q: BigInt = q.trim().parse().map_err(|_| bad())?;
            if q.is_zero() {
                return Err(Error::Parse(format!("zero denominator in `{s}`")));
            }
            Ok(Rational::new(p, q))
        }
        None => {
            let p: BigInt = s.parse().map_err(|_| bad())?;
            Ok(Rational::from_integer(p))
        }
    }
}

/// Formats as `"p"` when integral, `"p/q"` otherwise.
pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn format_exp(e: Exp) -> String {
    if *e.denom() == 1 {
        e.numer().to_string()
    } else {
        format!("{}/{}", e.numer(), e.denom())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format_round_trip() {
        for s in ["0", "7", "-3/4", "12/5"] {
            assert_eq!(format_rational(&parse_rational(s).unwrap()), s);
        }
        assert_eq!(format_rational(&parse_rational("6/8").unwrap()), "3/4");
        assert_eq!(format_rational(&parse_rational("3/-6").unwrap()), "-1/2");
    }

    #[test]
    fn rejects_garbage() {
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
        assert!(parse_rational("").is_err());
    }
}
