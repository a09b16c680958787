//! Exact rational helpers.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Arbitrary-size nonnegative integer (counts, ranks, binomials).
pub type Natural = BigUint;

/// Always-reduced rational with positive denominator.
pub type ExactRational = BigRational;

/// Parse `"p/q"`, `"123"`, `"-4"`, or a plain decimal like `"5.1"` into an
/// exact rational.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    if s.is_empty() {
        return Err(Error::Parse { pos: 0, msg: "empty number".into() });
    }
    if let Some((num, den)) = s.split_once('/') {
        let n: BigInt = num.trim().parse().map_err(|_| Error::Parse {
            pos: 0,
            msg: format!("bad numerator `{num}`"),
        })?;
        let d: BigInt = den.trim().parse().map_err(|_| Error::Parse {
            pos: num.len() + 1,
            msg: format!("bad denominator `{den}`"),
        })?;
        if d.is_zero() {
            return Err(Error::Parse { pos: num.len() + 1, msg: "zero denominator".into() });
        }
        return Ok(BigRational::new(n, d));
    }
    if let Some((int_part, frac_part)) = s.split_once('.') {
        let (neg, int_part) = match int_part.strip_prefix('-') {
            Some(rest) => (true, rest),
            None => (false, int_part.strip_prefix('+').unwrap_or(int_part)),
        };
        if !frac_part.chars().all(|c| c.is_ascii_digit())
            || !int_part.chars().all(|c| c.is_ascii_digit())
            || frac_part.is_empty()
        {
            return Err(Error::Parse { pos: 0, msg: format!("bad decimal `{s}`") });
        }
        let int_val: BigInt = if int_part.is_empty() {
            BigInt::zero()
        } else {
            int_part.parse().unwrap()
        };
        let frac_val: BigInt = frac_part.parse().unwrap();
        let scale = BigInt::from(10u32).pow(frac_part.len() as u32);
        let mut v = BigRational::from_integer(int_val)
            + BigRational::new(frac_val, scale);
        if neg {
            v = -v;
        }
        return Ok(v);
    }
    let n: BigInt = s.parse().map_err(|_| Error::Parse {
        pos: 0,
        msg: format!("bad integer `{s}`"),
    })?;
    Ok(BigRational::from_integer(n))
}

/// Render a rational as `p/q` (or just `p` when integral).
pub fn rational_string(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_forms() {
        assert_eq!(parse_rational("5.1").unwrap(), BigRational::new(51.into(), 10.into()));
        assert_eq!(parse_rational("-0.25").unwrap(), BigRational::new((-1).into(), 4.into()));
        assert_eq!(parse_rational("7/3").unwrap(), BigRational::new(7.into(), 3.into()));
        assert_eq!(parse_rational("42").unwrap(), BigRational::from_integer(42.into()));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("abc").is_err());
    }

    #[test]
    fn renders() {
        assert_eq!(rational_string(&parse_rational("6/4").unwrap()), "3/2");
        assert_eq!(rational_string(&parse_rational("8/4").unwrap()), "2");
    }
}
