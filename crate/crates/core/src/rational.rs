//! Exact rational scalars.
//!
//! `Rat` is an arbitrary precision fraction kept in lowest terms with a
//! positive denominator. Text form is `p/q`, or just `p` when `q = 1`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rat = BigRational;

pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn parse_rat(s: &str) -> Result<Rat> {
    let bad = |m: &str| Error::Parse {
        path: String::new(),
        message: format!("invalid rational {s:?}: {m}"),
    };
    let t = s.trim();
    let (num, den) = match t.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (t, "1"),
    };
    let n: BigInt = num.parse().map_err(|_| bad("bad numerator"))?;
    let d: BigInt = den.parse().map_err(|_| bad("bad denominator"))?;
    if d.is_zero() {
        return Err(bad("zero denominator"));
    }
    Ok(Rat::new(n, d))
}

pub fn fmt_rat(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Least common multiple of the denominators.
pub fn denominator_lcm<'a>(values: impl IntoIterator<Item = &'a Rat>) -> BigInt {
    values
        .into_iter()
        .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()))
}

pub fn is_integral(r: &Rat) -> bool {
    r.denom().is_one()
}

/// Round to `places` decimal digits, half away from zero, without going
/// through floating point.
pub fn to_fixed(r: &Rat, places: u32) -> String {
    let scale = BigInt::from(10).pow(places);
    let scaled = r * Rat::from_integer(scale.clone());
    let half = rat(1, 2);
    let rounded = if scaled.is_negative() {
        -((-scaled) + half).floor()
    } else {
        (scaled + half).floor()
    };
    let n = rounded.to_integer();
    let neg = n.is_negative();
    let (q, rem) = n.abs().div_rem(&scale);
    let mut s = String::new();
    if neg && !(q.is_zero() && rem.is_zero()) {
        s.push('-');
    }
    s.push_str(&q.to_string());
    if places > 0 && !rem.is_zero() {
        let frac = format!("{:0>width$}", rem.to_string(), width = places as usize);
        s.push('.');
        s.push_str(frac.trim_end_matches('0'));
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format() {
        assert_eq!(parse_rat("2/4").unwrap(), rat(1, 2));
        assert_eq!(parse_rat("-3").unwrap(), int(-3));
        assert_eq!(parse_rat(" 6/-4 ").unwrap(), rat(-3, 2));
        assert!(parse_rat("1/0").is_err());
        assert!(parse_rat("x").is_err());
        assert_eq!(fmt_rat(&rat(6, -4)), "-3/2");
        assert_eq!(fmt_rat(&int(7)), "7");
    }

    #[test]
    fn fixed_rounding() {
        assert_eq!(to_fixed(&rat(1, 3), 6), "0.333333");
        assert_eq!(to_fixed(&rat(2, 3), 6), "0.666667");
        assert_eq!(to_fixed(&rat(-2, 3), 6), "-0.666667");
        assert_eq!(to_fixed(&int(400), 6), "400");
        assert_eq!(to_fixed(&rat(1, 2), 6), "0.5");
        assert_eq!(to_fixed(&rat(-1, 10_000_000), 6), "0");
    }
}
