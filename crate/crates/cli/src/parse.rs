//! Exact parsing of numeric command-line arguments.

use niven_core::{Integer, Rational};
use rug::ops::Pow;

fn integer(s: &str) -> Result<Integer, String> {
    let digits = s.strip_prefix('+').unwrap_or(s);
    Integer::from_str_radix(digits, 10).map_err(|_| format!("not an integer: {s:?}"))
}

fn ten_pow(e: i64) -> Result<Rational, String> {
    let mag = u32::try_from(e.unsigned_abs()).map_err(|_| format!("exponent {e} out of range"))?;
    let p = Integer::from(10).pow(mag);
    Ok(if e < 0 {
        Rational::from((1, p))
    } else {
        Rational::from(p)
    })
}

/// `12`, `-0.25`, `1e-30`, `2.5E3`, `10^-30`, `2^64`.
fn number(s: &str) -> Result<Rational, String> {
    let s = s.trim();
    if let Some((base, exp)) = s.split_once('^') {
        let base = integer(base)?;
        let exp: i64 = exp.parse().map_err(|_| format!("bad exponent in {s:?}"))?;
        let mag = u32::try_from(exp.unsigned_abs())
            .map_err(|_| format!("exponent {exp} out of range"))?;
        let p = base.pow(mag);
        if exp < 0 {
            if p == 0 {
                return Err("zero to a negative power".into());
            }
            return Ok(Rational::from((1, p)));
        }
        return Ok(Rational::from(p));
    }
    let (mantissa, exp) = match s.find(['e', 'E']) {
        Some(i) => {
            let e: i64 = s[i + 1..]
                .parse()
                .map_err(|_| format!("bad exponent in {s:?}"))?;
            (&s[..i], e)
        }
        None => (s, 0),
    };
    let (negative, mantissa) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa),
    };
    let (whole, frac) = mantissa.split_once('.').unwrap_or((mantissa, ""));
    if whole.is_empty() && frac.is_empty() {
        return Err(format!("not a number: {s:?}"));
    }
    if !whole
        .chars()
        .chain(frac.chars())
        .all(|c| c.is_ascii_digit())
        || whole.starts_with('+')
    {
        return Err(format!("not a number: {s:?}"));
    }
    let digits = integer(&format!("0{whole}{frac}"))?;
    let frac_len = i64::try_from(frac.len()).map_err(|_| "too many digits".to_string())?;
    let mut value = Rational::from(digits) * ten_pow(exp - frac_len)?;
    if negative {
        value = -value;
    }
    Ok(value)
}

/// A rational written as `p`, `p/q`, or with either side in decimal,
/// scientific or power notation: `1e-30`, `1/10^30`, `0.001`, `22/7`.
pub fn rational(s: &str) -> Result<Rational, String> {
    match s.split_once('/') {
        Some((num, den)) => {
            let den = number(den)?;
            if den == 0 {
                return Err(format!("zero denominator in {s:?}"));
            }
            Ok(number(num)? / den)
        }
        None => number(s),
    }
}

pub fn positive_rational(s: &str) -> Result<Rational, String> {
    let x = rational(s)?;
    if x <= 0 {
        return Err(format!("must be positive, got {s}"));
    }
    Ok(x)
}

pub fn positive_integer(s: &str) -> Result<Integer, String> {
    let x = integer(s.trim())?;
    if x <= 0 {
        return Err(format!("must be a positive integer, got {s}"));
    }
    Ok(x)
}
