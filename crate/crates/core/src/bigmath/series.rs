//! Certified Taylor-series enclosures of `exp`, `sin`, `cos` and `pi`.
//!
//! Each routine sums a fixed number of terms exactly (by binary splitting,
//! so the partial sum is a single integer quotient), bounds the omitted tail
//! rigorously, and rounds the endpoints outward onto a dyadic grid fine
//! enough that the final width stays below the requested `eps`.

use std::cmp::Ordering;

use rug::ops::{DivRounding, Pow};
use rug::{Integer, Rational};

use super::enclosure::{bits_for, dyadic, Enclosure};
use super::factorial;
use crate::error::{Error, Result};

/// Upper limit on the truncation index of any series.
const MAX_TERMS: u64 = 1 << 32;

struct Split {
    p: Integer,
    q: Integer,
    t: Integer,
}

fn split(lo: u64, hi: u64, ratio: &dyn Fn(u64) -> (Integer, Integer)) -> Split {
    if hi - lo == 1 {
        let (p, q) = ratio(lo);
        let t = q.clone();
        return Split { p, q, t };
    }
    let mid = lo + (hi - lo) / 2;
    let left = split(lo, mid, ratio);
    let right = split(mid, hi, ratio);
    let t = left.t * &right.q + Integer::from(&left.p * &right.t);
    Split {
        p: left.p * right.p,
        q: left.q * right.q,
        t,
    }
}

/// Exact value of `sum_{k < count} prod_{m < k} p(m)/q(m)` as `(t, q)` with
/// the sum equal to `t / q`. `ratio(m)` returns `(p(m), q(m))`, `q(m) > 0`.
pub(crate) fn hypergeometric_partial_sum(
    count: u64,
    ratio: &dyn Fn(u64) -> (Integer, Integer),
) -> (Integer, Integer) {
    if count == 0 {
        return (Integer::new(), Integer::from(1));
    }
    let s = split(0, count, ratio);
    (s.t, s.q)
}

pub(crate) fn check_eps(eps: &Rational) -> Result<()> {
    if eps.cmp0() != Ordering::Greater {
        return Err(Error::NonPositiveEps(eps.to_string()));
    }
    Ok(())
}

/// `factor * num / den <= eps`, exactly.
fn within(num: &Integer, den: &Integer, eps: &Rational, factor: u32) -> bool {
    let lhs = Integer::from(num * eps.denom()) * factor;
    let rhs = Integer::from(den * eps.numer());
    lhs <= rhs
}

fn u32_index(k: u64) -> u32 {
    u32::try_from(k).expect("series index exceeds u32")
}

/// A truncation index `>= start` whose omitted-term magnitude
/// `term(k) = (num, den)` satisfies `factor * term <= eps`, checked exactly.
///
/// `log2_step(k)` approximates `log2 |t_(k+1) / t_k|` and only steers the
/// first guess, so large precisions need one or two exact checks instead of
/// a full search.
fn truncation_index(
    start: u64,
    eps: &Rational,
    factor: u32,
    term: impl Fn(u64) -> (Integer, Integer),
    log2_step: impl Fn(u64) -> f64,
) -> u64 {
    let target = -(eps.numer().significant_bits() as f64
        - eps.denom().significant_bits() as f64
        - f64::from(factor).log2()
        - 2.0);
    let (n0, d0) = term(start);
    let mut log_term = n0.significant_bits() as f64 - d0.significant_bits() as f64;
    let mut k = start;
    while log_term > -target && k < MAX_TERMS {
        log_term += log2_step(k);
        k += 1;
    }
    loop {
        let (n, d) = term(k);
        if within(&n, &d, eps, factor) {
            return k;
        }
        assert!(k < MAX_TERMS, "series truncation index exceeds limit");
        k += k / 16 + 1;
    }
}

fn log2_abs(x: &Rational) -> f64 {
    x.to_f64().abs().log2()
}

/// Turns an exact partial sum `sum_num / sum_den` and a tail bound
/// `tail_num / tail_den` into an outward-rounded dyadic enclosure.
fn assemble(
    sum_num: &Integer,
    sum_den: &Integer,
    tail_num: &Integer,
    tail_den: &Integer,
    one_sided_above: bool,
    eps: &Rational,
) -> Enclosure {
    let bits = bits_for(eps, 16);
    let scaled = Integer::from(sum_num << bits);
    let mut lo = scaled.clone().div_floor(sum_den);
    let mut hi = scaled.div_ceil(sum_den);
    let tail = Integer::from(tail_num << bits).div_ceil(tail_den);
    if !one_sided_above {
        lo -= &tail;
    }
    hi += tail;
    Enclosure::new(dyadic(lo, bits), dyadic(hi, bits)).expect("lo <= hi by construction")
}

fn ceil_abs(x: &Rational) -> u64 {
    let c = Integer::from(x.numer().abs_ref()).div_ceil(x.denom().clone());
    c.to_u64()
        .expect("argument too large for series evaluation")
}

/// Encloses `e^x` with width at most `eps`. The tail after `K` terms is
/// bounded by the geometric series `|t_K| / (1 - |x|/(K+1)) <= 2|t_K|`,
/// valid once `K + 1 >= 2|x|`.
pub fn enclose_exp(x: &Rational, eps: &Rational) -> Result<Enclosure> {
    check_eps(eps)?;
    let (n, d) = (x.numer().clone(), x.denom().clone());
    let n_abs = Integer::from(n.abs_ref());
    let start = 2 * ceil_abs(x);
    let lx = log2_abs(x);
    let k = truncation_index(
        start,
        eps,
        8,
        |k| {
            let kk = u32_index(k);
            (
                Integer::from((&n_abs).pow(kk)),
                Integer::from((&d).pow(kk)) * factorial(k),
            )
        },
        |k| lx - ((k + 1) as f64).log2(),
    );
    let (t, q) = hypergeometric_partial_sum(k, &|m| (n.clone(), Integer::from(&d * (m + 1))));
    let kk = u32_index(k);
    let tail_num = Integer::from((&n_abs).pow(kk)) * 2u32;
    let tail_den = Integer::from((&d).pow(kk)) * factorial(k);
    let positive = x.cmp0() != Ordering::Less;
    Ok(assemble(&t, &q, &tail_num, &tail_den, positive, eps))
}

/// Encloses `e` with width at most `eps`.
pub fn enclose_e(eps: &Rational) -> Result<Enclosure> {
    enclose_exp(&Rational::from(1), eps)
}

/// Encloses `sin x` from the alternating Taylor series. Terms decrease in
/// magnitude from index `ceil|x|` onward, so the first omitted term bounds
/// the error.
pub fn enclose_sin(x: &Rational, eps: &Rational) -> Result<Enclosure> {
    check_eps(eps)?;
    let (n, d) = (x.numer().clone(), x.denom().clone());
    let n_abs = Integer::from(n.abs_ref());
    let n2 = Integer::from(n.square_ref());
    let d2 = Integer::from(d.square_ref());
    let term = |k: u64| {
        let e = u32_index(2 * k + 1);
        (
            Integer::from((&n_abs).pow(e)),
            Integer::from((&d).pow(e)) * factorial(2 * k + 1),
        )
    };
    let lx = 2.0 * log2_abs(x);
    let k = truncation_index(ceil_abs(x).max(1), eps, 4, term, |k| {
        lx - (((2 * k + 2) * (2 * k + 3)) as f64).log2()
    });
    let (t, q) = hypergeometric_partial_sum(k, &|m| {
        (
            Integer::from(-&n2),
            Integer::from(&d2 * ((2 * m + 2) * (2 * m + 3))),
        )
    });
    let (tail_num, tail_den) = term(k);
    Ok(assemble(
        &Integer::from(&t * &n),
        &Integer::from(&q * &d),
        &tail_num,
        &tail_den,
        false,
        eps,
    ))
}

/// Encloses `cos x`; same truncation rule as [`enclose_sin`].
pub fn enclose_cos(x: &Rational, eps: &Rational) -> Result<Enclosure> {
    check_eps(eps)?;
    let (n, d) = (x.numer().clone(), x.denom().clone());
    let n_abs = Integer::from(n.abs_ref());
    let n2 = Integer::from(n.square_ref());
    let d2 = Integer::from(d.square_ref());
    let term = |k: u64| {
        let e = u32_index(2 * k);
        (
            Integer::from((&n_abs).pow(e)),
            Integer::from((&d).pow(e)) * factorial(2 * k),
        )
    };
    let lx = 2.0 * log2_abs(x);
    let k = truncation_index(ceil_abs(x).max(1), eps, 4, term, |k| {
        lx - (((2 * k + 1) * (2 * k + 2)) as f64).log2()
    });
    let (t, q) = hypergeometric_partial_sum(k, &|m| {
        (
            Integer::from(-&n2),
            Integer::from(&d2 * ((2 * m + 1) * (2 * m + 2))),
        )
    });
    let (tail_num, tail_den) = term(k);
    Ok(assemble(&t, &q, &tail_num, &tail_den, false, eps))
}

/// Encloses `arctan(1/m)` for an integer `m >= 2`.
pub fn enclose_arctan_recip(m: u32, eps: &Rational) -> Result<Enclosure> {
    check_eps(eps)?;
    if m < 2 {
        return Err(Error::Domain(format!("arctan(1/{m}) series needs m >= 2")));
    }
    let m = Integer::from(m);
    let m2 = Integer::from(m.square_ref());
    let term = |k: u64| {
        (
            Integer::from(1),
            Integer::from((&m).pow(u32_index(2 * k + 1))) * (2 * k + 1),
        )
    };
    let lm = 2.0 * f64::from(m.to_u32().unwrap_or(u32::MAX)).log2();
    let k = truncation_index(1, eps, 4, term, |_| -lm);
    let (t, q) = hypergeometric_partial_sum(k, &|j| {
        (
            Integer::from(-(2 * j as i64 + 1)),
            Integer::from(&m2 * (2 * j + 3)),
        )
    });
    let (tail_num, tail_den) = term(k);
    Ok(assemble(
        &t,
        &Integer::from(&q * &m),
        &tail_num,
        &tail_den,
        false,
        eps,
    ))
}

/// Encloses `pi = 16 arctan(1/5) - 4 arctan(1/239)`.
pub fn enclose_pi(eps: &Rational) -> Result<Enclosure> {
    check_eps(eps)?;
    let part_eps = Rational::from(eps / 64u32);
    let a = enclose_arctan_recip(5, &part_eps)?;
    let b = enclose_arctan_recip(239, &part_eps)?;
    let pi = a
        .scale(&Rational::from(16))
        .sub(&b.scale(&Rational::from(4)));
    Ok(pi.round_outward(bits_for(eps, 16)))
}
