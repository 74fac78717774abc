//! Upper bounds from the irrationality arguments and the solvers that find
//! the first `n` at which each bound drops below 1.

use rug::ops::Pow;
use rug::{Integer, Rational};

use crate::bigmath::{enclose_exp, factorial, ten_to_minus};
use crate::error::{Error, Result};
use crate::search::first_true;

pub const DEFAULT_SCAN_CAP: u64 = 1_000_000;

fn require_positive(name: &str, v: &Integer) -> Result<()> {
    if *v < 1 {
        return Err(Error::Domain(format!(
            "{name} must be a positive integer, got {v}"
        )));
    }
    Ok(())
}

fn small_exponent(e: u64) -> u32 {
    u32::try_from(e).expect("exponent exceeds u32 range")
}

/// Result of the geometric-series attack on `e^r = p/q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NaiveBound {
    pub bound: Rational,
    /// `bound >= 1`: the scaled remainder is not forced below 1.
    pub fails: bool,
}

/// `r^(q+1) / (q + 1 - r)`, the geometric bound on the scaled Taylor
/// remainder of `e^r`. Requires `q + 1 > r`.
pub fn naive_er_bound(r: &Integer, q: &Integer) -> Result<NaiveBound> {
    require_positive("r", r)?;
    require_positive("q", q)?;
    let gap = Integer::from(q + 1u32) - r;
    if gap <= 0 {
        return Err(Error::Domain(format!(
            "geometric comparison diverges: need q + 1 > r, got q = {q}, r = {r}"
        )));
    }
    let exp = q
        .to_u32()
        .and_then(|v| v.checked_add(1))
        .ok_or_else(|| Error::Domain(format!("q = {q} is too large")))?;
    let bound = Rational::from((Integer::from(r.pow(exp)), gap));
    let fails = bound >= 1;
    Ok(NaiveBound { bound, fails })
}

/// Rational upper bound on `e^r` used by the area bound: the top of a
/// `10^-6` enclosure.
pub fn exp_upper(r: &Integer) -> Rational {
    enclose_exp(&Rational::from(r), &ten_to_minus(6))
        .expect("positive precision")
        .hi()
        .clone()
}

/// `q r^(2n+1) E / n!` with `E >= e^r`: the interval length times a termwise
/// bound on `x^n (r-x)^n e^x`, scaled by `q/n!`.
pub fn crude_bound_exp(r: &Integer, q: &Integer, n: u64) -> Result<Rational> {
    require_positive("r", r)?;
    require_positive("q", q)?;
    let (num, den) = crude_exp_parts(r, q, n, &exp_upper(r));
    Ok(Rational::from((num, den)))
}

fn crude_exp_parts(r: &Integer, q: &Integer, n: u64, e_upper: &Rational) -> (Integer, Integer) {
    let num = Integer::from(r.pow(small_exponent(2 * n + 1))) * q * e_upper.numer();
    let den = factorial(n) * e_upper.denom();
    (num, den)
}

/// `a^(2n+1) / (b n!)`, the bound on `(b^n/n!) ∫_0^{a/b} x^n (a-bx)^n sin x dx`.
pub fn pi_bound(a: &Integer, b: &Integer, n: u64) -> Result<Rational> {
    require_positive("a", a)?;
    require_positive("b", b)?;
    let (num, den) = pi_parts(a, b, n);
    Ok(Rational::from((num, den)))
}

fn pi_parts(a: &Integer, b: &Integer, n: u64) -> (Integer, Integer) {
    (
        Integer::from(a.pow(small_exponent(2 * n + 1))),
        factorial(n) * b,
    )
}

fn cbs_parts(r: &Integer, q: &Integer, n: u64) -> (Integer, Integer) {
    let num = Integer::from(r.pow(small_exponent(2 * n + 1))) * q * 2u32;
    let den = factorial(n) * (2 * n + 1);
    (num, den)
}

/// A positive sequence `value(n)` whose successive ratio is non-increasing
/// in `n`: it rises while `grows(n)` holds and falls strictly afterwards.
struct BoundFamily<V, G> {
    what: &'static str,
    start: u64,
    value: V,
    grows: G,
}

impl<V, G> BoundFamily<V, G>
where
    V: Fn(u64) -> (Integer, Integer),
    G: Fn(u64) -> bool,
{
    fn below_one(&self, n: u64) -> bool {
        let (num, den) = (self.value)(n);
        num < den
    }

    /// First `n >= start` with `value(n) < 1`.
    ///
    /// While the sequence rises every value is at least `value(start)`, so
    /// when that is `>= 1` the answer lies on the strictly decreasing tail
    /// past the peak, where the predicate is monotone and a galloping search
    /// finds the first crossing exactly.
    fn first_below_one(&self, cap: u64) -> Result<u64> {
        let overflow = Error::ResourceCap {
            cap,
            what: self.what,
        };
        if self.start > cap {
            return Err(overflow);
        }
        if self.below_one(self.start) {
            return Ok(self.start);
        }
        let peak = first_true(self.start, cap, |m| !(self.grows)(m)).ok_or(overflow.clone())?;
        first_true(peak, cap, |n| self.below_one(n)).ok_or(overflow)
    }
}

/// Smallest `n` with `crude_bound_exp(r, q, n) < 1`.
pub fn minimal_n_exp(r: &Integer, q: &Integer, cap: u64) -> Result<u64> {
    require_positive("r", r)?;
    require_positive("q", q)?;
    let e_upper = exp_upper(r);
    let r2 = Integer::from(r.square_ref());
    BoundFamily {
        what: "minimal n (e^r area bound)",
        start: 0,
        value: |n| crude_exp_parts(r, q, n, &e_upper),
        grows: |n| r2 > n,
    }
    .first_below_one(cap)
}

/// Smallest `n` with `a^(2n+1) / (b n!) < 1`.
pub fn minimal_n_pi(a: &Integer, b: &Integer, cap: u64) -> Result<u64> {
    require_positive("a", a)?;
    require_positive("b", b)?;
    let a2 = Integer::from(a.square_ref());
    BoundFamily {
        what: "minimal n (pi area bound)",
        start: 0,
        value: |n| pi_parts(a, b, n),
        grows: |n| a2 > n,
    }
    .first_below_one(cap)
}

/// Smallest `n` with `n + 1 >= 2r` and Cauchy-Schwarz bound below 1.
pub fn minimal_n_cbs(r: &Integer, q: &Integer, cap: u64) -> Result<u64> {
    require_positive("r", r)?;
    require_positive("q", q)?;
    let start = (Integer::from(r * 2u32) - 1u32)
        .to_u64()
        .ok_or_else(|| Error::Domain(format!("r = {r} is too large")))?;
    let r2 = Integer::from(r.square_ref());
    BoundFamily {
        what: "minimal n (Cauchy-Schwarz bound)",
        start,
        value: |n| cbs_parts(r, q, n),
        // r^2 (2n+1) >= (n+1)(2n+3)
        grows: |n| Integer::from(&r2 * (2 * n + 1)) >= Integer::from(n + 1) * (2 * n + 3),
    }
    .first_below_one(cap)
}
