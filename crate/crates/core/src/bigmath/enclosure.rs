use std::cmp::Ordering;
use std::fmt;

use rug::ops::{DivRounding, Pow};
use rug::{Integer, Rational};

use crate::error::{Error, Result};

/// A closed interval `[lo, hi]` with rational endpoints that is certified to
/// contain some real number.
///
/// Every arithmetic operation returns an enclosure of the exact image set, so
/// a chain of operations on enclosures of `x` and `y` encloses the exact
/// result of the same chain on `x` and `y`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Enclosure {
    lo: Rational,
    hi: Rational,
}

impl Enclosure {
    pub fn new(lo: Rational, hi: Rational) -> Result<Self> {
        if lo > hi {
            return Err(Error::Domain(format!("empty enclosure [{lo}, {hi}]")));
        }
        Ok(Enclosure { lo, hi })
    }

    /// Builds `[min(a, b), max(a, b)]`.
    pub fn spanning(a: Rational, b: Rational) -> Self {
        if a <= b {
            Enclosure { lo: a, hi: b }
        } else {
            Enclosure { lo: b, hi: a }
        }
    }

    pub fn point(x: Rational) -> Self {
        Enclosure {
            lo: x.clone(),
            hi: x,
        }
    }

    pub fn lo(&self) -> &Rational {
        &self.lo
    }

    pub fn hi(&self) -> &Rational {
        &self.hi
    }

    pub fn into_bounds(self) -> (Rational, Rational) {
        (self.lo, self.hi)
    }

    pub fn width(&self) -> Rational {
        Rational::from(&self.hi - &self.lo)
    }

    pub fn midpoint(&self) -> Rational {
        Rational::from(&self.lo + &self.hi) / 2u32
    }

    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }

    pub fn contains(&self, x: &Rational) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    pub fn contains_zero(&self) -> bool {
        self.lo.cmp0() != Ordering::Greater && self.hi.cmp0() != Ordering::Less
    }

    pub fn excludes_zero(&self) -> bool {
        !self.contains_zero()
    }

    pub fn is_positive(&self) -> bool {
        self.lo.cmp0() == Ordering::Greater
    }

    pub fn is_negative(&self) -> bool {
        self.hi.cmp0() == Ordering::Less
    }

    pub fn intersects(&self, other: &Enclosure) -> bool {
        self.lo <= other.hi && other.lo <= self.hi
    }

    pub fn is_subset_of(&self, other: &Enclosure) -> bool {
        other.lo <= self.lo && self.hi <= other.hi
    }

    /// True when the whole enclosure lies in the open interval `(lo, hi)`.
    pub fn lies_strictly_within(&self, lo: &Rational, hi: &Rational) -> bool {
        lo < &self.lo && &self.hi < hi
    }

    pub fn hull(&self, other: &Enclosure) -> Enclosure {
        Enclosure {
            lo: self.lo.clone().min(other.lo.clone()),
            hi: self.hi.clone().max(other.hi.clone()),
        }
    }

    pub fn neg(&self) -> Enclosure {
        Enclosure {
            lo: Rational::from(-&self.hi),
            hi: Rational::from(-&self.lo),
        }
    }

    pub fn add(&self, other: &Enclosure) -> Enclosure {
        Enclosure {
            lo: Rational::from(&self.lo + &other.lo),
            hi: Rational::from(&self.hi + &other.hi),
        }
    }

    pub fn sub(&self, other: &Enclosure) -> Enclosure {
        Enclosure {
            lo: Rational::from(&self.lo - &other.hi),
            hi: Rational::from(&self.hi - &other.lo),
        }
    }

    pub fn add_rational(&self, x: &Rational) -> Enclosure {
        Enclosure {
            lo: Rational::from(&self.lo + x),
            hi: Rational::from(&self.hi + x),
        }
    }

    pub fn mul(&self, other: &Enclosure) -> Enclosure {
        let products = [
            Rational::from(&self.lo * &other.lo),
            Rational::from(&self.lo * &other.hi),
            Rational::from(&self.hi * &other.lo),
            Rational::from(&self.hi * &other.hi),
        ];
        let mut lo = products[0].clone();
        let mut hi = products[0].clone();
        for p in &products[1..] {
            if *p < lo {
                lo = p.clone();
            }
            if *p > hi {
                hi = p.clone();
            }
        }
        Enclosure { lo, hi }
    }

    pub fn scale(&self, k: &Rational) -> Enclosure {
        Enclosure::spanning(Rational::from(&self.lo * k), Rational::from(&self.hi * k))
    }

    pub fn scale_int(&self, k: &Integer) -> Enclosure {
        Enclosure::spanning(Rational::from(&self.lo * k), Rational::from(&self.hi * k))
    }

    /// Integer power. Even powers of an enclosure straddling zero start at 0.
    pub fn pow(&self, e: u32) -> Enclosure {
        if e == 0 {
            return Enclosure::point(Rational::from(1));
        }
        let lo_p = Rational::from((&self.lo).pow(e as i32));
        let hi_p = Rational::from((&self.hi).pow(e as i32));
        if e % 2 == 1 {
            return Enclosure { lo: lo_p, hi: hi_p };
        }
        if self.lo.cmp0() != Ordering::Less {
            Enclosure { lo: lo_p, hi: hi_p }
        } else if self.hi.cmp0() != Ordering::Greater {
            Enclosure { lo: hi_p, hi: lo_p }
        } else {
            Enclosure {
                lo: Rational::new(),
                hi: lo_p.max(hi_p),
            }
        }
    }

    pub fn recip(&self) -> Result<Enclosure> {
        if self.contains_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Enclosure {
            lo: Rational::from(self.hi.recip_ref()),
            hi: Rational::from(self.lo.recip_ref()),
        })
    }

    pub fn abs(&self) -> Enclosure {
        if self.lo.cmp0() != Ordering::Less {
            self.clone()
        } else if self.hi.cmp0() != Ordering::Greater {
            self.neg()
        } else {
            Enclosure {
                lo: Rational::new(),
                hi: Rational::from(-&self.lo).max(self.hi.clone()),
            }
        }
    }

    /// Largest absolute value of any point in the enclosure.
    pub fn magnitude(&self) -> Rational {
        Rational::from(self.lo.abs_ref()).max(Rational::from(self.hi.abs_ref()))
    }

    /// Rounds the endpoints outward onto the grid `2^-bits`.
    pub fn round_outward(&self, bits: u32) -> Enclosure {
        let lo = floor_scaled(&self.lo, bits);
        let hi = ceil_scaled(&self.hi, bits);
        Enclosure {
            lo: dyadic(lo, bits),
            hi: dyadic(hi, bits),
        }
    }
}

impl fmt::Display for Enclosure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo, self.hi)
    }
}

/// `floor(x * 2^bits)`.
pub(crate) fn floor_scaled(x: &Rational, bits: u32) -> Integer {
    let n = Integer::from(x.numer() << bits);
    n.div_floor(x.denom())
}

/// `ceil(x * 2^bits)`.
pub(crate) fn ceil_scaled(x: &Rational, bits: u32) -> Integer {
    let n = Integer::from(x.numer() << bits);
    n.div_ceil(x.denom())
}

/// The rational `n / 2^bits`, built without a general gcd.
pub(crate) fn dyadic(mut n: Integer, bits: u32) -> Rational {
    if n == 0 {
        return Rational::new();
    }
    let shift = n.find_one(0).unwrap_or(0).min(bits);
    n >>= shift;
    let den = Integer::from(1) << (bits - shift);
    // SAFETY: den is a positive power of two and n is odd or den == 1.
    unsafe { Rational::from_canonical(n, den) }
}

/// Smallest `bits` with `2^-bits <= eps / factor`.
pub(crate) fn bits_for(eps: &Rational, factor: u32) -> u32 {
    let ratio = Integer::from(eps.denom() * factor).div_ceil(eps.numer().clone());
    let b = ratio.significant_bits();
    b.max(1)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::from((n, d))
    }

    fn enc(a: (i64, i64), b: (i64, i64)) -> Enclosure {
        Enclosure::new(q(a.0, a.1), q(b.0, b.1)).unwrap()
    }

    #[test]
    fn rejects_inverted_bounds() {
        assert!(Enclosure::new(q(1, 1), q(0, 1)).is_err());
    }

    #[test]
    fn multiplication_covers_sign_mixes() {
        let a = enc((-2, 1), (3, 1));
        let b = enc((-5, 1), (1, 1));
        let p = a.mul(&b);
        assert_eq!(p.lo(), &q(-15, 1));
        assert_eq!(p.hi(), &q(10, 1));
    }

    #[test]
    fn even_power_of_straddling_interval_starts_at_zero() {
        let a = enc((-3, 1), (2, 1));
        let p = a.pow(2);
        assert_eq!(p.lo(), &q(0, 1));
        assert_eq!(p.hi(), &q(9, 1));
        let n = enc((-3, 1), (-2, 1)).pow(2);
        assert_eq!(n, enc((4, 1), (9, 1)));
    }

    #[test]
    fn reciprocal_needs_nonzero() {
        assert_eq!(enc((-1, 1), (1, 1)).recip(), Err(Error::DivisionByZero));
        assert_eq!(enc((2, 1), (4, 1)).recip().unwrap(), enc((1, 4), (1, 2)));
    }

    #[test]
    fn outward_rounding_contains_original() {
        let a = enc((1, 3), (2, 3));
        let r = a.round_outward(10);
        assert!(a.is_subset_of(&r));
        assert!(r.width() <= Rational::from((1, 3)) + Rational::from((2, 1024)));
        assert_eq!(r.lo().denom(), &Integer::from(1024));
    }

    #[test]
    fn dyadic_is_reduced() {
        let d = dyadic(Integer::from(12), 4);
        assert_eq!(d, q(3, 4));
        assert_eq!(dyadic(Integer::from(-3), 0), q(-3, 1));
    }

    #[test]
    fn bits_for_meets_tolerance() {
        let eps = q(1, 1000);
        let b = bits_for(&eps, 8);
        let grid = Rational::from((1, Integer::from(1) << b));
        assert!(grid <= Rational::from(&eps / 8u32));
    }
}
