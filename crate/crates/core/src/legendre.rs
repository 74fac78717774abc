//! Legendre polynomials on `[-1, 1]` and shifted to `[0, r]`.
//!
//! The shifted family `P~_n(x) = P_n(2x/r - 1)` is built three ways (the
//! binomial-square sum followed by an affine substitution, the same sum
//! written directly on `[0, r]`, and Rodrigues' formula) so the routes can be
//! checked against one another exactly.

use std::cmp::Ordering;

use rug::ops::Pow;
use rug::{Integer, Rational};

use crate::bigmath::{binomial, check_eps, factorial, Enclosure};
use crate::error::{Error, Result};
use crate::foperator::{exp_integral_exact, LinearFormExp};
use crate::poly::{IntPoly, RatPoly};

fn positive(r: &Rational) -> Result<()> {
    if r.cmp0() != Ordering::Greater {
        return Err(Error::Domain(format!(
            "interval end r must be positive, got {r}"
        )));
    }
    Ok(())
}

fn linear(c0: Rational, c1: Rational) -> RatPoly {
    RatPoly::from_coeffs(vec![c0, c1])
}

fn power(base: &RatPoly, e: usize) -> RatPoly {
    (0..e).fold(RatPoly::one(), |acc, _| &acc * base)
}

/// `P_n(x) = 2^-n sum_l C(n,l)^2 (x-1)^(n-l) (x+1)^l`.
pub fn legendre_sum_formula(n: usize) -> RatPoly {
    let minus = linear(Rational::from(-1), Rational::from(1));
    let plus = linear(Rational::from(1), Rational::from(1));
    let mut total = RatPoly::zero();
    for l in 0..=n {
        let c = binomial(n as u64, l as u64).square();
        let term = &power(&minus, n - l) * &power(&plus, l);
        total = &total + &term.scale(&Rational::from(c));
    }
    total.scale(&Rational::from((1, Integer::from(1) << n as u32)))
}

/// `r^-n sum_l C(n,l)^2 x^l (x - r)^(n-l)`, checked against
/// `P_n(2x/r - 1)`. A disagreement is reported as [`Error::Defect`].
pub fn shifted_legendre(n: usize, r: &Rational) -> Result<RatPoly> {
    positive(r)?;
    let x = RatPoly::x();
    let x_minus_r = linear(Rational::from(-r), Rational::from(1));
    let mut total = RatPoly::zero();
    for l in 0..=n {
        let c = binomial(n as u64, l as u64).square();
        let term = &power(&x, l) * &power(&x_minus_r, n - l);
        total = &total + &term.scale(&Rational::from(c));
    }
    let direct = total.scale(&Rational::from(r.pow(-(n as i32))));
    let substituted =
        legendre_sum_formula(n).affine_substitute(&(2 / r.clone()), &Rational::from(-1));
    if direct != substituted {
        return Err(Error::Defect(format!(
            "shifted Legendre forms disagree at n = {n}, r = {r}"
        )));
    }
    Ok(direct)
}

/// Rodrigues' formula on `[0, r]`: `(1/(n! r^n)) d^n/dx^n (x^n (x - r)^n)`.
pub fn rodrigues_shifted(n: usize, r: &Rational) -> Result<RatPoly> {
    positive(r)?;
    let x = RatPoly::x();
    let x_minus_r = linear(Rational::from(-r), Rational::from(1));
    let f = &power(&x, n) * &power(&x_minus_r, n);
    let k = Rational::from(r.pow(n as i32)) * factorial(n as u64);
    Ok(f.nth_derivative(n).scale(&Rational::from(k.recip_ref())))
}

/// `r^n P~_n(x)`, which has integer coefficients for integer `r`.
pub fn scaled_integer_legendre(n: usize, r: &Integer) -> Result<IntPoly> {
    let rq = Rational::from(r);
    let p = shifted_legendre(n, &rq)?;
    p.scale(&rq.pow(n as i32)).to_integer().ok_or_else(|| {
        Error::Defect(format!(
            "r^n P~_n has a non-integer coefficient (n = {n}, r = {r})"
        ))
    })
}

/// `⟨f, g⟩ = ∫_0^r f(x) g(x) dx`.
pub fn inner_product(f: &RatPoly, g: &RatPoly, r: &Rational) -> Result<Rational> {
    positive(r)?;
    Ok((f * g).integrate(&Rational::new(), r))
}

/// A shifted Legendre polynomial of degree `n` on `[0, r]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LegendreBasis {
    n: usize,
    r: Rational,
    representation: RatPoly,
}

impl LegendreBasis {
    pub fn new(n: usize, r: Rational) -> Result<Self> {
        let representation = shifted_legendre(n, &r)?;
        debug_assert_eq!(representation.degree(), Some(n));
        Ok(LegendreBasis {
            n,
            r,
            representation,
        })
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    pub fn r(&self) -> &Rational {
        &self.r
    }

    pub fn poly(&self) -> &RatPoly {
        &self.representation
    }

    /// Squared norm `r / (2n + 1)`.
    pub fn squared_norm(&self) -> Rational {
        Rational::from(&self.r / Integer::from(2 * self.n + 1))
    }
}

/// Exact form of `q r^n ∫_0^r P~_n(x) e^x dx` as `u e^r + v`.
pub fn coefficient_form(n: usize, r: &Integer, q: &Integer) -> Result<LinearFormExp> {
    if *r < 1 || *q < 1 {
        return Err(Error::Domain(format!(
            "r and q must be positive, got {r}, {q}"
        )));
    }
    let f = scaled_integer_legendre(n, r)?.to_rational();
    let form = exp_integral_exact(&f, &Rational::from(r));
    Ok(LinearFormExp {
        u: form.u * q,
        v: form.v * q,
        c: form.c,
    })
}

/// Encloses `q r^n ∫_0^r P~_n(x) e^x dx` with width at most `eps`.
pub fn coefficient_enclosure(
    n: usize,
    r: &Integer,
    q: &Integer,
    eps: &Rational,
) -> Result<Enclosure> {
    check_eps(eps)?;
    coefficient_form(n, r, q)?.enclose(eps)
}

/// Sign of a coefficient as far as an enclosure can tell.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CoefficientSign {
    Positive,
    Negative,
    /// The enclosure contains zero at this precision.
    Indeterminate,
}

impl CoefficientSign {
    pub fn of(e: &Enclosure) -> Self {
        if e.is_positive() {
            CoefficientSign::Positive
        } else if e.is_negative() {
            CoefficientSign::Negative
        } else {
            CoefficientSign::Indeterminate
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            CoefficientSign::Positive => "positive",
            CoefficientSign::Negative => "negative",
            CoefficientSign::Indeterminate => "indeterminate",
        }
    }
}

/// Cauchy-Schwarz bound `2 q r^(2n+1) / (n! (2n+1))` on the absolute value
/// of [`coefficient_enclosure`]. The truncated-exponential estimate behind
/// it needs `x/(n+1) <= 1/2` on `[0, r]`, so `n + 1 >= 2r` is required.
pub fn cbs_bound(n: usize, r: &Integer, q: &Integer) -> Result<Rational> {
    if *r < 1 || *q < 1 {
        return Err(Error::Domain(format!(
            "r and q must be positive, got {r}, {q}"
        )));
    }
    if n + 1 < Integer::from(r * 2u32) {
        return Err(Error::Domain(format!(
            "bound requires n + 1 >= 2r, got n = {n}, r = {r}"
        )));
    }
    let num = Integer::from(q * 2u32) * Integer::from(r.pow((2 * n + 1) as u32));
    let den = factorial(n as u64) * (2 * n as u64 + 1);
    Ok(Rational::from((num, den)))
}
