//! Dense univariate polynomials over arbitrary-precision integers and
//! rationals.
//!
//! Coefficients are stored low-to-high (`coeffs[k]` multiplies `x^k`) with no
//! trailing zeros; the zero polynomial has no coefficients and no degree.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use rug::{Integer, Rational};

use crate::bigmath::{binomial, factorial, Enclosure};
use crate::error::{Error, Result};

/// Ring operations a polynomial coefficient needs.
pub trait Coefficient: Clone + PartialEq + fmt::Debug + fmt::Display {
    fn zero() -> Self;
    fn from_i64(v: i64) -> Self;
    fn is_zero(&self) -> bool;
    fn is_negative(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    fn mul_u64(&self, k: u64) -> Self;
    fn to_rational(&self) -> Rational;
}

impl Coefficient for Integer {
    fn zero() -> Self {
        Integer::new()
    }
    fn from_i64(v: i64) -> Self {
        Integer::from(v)
    }
    fn is_zero(&self) -> bool {
        *self == 0
    }
    fn is_negative(&self) -> bool {
        *self < 0
    }
    fn add(&self, other: &Self) -> Self {
        Integer::from(self + other)
    }
    fn sub(&self, other: &Self) -> Self {
        Integer::from(self - other)
    }
    fn mul(&self, other: &Self) -> Self {
        Integer::from(self * other)
    }
    fn neg(&self) -> Self {
        Integer::from(-self)
    }
    fn mul_u64(&self, k: u64) -> Self {
        Integer::from(self * k)
    }
    fn to_rational(&self) -> Rational {
        Rational::from(self)
    }
}

impl Coefficient for Rational {
    fn zero() -> Self {
        Rational::new()
    }
    fn from_i64(v: i64) -> Self {
        Rational::from(v)
    }
    fn is_zero(&self) -> bool {
        *self == 0
    }
    fn is_negative(&self) -> bool {
        *self < 0
    }
    fn add(&self, other: &Self) -> Self {
        Rational::from(self + other)
    }
    fn sub(&self, other: &Self) -> Self {
        Rational::from(self - other)
    }
    fn mul(&self, other: &Self) -> Self {
        Rational::from(self * other)
    }
    fn neg(&self) -> Self {
        Rational::from(-self)
    }
    fn mul_u64(&self, k: u64) -> Self {
        Rational::from(self * Integer::from(k))
    }
    fn to_rational(&self) -> Rational {
        self.clone()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Poly<C> {
    coeffs: Vec<C>,
}

pub type IntPoly = Poly<Integer>;
pub type RatPoly = Poly<Rational>;

impl<C: Coefficient> Poly<C> {
    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn constant(c: C) -> Self {
        Self::from_coeffs(vec![c])
    }

    pub fn one() -> Self {
        Self::constant(C::from_i64(1))
    }

    /// `x`
    pub fn x() -> Self {
        Self::monomial(C::from_i64(1), 1)
    }

    pub fn monomial(c: C, k: usize) -> Self {
        let mut coeffs = vec![C::zero(); k + 1];
        coeffs[k] = c;
        Self::from_coeffs(coeffs)
    }

    /// Builds a polynomial from low-to-high coefficients, dropping trailing
    /// zeros.
    pub fn from_coeffs(mut coeffs: Vec<C>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| C::from_i64(c)).collect())
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<C> {
        self.coeffs
    }

    /// Coefficient of `x^k` (zero beyond the degree).
    pub fn coeff(&self, k: usize) -> C {
        self.coeffs.get(k).cloned().unwrap_or_else(C::zero)
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn scale(&self, k: &C) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|c| c.mul(k)).collect())
    }

    pub fn derivative(&self) -> Self {
        Self::from_coeffs(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c.mul_u64(k as u64))
                .collect(),
        )
    }

    /// The `n`-th derivative, computed directly with falling factorials.
    pub fn nth_derivative(&self, n: usize) -> Self {
        if n == 0 {
            return self.clone();
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(n)
            .map(|(m, c)| {
                let mut v = c.clone();
                for j in (m - n + 1)..=m {
                    v = v.mul_u64(j as u64);
                }
                v
            })
            .collect();
        Self::from_coeffs(coeffs)
    }

    pub fn to_rational(&self) -> RatPoly {
        Poly {
            coeffs: self.coeffs.iter().map(Coefficient::to_rational).collect(),
        }
    }

    /// `f(-x)`
    pub fn reflect(&self) -> Self {
        Self::from_coeffs(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(k, c)| if k % 2 == 1 { c.neg() } else { c.clone() })
                .collect(),
        )
    }

    /// Sum of absolute values of the coefficients.
    pub fn l1_norm(&self) -> Rational {
        self.coeffs.iter().fold(Rational::new(), |acc, c| {
            acc + Rational::from(c.to_rational().abs_ref())
        })
    }
}

impl IntPoly {
    /// `f^(n) / n!`, which has integer coefficients for every integer `f`:
    /// the image of `x^m` is `C(m, n) x^(m-n)`.
    ///
    /// Returns [`Error::Defect`] if some coefficient of `f^(n)` is not
    /// divisible by `n!`, which cannot happen.
    pub fn nth_derivative_div_factorial(&self, n: usize) -> Result<IntPoly> {
        let d = self.nth_derivative(n);
        let nf = factorial(n as u64);
        let mut out = Vec::with_capacity(d.coeffs.len());
        for (k, c) in d.coeffs.into_iter().enumerate() {
            let (q, r) = c.div_rem(nf.clone());
            if r != 0 {
                return Err(Error::Defect(format!(
                    "coefficient {k} of the {n}-th derivative is not divisible by {n}!"
                )));
            }
            out.push(q);
        }
        Ok(IntPoly::from_coeffs(out))
    }

    pub fn eval_integer(&self, x: &Integer) -> Integer {
        let mut acc = Integer::new();
        for c in self.coeffs.iter().rev() {
            acc *= x;
            acc += c;
        }
        acc
    }
}

impl RatPoly {
    /// Converts to an integer polynomial when every coefficient is integral.
    pub fn to_integer(&self) -> Option<IntPoly> {
        self.coeffs
            .iter()
            .map(|c| c.is_integer().then(|| c.numer().clone()))
            .collect::<Option<Vec<_>>>()
            .map(IntPoly::from_coeffs)
    }

    /// Horner evaluation at a rational point.
    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::new();
        for c in self.coeffs.iter().rev() {
            acc *= x;
            acc += c;
        }
        acc
    }

    /// Horner evaluation over an enclosure.
    pub fn eval_enclosure(&self, x: &Enclosure) -> Enclosure {
        let mut acc = Enclosure::point(Rational::new());
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(x).add_rational(c);
        }
        acc
    }

    /// `f(alpha * x + beta)`, expanded exactly.
    pub fn affine_substitute(&self, alpha: &Rational, beta: &Rational) -> RatPoly {
        let inner = RatPoly::from_coeffs(vec![beta.clone(), alpha.clone()]);
        let mut acc = RatPoly::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * &inner) + &RatPoly::constant(c.clone());
        }
        acc
    }

    /// Antiderivative with zero constant term.
    pub fn antiderivative(&self) -> RatPoly {
        let mut coeffs = Vec::with_capacity(self.coeffs.len() + 1);
        coeffs.push(Rational::new());
        for (k, c) in self.coeffs.iter().enumerate() {
            coeffs.push(Rational::from(c / Integer::from(k + 1)));
        }
        RatPoly::from_coeffs(coeffs)
    }

    /// Exact definite integral over `[lo, hi]`.
    pub fn integrate(&self, lo: &Rational, hi: &Rational) -> Rational {
        let anti = self.antiderivative();
        anti.eval(hi) - anti.eval(lo)
    }
}

/// `x^n (a - b x)^n`, expanded as `sum_l C(n,l) a^(n-l) (-b)^l x^(n+l)`.
pub fn niven_poly(a: &Integer, b: &Integer, n: usize) -> IntPoly {
    let mut coeffs = vec![Integer::new(); 2 * n + 1];
    let neg_b = Integer::from(-b);
    for l in 0..=n {
        let term = binomial(n as u64, l as u64)
            * Integer::from(rug::ops::Pow::pow(a, (n - l) as u32))
            * Integer::from(rug::ops::Pow::pow(&neg_b, l as u32));
        coeffs[n + l] = term;
    }
    IntPoly::from_coeffs(coeffs)
}

fn zip_with<C: Coefficient>(a: &Poly<C>, b: &Poly<C>, op: impl Fn(&C, &C) -> C) -> Poly<C> {
    let len = a.coeffs.len().max(b.coeffs.len());
    let zero = C::zero();
    Poly::from_coeffs(
        (0..len)
            .map(|k| {
                op(
                    a.coeffs.get(k).unwrap_or(&zero),
                    b.coeffs.get(k).unwrap_or(&zero),
                )
            })
            .collect(),
    )
}

impl<C: Coefficient> Add for &Poly<C> {
    type Output = Poly<C>;
    fn add(self, rhs: &Poly<C>) -> Poly<C> {
        zip_with(self, rhs, C::add)
    }
}

impl<C: Coefficient> Sub for &Poly<C> {
    type Output = Poly<C>;
    fn sub(self, rhs: &Poly<C>) -> Poly<C> {
        zip_with(self, rhs, C::sub)
    }
}

impl<C: Coefficient> Mul for &Poly<C> {
    type Output = Poly<C>;
    fn mul(self, rhs: &Poly<C>) -> Poly<C> {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![C::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].add(&a.mul(b));
            }
        }
        Poly::from_coeffs(out)
    }
}

impl<C: Coefficient> Neg for &Poly<C> {
    type Output = Poly<C>;
    fn neg(self) -> Poly<C> {
        Poly::from_coeffs(self.coeffs.iter().map(C::neg).collect())
    }
}

impl<C: Coefficient> fmt::Display for Poly<C> {
    /// Highest degree first, e.g. `6x^2 - 6x + 1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let negative = c.is_negative();
            let mag = if negative { c.neg() } else { c.clone() };
            if first {
                if negative {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if negative { '-' } else { '+' })?;
            }
            first = false;
            let unit = mag == C::from_i64(1);
            let body = match k {
                0 => mag.to_string(),
                1 if unit => "x".to_string(),
                1 => format!("{mag}x"),
                _ if unit => format!("x^{k}"),
                _ => format!("{mag}x^{k}"),
            };
            let body = if body.contains('/') && k > 0 {
                format!(
                    "({})x{}",
                    mag,
                    if k > 1 {
                        format!("^{k}")
                    } else {
                        String::new()
                    }
                )
            } else {
                body
            };
            write!(f, "{body}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::from((n, d))
    }

    fn rp(c: &[i64]) -> RatPoly {
        RatPoly::from_i64s(c)
    }

    fn ip(c: &[i64]) -> IntPoly {
        IntPoly::from_i64s(c)
    }

    #[test]
    fn normalization_and_degree() {
        assert_eq!(rp(&[0, 0]).degree(), None);
        assert!(rp(&[0, 0]).is_zero());
        assert_eq!(rp(&[1, 2, 0, 0]).degree(), Some(1));
        assert_eq!(rp(&[1, 2, 0, 0]).coeffs().len(), 2);
    }

    #[test]
    fn derivative_examples() {
        assert!(rp(&[7]).derivative().is_zero());
        assert_eq!(rp(&[0, 1, -1]).derivative(), rp(&[1, -2]));
        // x^2 (1-x)^2 = x^2 - 2x^3 + x^4
        assert_eq!(rp(&[0, 0, 1, -2, 1]).derivative(), rp(&[0, 2, -6, 4]));
    }

    #[test]
    fn nth_derivative_matches_repeated_derivative() {
        let f = ip(&[3, -1, 4, 1, -5, 9, 2, -6]);
        let mut g = f.clone();
        for n in 0..10 {
            assert_eq!(f.nth_derivative(n), g);
            g = g.derivative();
        }
    }

    #[test]
    fn derivative_over_factorial_examples() {
        for m in 0..12usize {
            let f = IntPoly::monomial(Integer::from(1), m);
            for n in 0..=m + 1 {
                let expected = if n <= m {
                    IntPoly::monomial(binomial(m as u64, n as u64), m - n)
                } else {
                    IntPoly::zero()
                };
                assert_eq!(f.nth_derivative_div_factorial(n).unwrap(), expected);
            }
        }
        let f = ip(&[0, 0, 1, -2, 1]);
        assert_eq!(f.nth_derivative_div_factorial(0).unwrap(), f);
        assert_eq!(f.nth_derivative_div_factorial(2).unwrap(), ip(&[1, -6, 6]));
    }

    #[test]
    fn affine_substitution_examples() {
        let r = q(3, 1);
        let two_over_r = 2 / r.clone();
        let sub = rp(&[0, 1]).affine_substitute(&two_over_r, &q(-1, 1));
        assert_eq!(sub, RatPoly::from_coeffs(vec![q(-1, 1), q(2, 3)]));
        let f = rp(&[5, -3, 0, 2]);
        assert_eq!(f.affine_substitute(&q(1, 1), &q(0, 1)), f);
        assert_eq!(
            rp(&[0, 0, 1]).affine_substitute(&q(2, 1), &q(-1, 1)),
            rp(&[1, -4, 4])
        );
    }

    #[test]
    fn niven_poly_examples() {
        let i = |v: i64| Integer::from(v);
        assert_eq!(niven_poly(&i(5), &i(3), 0), ip(&[1]));
        assert_eq!(niven_poly(&i(1), &i(1), 2), ip(&[0, 0, 1, -2, 1]));
        assert_eq!(niven_poly(&i(22), &i(7), 1), ip(&[0, 22, -7]));
        // direct product oracle
        let base = ip(&[22, -7]);
        let mut direct = ip(&[1]);
        for _ in 0..5 {
            direct = &(&direct * &base) * &ip(&[0, 1]);
        }
        assert_eq!(niven_poly(&i(22), &i(7), 5), direct);
    }

    #[test]
    fn evaluation_examples() {
        let f = rp(&[4, 5, 6]);
        assert_eq!(f.eval(&q(0, 1)), 4);
        let r = q(7, 2);
        let g = RatPoly::from_coeffs(vec![Rational::from(-&r), q(2, 1)]);
        assert_eq!(g.eval(&Rational::from(&r / 2u32)), 0);
        // F = x^4 - 6x^3 + 19x^2 - 38x + 38 at 0 and 1
        let big_f = rp(&[38, -38, 19, -6, 1]);
        assert_eq!(big_f.eval(&q(0, 1)), 38);
        assert_eq!(big_f.eval(&q(1, 1)), 14);
        let e = Enclosure::new(q(1, 2), q(3, 4)).unwrap();
        let y = big_f.eval_enclosure(&e);
        for k in 0..=8 {
            let x = q(1, 2) + Rational::from((k, 32));
            assert!(y.contains(&big_f.eval(&x)));
        }
    }

    #[test]
    fn integration_examples() {
        let r = q(9, 4);
        assert_eq!(rp(&[1]).integrate(&q(0, 1), &r), r);
        assert_eq!(rp(&[0, 0, 1]).integrate(&q(-1, 1), &q(1, 1)), q(2, 3));
        assert_eq!(rp(&[0, 1, -1]).integrate(&q(0, 1), &q(1, 1)), q(1, 6));
    }

    #[test]
    fn display_is_readable() {
        assert_eq!(ip(&[1, -6, 6]).to_string(), "6x^2 - 6x + 1");
        assert_eq!(ip(&[0, -1]).to_string(), "-x");
        assert_eq!(ip(&[]).to_string(), "0");
        assert_eq!(
            RatPoly::from_coeffs(vec![q(-1, 1), q(2, 3)]).to_string(),
            "(2/3)x - 1"
        );
    }
}
