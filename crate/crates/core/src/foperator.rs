//! Alternating-derivative operators and the exact integral identities they
//! produce.
//!
//! For a polynomial `f` let `F = f - f' + f'' - ...`. Then `F + F' = f`, so
//! `∫_0^c f(x) e^x dx = F(c) e^c - F(0)`. With `F = f - f'' + f'''' - ...`
//! instead, `F + F'' = f` and `G = F' sin x - F cos x` is an antiderivative
//! of `f(x) sin x`, giving
//! `∫_0^c f(x) sin x dx = F'(c) sin c - F(c) cos c + F(0)`.
//! At `c = pi` this collapses to `F(pi) + F(0)`.

use std::cmp::Ordering;

use rug::ops::Pow;
use rug::{Integer, Rational};

use crate::bigmath::{
    bits_for, check_eps, enclose_cos, enclose_exp, enclose_sin, factorial,
    hypergeometric_partial_sum, Enclosure,
};
use crate::error::{Error, Result};
use crate::poly::{niven_poly, Coefficient, Poly, RatPoly};
use crate::search::first_true;

/// `f - f' + f'' - f''' + ...`
pub fn f_exp<C: Coefficient>(f: &Poly<C>) -> Poly<C> {
    let mut total = Poly::zero();
    let mut term = f.clone();
    let mut negate = false;
    while !term.is_zero() {
        total = if negate {
            &total - &term
        } else {
            &total + &term
        };
        term = term.derivative();
        negate = !negate;
    }
    total
}

/// `f - f'' + f'''' - ...`
pub fn f_sin<C: Coefficient>(f: &Poly<C>) -> Poly<C> {
    let mut total = Poly::zero();
    let mut term = f.clone();
    let mut negate = false;
    while !term.is_zero() {
        total = if negate {
            &total - &term
        } else {
            &total + &term
        };
        term = term.derivative().derivative();
        negate = !negate;
    }
    total
}

/// The real number `u e^c + v`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearFormExp {
    pub u: Rational,
    pub v: Rational,
    pub c: Rational,
}

impl LinearFormExp {
    /// Encloses the form given an enclosure of `e^c`.
    pub fn enclose_with(&self, exp_c: &Enclosure) -> Enclosure {
        exp_c.scale(&self.u).add_rational(&self.v)
    }

    /// Encloses the form with width at most `eps`.
    pub fn enclose(&self, eps: &Rational) -> Result<Enclosure> {
        check_eps(eps)?;
        let weight = Rational::from(self.u.abs_ref()) + 1u32;
        let exp_c = enclose_exp(&self.c, &Rational::from(eps / &weight))?;
        Ok(self.enclose_with(&exp_c))
    }
}

/// The real number `s sin c + t cos c + w`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearFormTrig {
    pub s: Rational,
    pub t: Rational,
    pub w: Rational,
    pub c: Rational,
}

impl LinearFormTrig {
    pub fn enclose_with(&self, sin_c: &Enclosure, cos_c: &Enclosure) -> Enclosure {
        sin_c
            .scale(&self.s)
            .add(&cos_c.scale(&self.t))
            .add_rational(&self.w)
    }

    /// Encloses the form with width at most `eps`. The precision asked of
    /// `sin c` and `cos c` scales with the size of `s` and `t`.
    pub fn enclose(&self, eps: &Rational) -> Result<Enclosure> {
        check_eps(eps)?;
        let weight =
            (Rational::from(self.s.abs_ref()) + Rational::from(self.t.abs_ref()) + 1u32) * 2u32;
        let inner = Rational::from(eps / &weight);
        let sin_c = enclose_sin(&self.c, &inner)?;
        let cos_c = enclose_cos(&self.c, &inner)?;
        Ok(self.enclose_with(&sin_c, &cos_c))
    }

    pub fn scale(&self, k: &Rational) -> LinearFormTrig {
        LinearFormTrig {
            s: Rational::from(&self.s * k),
            t: Rational::from(&self.t * k),
            w: Rational::from(&self.w * k),
            c: self.c.clone(),
        }
    }
}

/// `∫_0^c f(x) e^x dx = F(c) e^c - F(0)` with `F = f_exp(f)`.
pub fn exp_integral_exact(f: &RatPoly, c: &Rational) -> LinearFormExp {
    let big_f = f_exp(f);
    LinearFormExp {
        u: big_f.eval(c),
        v: -big_f.eval(&Rational::new()),
        c: c.clone(),
    }
}

/// `∫_0^c f(x) sin x dx = F'(c) sin c - F(c) cos c + F(0)` with
/// `F = f_sin(f)`.
pub fn sin_integral_exact(f: &RatPoly, c: &Rational) -> LinearFormTrig {
    let big_f = f_sin(f);
    LinearFormTrig {
        s: big_f.derivative().eval(c),
        t: -big_f.eval(c),
        w: big_f.eval(&Rational::new()),
        c: c.clone(),
    }
}

fn exact_quotient(value: Integer, divisor: &Integer, what: &str) -> Result<Integer> {
    let (q, r) = value.div_rem(divisor.clone());
    if r != 0 {
        return Err(Error::Defect(format!("{what} is not divisible by n!")));
    }
    Ok(q)
}

/// `(F(0)/n!, F(r)/n!)` for `f = x^n (r - x)^n`, `F = f_exp(f)`. Both are
/// integers.
pub fn corollary1_quantities(r: &Integer, n: usize) -> Result<(Integer, Integer)> {
    if *r < 1 {
        return Err(Error::Domain(format!("r must be positive, got {r}")));
    }
    let big_f = f_exp(&niven_poly(r, &Integer::from(1), n));
    let nf = factorial(n as u64);
    let at_zero = exact_quotient(big_f.coeff(0), &nf, "F(0)")?;
    let at_r = exact_quotient(big_f.eval_integer(r), &nf, "F(r)")?;
    Ok((at_zero, at_r))
}

/// `(F(0)/n!, b^n F(a/b)/n!)` for `f = x^n (a - b x)^n`, `F = f_sin(f)`.
/// Both are integers.
pub fn corollary2_quantities(a: &Integer, b: &Integer, n: usize) -> Result<(Integer, Integer)> {
    if *a < 1 || *b < 1 {
        return Err(Error::Domain(format!(
            "a and b must be positive, got {a}, {b}"
        )));
    }
    let big_f = f_sin(&niven_poly(a, b, n));
    let nf = factorial(n as u64);
    let at_zero = exact_quotient(big_f.coeff(0), &nf, "F(0)")?;
    // b^n F(a/b) = sum_k c_k a^k b^(n-k); every c_k with k > n is divisible
    // by b^(k-n), so homogenise through the rational evaluation.
    let c = Rational::from((a.clone(), b.clone()));
    let scaled = big_f.to_rational().eval(&c) * Integer::from(b.pow(n as u32));
    if !scaled.is_integer() {
        return Err(Error::Defect("b^n F(a/b) is not an integer".into()));
    }
    let at_c = exact_quotient(scaled.numer().clone(), &nf, "b^n F(a/b)")?;
    Ok((at_zero, at_c))
}

/// The `b^n/n!`-scaled sine identity for `f = x^n (a - b x)^n`:
/// `(b^n/n!) ∫_0^{a/b} f(x) sin x dx = s sin c + t cos c + w`, `c = a/b`.
///
/// `f` is symmetric about `a/(2b)`, so `F(a/b) = F(0)` and
/// `F'(a/b) = -F'(0)`. Only the two integers `G0 = b^n F(0)/n!` and
/// `G1 = b^n F'(0)/n!` are needed and both are hypergeometric sums over the
/// coefficients of `f`, evaluated here by binary splitting without building
/// the degree-`2n` polynomial. The returned form is
/// `s = -G1, t = -G0, w = G0`.
pub fn niven_sin_form(a: &Integer, b: &Integer, n: usize) -> Result<LinearFormTrig> {
    if *a < 1 || *b < 1 {
        return Err(Error::Domain(format!(
            "a and b must be positive, got {a}, {b}"
        )));
    }
    let g0 = niven_derivative_sum(a, b, n, 0);
    let g1 = niven_derivative_sum(a, b, n, 1);
    Ok(LinearFormTrig {
        s: Rational::from(-g1),
        t: Rational::from(-&g0),
        w: Rational::from(g0),
        c: Rational::from((a.clone(), b.clone())),
    })
}

/// `b^n/n! * sum_k (-1)^k f^(2k + parity)(0)` for `f = x^n (a - b x)^n`.
///
/// With `f = sum_l C(n,l) a^(n-l) (-b)^l x^(n+l)`, the order-`j` derivative
/// at 0 is `j! C(n, j-n) a^(2n-j) (-b)^(j-n)`, so the scaled term for
/// `l = j - n` is `U_l = (n+l)!/n! C(n,l) a^(n-l) (-1)^l b^(n+l)` and
/// consecutive terms of one parity differ by a small rational factor.
fn niven_derivative_sum(a: &Integer, b: &Integer, n: usize, parity: usize) -> Integer {
    let n64 = n as u64;
    let l0 = (n + parity) % 2;
    if l0 > n {
        return Integer::new();
    }
    let count = ((n - l0) / 2 + 1) as u64;
    let j0 = n + l0;
    let sign_negative = ((j0 - parity) / 2) % 2 == 1;
    let mut first = Integer::from(a.pow((n - l0) as u32)) * Integer::from(b.pow(j0 as u32));
    if l0 == 1 {
        first *= (n64 + 1) * n64;
        first = -first;
    }
    if sign_negative {
        first = -first;
    }
    let a2 = Integer::from(a.square_ref());
    let b2 = Integer::from(b.square_ref());
    let ratio = |i: u64| {
        let l = l0 as u64 + 2 * i;
        let rising = Integer::from(n64 + l + 1) * (n64 + l + 2);
        let falling = Integer::from(n64 as i64 - l as i64) * (n64 as i64 - l as i64 - 1);
        let p = -(rising * falling * &b2);
        let q = Integer::from((l + 1) * (l + 2)) * &a2;
        (p, q)
    };
    let (t, q) = hypergeometric_partial_sum(count, &ratio);
    (first * t).div_exact(&q)
}

/// Which kernel multiplies the polynomial in [`enclose_integral_series`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Kernel {
    Exp,
    Sin,
}

/// Encloses `∫_0^c f(x) e^x dx` or `∫_0^c f(x) sin x dx` without the
/// operator identities: the kernel is replaced by its Taylor polynomial, the
/// product is integrated exactly, and the remainder contributes at most
/// `max|f| * c * max|tail|` on `[0, c]`.
pub fn enclose_integral_series(
    f: &RatPoly,
    c: &Rational,
    kind: Kernel,
    eps: &Rational,
) -> Result<Enclosure> {
    check_eps(eps)?;
    if c.cmp0() == Ordering::Less {
        return Err(Error::Domain(format!("upper limit must be >= 0, got {c}")));
    }
    let zero = Rational::new();
    if c.cmp0() == Ordering::Equal || f.is_zero() {
        return Ok(Enclosure::point(zero));
    }
    // sum |a_k| c^k bounds |f| on [0, c]
    let f_max = f.coeffs().iter().rev().fold(Rational::new(), |acc, a| {
        acc * c + Rational::from(a.abs_ref())
    });
    let ceil_c = c
        .clone()
        .ceil()
        .numer()
        .to_u64()
        .expect("upper limit too large");
    let scale = Rational::from(&f_max * c);
    let budget = Rational::from(eps / 4u32);

    // kernel tail magnitude after `k` terms, valid past the start index
    let tail = |k: u64| -> Rational {
        match kind {
            Kernel::Exp => c.pow_ref_u(k) * 2u32 / Rational::from(factorial(k)),
            Kernel::Sin => c.pow_ref_u(2 * k + 1) / Rational::from(factorial(2 * k + 1)),
        }
    };
    let start = match kind {
        Kernel::Exp => 2 * ceil_c,
        Kernel::Sin => ceil_c.max(1),
    };
    let k = first_true(start, u32::MAX as u64, |k| {
        Rational::from(&scale * &tail(k)) <= budget
    })
    .expect("series truncation index exceeds limit");

    let mut taylor = Vec::new();
    match kind {
        Kernel::Exp => {
            for j in 0..k {
                taylor.push(Rational::from((1, factorial(j))));
            }
        }
        Kernel::Sin => {
            taylor.resize(2 * k as usize, Rational::new());
            for j in 0..k {
                let sign = if j % 2 == 0 { 1 } else { -1 };
                taylor[(2 * j + 1) as usize] = Rational::from((sign, factorial(2 * j + 1)));
            }
        }
    }
    let product = f * &RatPoly::from_coeffs(taylor);
    let value = product.integrate(&zero, c);
    let err = Rational::from(&scale * &tail(k));
    let raw = Enclosure::new(Rational::from(&value - &err), Rational::from(&value + &err))?;
    Ok(raw.round_outward(bits_for(eps, 8)))
}

trait PowU {
    fn pow_ref_u(&self, e: u64) -> Rational;
}

impl PowU for Rational {
    fn pow_ref_u(&self, e: u64) -> Rational {
        let e = i32::try_from(e).expect("exponent too large");
        Rational::from(self.pow(e))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bigmath::ten_to_minus;

    fn q(n: i64, d: i64) -> Rational {
        Rational::from((n, d))
    }

    fn rp(c: &[i64]) -> RatPoly {
        RatPoly::from_i64s(c)
    }

    fn i(v: i64) -> Integer {
        Integer::from(v)
    }

    #[test]
    fn f_exp_examples() {
        assert_eq!(f_exp(&rp(&[5])), rp(&[5]));
        assert_eq!(f_exp(&rp(&[0, 1, -1])), rp(&[-3, 3, -1]));
        assert_eq!(f_exp(&rp(&[0, 0, 1, -2, 1])), rp(&[38, -38, 19, -6, 1]));
    }

    #[test]
    fn f_sin_examples() {
        assert_eq!(f_sin(&rp(&[1])), rp(&[1]));
        assert_eq!(f_sin(&rp(&[0, 0, 1])), rp(&[-2, 0, 1]));
        assert_eq!(f_sin(&rp(&[0, 1, -1])), rp(&[2, 1, -1]));
    }

    #[test]
    fn exp_integral_examples() {
        let z = exp_integral_exact(&RatPoly::zero(), &q(3, 1));
        assert_eq!((z.u, z.v), (q(0, 1), q(0, 1)));
        let a = exp_integral_exact(&rp(&[0, 1, -1]), &q(1, 1));
        assert_eq!((a.u.clone(), a.v.clone()), (q(-1, 1), q(3, 1)));
        let b = exp_integral_exact(&rp(&[0, 0, 1, -2, 1]), &q(1, 1));
        assert_eq!((b.u.clone(), b.v.clone()), (q(14, 1), q(-38, 1)));
        // 3 - e ~ 0.28171817154095476464
        let v = a.enclose(&ten_to_minus(20)).unwrap();
        assert!(v.lies_strictly_within(&q(28171817, 100_000_000), &q(28171818, 100_000_000)));
        // 14e - 38 ~ 0.05594559842
        let w = b.enclose(&ten_to_minus(20)).unwrap();
        assert!(w.lies_strictly_within(&q(5594559, 100_000_000), &q(5594560, 100_000_000)));
    }

    #[test]
    fn sin_integral_examples() {
        let one = sin_integral_exact(&rp(&[1]), &q(3, 1));
        assert_eq!((one.s, one.t, one.w), (q(0, 1), q(-1, 1), q(1, 1)));
        let c = q(3, 2);
        let sq = sin_integral_exact(&rp(&[0, 0, 1]), &c);
        assert_eq!(sq.s, q(3, 1));
        assert_eq!(sq.t, (-(Rational::from(c.square_ref()) - 2u32)));
        assert_eq!(sq.w, q(-2, 1));
        let zero = sin_integral_exact(&RatPoly::zero(), &c);
        assert_eq!((zero.s, zero.t, zero.w), (q(0, 1), q(0, 1), q(0, 1)));
    }

    #[test]
    fn exp_boundary_value_examples() {
        assert_eq!(corollary1_quantities(&i(1), 2).unwrap(), (i(19), i(7)));
        assert_eq!(corollary1_quantities(&i(4), 0).unwrap(), (i(1), i(1)));
        assert_eq!(corollary1_quantities(&i(1), 1).unwrap(), (i(-3), i(-1)));
        assert_eq!(corollary1_quantities(&i(2), 3).unwrap(), (i(-296), i(-40)));
        assert!(corollary1_quantities(&i(0), 1).is_err());
    }

    #[test]
    fn sine_boundary_value_examples() {
        assert_eq!(
            corollary2_quantities(&i(9), &i(4), 0).unwrap(),
            (i(1), i(1))
        );
        assert_eq!(
            corollary2_quantities(&i(1), &i(1), 1).unwrap(),
            (i(2), i(2))
        );
        assert_eq!(
            corollary2_quantities(&i(22), &i(7), 2).unwrap(),
            (i(104), i(5096))
        );
    }

    #[test]
    fn closed_form_matches_polynomial_route() {
        for a in 1..=12i64 {
            for b in 1..=5i64 {
                for n in 0..=9usize {
                    let direct =
                        sin_integral_exact(&niven_poly(&i(a), &i(b), n).to_rational(), &q(a, b))
                            .scale(&Rational::from((i(b).pow(n as u32), factorial(n as u64))));
                    let fast = niven_sin_form(&i(a), &i(b), n).unwrap();
                    assert_eq!(direct, fast, "a={a} b={b} n={n}");
                }
            }
        }
    }

    #[test]
    fn series_oracle_examples() {
        let eps = ten_to_minus(10);
        let e_minus_one = enclose_integral_series(&rp(&[1]), &q(1, 1), Kernel::Exp, &eps).unwrap();
        assert!(e_minus_one.width() <= eps);
        let e = crate::bigmath::enclose_e(&ten_to_minus(12)).unwrap();
        assert!(e_minus_one.intersects(&e.add_rational(&q(-1, 1))));

        let eps = ten_to_minus(20);
        let series =
            enclose_integral_series(&rp(&[0, 1, -1]), &q(1, 1), Kernel::Exp, &eps).unwrap();
        let exact = exp_integral_exact(&rp(&[0, 1, -1]), &q(1, 1))
            .enclose(&eps)
            .unwrap();
        assert!(series.width() <= eps);
        assert!(series.intersects(&exact));

        let c = q(7, 4);
        let s = enclose_integral_series(&rp(&[1]), &c, Kernel::Sin, &eps).unwrap();
        let cos_c = enclose_cos(&c, &eps).unwrap();
        assert!(s.intersects(&cos_c.neg().add_rational(&q(1, 1))));
    }

    #[test]
    fn series_oracle_rejects_bad_input() {
        assert!(enclose_integral_series(&rp(&[1]), &q(-1, 1), Kernel::Exp, &q(1, 10)).is_err());
        assert!(enclose_integral_series(&rp(&[1]), &q(1, 1), Kernel::Sin, &q(0, 1)).is_err());
    }
}
