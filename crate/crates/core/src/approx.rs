//! Rational approximations to `e^r` read off the integral identity.
//!
//! For `f = x^n (r - x)^n` and `F = f - f' + f'' - ...`,
//! `F(r) e^r - F(0) = ∫_0^r f(x) e^x dx`, which is small, so
//! `e^r ≈ F(0) / F(r)` with error `∫ f e^x / F(r)`. The ratio is unchanged by
//! scaling `f`, so no `1/n!` normalisation is applied.

use std::cmp::Ordering;

use rug::ops::Pow;
use rug::{Integer, Rational};

use crate::bigmath::{check_eps, enclose_exp, Enclosure};
use crate::error::{Error, Result};
use crate::foperator::f_exp;
use crate::poly::niven_poly;
use crate::witness::exp_upper;

fn boundary_values(r: &Integer, n: u64) -> (Integer, Integer) {
    let big_f = f_exp(&niven_poly(r, &Integer::from(1), n as usize));
    (big_f.coeff(0), big_f.eval_integer(r))
}

/// `F(0) / F(r)` for `f = x^n (r - x)^n`.
pub fn er_convergent(r: &Integer, n: u64) -> Result<Rational> {
    if *r < 1 {
        return Err(Error::Domain(format!("r must be positive, got {r}")));
    }
    let (at_zero, at_r) = boundary_values(r, n);
    if at_r == 0 {
        return Err(Error::DegenerateApproximant { n });
    }
    Ok(Rational::from((at_zero, at_r)))
}

/// One row of [`er_error_table`]. Degenerate rows (`F(r) = 0`) keep their
/// index and carry no approximant.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConvergentRow {
    pub n: u64,
    pub approximant: Option<Rational>,
    /// Encloses `e^r - approximant`.
    pub error: Option<Enclosure>,
    /// `r^(2n+1) E / |F(r)|` with `E >= e^r`.
    pub bound: Option<Rational>,
}

impl ConvergentRow {
    pub fn is_degenerate(&self) -> bool {
        self.approximant.is_none()
    }
}

/// Rows `n = 0..=n_max` with error enclosures of width at most `eps`.
pub fn er_error_table(r: &Integer, n_max: u64, eps: &Rational) -> Result<Vec<ConvergentRow>> {
    check_eps(eps)?;
    if *r < 1 {
        return Err(Error::Domain(format!("r must be positive, got {r}")));
    }
    let exp_r = enclose_exp(&Rational::from(r), eps)?;
    let e_upper = exp_upper(r);
    let rows = (0..=n_max)
        .map(|n| {
            let (at_zero, at_r) = boundary_values(r, n);
            if at_r == 0 {
                return ConvergentRow {
                    n,
                    approximant: None,
                    error: None,
                    bound: None,
                };
            }
            let approximant = Rational::from((at_zero, at_r.clone()));
            let error = exp_r.add_rational(&Rational::from(-&approximant));
            let r_pow = Integer::from(r.pow(u32::try_from(2 * n + 1).expect("n fits u32")));
            let bound = Rational::from(&e_upper * r_pow) / Rational::from(at_r.abs());
            ConvergentRow {
                n,
                approximant: Some(approximant),
                error: Some(error),
                bound: Some(bound),
            }
        })
        .collect();
    Ok(rows)
}

/// First `k` convergents of the continued fraction of the real enclosed by
/// `x`. A point enclosure yields its full finite expansion when that has
/// fewer than `k` terms.
pub fn cf_convergents(x: &Enclosure, k: usize) -> Result<Vec<Rational>> {
    if k == 0 {
        return Err(Error::Domain("need at least one convergent".into()));
    }
    let (mut lo, mut hi) = (x.lo().clone(), x.hi().clone());
    let mut out = Vec::with_capacity(k);
    // h_{-1} = 1, h_{-2} = 0; k_{-1} = 0, k_{-2} = 1
    let (mut h_prev, mut h) = (Integer::new(), Integer::from(1));
    let (mut k_prev, mut kk) = (Integer::from(1), Integer::new());
    for index in 0..k {
        let digit = lo.clone().floor().numer().clone();
        if hi.clone().floor().numer() != &digit {
            return Err(Error::IndeterminateDigit { index });
        }
        let h_next = Integer::from(&digit * &h) + &h_prev;
        let k_next = Integer::from(&digit * &kk) + &k_prev;
        h_prev = std::mem::replace(&mut h, h_next);
        k_prev = std::mem::replace(&mut kk, k_next);
        out.push(Rational::from((h.clone(), kk.clone())));

        lo -= &digit;
        hi -= &digit;
        match (lo.cmp0(), hi.cmp0()) {
            (Ordering::Equal, Ordering::Equal) => break,
            (Ordering::Equal, _) => {
                if index + 1 < k {
                    return Err(Error::IndeterminateDigit { index: index + 1 });
                }
            }
            _ => {
                let (new_lo, new_hi) = (
                    Rational::from(hi.recip_ref()),
                    Rational::from(lo.recip_ref()),
                );
                lo = new_lo;
                hi = new_hi;
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bigmath::{enclose_e, enclose_pi, ten_to_minus};

    fn q(n: i64, d: i64) -> Rational {
        Rational::from((n, d))
    }

    fn i(v: i64) -> Integer {
        Integer::from(v)
    }

    #[test]
    fn convergent_examples() {
        assert_eq!(er_convergent(&i(1), 1).unwrap(), 3);
        assert_eq!(er_convergent(&i(1), 2).unwrap(), q(19, 7));
        for r in 1..5 {
            assert_eq!(er_convergent(&i(r), 0).unwrap(), 1);
        }
        assert!(er_convergent(&i(0), 1).is_err());
    }

    #[test]
    fn table_examples() {
        let eps = ten_to_minus(10);
        let rows = er_error_table(&i(1), 2, &eps).unwrap();
        assert_eq!(rows.len(), 3);
        for row in &rows {
            assert!(row.error.as_ref().unwrap().width() <= eps);
        }
        let e1 = rows[1].error.as_ref().unwrap().abs();
        assert!(e1.lies_strictly_within(&q(28, 100), &q(29, 100)));
        let e2 = rows[2].error.as_ref().unwrap().abs();
        assert!(e2.lies_strictly_within(&q(39, 10_000), &q(44, 10_000)));
    }

    #[test]
    fn degenerate_row_is_flagged() {
        // F = -(x - 2)^2 for f = x(2 - x)
        assert_eq!(
            er_convergent(&i(2), 1),
            Err(Error::DegenerateApproximant { n: 1 })
        );
        let rows = er_error_table(&i(2), 2, &ten_to_minus(10)).unwrap();
        assert_eq!(rows.len(), 3);
        assert!(rows[1].is_degenerate() && rows[1].error.is_none());
        assert!(!rows[2].is_degenerate());
    }

    #[test]
    fn cf_of_e_and_pi() {
        let e = enclose_e(&ten_to_minus(20)).unwrap();
        assert_eq!(
            cf_convergents(&e, 4).unwrap(),
            vec![q(2, 1), q(3, 1), q(8, 3), q(11, 4)]
        );
        let pi = enclose_pi(&ten_to_minus(20)).unwrap();
        assert_eq!(cf_convergents(&pi, 2).unwrap(), vec![q(3, 1), q(22, 7)]);
    }

    #[test]
    fn cf_of_point_is_its_expansion() {
        let x = Enclosure::point(q(415, 93));
        assert_eq!(
            cf_convergents(&x, 10).unwrap(),
            vec![q(4, 1), q(9, 2), q(58, 13), q(415, 93)]
        );
        let int = Enclosure::point(q(5, 1));
        assert_eq!(cf_convergents(&int, 3).unwrap(), vec![q(5, 1)]);
    }

    #[test]
    fn cf_reports_undetermined_digits() {
        let wide = Enclosure::new(q(29, 10), q(31, 10)).unwrap();
        assert_eq!(
            cf_convergents(&wide, 1),
            Err(Error::IndeterminateDigit { index: 0 })
        );
        let e = enclose_e(&ten_to_minus(3)).unwrap();
        assert!(matches!(
            cf_convergents(&e, 30),
            Err(Error::IndeterminateDigit { .. })
        ));
    }
}
