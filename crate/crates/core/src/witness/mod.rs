//! Contradiction certificates.
//!
//! Each certificate pairs an exact integer with an enclosed real number that
//! a rational candidate would force to be equal to it. When the enclosure
//! rules out equality (or shows the real lies strictly between 0 and 1, where
//! no integer lives), the candidate is falsified.

mod bounds;

pub use bounds::{
    crude_bound_exp, exp_upper, minimal_n_cbs, minimal_n_exp, minimal_n_pi, naive_er_bound,
    pi_bound, NaiveBound, DEFAULT_SCAN_CAP,
};

use rug::{Integer, Rational};

use crate::bigmath::{check_eps, enclose_e, factorial, Enclosure};
use crate::error::{Error, Result};
use crate::foperator::niven_sin_form;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CertificateKind {
    /// `e = p/q` for the denominator `q` under test.
    FourierE,
    /// `pi = a/b` for the candidate `a/b`.
    NivenPi,
}

impl CertificateKind {
    pub fn as_str(self) -> &'static str {
        match self {
            CertificateKind::FourierE => "fourier-e",
            CertificateKind::NivenPi => "niven-pi",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Falsified,
    /// The enclosures were too wide to decide; rerun with a smaller `eps`.
    Indeterminate,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Falsified => "falsified",
            Verdict::Indeterminate => "indeterminate",
        }
    }
}

/// Record of one witness computation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub kind: CertificateKind,
    /// The candidate `a/b` for pi, or the denominator `q` for e.
    pub candidate: Rational,
    /// Vanishing order of the auxiliary polynomial (pi certificates only).
    pub n: Option<u64>,
    pub integer_side: Integer,
    /// `(F(0)/n!, b^n F(a/b)/n!)` for pi certificates.
    pub integer_parts: Option<(Integer, Integer)>,
    pub enclosed_side: Enclosure,
    /// `enclosed_side - integer_side` (pi certificates only).
    pub difference: Option<Enclosure>,
    pub bound: Rational,
    pub verdict: Verdict,
    /// Width budget actually used for the enclosed side.
    pub precision: Rational,
}

impl Certificate {
    /// `enclosed_side` lies strictly inside `(0, 1)`.
    pub fn enclosed_in_unit_interval(&self) -> bool {
        self.enclosed_side
            .lies_strictly_within(&Rational::new(), &Rational::from(1))
    }
}

/// Squares `eps` for the single automatic refinement; `eps >= 1` becomes
/// `eps / 2^64` so that the retry is always finer.
fn refine(eps: &Rational) -> Rational {
    if *eps < 1 {
        Rational::from(eps.square_ref())
    } else {
        Rational::from(eps >> 64u32)
    }
}

/// Fourier's witness for `e` with denominator `q`.
///
/// `S = q! sum_{k<=q} 1/k!` is an integer and `T = q! e - S` is enclosed to
/// width `eps`. If `e = p/q` then `q! p/q - S = T` would be an integer, so
/// `T` inside `(0, 1)` falsifies every `p`. The tail bound gives
/// `T < 1/q`, recorded as the certificate's bound.
pub fn fourier_witness(q: u64, eps: &Rational) -> Result<Certificate> {
    check_eps(eps)?;
    if q == 0 {
        return Err(Error::Domain("q must be a positive integer".into()));
    }
    let qf = factorial(q);
    let integer_side = (0..=q).fold(Integer::new(), |acc, k| {
        acc + Integer::from(&qf / &factorial(k))
    });
    let attempt = |eps: &Rational| -> Result<Certificate> {
        let e = enclose_e(&Rational::from(eps / &qf))?;
        let enclosed_side = e
            .scale_int(&qf)
            .add_rational(&Rational::from(-&integer_side));
        let mut cert = Certificate {
            kind: CertificateKind::FourierE,
            candidate: Rational::from(q),
            n: None,
            integer_side: integer_side.clone(),
            integer_parts: None,
            enclosed_side,
            difference: None,
            bound: Rational::from((1, q)),
            verdict: Verdict::Indeterminate,
            precision: eps.clone(),
        };
        if cert.enclosed_in_unit_interval() {
            cert.verdict = Verdict::Falsified;
        }
        Ok(cert)
    };
    let first = attempt(eps)?;
    if first.verdict == Verdict::Falsified {
        return Ok(first);
    }
    attempt(&refine(eps))
}

/// Niven's witness against `pi = a/b`.
///
/// With `f = x^n (a - b x)^n`, `F = f - f'' + f'''' - ...` and `c = a/b`,
/// the exact identity
/// `(b^n/n!) ∫_0^c f sin = (b^n/n!) (F'(c) sin c - F(c) cos c + F(0))`
/// would reduce to the integer `(b^n F(c) + b^n F(0))/n!` if `c` were pi.
/// The certificate encloses the left side and compares: a difference that
/// excludes zero falsifies the candidate. At `n = minimal_n_pi(a, b)` the
/// left side also lies in `(0, 1)`.
pub fn niven_falsify(
    a: &Integer,
    b: &Integer,
    n: Option<u64>,
    eps: &Rational,
    cap: u64,
) -> Result<Certificate> {
    check_eps(eps)?;
    let n = match n {
        Some(n) => n,
        None => minimal_n_pi(a, b, cap)?,
    };
    let form = niven_sin_form(a, b, n as usize)?;
    // w = G0 = b^n F(0)/n!, and F(a/b) = F(0) by symmetry, so t = -G0.
    let g0 = form.w.numer().clone();
    let integer_side = Integer::from(&g0 * 2u32);
    let b_pow = Integer::from(rug::ops::Pow::pow(b, u32::try_from(n).expect("n fits u32")));
    let (f0_over_nfact, rem) = g0.clone().div_rem(b_pow);
    if rem != 0 {
        return Err(Error::Defect("F(0)/n! is not an integer".into()));
    }
    let bound = pi_bound(a, b, n)?;
    let working = eps.clone().min(resolving_precision(a, n));
    let attempt = |eps: &Rational| -> Result<Certificate> {
        let enclosed_side = form.enclose(eps)?;
        let difference = enclosed_side.add_rational(&Rational::from(-&integer_side));
        let verdict = if difference.excludes_zero() {
            Verdict::Falsified
        } else {
            Verdict::Indeterminate
        };
        Ok(Certificate {
            kind: CertificateKind::NivenPi,
            candidate: form.c.clone(),
            n: Some(n),
            integer_side: integer_side.clone(),
            integer_parts: Some((f0_over_nfact.clone(), g0.clone())),
            enclosed_side,
            difference: Some(difference),
            bound: bound.clone(),
            verdict,
            precision: eps.clone(),
        })
    };
    let first = attempt(&working)?;
    if first.verdict == Verdict::Falsified {
        return Ok(first);
    }
    attempt(&refine(&working))
}

/// A precision fine enough to resolve the sign of the enclosed side.
///
/// The integrand peaks at `x = a/(2b)` with `f = (a^2/(4b))^n`, so the
/// scaled integral is roughly `(a^2/4)^n / n!` up to factors polynomial in
/// `n`. The estimate only steers the working precision; positivity is still
/// decided by the resulting enclosure.
fn resolving_precision(a: &Integer, n: u64) -> Rational {
    let e = u32::try_from(n).expect("n fits u32");
    let peak_bits =
        i64::from(Integer::from(rug::ops::Pow::pow(a, 2 * e)).significant_bits()) - 2 * n as i64;
    let fact_bits = i64::from(factorial(n).significant_bits());
    let n_bits = i64::from(Integer::from(n).significant_bits());
    let margin = 64 + 2 * n_bits;
    let exponent = (fact_bits - peak_bits + margin).max(1) as u32;
    Rational::from((1, Integer::from(1) << exponent))
}
