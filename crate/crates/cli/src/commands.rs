//! One function per subcommand. Each fills in a [`Report`] and returns an
//! error only when no meaningful result exists.

use niven_core::approx::{cf_convergents, er_error_table};
use niven_core::bigmath::enclose_exp;
use niven_core::foperator::{
    enclose_integral_series, exp_integral_exact, f_exp, f_sin, sin_integral_exact, Kernel,
};
use niven_core::legendre::{cbs_bound, inner_product, rodrigues_shifted, shifted_legendre};
use niven_core::poly::RatPoly;
use niven_core::witness::{
    crude_bound_exp, fourier_witness, minimal_n_cbs, minimal_n_exp, minimal_n_pi, naive_er_bound,
    niven_falsify, pi_bound, Certificate, CertificateKind, Verdict,
};
use niven_core::{Enclosure, Error, Integer, Rational};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};
use thiserror::Error;

use crate::report::{abbrev, approx, approx_enclosure, enclosure, frac, int, Report, Status};

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] Error),
    #[error("{0}")]
    Usage(String),
    #[error("check failed: {0}")]
    Defect(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Core(Error::ResourceCap { .. }) => 3,
            CliError::Core(Error::Defect(_)) | CliError::Defect(_) => 5,
            CliError::Core(Error::IndeterminateDigit { .. }) => 4,
            CliError::Core(_) | CliError::Usage(_) => 2,
        }
    }
}

pub type CmdResult = Result<(), CliError>;

fn verdict_status(v: Verdict) -> Status {
    match v {
        Verdict::Falsified => Status::Falsified,
        Verdict::Indeterminate => Status::Indeterminate,
    }
}

pub fn certificate_json(c: &Certificate) -> Value {
    json!({
        "kind": c.kind.as_str(),
        "candidate": frac(&c.candidate),
        "n": c.n.map(|n| n.to_string()),
        "integer_side": int(&c.integer_side),
        "integer_parts": c.integer_parts.as_ref().map(|(z, w)| json!({
            "f0_over_n_factorial": int(z),
            "scaled_f0": int(w),
        })),
        "enclosed_side": enclosure(&c.enclosed_side),
        "enclosed_in_unit_interval": c.enclosed_in_unit_interval(),
        "difference": c.difference.as_ref().map(enclosure),
        "bound": frac(&c.bound),
        "verdict": c.verdict.as_str(),
        "precision": frac(&c.precision),
    })
}

fn narrate(report: &mut Report, c: &Certificate) {
    match c.kind {
        CertificateKind::FourierE => {
            let q = c.candidate.numer();
            report.line(format!("suppose e = p/{q}; multiply by {q}!"));
            report.line(format!(
                "  integer side   {q}! (1 + 1/1! + ... + 1/{q}!) = {}",
                abbrev(&c.integer_side)
            ));
            report.line(format!(
                "  interval side  {q}! e - that sum lies in {}",
                approx_enclosure(&c.enclosed_side)
            ));
            report.line(format!(
                "  tail bound     below 1/{q} = {}",
                approx(&c.bound, 6)
            ));
            if c.verdict == Verdict::Falsified {
                report.line(format!(
                    "  p - (integer) would be an integer strictly between 0 and 1: no e = p/{q}"
                ));
            }
        }
        CertificateKind::NivenPi => {
            let n = c.n.unwrap_or(0);
            report.line(format!(
                "suppose pi = a/b = {}; take f = x^n (a - bx)^n with n = {n}, scaled by b^n/n!",
                c.candidate
            ));
            report.line(format!(
                "  integer side   F(0) + F(a/b) = {}",
                abbrev(&c.integer_side)
            ));
            report.line(format!(
                "  interval side  integral of f sin over [0, a/b] lies in {}",
                approx_enclosure(&c.enclosed_side)
            ));
            if let Some(d) = &c.difference {
                report.line(format!("  difference     {}", approx_enclosure(d)));
            }
            report.line(format!(
                "  area bound     a^(2n+1)/(b n!) = {} {}",
                approx(&c.bound, 6),
                if c.bound < 1 { "< 1" } else { ">= 1" }
            ));
            if c.enclosed_in_unit_interval() {
                report.line("  the integral lies strictly between 0 and 1, where no integer lives");
            }
            if c.verdict == Verdict::Falsified {
                report.line(format!("  the two sides differ: pi is not {}", c.candidate));
            }
        }
    }
    report.line(format!("verdict: {}", c.verdict.as_str()));
}

pub fn witness_e(report: &mut Report, q: u64, eps: &Rational) -> CmdResult {
    report.input("q", q);
    report.input("eps", frac(eps));
    let cert = fourier_witness(q, eps)?;
    report.precision = cert.precision.clone();
    report.status = verdict_status(cert.verdict);
    narrate(report, &cert);
    report.results = certificate_json(&cert);
    Ok(())
}

fn split_candidate(c: &Rational) -> Result<(Integer, Integer), CliError> {
    if *c <= 0 {
        return Err(CliError::Usage(format!(
            "candidate must be positive, got {c}"
        )));
    }
    Ok((c.numer().clone(), c.denom().clone()))
}

pub fn witness_pi(
    report: &mut Report,
    candidate: &Rational,
    n: Option<u64>,
    eps: &Rational,
    cap: u64,
) -> CmdResult {
    report.input("candidate", frac(candidate));
    report.input("eps", frac(eps));
    report.input("cap", cap);
    if let Some(n) = n {
        report.input("n", n);
    }
    let (a, b) = split_candidate(candidate)?;
    let cert = niven_falsify(&a, &b, n, eps, cap)?;
    report.precision = cert.precision.clone();
    report.status = verdict_status(cert.verdict);
    narrate(report, &cert);
    report.results = certificate_json(&cert);
    Ok(())
}

#[derive(Clone, Debug)]
pub enum Family {
    Exp { r: Integer, q: Integer },
    Pi { candidate: Rational },
    Cbs { r: Integer, q: Integer },
}

pub fn bounds_solve(report: &mut Report, family: &Family, cap: u64) -> CmdResult {
    report.input("cap", cap);
    let (name, n, at, before) = match family {
        Family::Exp { r, q } => {
            report.input("r", r);
            report.input("q", q);
            let n = minimal_n_exp(r, q, cap)?;
            let before = if n > 0 {
                Some(crude_bound_exp(r, q, n - 1)?)
            } else {
                None
            };
            ("exp", n, crude_bound_exp(r, q, n)?, before)
        }
        Family::Pi { candidate } => {
            report.input("candidate", frac(candidate));
            let (a, b) = split_candidate(candidate)?;
            let n = minimal_n_pi(&a, &b, cap)?;
            let before = if n > 0 {
                Some(pi_bound(&a, &b, n - 1)?)
            } else {
                None
            };
            ("pi", n, pi_bound(&a, &b, n)?, before)
        }
        Family::Cbs { r, q } => {
            report.input("r", r);
            report.input("q", q);
            let n = minimal_n_cbs(r, q, cap)?;
            let m = n as usize;
            // below n + 1 = 2r the bound is undefined
            let before = match m.checked_sub(1).map(|k| cbs_bound(k, r, q)) {
                Some(Ok(b)) => Some(b),
                Some(Err(Error::Domain(_))) | None => None,
                Some(Err(e)) => return Err(e.into()),
            };
            let at = cbs_bound(m, r, q)?;
            ("cbs", n, at, before)
        }
    };
    report.line(format!("family {name}: first n with bound < 1 is n = {n}"));
    report.line(format!("  bound at n     {}", approx(&at, 8)));
    if let Some(b) = &before {
        report.line(format!("  bound at n - 1 {}", approx(b, 8)));
    }
    report.results = json!({
        "family": name,
        "n": n.to_string(),
        "bound_at_n": frac(&at),
        "bound_at_previous": before.as_ref().map(frac),
        "rule": "first n >= start of the family with bound < 1",
    });
    Ok(())
}

pub fn legendre_verify(report: &mut Report, n_max: usize, r: &Rational) -> CmdResult {
    report.input("n_max", n_max);
    report.input("r", frac(r));
    let mut rows = Vec::new();
    let mut basis: Vec<RatPoly> = Vec::new();
    let mut all_ok = true;
    let one = Rational::from(1);
    for n in 0..=n_max {
        let p = shifted_legendre(n, r)?;
        let rodrigues = rodrigues_shifted(n, r)? == p;
        let orthogonal = basis
            .iter()
            .map(|m| inner_product(m, &p, r))
            .collect::<Result<Vec<_>, _>>()?
            .iter()
            .all(|v| *v == 0);
        let norm = inner_product(&p, &p, r)?;
        let expected = Rational::from(r / Integer::from(2 * n + 1));
        let norm_ok = norm == expected;
        let reflected = p.affine_substitute(&-one.clone(), r);
        let parity = if n % 2 == 0 {
            reflected == p
        } else {
            reflected == -&p
        };
        let ok = rodrigues && orthogonal && norm_ok && parity;
        all_ok &= ok;
        report.line(format!(
            "n = {n:2}  {}  rodrigues {}  orthogonal {}  norm {} {}  parity {}",
            if ok { "ok  " } else { "FAIL" },
            rodrigues,
            orthogonal,
            norm,
            if norm_ok { "=" } else { "!=" },
            parity
        ));
        rows.push(json!({
            "n": n.to_string(),
            "polynomial": p.to_string(),
            "rodrigues_agrees": rodrigues,
            "orthogonal_to_lower": orthogonal,
            "squared_norm": frac(&norm),
            "norm_identity": norm_ok,
            "reflection_parity": parity,
        }));
        basis.push(p);
    }
    report.results = json!({ "rows": rows, "all_passed": all_ok });
    if !all_ok {
        report.status = Status::Error;
        return Err(CliError::Defect("a Legendre identity failed".into()));
    }
    report.line("all Legendre identities hold exactly");
    Ok(())
}

/// A random instance for the oracle comparison: integer coefficients in
/// `[-9, 9]`, degree at most `max_degree`, upper limit in `(0, 3]`.
pub fn random_instance(rng: &mut ChaCha8Rng, max_degree: usize) -> (RatPoly, Rational, Kernel) {
    let degree = rng.gen_range(0..=max_degree);
    let coeffs: Vec<Rational> = (0..=degree)
        .map(|_| Rational::from(rng.gen_range(-9i64..=9)))
        .collect();
    let den: i64 = rng.gen_range(1..=8);
    let num: i64 = rng.gen_range(1..=3 * den);
    let kind = if rng.gen_bool(0.5) {
        Kernel::Exp
    } else {
        Kernel::Sin
    };
    (
        RatPoly::from_coeffs(coeffs),
        Rational::from((num, den)),
        kind,
    )
}

pub fn identity_check(
    report: &mut Report,
    samples: usize,
    seed: u64,
    max_degree: usize,
    eps: &Rational,
) -> CmdResult {
    report.input("samples", samples);
    report.input("seed", seed);
    report.input("max_degree", max_degree);
    report.input("eps", frac(eps));
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut rows = Vec::with_capacity(samples);
    let mut failures = 0usize;
    for index in 0..samples {
        let (f, c, kind) = random_instance(&mut rng, max_degree);
        let (exact, telescopes) = match kind {
            Kernel::Exp => {
                let big_f = f_exp(&f);
                (
                    exp_integral_exact(&f, &c).enclose(eps)?,
                    &big_f + &big_f.derivative() == f,
                )
            }
            Kernel::Sin => {
                let big_f = f_sin(&f);
                (
                    sin_integral_exact(&f, &c).enclose(eps)?,
                    &big_f + &big_f.nth_derivative(2) == f,
                )
            }
        };
        let series = enclose_integral_series(&f, &c, kind, eps)?;
        let agree = exact.intersects(&series) && exact.width() <= *eps && series.width() <= *eps;
        if !(agree && telescopes) {
            failures += 1;
            report.line(format!("sample {index}: f = {f}, c = {c} disagrees"));
        }
        rows.push(json!({
            "index": index.to_string(),
            "kernel": kernel_name(kind),
            "f": f.to_string(),
            "c": frac(&c),
            "exact": enclosure(&exact),
            "series": enclosure(&series),
            "agree": agree,
            "telescoping": telescopes,
        }));
    }
    report.line(format!(
        "{} of {samples} random instances: exact form and series enclosure agree, telescoping identity holds",
        samples - failures
    ));
    report.results = json!({ "rows": rows, "failures": failures.to_string() });
    if failures > 0 {
        report.status = Status::Error;
        return Err(CliError::Defect(format!("{failures} oracle disagreements")));
    }
    Ok(())
}

fn kernel_name(k: Kernel) -> &'static str {
    match k {
        Kernel::Exp => "exp",
        Kernel::Sin => "sin",
    }
}

/// As many convergents as the enclosure determines, up to `k`.
fn determined_convergents(x: &Enclosure, k: usize) -> Result<Vec<Rational>, CliError> {
    match cf_convergents(x, k) {
        Err(Error::IndeterminateDigit { index }) if index > 0 => Ok(cf_convergents(x, index)?),
        Err(Error::IndeterminateDigit { .. }) => Ok(Vec::new()),
        other => Ok(other?),
    }
}

pub fn approx_e(
    report: &mut Report,
    r: &Integer,
    n_max: u64,
    cf_terms: usize,
    eps: &Rational,
) -> CmdResult {
    report.input("r", r);
    report.input("n_max", n_max);
    report.input("cf_terms", cf_terms);
    report.input("eps", frac(eps));
    let rows = er_error_table(r, n_max, eps)?;
    let exp_r = enclose_exp(&Rational::from(r), eps)?;
    let convergents = determined_convergents(&exp_r, cf_terms)?;
    report.line(format!("rational approximations F(0)/F(r) to e^{r}"));
    let mut out = Vec::with_capacity(rows.len());
    for row in &rows {
        let Some(a) = &row.approximant else {
            report.line(format!("n = {:2}  degenerate: F(r) = 0", row.n));
            out.push(json!({ "n": row.n.to_string(), "degenerate": true }));
            continue;
        };
        let err = row
            .error
            .as_ref()
            .expect("non-degenerate rows carry an error");
        let bound = row
            .bound
            .as_ref()
            .expect("non-degenerate rows carry a bound");
        let neg = Rational::from(-bound);
        let within = err.is_subset_of(&Enclosure::new(neg, bound.clone())?);
        let in_cf = convergents.contains(a);
        report.line(format!(
            "n = {:2}  {a:<24} error {}  bound {}{}",
            row.n,
            approx(&err.midpoint(), 4),
            approx(bound, 4),
            if in_cf {
                "  (continued-fraction convergent)"
            } else {
                ""
            }
        ));
        out.push(json!({
            "n": row.n.to_string(),
            "degenerate": false,
            "approximant": frac(a),
            "error": enclosure(err),
            "bound": frac(bound),
            "error_within_bound": within,
            "is_cf_convergent": in_cf,
        }));
    }
    let cf: Vec<String> = convergents.iter().map(frac).collect();
    report.line(format!(
        "convergents of e^{r}: {}",
        convergents
            .iter()
            .map(|c| c.to_string())
            .collect::<Vec<_>>()
            .join(", ")
    ));
    report.results = json!({ "rows": out, "cf_convergents": cf });
    Ok(())
}

pub fn fourier_demo(report: &mut Report, q_max: u64, eps: &Rational) -> CmdResult {
    report.input("q_max", q_max);
    report.input("eps", frac(eps));
    let mut rows = Vec::new();
    let mut all = true;
    let zero = Rational::new();
    for q in 1..=q_max {
        let cert = fourier_witness(q, eps)?;
        let e = &cert.enclosed_side;
        let within = e.lo() > &zero && e.hi() <= &cert.bound;
        all &= within && cert.verdict == Verdict::Falsified;
        report.line(format!(
            "q = {q:3}  T in {}  < 1/{q}: {within}",
            approx_enclosure(e)
        ));
        rows.push(json!({
            "q": q.to_string(),
            "integer_side": int(&cert.integer_side),
            "enclosed_side": enclosure(e),
            "bound": frac(&cert.bound),
            "within_bound": within,
            "verdict": cert.verdict.as_str(),
        }));
    }
    report.status = if all {
        Status::Falsified
    } else {
        Status::Indeterminate
    };
    report.results = json!({ "rows": rows });
    Ok(())
}

pub fn naive_bound_demo(report: &mut Report, q_max: u64) -> CmdResult {
    report.input("q_max", q_max);
    let mut rows = Vec::new();
    for r in 1u64..=2 {
        for q in r..=q_max {
            let b = naive_er_bound(&Integer::from(r), &Integer::from(q))?;
            report.line(format!(
                "r = {r}  q = {q:3}  r^(q+1)/(q+1-r) = {:<12} {}",
                b.bound.to_string(),
                if b.fails {
                    "fails (>= 1)"
                } else {
                    "works (< 1)"
                }
            ));
            rows.push(json!({
                "r": r.to_string(),
                "q": q.to_string(),
                "bound": frac(&b.bound),
                "fails": b.fails,
            }));
        }
    }
    report.line("the geometric tail forces a contradiction only for r = 1, q >= 2");
    report.results = json!({ "rows": rows });
    Ok(())
}
