//! The `Report` envelope and exact JSON encodings.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use niven_core::{Enclosure, Integer, Rational};
use rug::ops::Pow;
use serde_json::{json, Map, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Ok,
    Falsified,
    Indeterminate,
    Error,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Ok => "ok",
            Status::Falsified => "falsified",
            Status::Indeterminate => "indeterminate",
            Status::Error => "error",
        }
    }
}

/// One command's output. `text` is the human rendering and is not part of
/// the JSON.
#[derive(Debug)]
pub struct Report {
    pub command: String,
    pub inputs: BTreeMap<String, String>,
    pub results: Value,
    pub precision: Rational,
    pub status: Status,
    pub text: String,
}

impl Report {
    pub fn new(command: &str, precision: &Rational) -> Self {
        Report {
            command: command.to_string(),
            inputs: BTreeMap::new(),
            results: Value::Null,
            precision: precision.clone(),
            status: Status::Ok,
            text: String::new(),
        }
    }

    pub fn input(&mut self, key: &str, value: impl ToString) {
        self.inputs.insert(key.to_string(), value.to_string());
    }

    pub fn line(&mut self, s: impl AsRef<str>) {
        self.text.push_str(s.as_ref());
        self.text.push('\n');
    }

    pub fn to_value(&self) -> Value {
        let inputs: Map<String, Value> = self
            .inputs
            .iter()
            .map(|(k, v)| (k.clone(), Value::String(v.clone())))
            .collect();
        json!({
            "command": self.command,
            "inputs": inputs,
            "results": self.results,
            "precision": frac(&self.precision),
            "status": self.status.as_str(),
        })
    }

    /// Canonical serialization: sorted keys, two-space indent, trailing
    /// newline. Numbers never appear as JSON floats.
    pub fn to_json(&self) -> String {
        canonical(&self.to_value())
    }
}

pub fn canonical(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("a Value always serializes");
    s.push('\n');
    s
}

pub fn frac(x: &Rational) -> String {
    format!("{}/{}", x.numer(), x.denom())
}

pub fn int(x: &Integer) -> String {
    x.to_string()
}

pub fn enclosure(e: &Enclosure) -> Value {
    json!({ "lo": frac(e.lo()), "hi": frac(e.hi()) })
}

/// Decimal approximation with `digits` significant digits, for display.
pub fn approx(x: &Rational, digits: u32) -> String {
    if *x == 0 {
        return "0".into();
    }
    let sign = if *x < 0 { "-" } else { "" };
    let a = Rational::from(x.abs_ref());
    let bits = i64::from(a.numer().significant_bits()) - i64::from(a.denom().significant_bits());
    let mut e10 = (bits as f64 * std::f64::consts::LOG10_2).floor() as i64;
    let lo = Integer::from(10).pow(digits - 1);
    let hi = Integer::from(10).pow(digits);
    let mantissa = loop {
        let k = i64::from(digits) - 1 - e10;
        let p = Rational::from(Integer::from(10).pow(k.unsigned_abs() as u32));
        let scaled = if k >= 0 {
            Rational::from(&a * &p)
        } else {
            Rational::from(&a / &p)
        };
        let m = scaled.round().numer().clone();
        if m >= hi {
            e10 += 1;
        } else if m < lo {
            e10 -= 1;
        } else {
            break m;
        }
    };
    let m = mantissa.to_string();
    let (head, tail) = m.split_at(1);
    let tail = tail.trim_end_matches('0');
    let mut out = format!("{sign}{head}");
    if !tail.is_empty() {
        let _ = write!(out, ".{tail}");
    }
    if e10 != 0 {
        let _ = write!(out, "e{e10}");
    }
    out
}

pub fn approx_enclosure(e: &Enclosure) -> String {
    format!("[{}, {}]", approx(e.lo(), 12), approx(e.hi(), 12))
}

/// Short rendering of a possibly enormous integer.
pub fn abbrev(x: &Integer) -> String {
    let s = x.to_string();
    let digits = s.trim_start_matches('-').len();
    if digits <= 40 {
        return s;
    }
    let (sign, body) = match s.strip_prefix('-') {
        Some(rest) => ("-", rest),
        None => ("", &s[..]),
    };
    format!(
        "{sign}{}...{} ({digits} digits)",
        &body[..16],
        &body[body.len() - 8..]
    )
}
