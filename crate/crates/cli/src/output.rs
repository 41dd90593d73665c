use std::fs;
use std::path::Path;

use betadyn::numerics::{to_decimal, Enclosure, Rounding};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Pow, Signed, Zero};
use serde_json::{json, Value};

use crate::error::{CliError, CliResult};

/// Decimal places carried by `bits` of binary precision.
pub fn places(bits: u32) -> usize {
    (f64::from(bits) * std::f64::consts::LOG10_2).floor() as usize
}

/// A place count no finer than the enclosure supports.
fn meaningful_places(e: &Enclosure, max: usize) -> usize {
    let w = e.width();
    if w.is_zero() {
        return max;
    }
    let mut k = 0;
    let ten = BigRational::from_integer(BigInt::from(10));
    let mut scaled = w;
    while k < max && scaled < BigRational::from_integer(BigInt::from(1)) / &ten {
        scaled *= &ten;
        k += 1;
    }
    k
}

/// Midpoint of the enclosure, rounded to the places it supports.
pub fn decimal(e: &Enclosure, bits: u32) -> String {
    let k = meaningful_places(e, places(bits));
    let half = BigRational::new(BigInt::from(1), BigInt::from(2) * BigInt::from(10).pow(k as u32));
    to_decimal(&(e.midpoint() + half), k, Rounding::Down)
}

/// Outward-rounded bounds at `bits` of precision.
pub fn bounds(e: &Enclosure, bits: u32) -> Value {
    let k = places(bits);
    json!({ "lo": to_decimal(e.lo(), k, Rounding::Down), "hi": to_decimal(e.hi(), k, Rounding::Up) })
}

pub fn rational(x: &BigRational) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else if x.is_negative() {
        format!("-{}/{}", x.numer().abs(), x.denom())
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Finite floats as numbers; infinities and NaN as strings.
pub fn float(x: f64) -> Value {
    if x.is_finite() {
        json!(x)
    } else if x.is_nan() {
        json!("nan")
    } else if x > 0.0 {
        json!("inf")
    } else {
        json!("-inf")
    }
}

pub fn write_file(path: &Path, contents: &str) -> CliResult<()> {
    fs::write(path, contents).map_err(|e| CliError::io(path, e))
}

/// JSON document or `key: value` lines.
pub struct Report {
    json: bool,
    fields: Vec<(String, Value)>,
}

impl Report {
    pub fn new(json: bool) -> Self {
        Self { json, fields: Vec::new() }
    }

    pub fn field(&mut self, key: &str, value: impl Into<Value>) -> &mut Self {
        self.fields.push((key.to_string(), value.into()));
        self
    }

    pub fn render(&self) -> String {
        if self.json {
            let map: serde_json::Map<String, Value> = self.fields.iter().cloned().collect();
            let mut s = serde_json::to_string_pretty(&Value::Object(map)).expect("serializable report");
            s.push('\n');
            s
        } else {
            let mut s = String::new();
            for (k, v) in &self.fields {
                let text = match v {
                    Value::String(t) => t.clone(),
                    other => other.to_string(),
                };
                s.push_str(&format!("{k}: {text}\n"));
            }
            s
        }
    }
}
