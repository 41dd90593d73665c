//! Closed-form dimension values and a cylinder box-counting estimator.

mod boxcount;

pub use boxcount::{box_count, box_count_points, BoxCountOptions, BoxCountReport, MIN_SAMPLE};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum DimensionValue {
    Value(f64),
    Empty,
    /// Full Lebesgue measure, hence dimension 1.
    FullMeasure,
}

impl DimensionValue {
    /// Numeric dimension; `None` for the empty set.
    pub fn value(self) -> Option<f64> {
        match self {
            DimensionValue::Value(v) => Some(v),
            DimensionValue::FullMeasure => Some(1.0),
            DimensionValue::Empty => None,
        }
    }

    pub fn is_empty(self) -> bool {
        self == DimensionValue::Empty
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    Eab,
    Ea,
    Fb,
    VGeq,
    U,
    UHat,
    PVGeq,
    PU,
    PUHat,
}

impl Family {
    pub const ALL: [Family; 9] =
        [Family::Eab, Family::Ea, Family::Fb, Family::VGeq, Family::U, Family::UHat, Family::PVGeq, Family::PU, Family::PUHat];

    pub fn name(self) -> &'static str {
        match self {
            Family::Eab => "Eab",
            Family::Ea => "Ea",
            Family::Fb => "Fb",
            Family::VGeq => "Vgeq",
            Family::U => "U",
            Family::UHat => "Uhat",
            Family::PVGeq => "PVgeq",
            Family::PU => "PU",
            Family::PUHat => "PUhat",
        }
    }

    /// Parameter names, in call order.
    pub fn params(self) -> &'static [&'static str] {
        match self {
            Family::Eab => &["a", "b"],
            Family::Ea => &["a"],
            Family::Fb => &["b"],
            Family::VGeq | Family::PVGeq => &["v"],
            Family::U | Family::PU => &["vhat", "v"],
            Family::UHat | Family::PUHat => &["vhat"],
        }
    }
}

impl std::str::FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Family::ALL
            .into_iter()
            .find(|f| f.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::Parse { what: "formula family", input: s.into() })
    }
}

/// A family together with its parameters.
#[derive(Clone, Debug, PartialEq)]
pub struct DimensionFormula {
    pub family: Family,
    pub params: Vec<f64>,
}

impl DimensionFormula {
    pub fn new(family: Family, params: Vec<f64>) -> Result<Self> {
        if params.len() != family.params().len() {
            return Err(Error::DomainError(format!(
                "{} takes {} parameter(s), got {}",
                family.name(),
                family.params().len(),
                params.len()
            )));
        }
        Ok(Self { family, params })
    }

    pub fn evaluate(&self) -> Result<DimensionValue> {
        let p = &self.params;
        match self.family {
            Family::Eab => dim_e_ab(p[0], p[1]),
            Family::Ea => dim_e_a(p[0]),
            Family::Fb => dim_f_b(p[0]).map(DimensionValue::Value),
            Family::VGeq => dim_v_geq(p[0]).map(DimensionValue::Value),
            Family::PVGeq => dim_p_v_geq(p[0]).map(DimensionValue::Value),
            Family::U => dim_u(p[0], p[1]),
            Family::PU => dim_p_u(p[0], p[1]),
            Family::UHat => dim_u_hat(p[0]).map(DimensionValue::Value),
            Family::PUHat => dim_p_u_hat(p[0]).map(DimensionValue::Value),
        }
    }
}

fn check_unit(name: &str, x: f64) -> Result<()> {
    if (0.0..=1.0).contains(&x) {
        Ok(())
    } else {
        Err(Error::DomainError(format!("{name} = {x} must lie in [0, 1]")))
    }
}

/// `1 - b^2 (1-a) / (b-a)` without domain checks.
pub fn e_ab_factor(a: f64, b: f64) -> f64 {
    1.0 - b * b * (1.0 - a) / (b - a)
}

pub fn dim_e_ab(a: f64, b: f64) -> Result<DimensionValue> {
    check_unit("a", a)?;
    check_unit("b", b)?;
    if a == 0.0 && b == 0.0 {
        return Ok(DimensionValue::FullMeasure);
    }
    if a > b / (1.0 + b) {
        return Ok(DimensionValue::Empty);
    }
    Ok(DimensionValue::Value(e_ab_factor(a, b)))
}

pub fn dim_e_a(a: f64) -> Result<DimensionValue> {
    check_unit("a", a)?;
    if a > 0.5 {
        return Ok(DimensionValue::Empty);
    }
    Ok(DimensionValue::Value((1.0 - 2.0 * a).powi(2)))
}

pub fn dim_f_b(b: f64) -> Result<f64> {
    check_unit("b", b)?;
    Ok(1.0 - b)
}

/// `1 / (1 + v)`; `v = +inf` gives 0.
pub fn dim_v_geq(v: f64) -> Result<f64> {
    if v.is_nan() || v < 0.0 {
        return Err(Error::DomainError(format!("v = {v} must be nonnegative")));
    }
    Ok(if v.is_infinite() { 0.0 } else { 1.0 / (1.0 + v) })
}

pub fn dim_u(vhat: f64, v: f64) -> Result<DimensionValue> {
    if !(vhat > 0.0 && vhat < 1.0) {
        return Err(Error::DomainError(format!("vhat = {vhat} must lie in (0, 1)")));
    }
    if !(v > 0.0 && v.is_finite()) {
        return Err(Error::DomainError(format!("v = {v} must be positive and finite")));
    }
    if v < vhat / (1.0 - vhat) {
        return Ok(DimensionValue::Empty);
    }
    Ok(DimensionValue::Value((v - (1.0 + v) * vhat) / ((1.0 + v) * (v - vhat))))
}

pub fn dim_u_hat(vhat: f64) -> Result<f64> {
    check_unit("vhat", vhat)?;
    Ok(((1.0 - vhat) / (1.0 + vhat)).powi(2))
}

pub fn dim_p_v_geq(v: f64) -> Result<f64> {
    dim_v_geq(v)
}

pub fn dim_p_u(vhat: f64, v: f64) -> Result<DimensionValue> {
    dim_u(vhat, v)
}

pub fn dim_p_u_hat(vhat: f64) -> Result<f64> {
    dim_u_hat(vhat)
}
