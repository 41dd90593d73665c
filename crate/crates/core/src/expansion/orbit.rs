use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::numerics::{log2_biguint, BetaSpec, Enclosure, FieldElem};

/// Exact orbit `x, T x, T^2 x, ...` under the greedy beta-transformation.
#[derive(Clone, Debug)]
pub(crate) enum Orbit {
    /// Integer base, `x = num / den` with `base * den` fitting in 128 bits.
    Small { base: u128, num: u128, den: u128 },
    /// Rational base `p / q`, `x = num / den` kept unreduced.
    Rational { p: BigInt, q: BigInt, num: BigInt, den: BigInt },
    Field { beta: BetaSpec, x: FieldElem },
}

impl Orbit {
    /// Orbit of a rational `x` in `[0, 1]`.
    pub(crate) fn new(beta: &BetaSpec, x: &BigRational) -> Result<Self> {
        if x.is_negative() || x > &BigRational::one() {
            return Err(Error::InvalidDigits(format!("point {x} outside [0, 1]")));
        }
        if let Some(r) = beta.as_rational() {
            if r.is_integer() {
                let base = r.numer().to_u128();
                let num = x.numer().to_u128();
                let den = x.denom().to_u128();
                if let (Some(base), Some(num), Some(den)) = (base, num, den) {
                    if base.checked_mul(den).is_some() {
                        return Ok(Orbit::Small { base, num, den });
                    }
                }
            }
            return Ok(Orbit::Rational {
                p: r.numer().clone(),
                q: r.denom().clone(),
                num: x.numer().clone(),
                den: x.denom().clone(),
            });
        }
        Ok(Orbit::Field { beta: beta.clone(), x: beta.elem_from_rational(x.clone()) })
    }

    #[cfg(test)]
    pub(crate) fn from_elem(beta: &BetaSpec, x: FieldElem) -> Self {
        Orbit::Field { beta: beta.clone(), x }
    }

    /// Emit the next digit and advance.
    pub(crate) fn step(&mut self) -> Result<u32> {
        match self {
            Orbit::Small { base, num, den } => {
                let mut t = *base * *num;
                if *base <= 8 {
                    let mut d = 0;
                    while t >= *den {
                        t -= *den;
                        d += 1;
                    }
                    *num = t;
                    return Ok(d);
                }
                let d = t / *den;
                *num = t - d * *den;
                Ok(d as u32)
            }
            Orbit::Rational { p, q, num, den } => {
                let t = &*p * &*num;
                let qd = &*q * &*den;
                let (d, r) = t.div_rem(&qd);
                *num = r;
                *den = qd;
                d.to_u32().ok_or_else(|| Error::InvalidDigits("digit overflow".into()))
            }
            Orbit::Field { beta, x } => {
                let bx = beta.elem_mul_beta(x);
                let d = beta.elem_floor_u32(&bx)?;
                *x = beta.elem_add_int(&bx, -(d as i64));
                Ok(d)
            }
        }
    }

    pub(crate) fn is_zero(&self) -> Result<bool> {
        match self {
            Orbit::Small { num, .. } => Ok(*num == 0),
            Orbit::Rational { num, .. } => Ok(num.is_zero()),
            Orbit::Field { beta, x } => beta.elem_is_zero(x),
        }
    }

    pub(crate) fn value(&self, bits: u32) -> Enclosure {
        match self {
            Orbit::Small { num, den, .. } => {
                Enclosure::point(BigRational::new(BigInt::from(*num), BigInt::from(*den)))
            }
            Orbit::Rational { num, den, .. } => Enclosure::point(BigRational::new(num.clone(), den.clone())),
            Orbit::Field { beta, x } => beta.elem_enclosure(x, bits),
        }
    }

    /// `log2` of the current value; `-inf` at an exact zero.
    pub(crate) fn log2_value(&self) -> Result<f64> {
        match self {
            Orbit::Small { num, den, .. } => {
                Ok(if *num == 0 { f64::NEG_INFINITY } else { (*num as f64).log2() - (*den as f64).log2() })
            }
            Orbit::Rational { num, den, .. } => Ok(if num.is_zero() {
                f64::NEG_INFINITY
            } else {
                log2_biguint(num.magnitude()) - log2_biguint(den.magnitude())
            }),
            Orbit::Field { beta, x } => {
                if beta.elem_is_zero(x)? {
                    return Ok(f64::NEG_INFINITY);
                }
                let mut bits = 64;
                loop {
                    let e = beta.elem_enclosure(x, bits);
                    if e.lo().is_positive() {
                        let (lo, hi) = e.ln_bounds().unwrap_or((0.0, 0.0));
                        return Ok((lo + hi) / 2.0 / std::f64::consts::LN_2);
                    }
                    if bits > 1 << 14 {
                        return Err(Error::BoundaryUndecidable { bits });
                    }
                    bits *= 2;
                }
            }
        }
    }
}
