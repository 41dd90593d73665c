use std::cmp::Ordering;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Closed interval `[lo, hi]` with exact rational endpoints.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Enclosure {
    lo: BigRational,
    hi: BigRational,
}

impl Enclosure {
    pub fn new(lo: BigRational, hi: BigRational) -> Result<Self> {
        if lo > hi {
            return Err(Error::InvalidDigits(format!("empty enclosure [{lo}, {hi}]")));
        }
        Ok(Self { lo, hi })
    }

    pub(crate) fn new_unchecked(lo: BigRational, hi: BigRational) -> Self {
        debug_assert!(lo <= hi);
        Self { lo, hi }
    }

    pub fn point(x: BigRational) -> Self {
        Self { lo: x.clone(), hi: x }
    }

    pub fn from_integer(k: i64) -> Self {
        Self::point(BigRational::from_integer(BigInt::from(k)))
    }

    pub fn lo(&self) -> &BigRational {
        &self.lo
    }

    pub fn hi(&self) -> &BigRational {
        &self.hi
    }

    pub fn into_bounds(self) -> (BigRational, BigRational) {
        (self.lo, self.hi)
    }

    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }

    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }

    pub fn midpoint(&self) -> BigRational {
        (&self.lo + &self.hi) / BigRational::from_integer(BigInt::from(2))
    }

    pub fn contains(&self, x: &BigRational) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    pub fn contains_enclosure(&self, other: &Enclosure) -> bool {
        self.lo <= other.lo && other.hi <= self.hi
    }

    /// Width at most `2^-bits`.
    pub fn width_at_most(&self, bits: u32) -> bool {
        self.width() * pow2(bits as i64) <= BigRational::one()
    }

    /// Certified comparison; `None` when the intervals overlap.
    pub fn compare(&self, other: &Enclosure) -> Option<Ordering> {
        if self.is_point() && other.is_point() && self.lo == other.lo {
            Some(Ordering::Equal)
        } else if self.hi < other.lo {
            Some(Ordering::Less)
        } else if other.hi < self.lo {
            Some(Ordering::Greater)
        } else {
            None
        }
    }

    /// Floor of every member when they all share one.
    pub fn certified_floor(&self) -> Option<BigInt> {
        let k = self.lo.floor().to_integer();
        let next = BigRational::from_integer(&k + 1);
        (self.hi < next).then_some(k)
    }

    pub fn neg(&self) -> Self {
        Self { lo: -&self.hi, hi: -&self.lo }
    }

    pub fn add(&self, other: &Enclosure) -> Self {
        Self { lo: &self.lo + &other.lo, hi: &self.hi + &other.hi }
    }

    pub fn sub(&self, other: &Enclosure) -> Self {
        Self { lo: &self.lo - &other.hi, hi: &self.hi - &other.lo }
    }

    pub fn add_rational(&self, x: &BigRational) -> Self {
        Self { lo: &self.lo + x, hi: &self.hi + x }
    }

    pub fn mul(&self, other: &Enclosure) -> Self {
        let c = [
            &self.lo * &other.lo,
            &self.lo * &other.hi,
            &self.hi * &other.lo,
            &self.hi * &other.hi,
        ];
        let lo = c.iter().min().cloned().unwrap_or_else(BigRational::zero);
        let hi = c.iter().max().cloned().unwrap_or_else(BigRational::zero);
        Self { lo, hi }
    }

    pub fn scale(&self, x: &BigRational) -> Self {
        let a = &self.lo * x;
        let b = &self.hi * x;
        if a <= b {
            Self { lo: a, hi: b }
        } else {
            Self { lo: b, hi: a }
        }
    }

    /// Reciprocal of a strictly positive enclosure.
    pub fn recip(&self) -> Option<Self> {
        if !self.lo.is_positive() {
            return None;
        }
        Some(Self { lo: self.hi.recip(), hi: self.lo.recip() })
    }

    pub fn powi(&self, e: u64) -> Self {
        let mut acc = Enclosure::from_integer(1);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Outward rounding to dyadic endpoints with `bits` fractional bits.
    pub fn round_out(&self, bits: u32) -> Self {
        Self { lo: dyadic_floor(&self.lo, bits), hi: dyadic_ceil(&self.hi, bits) }
    }

    pub fn to_f64(&self) -> f64 {
        rational_to_f64(&self.midpoint())
    }

    pub fn lo_f64(&self) -> f64 {
        rational_to_f64(&self.lo)
    }

    pub fn hi_f64(&self) -> f64 {
        rational_to_f64(&self.hi)
    }

    /// Natural logarithm bounds of a positive enclosure, widened by a few ulps.
    pub fn ln_bounds(&self) -> Option<(f64, f64)> {
        if !self.lo.is_positive() {
            return None;
        }
        let lo = ln_rational(&self.lo);
        let hi = ln_rational(&self.hi);
        Some((lo - lo.abs() * 1e-14 - 1e-300, hi + hi.abs() * 1e-14 + 1e-300))
    }
}

impl fmt::Display for Enclosure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let digits = f.precision().unwrap_or(20);
        write!(
            f,
            "[{}, {}]",
            to_decimal(&self.lo, digits, Rounding::Down),
            to_decimal(&self.hi, digits, Rounding::Up)
        )
    }
}

pub fn pow2(e: i64) -> BigRational {
    let p = BigInt::one() << e.unsigned_abs();
    if e >= 0 {
        BigRational::from_integer(p)
    } else {
        BigRational::new(BigInt::one(), p)
    }
}

pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn dyadic_floor(x: &BigRational, bits: u32) -> BigRational {
    let scaled = (x * pow2(bits as i64)).floor().to_integer();
    BigRational::new(scaled, BigInt::one() << bits)
}

pub fn dyadic_ceil(x: &BigRational, bits: u32) -> BigRational {
    let scaled = (x * pow2(bits as i64)).ceil().to_integer();
    BigRational::new(scaled, BigInt::one() << bits)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Rounding {
    Down,
    Up,
}

/// Fixed-point decimal string with `digits` fractional digits, rounded in the given direction.
pub fn to_decimal(x: &BigRational, digits: usize, rounding: Rounding) -> String {
    let scale = BigInt::from(10u32).pow(digits as u32);
    let scaled = x * BigRational::from_integer(scale.clone());
    let q = match rounding {
        Rounding::Down => scaled.floor().to_integer(),
        Rounding::Up => scaled.ceil().to_integer(),
    };
    let negative = q.is_negative();
    let (int, frac) = q.abs().div_rem(&scale);
    let mut s = String::new();
    if negative {
        s.push('-');
    }
    s.push_str(&int.to_string());
    if digits > 0 {
        let f = frac.to_string();
        s.push('.');
        for _ in f.len()..digits {
            s.push('0');
        }
        s.push_str(&f);
    }
    s
}

/// Parse `p/q`, an integer, or a decimal literal (optionally with exponent) exactly.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let err = || Error::Parse { what: "rational", input: s.to_string() };
    let t = s.trim();
    if t.is_empty() {
        return Err(err());
    }
    if let Some((p, q)) = t.split_once('/') {
        let p: BigInt = p.trim().parse().map_err(|_| err())?;
        let q: BigInt = q.trim().parse().map_err(|_| err())?;
        if q.is_zero() {
            return Err(err());
        }
        return Ok(BigRational::new(p, q));
    }
    let (mantissa, exp) = match t.find(['e', 'E']) {
        Some(i) => (&t[..i], t[i + 1..].parse::<i64>().map_err(|_| err())?),
        None => (t, 0),
    };
    let (neg, body) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = body.split_once('.').unwrap_or((body, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(err());
    }
    if !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit()) {
        return Err(err());
    }
    let digits = format!("{int_part}{frac_part}");
    let mut num: BigInt = if digits.is_empty() { BigInt::zero() } else { digits.parse().map_err(|_| err())? };
    if neg {
        num = -num;
    }
    let e = exp - frac_part.len() as i64;
    let ten = BigInt::from(10u32);
    let value = if e >= 0 {
        BigRational::from_integer(num * ten.pow(e as u32))
    } else {
        BigRational::new(num, ten.pow((-e) as u32))
    };
    Ok(value)
}

pub fn rational_to_f64(x: &BigRational) -> f64 {
    if x.is_zero() {
        return 0.0;
    }
    let sign = if x.is_negative() { -1.0 } else { 1.0 };
    let num = x.numer().magnitude();
    let den = x.denom().magnitude();
    let shift = 64 + den.bits() as i64 - num.bits() as i64;
    let q = if shift >= 0 { (num << shift as u64) / den } else { num / (den << (-shift) as u64) };
    let m = q.to_u128().unwrap_or(u128::MAX) as f64;
    if shift > 1100 {
        return 0.0;
    }
    if shift < -1100 {
        return sign * f64::INFINITY;
    }
    let s1 = shift / 2;
    sign * m * (-(s1 as f64)).exp2() * (-((shift - s1) as f64)).exp2()
}

/// log2 |n| for nonzero n.
pub fn log2_abs(n: &BigInt) -> f64 {
    log2_biguint(n.magnitude())
}

pub fn log2_biguint(n: &BigUint) -> f64 {
    let bits = n.bits();
    if bits <= 64 {
        return n.to_u64().map_or(f64::NEG_INFINITY, |v| (v as f64).log2());
    }
    let shift = bits - 64;
    let top = (n >> shift).to_u64().unwrap_or(u64::MAX);
    (top as f64).log2() + shift as f64
}

pub fn ln_rational(x: &BigRational) -> f64 {
    if !x.is_positive() {
        return f64::NEG_INFINITY;
    }
    (log2_abs(x.numer()) - log2_abs(x.denom())) * std::f64::consts::LN_2
}
