//! Exact arithmetic in `Q[x] / (p)`, evaluated at the distinguished root `beta`.
//!
//! `p` may be reducible; equality with zero is decided by checking whether
//! `gcd(p, q)` has a root in the isolating bracket.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::beta::BetaSpec;
use super::enclosure::{log2_abs, Enclosure};
use super::poly::Poly;
use crate::error::{Error, Result};

const PRECISION_CAP: u32 = 1 << 14;

#[derive(Clone, Debug)]
pub(crate) struct Field {
    /// Monic modulus.
    modulus: Poly,
    degree: usize,
    /// `x^-1` reduced modulo the modulus.
    inverse: Vec<BigRational>,
}

impl Field {
    pub(crate) fn new(p: &Poly) -> Self {
        let modulus = p.monic();
        let degree = modulus.degree().unwrap_or(1).max(1);
        let m = modulus.coeffs();
        // x * (x^(d-1) + m_(d-1) x^(d-2) + ... + m_1) = -m_0
        let m0 = m[0].clone();
        let inverse = (0..degree)
            .map(|i| if i + 1 < degree { -&m[i + 1] / &m0 } else { -BigRational::one() / &m0 })
            .collect();
        Self { modulus, degree, inverse }
    }

    pub(crate) fn degree(&self) -> usize {
        self.degree
    }
}

/// Element of `Q(beta)` as a polynomial in `beta` of degree below the modulus degree.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FieldElem {
    c: Vec<BigRational>,
}

impl FieldElem {
    pub fn coeffs(&self) -> &[BigRational] {
        &self.c
    }

    pub fn is_rational(&self) -> bool {
        self.c.iter().skip(1).all(Zero::is_zero)
    }

    fn trivially_zero(&self) -> bool {
        self.c.iter().all(Zero::is_zero)
    }
}

impl BetaSpec {
    pub fn elem_from_rational(&self, x: BigRational) -> FieldElem {
        let mut c = vec![BigRational::zero(); self.field().degree()];
        c[0] = x;
        FieldElem { c }
    }

    pub fn elem_from_int(&self, k: i64) -> FieldElem {
        self.elem_from_rational(BigRational::from_integer(BigInt::from(k)))
    }

    pub fn elem_zero(&self) -> FieldElem {
        self.elem_from_int(0)
    }

    /// The element `beta` itself.
    pub fn elem_beta(&self) -> FieldElem {
        self.elem_mul_beta(&self.elem_from_int(1))
    }

    pub fn elem_add(&self, a: &FieldElem, b: &FieldElem) -> FieldElem {
        FieldElem { c: a.c.iter().zip(&b.c).map(|(x, y)| x + y).collect() }
    }

    pub fn elem_sub(&self, a: &FieldElem, b: &FieldElem) -> FieldElem {
        FieldElem { c: a.c.iter().zip(&b.c).map(|(x, y)| x - y).collect() }
    }

    pub fn elem_add_int(&self, a: &FieldElem, k: i64) -> FieldElem {
        let mut out = a.clone();
        out.c[0] += BigRational::from_integer(BigInt::from(k));
        out
    }

    pub fn elem_scale(&self, a: &FieldElem, k: &BigRational) -> FieldElem {
        FieldElem { c: a.c.iter().map(|x| x * k).collect() }
    }

    pub fn elem_mul_beta(&self, a: &FieldElem) -> FieldElem {
        let f = self.field();
        let d = f.degree;
        let m = f.modulus.coeffs();
        let top = a.c[d - 1].clone();
        let mut c = Vec::with_capacity(d);
        c.push(BigRational::zero());
        c.extend(a.c[..d - 1].iter().cloned());
        if !top.is_zero() {
            for (ci, mi) in c.iter_mut().zip(m) {
                *ci -= &top * mi;
            }
        }
        FieldElem { c }
    }

    pub fn elem_div_beta(&self, a: &FieldElem) -> FieldElem {
        let inv = FieldElem { c: self.field().inverse.clone() };
        self.elem_mul(a, &inv)
    }

    pub fn elem_mul(&self, a: &FieldElem, b: &FieldElem) -> FieldElem {
        let f = self.field();
        let prod = Poly::new(a.c.clone()).mul(&Poly::new(b.c.clone()));
        self.elem_from_poly(&prod.rem(&f.modulus))
    }

    fn elem_from_poly(&self, p: &Poly) -> FieldElem {
        let d = self.field().degree;
        let mut c = p.coeffs().to_vec();
        c.resize(d, BigRational::zero());
        FieldElem { c }
    }

    /// `beta^-n`.
    pub fn elem_beta_pow_neg(&self, n: u64) -> FieldElem {
        self.elem_pow(&FieldElem { c: self.field().inverse.clone() }, n)
    }

    pub fn elem_beta_pow(&self, n: u64) -> FieldElem {
        self.elem_pow(&self.elem_beta(), n)
    }

    fn elem_pow(&self, base: &FieldElem, n: u64) -> FieldElem {
        let mut acc = self.elem_from_int(1);
        let mut b = base.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                acc = self.elem_mul(&acc, &b);
            }
            n >>= 1;
            if n > 0 {
                b = self.elem_mul(&b, &b);
            }
        }
        acc
    }

    /// `sum w_i beta^-i`.
    pub fn elem_series(&self, digits: &[u32]) -> FieldElem {
        if let Some(r) = self.as_rational() {
            let mut v = BigRational::zero();
            for &d in digits.iter().rev() {
                v = (v + BigRational::from_integer(BigInt::from(d))) / r;
            }
            return self.elem_from_rational(v);
        }
        let mut v = self.elem_zero();
        for &d in digits.iter().rev() {
            v = self.elem_div_beta(&self.elem_add_int(&v, d as i64));
        }
        v
    }

    /// Enclosure of the value at `bits` of working precision for `beta`.
    pub fn elem_enclosure(&self, a: &FieldElem, bits: u32) -> Enclosure {
        if a.is_rational() {
            return Enclosure::point(a.c[0].clone());
        }
        let b = self.refine(bits);
        Poly::new(a.c.clone()).eval_enclosure(&b, bits + 16)
    }

    /// Exact test `a == k` for a rational `k`.
    pub fn elem_equals(&self, a: &FieldElem, k: &BigRational) -> bool {
        if a.is_rational() {
            return &a.c[0] == k;
        }
        let mut q = a.c.clone();
        q[0] -= k;
        let q = Poly::new(q);
        if q.is_zero() {
            return true;
        }
        let g = self.field_modulus().gcd(&q);
        if g.degree().unwrap_or(0) == 0 {
            return false;
        }
        let (lo, hi) = self.isolating_bracket();
        g.has_root_in(&lo, &hi)
    }

    fn field_modulus(&self) -> &Poly {
        &self.field().modulus
    }

    fn isolating_bracket(&self) -> (BigRational, BigRational) {
        match self.kind() {
            super::beta::BetaKind::Rational(r) => (r.clone(), r.clone()),
            super::beta::BetaKind::Algebraic { lo, hi, .. } => (lo.clone(), hi.clone()),
        }
    }

    fn start_bits(&self, a: &FieldElem) -> u32 {
        let mag = a
            .c
            .iter()
            .filter(|c| !c.is_zero())
            .map(|c| (log2_abs(c.numer()) - log2_abs(c.denom())).max(0.0))
            .fold(0.0, f64::max);
        let spread = self.field().degree as f64 * 2.0;
        (self.precision().min(256) as f64 + mag + spread).min(PRECISION_CAP as f64) as u32
    }

    pub fn elem_sign(&self, a: &FieldElem) -> Result<Ordering> {
        if a.trivially_zero() {
            return Ok(Ordering::Equal);
        }
        if a.is_rational() {
            return Ok(a.c[0].cmp(&BigRational::zero()));
        }
        let mut bits = self.start_bits(a);
        let mut tested = false;
        loop {
            let e = self.elem_enclosure(a, bits);
            if e.lo().is_positive() {
                return Ok(Ordering::Greater);
            }
            if e.hi().is_negative() {
                return Ok(Ordering::Less);
            }
            if !tested {
                tested = true;
                if self.elem_equals(a, &BigRational::zero()) {
                    return Ok(Ordering::Equal);
                }
            }
            if bits >= PRECISION_CAP {
                return Err(Error::BoundaryUndecidable { bits });
            }
            bits = (bits * 2).min(PRECISION_CAP);
        }
    }

    pub fn elem_cmp(&self, a: &FieldElem, b: &FieldElem) -> Result<Ordering> {
        self.elem_sign(&self.elem_sub(a, b))
    }

    pub fn elem_is_zero(&self, a: &FieldElem) -> Result<bool> {
        Ok(self.elem_sign(a)? == Ordering::Equal)
    }

    /// Certified floor of the value.
    pub fn elem_floor(&self, a: &FieldElem) -> Result<BigInt> {
        if a.is_rational() {
            return Ok(a.c[0].floor().to_integer());
        }
        let mut bits = self.start_bits(a);
        let mut tested: Option<BigInt> = None;
        loop {
            let e = self.elem_enclosure(a, bits);
            if let Some(k) = e.certified_floor() {
                return Ok(k);
            }
            let candidate = e.hi().floor().to_integer();
            if tested.as_ref() != Some(&candidate) {
                if self.elem_equals(a, &BigRational::from_integer(candidate.clone())) {
                    return Ok(candidate);
                }
                tested = Some(candidate);
            }
            if bits >= PRECISION_CAP {
                return Err(Error::BoundaryUndecidable { bits });
            }
            bits = (bits * 2).min(PRECISION_CAP);
        }
    }

    pub fn elem_to_f64(&self, a: &FieldElem) -> f64 {
        self.elem_enclosure(a, 64).to_f64()
    }

    pub(crate) fn elem_floor_u32(&self, a: &FieldElem) -> Result<u32> {
        let k = self.elem_floor(a)?;
        k.to_u32().ok_or_else(|| Error::InvalidDigits(format!("digit {k} out of range")))
    }
}
