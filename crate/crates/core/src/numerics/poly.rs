use std::cmp::Ordering;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::enclosure::Enclosure;

/// Dense univariate polynomial over Q, coefficients in ascending order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Poly {
    c: Vec<BigRational>,
}

impl Poly {
    pub fn new(mut c: Vec<BigRational>) -> Self {
        while c.last().is_some_and(Zero::is_zero) {
            c.pop();
        }
        Self { c }
    }

    pub fn zero() -> Self {
        Self { c: Vec::new() }
    }

    pub fn constant(x: BigRational) -> Self {
        Self::new(vec![x])
    }

    /// From integer coefficients `c_k, ..., c_0` (highest degree first).
    pub fn from_integers_desc(coeffs: &[BigInt]) -> Self {
        Self::new(coeffs.iter().rev().cloned().map(BigRational::from_integer).collect())
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.c
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&BigRational> {
        self.c.last()
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.c.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn sign_at(&self, x: &BigRational) -> Ordering {
        self.eval(x).cmp(&BigRational::zero())
    }

    /// Interval Horner evaluation with outward dyadic rounding at `bits`.
    pub fn eval_enclosure(&self, x: &Enclosure, bits: u32) -> Enclosure {
        let mut acc = Enclosure::point(BigRational::zero());
        for c in self.c.iter().rev() {
            acc = acc.mul(x).add_rational(c).round_out(bits);
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.c
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigRational::from_integer(BigInt::from(i)))
                .collect(),
        )
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            Some(l) => Self::new(self.c.iter().map(|c| c / l).collect()),
            None => Self::zero(),
        }
    }

    pub fn neg(&self) -> Self {
        Self { c: self.c.iter().map(|c| -c).collect() }
    }

    pub fn add(&self, other: &Poly) -> Self {
        let n = self.c.len().max(other.c.len());
        let z = BigRational::zero();
        Self::new((0..n).map(|i| self.c.get(i).unwrap_or(&z) + other.c.get(i).unwrap_or(&z)).collect())
    }

    pub fn sub(&self, other: &Poly) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Poly) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![BigRational::zero(); self.c.len() + other.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.c.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    pub fn div_rem(&self, m: &Poly) -> (Poly, Poly) {
        let dm = m.degree().expect("division by the zero polynomial");
        let lead = m.c[dm].clone();
        let mut r = self.c.clone();
        let mut q = vec![BigRational::zero(); self.c.len().saturating_sub(dm)];
        while r.len() > dm {
            let top = r.len() - 1;
            let f = &r[top] / &lead;
            if !f.is_zero() {
                for (j, mc) in m.c.iter().enumerate() {
                    r[top - dm + j] -= &f * mc;
                }
                q[top - dm] = f;
            }
            r.pop();
            while r.last().is_some_and(Zero::is_zero) && r.len() > dm {
                r.pop();
            }
        }
        (Self::new(q), Self::new(r))
    }

    pub fn rem(&self, m: &Poly) -> Poly {
        self.div_rem(m).1
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &Poly) -> Poly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r.monic();
        }
        a.monic()
    }

    /// Whether some root lies in the closed interval `[lo, hi]`.
    pub fn has_root_in(&self, lo: &BigRational, hi: &BigRational) -> bool {
        self.is_zero() || self.sign_at(lo) == Ordering::Equal || self.sturm_count(lo, hi) > 0
    }

    /// Number of distinct real roots in the half-open interval `(lo, hi]`.
    pub fn sturm_count(&self, lo: &BigRational, hi: &BigRational) -> usize {
        if self.degree().unwrap_or(0) == 0 {
            return 0;
        }
        let seq = self.sturm_sequence();
        let changes = |x: &BigRational| {
            let mut count = 0usize;
            let mut last = Ordering::Equal;
            for p in &seq {
                let s = p.sign_at(x);
                if s != Ordering::Equal {
                    if last != Ordering::Equal && s != last {
                        count += 1;
                    }
                    last = s;
                }
            }
            count
        };
        changes(lo).saturating_sub(changes(hi))
    }

    fn sturm_sequence(&self) -> Vec<Poly> {
        let mut seq = vec![self.clone(), self.derivative()];
        loop {
            let n = seq.len();
            if seq[n - 1].is_zero() {
                seq.pop();
                break;
            }
            let r = seq[n - 2].rem(&seq[n - 1]).neg();
            if r.is_zero() {
                break;
            }
            seq.push(r);
        }
        seq
    }

    pub fn is_one(&self) -> bool {
        self.c.len() == 1 && self.c[0].is_one()
    }

    pub fn has_integer_coeffs(&self) -> bool {
        self.c.iter().all(|c| c.is_integer())
    }

    pub fn constant_term(&self) -> BigRational {
        self.c.first().cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn abs_coeff_bound(&self) -> BigRational {
        self.c.iter().map(|c| c.abs()).fold(BigRational::zero(), |a, b| if b > a { b } else { a })
    }
}
