use std::cmp::Ordering;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use super::enclosure::{log2_biguint, pow2, Enclosure};
use crate::error::{Error, Result};

const WORKING_CAP: u32 = 1 << 13;
const EXACT_LIMIT: usize = 1 << 14;

/// Enclosure of the root `x > 1` of `1 = sum d_i x^-i`.
pub fn solve_unit_equation(digits: &[u32], precision: u32) -> Result<Enclosure> {
    solve_truncated(digits, None, precision)
}

/// As [`solve_unit_equation`] for a word known only through `prefix`, with every
/// later digit at most `tail_max`.
pub fn solve_unit_equation_truncated(prefix: &[u32], tail_max: u32, precision: u32) -> Result<Enclosure> {
    solve_truncated(prefix, Some(tail_max), precision)
}

fn solve_truncated(digits: &[u32], tail: Option<u32>, precision: u32) -> Result<Enclosure> {
    let Some(&first) = digits.first() else {
        return Err(Error::InvalidDigits("empty digit list".into()));
    };
    if first == 0 {
        return Err(Error::InvalidDigits("leading digit must be positive".into()));
    }
    let sum: u64 = digits.iter().map(|&d| d as u64).sum();
    let Some(t) = tail else {
        if sum <= 1 {
            return Err(Error::RootAtOrBelowOne);
        }
        return bisect_root(&UnitEval { digits, tail: None, max_digit: max_digit(digits, None) }, first, precision);
    };
    if !digits[1..].iter().any(|&d| d > 0) {
        return Err(Error::InvalidDigits("truncated word needs a nonzero digit after the first".into()));
    }
    // the root moves up as the unknown tail grows from 0^inf to t^inf
    let lower = if sum <= 1 {
        BigRational::one()
    } else {
        bisect_root(&UnitEval { digits, tail: None, max_digit: max_digit(digits, None) }, first, precision)?
            .lo()
            .clone()
    };
    let upper = bisect_root(&UnitEval { digits, tail: Some(t), max_digit: max_digit(digits, tail) }, first, precision)?;
    Enclosure::new(lower, upper.hi().clone())
}

fn max_digit(digits: &[u32], tail: Option<u32>) -> u32 {
    digits.iter().copied().chain(tail).max().unwrap_or(0)
}

fn bisect_root(eval: &UnitEval<'_>, first: u32, precision: u32) -> Result<Enclosure> {
    let mut lo = BigRational::from_integer(BigInt::from(first.max(1)));
    let mut hi = BigRational::from_integer(BigInt::from(eval.max_digit as u64 + 1));
    if eval.tail.is_none() && eval.digits[1..].iter().all(|&d| d == 0) {
        return Ok(Enclosure::point(lo));
    }
    debug_assert_eq!(eval.sign(&hi, precision)?, Ordering::Less);
    let target = pow2(-(precision as i64));
    let two = BigRational::from_integer(BigInt::from(2));
    while &hi - &lo > target {
        let mid = (&lo + &hi) / &two;
        match eval.sign(&mid, precision)? {
            Ordering::Equal => return Ok(Enclosure::point(mid)),
            Ordering::Greater => lo = mid,
            Ordering::Less => hi = mid,
        }
    }
    Enclosure::new(lo, hi)
}

struct UnitEval<'a> {
    digits: &'a [u32],
    /// Every digit after the list equals this value.
    tail: Option<u32>,
    max_digit: u32,
}

impl UnitEval<'_> {
    /// Sign of `sum d_i x^-i - 1` at a rational `x > 1`.
    fn sign(&self, x: &BigRational, precision: u32) -> Result<Ordering> {
        let mut wb = precision + 32;
        loop {
            if let Some(s) = self.sign_fixed(x, wb) {
                return Ok(s);
            }
            if wb >= WORKING_CAP {
                break;
            }
            wb = (wb * 2).min(WORKING_CAP);
        }
        if self.digits.len() <= EXACT_LIMIT {
            return Ok(match self.tail {
                None => self.sign_exact(x),
                Some(t) => self.sign_exact_tail(x, t),
            });
        }
        Err(Error::BoundaryUndecidable { bits: wb })
    }

    fn sign_exact(&self, x: &BigRational) -> Ordering {
        // sum d_i q^i a^(n-i) against a^n for x = a/q
        let a = x.numer();
        let q = x.denom();
        let mut acc = BigInt::zero();
        let mut qpow = BigInt::one();
        let mut apow = BigInt::one();
        for &d in self.digits {
            qpow *= q;
            apow *= a;
            acc = acc * a + &qpow * d;
        }
        acc.cmp(&apow)
    }

    fn sign_exact_tail(&self, x: &BigRational, t: u32) -> Ordering {
        let y = BigRational::one() / x;
        let mut acc = BigRational::from_integer(t.into()) * &y / (BigRational::one() - &y);
        for &d in self.digits.iter().rev() {
            acc = (acc + BigRational::from_integer(d.into())) * &y;
        }
        acc.cmp(&BigRational::one())
    }

    fn sign_fixed(&self, x: &BigRational, wb: u32) -> Option<Ordering> {
        let a = x.numer().magnitude();
        let q = x.denom().magnitude();
        let one = BigUint::one() << wb;
        let scaled = q << wb;
        let y_lo = &scaled / a;
        let y_hi = if (&y_lo * a) == scaled { y_lo.clone() } else { &y_lo + 1u32 };
        if y_hi >= one {
            return None;
        }
        let ln_inv_y = log2_biguint(a) - log2_biguint(q);
        let gap = (&one - &y_hi).to_f64().unwrap_or(1.0).max(1.0);
        let slack = (wb as f64 - gap.log2()).max(0.0);
        let need = ((wb as f64 + 8.0 + (self.max_digit as f64 + 1.0).log2() + slack) / ln_inv_y).ceil();
        let need = if need.is_finite() { need as usize + 2 } else { usize::MAX };
        let depth = if self.tail.is_some() { self.digits.len() } else { self.digits.len().min(need) };
        let truncated = depth < self.digits.len();

        let mut lo = BigUint::zero();
        let mut hi = BigUint::zero();
        let mask = &one - 1u32;
        for &d in self.digits[..depth].iter().rev() {
            let dl = BigUint::from(d) << wb;
            lo = ((&lo + &dl) * &y_lo) >> wb;
            let t = (&hi + &dl) * &y_hi;
            let round = (&t & &mask) != BigUint::zero();
            hi = (t >> wb) + if round { 1u32 } else { 0u32 };
        }
        if let Some(t) = self.tail {
            let k = depth as u64 + 1;
            lo += tail_bound(&y_lo, k, t, wb, false);
            hi += tail_bound(&y_hi, k, t, wb, true);
        } else if truncated {
            hi += tail_bound(&y_hi, depth as u64 + 1, self.max_digit, wb, true);
        }
        if !truncated && self.tail.is_none() && lo == hi && lo == one {
            return Some(Ordering::Equal);
        }
        if lo > one {
            Some(Ordering::Greater)
        } else if hi < one {
            Some(Ordering::Less)
        } else {
            None
        }
    }
}

/// Bound for `d * y^k / (1 - y)` in fixed point with `wb` fractional bits, rounded up or down.
fn tail_bound(y: &BigUint, k: u64, d: u32, wb: u32, up: bool) -> BigUint {
    let one = BigUint::one() << wb;
    let mask = &one - 1u32;
    let mut acc = one.clone();
    let mut base = y.clone();
    let mut e = k;
    let mul = |a: &BigUint, b: &BigUint| {
        let t = a * b;
        let round = up && (&t & &mask) != BigUint::zero();
        (t >> wb) + if round { 1u32 } else { 0u32 }
    };
    while e > 0 {
        if e & 1 == 1 {
            acc = mul(&acc, &base);
        }
        e >>= 1;
        if e > 0 {
            base = mul(&base, &base);
            if base.is_zero() {
                break;
            }
        }
    }
    if base.is_zero() && !up {
        return BigUint::zero();
    }
    let denom = &one - y;
    let num = (acc * d) << wb;
    let q = &num / &denom;
    if up && (&q * &denom) != num {
        q + 1u32
    } else {
        q
    }
}

/// Exact sign of `sum d_i x^-i - 1` for a finite digit list.
#[cfg(test)]
fn unit_sign_exact(digits: &[u32], x: &BigRational) -> Ordering {
    UnitEval { digits, tail: None, max_digit: 0 }.sign_exact(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(e: &Enclosure) -> f64 {
        e.to_f64()
    }

    #[test]
    fn trivial_roots() {
        assert_eq!(solve_unit_equation(&[2], 64).unwrap(), Enclosure::from_integer(2));
        assert_eq!(solve_unit_equation(&[3, 0, 0], 64).unwrap(), Enclosure::from_integer(3));
        assert_eq!(solve_unit_equation(&[1], 64), Err(Error::RootAtOrBelowOne));
        assert_eq!(solve_unit_equation(&[1, 0, 0], 64), Err(Error::RootAtOrBelowOne));
        assert!(matches!(solve_unit_equation(&[], 64), Err(Error::InvalidDigits(_))));
        assert!(matches!(solve_unit_equation(&[0, 1], 64), Err(Error::InvalidDigits(_))));
    }

    #[test]
    fn golden_and_tribonacci() {
        let e = solve_unit_equation(&[1, 1], 64).unwrap();
        assert!(e.width_at_most(64));
        assert!((f(&e) - 1.618_033_988_749_895).abs() < 1e-15);
        let e = solve_unit_equation(&[1, 1, 1], 64).unwrap();
        assert!((f(&e) - 1.839_286_755_214_161).abs() < 1e-15);
    }

    #[test]
    fn certified_sign_change() {
        let w = [1, 0, 1, 1, 0, 1];
        let e = solve_unit_equation(&w, 80).unwrap();
        assert_eq!(unit_sign_exact(&w, e.lo()), Ordering::Greater);
        assert_eq!(unit_sign_exact(&w, e.hi()), Ordering::Less);
    }

    #[test]
    fn rational_root_hit_exactly() {
        // 1 = 1/x + 2/x^2 at x = 2
        assert_eq!(solve_unit_equation(&[1, 2], 64).unwrap(), Enclosure::from_integer(2));
    }

    #[test]
    fn truncated_agrees_with_full() {
        let mut w = vec![1, 1, 0, 1];
        w.extend(std::iter::repeat_n(0, 400));
        w.push(1);
        let full = solve_unit_equation(&w, 64).unwrap();
        let trunc = solve_unit_equation_truncated(&w[..300], 1, 64).unwrap();
        assert!(full.hi() >= trunc.lo() && trunc.hi() >= full.lo());
    }
}
