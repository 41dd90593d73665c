use std::cmp::Ordering;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::SelfAdmissibleWord;
use crate::error::{Error, Result};
use crate::expansion::{lex_compare, Word};
use crate::numerics::{pow2, BetaSpec, Enclosure};

/// Right end of the default parameter range `(1, 2]`.
pub const DEFAULT_PARAM_UPPER: u32 = 2;

/// The interval of bases whose expansion of 1 begins with a given word.
#[derive(Clone, Debug)]
pub struct ParamCylinder {
    pub word: SelfAdmissibleWord,
    /// Left endpoint `beta_lower(w)`.
    pub beta_lower: Enclosure,
    /// Right endpoint `beta_upper(w)`, clipped to the search range.
    pub beta_upper: Enclosure,
    pub precision: u32,
}

fn prefix_cmp(beta: &BigRational, w: &[u32]) -> Result<Ordering> {
    let b = BetaSpec::rational(beta.clone())?;
    let e = b.expansion_of_one().eps_one(w.len())?;
    Ok(lex_compare(&e, w))
}

/// Smallest `beta` in `(1, upper]` with `pred(beta)` true, for a predicate false-then-true on the range.
fn bisect(upper: u32, bits: u32, pred: impl Fn(&BigRational) -> Result<bool>) -> Result<Enclosure> {
    let mut lo = BigRational::one();
    let mut hi = BigRational::from_integer(BigInt::from(upper));
    let eps = pow2(-(bits as i64));
    let two = BigRational::from_integer(BigInt::from(2));
    while &hi - &lo > eps {
        let mid = (&lo + &hi) / &two;
        if pred(&mid)? {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Enclosure::new(lo, hi)
}

pub fn param_cylinder(w: &[u32], precision: u32) -> Result<ParamCylinder> {
    param_cylinder_in(w, precision, DEFAULT_PARAM_UPPER)
}

/// Parameter cylinder restricted to `(1, upper]`.
pub fn param_cylinder_in(w: &[u32], precision: u32, upper: u32) -> Result<ParamCylinder> {
    let word = SelfAdmissibleWord::new(Word::new(w.to_vec()))?;
    let bits = precision.max(2 * w.len() as u32 + 40);
    let top = BigRational::from_integer(BigInt::from(upper));
    if prefix_cmp(&top, w)?.is_lt() {
        return Err(Error::EmptyCylinder);
    }
    let beta_lower = bisect(upper, bits, |b| Ok(prefix_cmp(b, w)?.is_ge()))?;
    let beta_upper = bisect(upper, bits, |b| Ok(prefix_cmp(b, w)?.is_gt()))?;
    if beta_upper.hi() <= beta_lower.lo() {
        return Err(Error::EmptyCylinder);
    }
    Ok(ParamCylinder { word, beta_lower, beta_upper, precision: bits })
}

impl ParamCylinder {
    pub fn order(&self) -> usize {
        self.word.len()
    }

    pub fn length(&self) -> Enclosure {
        let lo = (self.beta_upper.lo() - self.beta_lower.hi()).max(BigRational::zero());
        let hi = self.beta_upper.hi() - self.beta_lower.lo();
        Enclosure::new(lo, hi).expect("ordered length bounds")
    }

    /// Enclosure of `beta_upper^{-n+1}`.
    pub fn upper_bound(&self) -> Enclosure {
        let inv = Enclosure::new(BigRational::one() / self.beta_upper.hi(), BigRational::one() / self.beta_upper.lo())
            .expect("ordered reciprocal");
        inv.powi(self.order() as u64 - 1)
    }

    /// `|I| <= beta_upper^{-n+1}` is not refuted by the enclosures; the bound is attained by `(1, 0^k)`.
    pub fn upper_bound_holds(&self) -> bool {
        self.length().lo() <= self.upper_bound().hi()
    }

    /// `|I| <= beta_upper^{-n+1}` is certified.
    pub fn upper_bound_certified(&self) -> bool {
        self.length().hi() <= self.upper_bound().lo()
    }

    /// Enclosure of `C(w) beta_upper^{-n}`, times the correction factor when `t(w) != 0`.
    pub fn lower_bound(&self) -> Enclosure {
        let half = |bl: &BigRational, bu: &BigRational| {
            let c = (bl - BigRational::one()) * (bl - BigRational::one()) / bl;
            let inv = BigRational::one() / bu;
            let n = self.order();
            let mut bound = c * Enclosure::point(inv.clone()).powi(n as u64).lo().clone();
            let (tau, t) = (self.word.tau(), self.word.t());
            if t != 0 {
                let w = self.word.digits();
                let mut s = BigRational::zero();
                let mut scale = BigRational::one();
                for i in t + 1..=tau {
                    scale *= &inv;
                    let d = w[i - 1] + u32::from(i == tau);
                    s += &scale * BigRational::from_integer(d.into());
                }
                bound *= s;
            }
            bound
        };
        let lo = half(self.beta_lower.lo(), self.beta_upper.hi());
        let hi = half(self.beta_lower.hi(), self.beta_upper.lo());
        Enclosure::new(lo, hi).expect("monotone bound")
    }

    /// `|I| >= lower_bound()` is not refuted by the enclosures.
    pub fn lower_bound_holds(&self) -> bool {
        self.length().hi() >= self.lower_bound().lo()
    }

    /// `|I| >= lower_bound()` is certified.
    pub fn lower_bound_certified(&self) -> bool {
        self.length().lo() >= self.lower_bound().hi()
    }

    /// Both endpoint enclosures contain `beta`'s position relative to the cylinder.
    pub fn contains(&self, beta: &BigRational) -> bool {
        beta >= self.beta_lower.hi() && beta < self.beta_upper.lo()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::rat;

    #[test]
    fn single_digit_is_whole_range() {
        let c = param_cylinder(&[1], 64).unwrap();
        assert!(c.beta_lower.hi() - BigRational::one() < pow2(-60));
        assert!(BigRational::from_integer(2.into()) - c.beta_upper.lo() < pow2(-60));
    }

    #[test]
    fn golden_left_endpoint() {
        let c = param_cylinder(&[1, 1], 64).unwrap();
        assert!((c.beta_lower.to_f64() - 1.618_033_988_749_895).abs() < 1e-12);
        assert!(c.upper_bound_holds());
        assert!(c.contains(&rat(17, 10)));
        assert!(!c.contains(&rat(3, 2)));
    }

    #[test]
    fn nesting() {
        let outer = param_cylinder(&[1, 0, 1], 64).unwrap();
        let inner = param_cylinder(&[1, 0, 1, 0], 64).unwrap();
        assert!(inner.beta_lower.lo() >= outer.beta_lower.lo());
        assert!(inner.beta_upper.hi() <= outer.beta_upper.hi());
        assert!(matches!(param_cylinder(&[3], 32), Err(Error::EmptyCylinder)));
    }
}
