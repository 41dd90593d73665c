use num_rational::BigRational;

use crate::admissibility::is_admissible;
use crate::error::{Error, Result};
use crate::expansion::{Orbit, Word};
use crate::numerics::BetaSpec;

/// Source of the values `-log_beta(T^n x)` along an orbit.
pub trait OrbitSource: Sync {
    fn beta(&self) -> &BetaSpec;

    /// `-log_beta(T^n x)` for `n = 1, ..., depth`, `+inf` at exact zeros.
    fn neg_log_orbit(&self, depth: usize) -> Result<Vec<f64>>;
}

/// Exact orbit of a rational point.
pub struct PointOrbit {
    beta: BetaSpec,
    x: BigRational,
}

impl PointOrbit {
    pub fn new(beta: &BetaSpec, x: BigRational) -> Result<Self> {
        Orbit::new(beta, &x)?;
        Ok(Self { beta: beta.clone(), x })
    }
}

impl OrbitSource for PointOrbit {
    fn beta(&self) -> &BetaSpec {
        &self.beta
    }

    fn neg_log_orbit(&self, depth: usize) -> Result<Vec<f64>> {
        let log2_beta = self.beta.ln() / std::f64::consts::LN_2;
        let mut o = Orbit::new(&self.beta, &self.x)?;
        let mut out = Vec::with_capacity(depth);
        for _ in 0..depth {
            o.step()?;
            out.push(-o.log2_value()? / log2_beta);
        }
        Ok(out)
    }
}

/// The point `sum d_i beta^-i` of an admissible finite digit word.
///
/// `T^n x` is read off the shifted digits, so long words need no big-number arithmetic.
pub struct DigitOrbit {
    beta: BetaSpec,
    digits: Word,
}

/// Digits after a zero run that enter the floating-point evaluation.
const MANTISSA_DIGITS: usize = 64;

impl DigitOrbit {
    pub fn new(beta: &BetaSpec, digits: Word) -> Result<Self> {
        if !is_admissible(&digits, beta)? {
            return Err(Error::NotAdmissible);
        }
        Ok(Self { beta: beta.clone(), digits })
    }

    pub fn digits(&self) -> &Word {
        &self.digits
    }
}

impl OrbitSource for DigitOrbit {
    fn beta(&self) -> &BetaSpec {
        &self.beta
    }

    fn neg_log_orbit(&self, depth: usize) -> Result<Vec<f64>> {
        let b = self.beta.to_f64();
        let ln_b = b.ln();
        let d = self.digits.digits();
        let len = d.len();
        // next_nz[i]: first index >= i with a nonzero digit.
        let mut next_nz = vec![len; len + 1];
        for i in (0..len).rev() {
            next_nz[i] = if d[i] != 0 { i } else { next_nz[i + 1] };
        }
        let mantissa = |j: usize| {
            let end = (j + MANTISSA_DIGITS).min(len);
            d[j..end].iter().rev().fold(0.0, |acc, &x| (acc + x as f64) / b)
        };
        Ok((1..=depth)
            .map(|n| {
                if n >= len {
                    return f64::INFINITY;
                }
                let j = next_nz[n];
                if j == len {
                    return f64::INFINITY;
                }
                (j - n) as f64 - mantissa(j).ln() / ln_b
            })
            .collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::rat;

    #[test]
    fn digit_and_point_orbits_agree() {
        let phi: BetaSpec = "poly:1,-1,-1@1,2".parse().unwrap();
        let x = rat(2, 7);
        let w = crate::expansion::digits(&x, &phi, 200).unwrap();
        let a = PointOrbit::new(&phi, x).unwrap().neg_log_orbit(100).unwrap();
        let b = DigitOrbit::new(&phi, w).unwrap().neg_log_orbit(100).unwrap();
        for (p, q) in a.iter().zip(&b) {
            assert!((p - q).abs() < 1e-9, "{p} vs {q}");
        }
    }
}
