//! Parameter space `beta in (1, 2]`: self-admissible words, recurrence times, parameter cylinders
//! and the constructions of sets of bases with prescribed orbit of 1.

mod construct;
mod cylinder;
mod witness;

pub use construct::{construct_param_point, ParamPoint, ParamTargets};
pub use cylinder::{param_cylinder, param_cylinder_in, ParamCylinder, DEFAULT_PARAM_UPPER};
pub use witness::{param_residual_witness, ParamWitness};

use crate::admissibility::{parry_check, z_function};
use crate::error::{Error, Result};
use crate::expansion::Word;
use crate::numerics::{solve_unit_equation, BetaSpec};

/// Nonzero first digit, and every proper shift is lexicographically at most the prefix of the same length.
pub fn is_self_admissible(w: &[u32]) -> bool {
    w.first().is_some_and(|&d| d > 0) && parry_check(w, w)
}

/// Recurrence data `(tau, t)` of a self-admissible word.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SelfAdmissibleWord {
    digits: Word,
    tau: usize,
    t: usize,
}

impl SelfAdmissibleWord {
    pub fn new(w: Word) -> Result<Self> {
        let (tau, t) = recurrence(&w)?;
        Ok(Self { digits: w, tau, t })
    }

    pub fn digits(&self) -> &Word {
        &self.digits
    }

    pub fn len(&self) -> usize {
        self.digits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.digits.is_empty()
    }

    pub fn tau(&self) -> usize {
        self.tau
    }

    pub fn t(&self) -> usize {
        self.t
    }

    pub fn non_recurrent(&self) -> bool {
        self.tau == self.digits.len()
    }
}

/// `(tau, t)` with `w = ((w_1..w_tau)^{floor(n/tau)}, w_1..w_t)`.
pub fn recurrence(w: &[u32]) -> Result<(usize, usize)> {
    if !is_self_admissible(w) {
        return Err(Error::NotSelfAdmissible);
    }
    let n = w.len();
    let z = z_function(w);
    let tau = (1..n).find(|&k| z[k] >= n - k).unwrap_or(n);
    let t = n - (n / tau) * tau;
    debug_assert!((0..n).all(|i| w[i] == w[i % tau]));
    Ok((tau, t))
}

/// The base `beta > 1` with `1 = sum w_i beta^-i`.
pub fn beta_from_expansion(w: &[u32], precision: u32) -> Result<BetaSpec> {
    if !is_self_admissible(w) {
        return Err(Error::NotSelfAdmissible);
    }
    let end = w.iter().rposition(|&d| d > 0).map_or(0, |i| i + 1);
    let w = &w[..end];
    let bracket = solve_unit_equation(w, 32)?;
    BetaSpec::from_unit_equation(w, &bracket).map(|b| b.with_precision(precision))
}
