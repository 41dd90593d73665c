//! Block schedules, the alphabets `M_d`, points of the Cantor sets `E_N` and residual witnesses.

mod alphabet;
mod point;
mod residual;
mod schedule;

pub use alphabet::{block_alphabet, BlockAlphabet};
pub(crate) use point::block_rng;
pub use point::{construct_point, construct_prefix, LevelRecord, LevelSetPoint, LocalDimension};
pub use residual::{residual_witness, ResidualWitness};
pub use schedule::{make_schedule, raw_schedule, Schedule};

use crate::numerics::{BetaSpec, Enclosure};

/// Enclosure of `sum d_i beta^-i` by interval Horner evaluation.
pub(crate) fn series_enclosure(beta: &BetaSpec, digits: &[u32], bits: u32) -> Enclosure {
    if beta.as_rational().is_some() {
        return beta.elem_enclosure(&beta.elem_series(digits), bits);
    }
    let inv = beta.refine(bits + 16).recip().expect("beta > 1");
    digits.iter().rev().fold(Enclosure::from_integer(0), |v, &d| {
        v.add_rational(&num_rational::BigRational::from_integer(d.into())).mul(&inv).round_out(bits + 16)
    })
}
