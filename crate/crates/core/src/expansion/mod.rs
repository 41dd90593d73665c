//! Greedy digits, the expansion of 1 and the infinite expansion `eps*`.

mod compressed;
mod one;
mod orbit;
mod stream;
mod word;

pub use compressed::{CompressedWord, RunSummary, Segment};
pub use one::{infinite_expansion_of_one, ExpansionOfOne, InfiniteExpansionOfOne, OneKind, ParryStatus, DEFAULT_PROBE_DEPTH};
pub(crate) use orbit::Orbit;
pub use stream::{digits, transform, DigitStream, Seed};
pub use word::{lex_compare, Word};

use crate::numerics::BetaSpec;

/// Largest digit of the alphabet `{0, ..., ceil(beta)}`.
pub fn alphabet_bound(beta: &BetaSpec) -> u32 {
    beta.ceil()
}

/// Largest digit that occurs in the expansion of a point of `[0, 1)`.
pub fn point_digit_bound(beta: &BetaSpec) -> u32 {
    beta.ceil() - 1
}
