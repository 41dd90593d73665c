//! Shared inputs for the benchmarks.

use betadyn::numerics::rat;
use betadyn::BetaSpec;

pub fn golden() -> BetaSpec {
    "poly:1,-1,-1@1,2".parse().expect("valid base")
}

pub fn tribonacci() -> BetaSpec {
    "poly:1,-1,-1,-1@1,2".parse().expect("valid base")
}

pub fn rational_base() -> BetaSpec {
    BetaSpec::rational(rat(9, 5)).expect("valid base")
}

/// Bases paired with labels for parameterized groups.
pub fn bases() -> Vec<(&'static str, BetaSpec)> {
    vec![("golden", golden()), ("tribonacci", tribonacci()), ("nine_fifths", rational_base())]
}
