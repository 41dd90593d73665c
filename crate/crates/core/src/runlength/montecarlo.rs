use num_bigint::{BigInt, RandBigInt};
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::run_profile;
use crate::error::{Error, Result};
use crate::expansion::digits;
use crate::numerics::BetaSpec;

/// Sample statistics of `r_n / log_beta n` over random rational seeds.
#[derive(Clone, Debug, PartialEq)]
pub struct MonteCarloReport {
    pub samples: usize,
    pub n: usize,
    pub mean: f64,
    pub std_dev: f64,
    pub min: f64,
    pub max: f64,
    pub values: Vec<f64>,
}

/// Random rational in `[0, 1)` with an odd denominator near `2^61`, drawn from stream `index`.
pub fn random_seed_point(seed: u64, index: u64) -> BigRational {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    let den: u64 = rng.gen_range(1u64 << 60..1u64 << 61) | 1;
    let den = BigInt::from(den);
    let num = rng.gen_bigint_range(&BigInt::from(0), &den);
    BigRational::new(num, den)
}

/// Erdős–Rényi statistic `r_n / log_beta n` over `samples` seeds, evaluated in parallel.
pub fn erdos_renyi(beta: &BetaSpec, samples: usize, n: usize, seed: u64) -> Result<MonteCarloReport> {
    if n < 2 {
        return Err(Error::InsufficientDepth { depth: n, tail_start: 2 });
    }
    if samples == 0 {
        return Err(Error::InsufficientSample { got: 0, need: 1 });
    }
    let log_n = (n as f64).ln() / beta.ln();
    let values = (0..samples as u64)
        .into_par_iter()
        .map(|i| {
            let x = random_seed_point(seed, i);
            let w = digits(&x, beta, n)?;
            Ok(run_profile(&w).r(n) as f64 / log_n)
        })
        .collect::<Result<Vec<f64>>>()?;
    let mean = values.iter().sum::<f64>() / samples as f64;
    let var = values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / samples as f64;
    let (min, max) = values.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), &v| (a.min(v), b.max(v)));
    Ok(MonteCarloReport { samples, n, mean, std_dev: var.sqrt(), min, max, values })
}
