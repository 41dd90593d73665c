use std::collections::HashSet;

use num_rational::BigRational;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::expansion::{digits, Word};
use crate::numerics::BetaSpec;

pub const MIN_SAMPLE: usize = 100;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BoxCountOptions {
    /// Orders dropped at each end of the range before fitting.
    pub trim: usize,
    pub min_sample: usize,
}

impl Default for BoxCountOptions {
    fn default() -> Self {
        Self { trim: 2, min_sample: MIN_SAMPLE }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct BoxCountReport {
    pub orders: Vec<usize>,
    pub counts: Vec<usize>,
    pub fit_orders: (usize, usize),
    pub slope: f64,
    pub intercept: f64,
    /// Root-mean-square residual of the fit.
    pub residual: f64,
}

/// Counts distinct order-`n` cylinders hit by the sample and fits `ln count` against `n ln beta`.
pub fn box_count(
    words: &[Word],
    beta: &BetaSpec,
    n_min: usize,
    n_max: usize,
    opts: BoxCountOptions,
) -> Result<BoxCountReport> {
    if words.len() < opts.min_sample {
        return Err(Error::InsufficientSample { got: words.len(), need: opts.min_sample });
    }
    if n_min == 0 || n_min > n_max {
        return Err(Error::DomainError(format!("empty order range {n_min}..={n_max}")));
    }
    if let Some(w) = words.iter().find(|w| w.len() < n_max) {
        return Err(Error::InsufficientDepth { depth: w.len(), tail_start: n_max });
    }
    let orders: Vec<usize> = (n_min..=n_max).collect();
    let counts: Vec<usize> =
        orders.iter().map(|&n| words.iter().map(|w| &w[..n]).collect::<HashSet<_>>().len()).collect();
    let lo = n_min + opts.trim;
    let hi = n_max.saturating_sub(opts.trim);
    if hi < lo + 1 {
        return Err(Error::DomainError(format!("order range {n_min}..={n_max} too short after trimming")));
    }
    let ln_b = beta.ln();
    let pts: Vec<(f64, f64)> = (lo..=hi).map(|n| (n as f64 * ln_b, (counts[n - n_min] as f64).ln())).collect();
    let k = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / k;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / k;
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let residual = (pts.iter().map(|p| (p.1 - intercept - slope * p.0).powi(2)).sum::<f64>() / k).sqrt();
    Ok(BoxCountReport { orders, counts, fit_orders: (lo, hi), slope, intercept, residual })
}

/// [`box_count`] over the expansions of rational points.
pub fn box_count_points(
    points: &[BigRational],
    beta: &BetaSpec,
    n_min: usize,
    n_max: usize,
    opts: BoxCountOptions,
) -> Result<BoxCountReport> {
    let words = points.par_iter().map(|x| digits(x, beta, n_max)).collect::<Result<Vec<_>>>()?;
    box_count(&words, beta, n_min, n_max, opts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::runlength::random_seed_point;

    #[test]
    fn constant_sample_has_zero_slope() {
        let two = BetaSpec::integer(2).unwrap();
        let pts = vec![crate::numerics::rat(1, 3); 100];
        let r = box_count_points(&pts, &two, 1, 10, BoxCountOptions::default()).unwrap();
        assert_eq!(r.slope, 0.0);
    }

    #[test]
    fn uniform_sample_has_unit_slope() {
        let two = BetaSpec::integer(2).unwrap();
        let pts: Vec<_> = (0..1000).map(|i| random_seed_point(9, i)).collect();
        let r = box_count_points(&pts, &two, 1, 10, BoxCountOptions::default()).unwrap();
        assert!((r.slope - 1.0).abs() < 0.1, "{r:?}");
        let few = &pts[..10];
        assert!(matches!(
            box_count_points(few, &two, 1, 10, BoxCountOptions::default()),
            Err(Error::InsufficientSample { .. })
        ));
    }
}
