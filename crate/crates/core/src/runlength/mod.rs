//! Run-length function `r_n` and the exponents `v_beta`, `v-hat_beta`.

mod montecarlo;
mod orbit;

pub use montecarlo::{erdos_renyi, random_seed_point, MonteCarloReport};
pub use orbit::{DigitOrbit, OrbitSource, PointOrbit};

use crate::error::{Error, Result};

/// Share of the depth used as the default tail window.
pub const DEFAULT_TAIL_FRACTION: f64 = 0.2;

/// First index of the default tail window `[depth - depth/5, depth]`.
pub fn default_tail_start(depth: usize) -> usize {
    let w = (depth as f64 * DEFAULT_TAIL_FRACTION) as usize;
    depth.saturating_sub(w).max(1)
}

/// Values `r_1, ..., r_N` of a prefix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunProfile {
    r: Vec<u64>,
}

pub fn run_profile(w: &[u32]) -> RunProfile {
    let mut r = Vec::with_capacity(w.len());
    let (mut cur, mut best) = (0u64, 0u64);
    for &d in w {
        cur = if d == 0 { cur + 1 } else { 0 };
        best = best.max(cur);
        r.push(best);
    }
    RunProfile { r }
}

impl RunProfile {
    pub fn depth(&self) -> usize {
        self.r.len()
    }

    /// `r_n`, one-based.
    pub fn r(&self, n: usize) -> u64 {
        self.r[n - 1]
    }

    pub fn values(&self) -> &[u64] {
        &self.r
    }

    pub fn ratio(&self, n: usize) -> f64 {
        self.r(n) as f64 / n as f64
    }

    /// `r_n / log_beta n`; undefined at `n = 1`.
    pub fn log_ratio(&self, n: usize, ln_beta: f64) -> f64 {
        let l = (n as f64).ln() / ln_beta;
        if l > 0.0 {
            self.r(n) as f64 / l
        } else {
            f64::NAN
        }
    }
}

/// Tail infimum and supremum of `r_n / n` over `[tail_start, depth]`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LimitEstimates {
    pub liminf: f64,
    pub limsup: f64,
    pub tail_start: usize,
    pub depth: usize,
}

pub fn limit_estimates(p: &RunProfile, tail_start: usize) -> Result<LimitEstimates> {
    let depth = p.depth();
    if depth <= tail_start || tail_start == 0 {
        return Err(Error::InsufficientDepth { depth, tail_start });
    }
    let (lo, hi) = (tail_start..=depth)
        .map(|n| p.ratio(n))
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), x| (lo.min(x), hi.max(x)));
    Ok(LimitEstimates { liminf: lo, limsup: hi, tail_start, depth })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EstimateMethod {
    RunLength,
    Orbit,
}

impl EstimateMethod {
    pub fn as_str(self) -> &'static str {
        match self {
            EstimateMethod::RunLength => "runlength",
            EstimateMethod::Orbit => "orbit",
        }
    }
}

/// Finite-depth estimates of `v_beta` and `v-hat_beta`; `f64::INFINITY` is the divergence sentinel.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ExponentEstimate {
    pub v: f64,
    pub vhat: f64,
    pub tail_start: usize,
    pub depth: usize,
    pub method: EstimateMethod,
}

/// `c / (1 - c)`, infinite at `c >= 1`.
pub fn exponent_from_ratio(c: f64) -> f64 {
    if c >= 1.0 {
        f64::INFINITY
    } else {
        c / (1.0 - c)
    }
}

/// Inverse of [`exponent_from_ratio`].
pub fn ratio_from_exponent(v: f64) -> f64 {
    if v.is_infinite() {
        1.0
    } else {
        v / (1.0 + v)
    }
}

pub fn exponents_from_runs(p: &RunProfile, tail_start: usize) -> Result<ExponentEstimate> {
    let est = limit_estimates(p, tail_start)?;
    Ok(ExponentEstimate {
        v: exponent_from_ratio(est.limsup),
        vhat: exponent_from_ratio(est.liminf),
        tail_start,
        depth: est.depth,
        method: EstimateMethod::RunLength,
    })
}

/// Orbit-based estimates over the window `[tail_start, depth]`.
///
/// `v` is the window maximum of `-log_beta(T^n x) / n`, `v-hat` the window minimum of
/// `max_{n <= N} -log_beta(T^n x) / N`, clamped to `v`.
pub fn exponents_from_orbit(src: &dyn OrbitSource, depth: usize, tail_start: usize) -> Result<ExponentEstimate> {
    if depth <= tail_start || tail_start == 0 {
        return Err(Error::InsufficientDepth { depth, tail_start });
    }
    let l = src.neg_log_orbit(depth)?;
    let mut running = f64::NEG_INFINITY;
    let mut v = f64::NEG_INFINITY;
    let mut vhat = f64::INFINITY;
    for n in 1..=depth {
        let x = l[n - 1];
        running = running.max(x);
        if n >= tail_start {
            v = v.max(x / n as f64);
            vhat = vhat.min(running / n as f64);
        }
    }
    let v = v.max(0.0);
    Ok(ExponentEstimate { v, vhat: vhat.max(0.0).min(v), tail_start, depth, method: EstimateMethod::Orbit })
}
