use num_bigint::BigUint;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Pow, Signed, ToPrimitive, Zero};

use crate::admissibility::{is_admissible, zero_run_table};
use crate::error::{Error, Result};
use crate::expansion::{digits, CompressedWord, Word};
use crate::numerics::{rational_to_f64, BetaSpec, Enclosure};

/// Extra zero digits summed explicitly when bounding the witness value.
const VALUE_SLACK_DIGITS: u64 = 64;

/// Largest prefix length tried when the radius is tiny.
const MAX_LEVEL: usize = 1 << 16;

/// A point `y` near `x` whose expansion carries one designed block pattern.
#[derive(Clone, Debug)]
pub struct ResidualWitness {
    pub level: usize,
    pub prefix: Word,
    pub n_level: BigUint,
    pub m_level: BigUint,
    pub n_next: BigUint,
    pub t: BigUint,
    pub p: BigUint,
    /// Digits of length `n_{l+1}`; `y` is this word followed by a single 1.
    pub word: CompressedWord,
    pub y: Enclosure,
    pub distance_bound: BigRational,
    pub radius: BigRational,
    /// `(n, r_n / n)` at `n_l`, `m_l` and `n_{l+1}`.
    pub checkpoints: Vec<(BigUint, f64)>,
}

fn first_positive_after_one(beta: &BetaSpec) -> Result<usize> {
    let one = beta.expansion_of_one();
    let mut len = 16;
    loop {
        let star = one.eps_star(len)?;
        if let Some(i) = (1..len).find(|&i| star[i] > 0) {
            return Ok(i + 1);
        }
        if len > MAX_LEVEL {
            return Err(Error::InsufficientDepth { depth: len, tail_start: 2 });
        }
        len *= 2;
    }
}

fn inv_beta_pow_upper(beta: &BetaSpec, e: u64, bits: u32) -> BigRational {
    let lo = beta.enclosure().lo().clone();
    let inv = Enclosure::point(BigRational::one() / lo);
    inv.powi(e).round_out(bits).hi().clone()
}

pub fn residual_witness(beta: &BetaSpec, x: &BigRational, radius: &BigRational, n: usize) -> Result<ResidualWitness> {
    if x.is_negative() || x >= &BigRational::one() {
        return Err(Error::InvalidTarget(format!("target {x} must lie in [0, 1)")));
    }
    if !radius.is_positive() {
        return Err(Error::InvalidTarget(format!("radius {radius} must be positive")));
    }
    let bits = beta.precision().max(64);
    let mut level = n.max(1);
    while &inv_beta_pow_upper(beta, level as u64, bits) > radius {
        level += 1;
        if level > MAX_LEVEL {
            return Err(Error::InvalidTarget(format!("radius {radius} is too small")));
        }
    }
    let prefix = digits(x, beta, level)?;
    let big_m = BigUint::from(first_positive_after_one(beta)?);
    let gamma = zero_run_table(beta, level + 1)?;

    let mut sched_n = Vec::with_capacity(level + 1);
    let mut sched_m = Vec::with_capacity(level + 1);
    let mut prev_gap = BigUint::zero();
    for k in 1..=level + 1 {
        let g = BigUint::from(2 * k as u64 + gamma.gamma(k));
        let g_next = BigUint::from(2 * k as u64 + 2 + gamma.gamma((k + 1).min(level + 1)));
        let mut nk = Pow::pow(&g, 2 * k as u32);
        let mut mk = Pow::pow(&g_next, 2 * k as u32 + 1);
        nk = nk.max(&g + 1u32);
        if let Some(pm) = sched_m.last() {
            nk = nk.max(pm + 1u32);
        }
        let need = (&prev_gap * 2u32).max(&nk - BigUint::from(k)).max(big_m.clone()) + 1u32;
        mk = mk.max(&nk + need);
        prev_gap = &mk - &nk;
        sched_n.push(nk);
        sched_m.push(mk);
    }
    let n_level = sched_n[level - 1].clone();
    let m_level = sched_m[level - 1].clone();
    let n_next = sched_n[level].clone();
    let gap = &m_level - &n_level;
    let (t, p) = (&n_next - &n_level).div_rem(&gap);

    let unit = CompressedWord::new().digits(&[1]).zeros(&gap - 1u32);
    let word = CompressedWord::from(prefix.digits())
        .zeros(&n_level - BigUint::from(level))
        .repeat(unit, t.clone())
        .zeros(p.clone());
    debug_assert_eq!(word.len(), n_next);

    let cap = (level as u64) + big_m.to_u64().unwrap_or(u64::MAX / 4) + gamma.gamma(level) + 2;
    let reduced = word.clone().digits(&[1]).reduced(cap, 2);
    let flat = reduced
        .to_word(usize::MAX)
        .ok_or_else(|| Error::WitnessFailed("reduced witness does not fit in memory".into()))?;
    if !is_admissible(&flat, beta)? {
        return Err(Error::WitnessFailed("witness word is not admissible".into()));
    }

    let s = beta.elem_enclosure(&beta.elem_series(prefix.digits()), bits + 16);
    let tail_digits = n_level.to_u64().map_or(level as u64 + VALUE_SLACK_DIGITS, |nl| {
        nl.min(level as u64 + VALUE_SLACK_DIGITS)
    });
    let tail = inv_beta_pow_upper(beta, tail_digits, bits + 16);
    let y = Enclosure::new(s.lo().clone(), s.hi() + &tail)?;
    let distance_bound = (x - y.lo()).abs().max((y.hi() - x).abs());
    if &distance_bound > radius {
        return Err(Error::BoundaryUndecidable { bits });
    }

    let checkpoints = [&n_level, &m_level, &n_next]
        .into_iter()
        .map(|nn| {
            let r = word.run_length(nn);
            (nn.clone(), rational_to_f64(&BigRational::new(r.into(), nn.clone().into())))
        })
        .collect();
    Ok(ResidualWitness {
        level,
        prefix,
        n_level,
        m_level,
        n_next,
        t,
        p,
        word,
        y,
        distance_bound,
        radius: radius.clone(),
        checkpoints,
    })
}
