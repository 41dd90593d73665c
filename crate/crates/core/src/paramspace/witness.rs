use num_bigint::BigUint;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Pow, Signed, ToPrimitive};

use super::is_self_admissible;
use crate::error::{Error, Result};
use crate::expansion::{CompressedWord, Word};
use crate::numerics::{rational_to_f64, solve_unit_equation_truncated, BetaSpec, Enclosure};

/// Largest prefix length tried when the radius is tiny.
const MAX_LEVEL: usize = 1 << 12;

/// Zero digits kept explicitly after the prefix when enclosing the witness base.
const SLACK_DIGITS: usize = 64;

/// A base `beta'` near the target whose expansion of 1 carries one designed block pattern.
#[derive(Clone, Debug)]
pub struct ParamWitness {
    pub level: usize,
    /// First `level` digits of the target's expansion of 1.
    pub prefix: Word,
    pub n_level: BigUint,
    pub m_level: BigUint,
    pub n_next: BigUint,
    pub t: BigUint,
    pub p: BigUint,
    /// Expansion of 1 of `beta'`.
    pub word: CompressedWord,
    pub beta: Enclosure,
    pub distance_bound: BigRational,
    pub radius: BigRational,
    /// `(n, r_n / n)` at `n_l`, `m_l` and `n_{l+1}`.
    pub checkpoints: Vec<(BigUint, f64)>,
}

/// `(n_k, m_k)` for `k <= depth` from `n'_k = k^{2k}`, `m'_k = (k+1)^{2k+1}`.
fn witness_schedule(depth: usize) -> (Vec<BigUint>, Vec<BigUint>) {
    let mut ns: Vec<BigUint> = Vec::with_capacity(depth);
    let mut ms: Vec<BigUint> = Vec::with_capacity(depth);
    for k in 1..=depth {
        let kk = BigUint::from(k);
        let mut nk: BigUint = Pow::pow(&kk, 2 * k as u32);
        let mut mk: BigUint = Pow::pow(&(kk + 1u32), 2 * k as u32 + 1);
        if let (Some(pn), Some(pm)) = (ns.last(), ms.last()) {
            nk = nk.max(pm + 1u32);
            let need = ((pm - pn) * 2u32).max(&nk - BigUint::from(k)) + 1u32;
            mk = mk.max(&nk + need);
        }
        mk = mk.max(&nk + 1u32);
        ns.push(nk);
        ms.push(mk);
    }
    (ns, ms)
}

fn attempt(target: &BetaSpec, t_val: &BigRational, level: usize) -> Result<Option<ParamWitness>> {
    let prefix = target.expansion_of_one().eps_one(level)?;
    if !prefix[1..].iter().any(|&d| d > 0) {
        return Ok(None);
    }
    let (ns, ms) = witness_schedule(level + 1);
    let n_level = ns[level - 1].clone();
    let m_level = ms[level - 1].clone();
    let n_next = ns[level].clone();
    let gap = &m_level - &n_level;
    let (t, p) = (&n_next - &n_level).div_rem(&(&gap + 1u32));

    let unit = CompressedWord::new().digits(&[1]).zeros(gap.clone());
    let word = CompressedWord::from(prefix.digits())
        .zeros(&n_level - BigUint::from(level))
        .repeat(unit, t.clone())
        .zeros(p.clone())
        .digits(&[1]);

    let cap = 2 * level as u64 + 2;
    let flat = word
        .reduced(cap, 2)
        .to_word(usize::MAX)
        .ok_or_else(|| Error::WitnessFailed("reduced witness does not fit in memory".into()))?;
    if !is_self_admissible(&flat) {
        return Err(Error::WitnessFailed("witness word is not self-admissible".into()));
    }

    let zeros = (&n_level - BigUint::from(level)).to_usize().map_or(SLACK_DIGITS + level, |z| z.min(SLACK_DIGITS + level));
    let head = prefix.with_zeros(zeros);
    let bits = 2 * head.len() as u32 + 64;
    let beta = solve_unit_equation_truncated(&head, 1, bits)?;
    let distance_bound = (t_val - beta.lo()).abs().max((beta.hi() - t_val).abs());

    let checkpoints = [&n_level, &m_level, &n_next]
        .into_iter()
        .map(|nn| {
            let r = word.run_length(nn);
            (nn.clone(), rational_to_f64(&BigRational::new(r.into(), nn.clone().into())))
        })
        .collect();
    Ok(Some(ParamWitness {
        level,
        prefix,
        n_level,
        m_level,
        n_next,
        t,
        p,
        word,
        beta,
        distance_bound,
        radius: BigRational::one(),
        checkpoints,
    }))
}

/// Witness base within `radius` of `target` built at level at least `n`.
pub fn param_residual_witness(target: &BigRational, radius: &BigRational, n: usize) -> Result<ParamWitness> {
    let one = BigRational::one();
    if target <= &one || target >= &(&one + &one) {
        return Err(Error::InvalidTarget(format!("target {target} must lie in (1, 2)")));
    }
    if !radius.is_positive() {
        return Err(Error::InvalidTarget(format!("radius {radius} must be positive")));
    }
    let spec = BetaSpec::rational(target.clone())?;
    let guess = (rational_to_f64(&(&one / radius)).ln() / rational_to_f64(target).ln()).ceil();
    let mut level = n.max(2).max(guess.min(MAX_LEVEL as f64) as usize);
    while level <= MAX_LEVEL {
        if let Some(mut w) = attempt(&spec, target, level)? {
            if &w.distance_bound <= radius {
                w.radius = radius.clone();
                return Ok(w);
            }
        }
        level += 1;
    }
    Err(Error::BoundaryUndecidable { bits: 2 * MAX_LEVEL as u32 })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::{parse_rational, rat};

    #[test]
    fn schedule_constraint() {
        let (ns, ms) = witness_schedule(8);
        assert_eq!(ns[0], BigUint::from(1u32));
        assert_eq!(ns[2], BigUint::from(729u32));
        for k in 1..8 {
            let gap = &ms[k] - &ns[k];
            assert!(gap > (&ms[k - 1] - &ns[k - 1]) * 2u32);
            assert!(gap > &ns[k] - BigUint::from(k + 1));
            assert!(ns[k] > ms[k - 1]);
        }
    }

    #[test]
    fn target_one_point_eight() {
        let r = parse_rational("0.001").unwrap();
        let w = param_residual_witness(&rat(9, 5), &r, 1).unwrap();
        assert!(w.distance_bound <= r);
        assert!(w.beta.contains(&w.beta.midpoint()));
        let c = &w.checkpoints;
        assert!(c[1].1 >= 0.9, "{c:?}");
        assert!(matches!(param_residual_witness(&rat(2, 1), &r, 1), Err(Error::InvalidTarget(_))));
    }
}
