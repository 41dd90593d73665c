use std::collections::HashMap;

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{One, Pow, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::alphabet::BlockAlphabet;
use super::schedule::Schedule;
use super::series_enclosure;
use crate::admissibility::{automaton, beta_n, beta_n_period, is_admissible, ParryAutomaton};
use crate::error::{Error, Result};
use crate::expansion::Word;
use crate::numerics::{log2_biguint, BetaSpec, Enclosure};

/// Bookkeeping for one level `u_k in G_k`.
#[derive(Clone, Debug, PartialEq)]
pub struct LevelRecord {
    pub level: usize,
    /// `n_{k-1}` (zero at level 1).
    pub start: u64,
    /// `n_k`.
    pub end: u64,
    /// `#G_k`.
    pub g_count: BigUint,
    /// `q_k = #G_1 * ... * #G_k`.
    pub q: BigUint,
    /// Ranks of the chosen `M_d` members, in order.
    pub ranks: Vec<BigUint>,
    /// Follower state after `u_1 ... u_k`.
    pub state: usize,
    /// `beta^{n_k} |I_{n_k}|`, the length of `T^{n_k}` of the cylinder.
    pub length_factor: f64,
}

/// One point of `E_N`, given by a digit prefix of length `n_K`.
#[derive(Clone, Debug)]
pub struct LevelSetPoint {
    schedule: Schedule,
    beta: BetaSpec,
    beta_n: BetaSpec,
    seed: u64,
    word: Word,
    tail: Vec<u32>,
    levels: Vec<LevelRecord>,
}

/// `ln mu(I_{n_k}) / ln |I_{n_k}|` at one level, with bounds.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LocalDimension {
    pub level: usize,
    pub n: u64,
    pub ratio: f64,
    pub lo: f64,
    pub hi: f64,
}

/// Generator for block `block` of level `level`; each block draws from its own stream.
pub(crate) fn block_rng(seed: u64, level: usize, block: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(((level as u64) << 40) | block);
    rng
}

struct Builder<'a> {
    schedule: &'a Schedule,
    beta: &'a BetaSpec,
    beta_n: BetaSpec,
    automaton: ParryAutomaton,
    alphabets: HashMap<usize, BlockAlphabet>,
    seed: u64,
    word: Vec<u32>,
}

impl Builder<'_> {
    fn alphabet(&mut self, d: u64) -> Result<&BlockAlphabet> {
        let d = usize::try_from(d).map_err(|_| Error::ScheduleOverflow { level: 0 })?;
        if !self.alphabets.contains_key(&d) {
            let m = BlockAlphabet::from_parts(
                d,
                self.beta,
                self.beta_n.clone(),
                self.automaton.clone(),
                self.schedule.big_n(),
            )?;
            self.alphabets.insert(d, m);
        }
        Ok(&self.alphabets[&d])
    }

    fn push_member(&mut self, d: u64, level: usize, block: u64) -> Result<BigUint> {
        let seed = self.seed;
        let m = self.alphabet(d)?;
        let (rank, w) = if seed == 0 {
            let r = BigUint::zero();
            let w = m.member(&r);
            (r, w)
        } else {
            m.sample(&mut block_rng(seed, level, block))
        };
        self.word.extend_from_slice(w.digits());
        Ok(rank)
    }

    fn card(&mut self, d: u64) -> Result<BigUint> {
        Ok(self.alphabet(d)?.cardinality().clone())
    }

    /// Appends `u_k`; returns `(#G_k, ranks)`, or `None` for the count once `limit` is reached.
    fn level(&mut self, k: usize, limit: Option<usize>) -> Result<(Option<BigUint>, Vec<BigUint>)> {
        let s = self.schedule;
        let two_n = 2 * s.big_n() as u64;
        let mut ranks = Vec::new();
        let full = limit.is_none();
        let reached = |w: &Vec<u32>| limit.is_some_and(|l| w.len() >= l);
        if k == 1 {
            ranks.push(self.push_member(s.n(1), 1, 0)?);
            let g = if full { Some(self.card(s.n(1))?) } else { None };
            return Ok((g, ranks));
        }
        let gap = s.gap(k - 1);
        let (t, p) = (s.t(k - 1), s.p(k - 1));
        self.word.push(1);
        self.word.resize(self.word.len() + gap as usize - 1, 0);
        for i in 0..t {
            if reached(&self.word) {
                return Ok((None, ranks));
            }
            ranks.push(self.push_member(gap, k, i)?);
        }
        if p > two_n {
            if !reached(&self.word) {
                ranks.push(self.push_member(p, k, t)?);
            }
        } else {
            self.word.resize(self.word.len() + p as usize, 0);
        }
        if !full {
            return Ok((None, ranks));
        }
        let mut g = Pow::pow(self.card(gap)?, t);
        if p > two_n {
            g *= self.card(p)?;
        }
        Ok((Some(g), ranks))
    }
}

fn builder<'a>(s: &'a Schedule, beta: &'a BetaSpec, seed: u64) -> Result<Builder<'a>> {
    let period = beta_n_period(beta, s.big_n())?;
    let bn = beta_n(beta, s.big_n())?;
    usize::try_from(s.n(s.depth())).map_err(|_| Error::ScheduleOverflow { level: s.depth() })?;
    Ok(Builder {
        schedule: s,
        beta,
        beta_n: bn,
        automaton: ParryAutomaton::periodic(period),
        alphabets: HashMap::new(),
        seed,
        word: Vec::new(),
    })
}

/// Builds the point of `E_N` selected by `seed`; seed 0 picks the least member of every block.
pub fn construct_point(s: &Schedule, beta: &BetaSpec, seed: u64) -> Result<LevelSetPoint> {
    let mut b = builder(s, beta, seed)?;
    let mut levels = Vec::with_capacity(s.depth());
    let mut q = BigUint::one();
    for k in 1..=s.depth() {
        let start = b.word.len() as u64;
        let (g, ranks) = b.level(k, None)?;
        let g = g.expect("full construction counts every level");
        q *= &g;
        debug_assert_eq!(b.word.len() as u64, s.n(k));
        levels.push(LevelRecord {
            level: k,
            start,
            end: s.n(k),
            g_count: g,
            q: q.clone(),
            ranks,
            state: 0,
            length_factor: 1.0,
        });
    }
    let word = Word::new(std::mem::take(&mut b.word));
    if !is_admissible(&word, beta)? {
        return Err(Error::NotAdmissible);
    }
    let follower = automaton(beta, word.len() + CONTINUATION_DIGITS)?;
    let mut state = 0;
    let mut pos = 0;
    for l in levels.iter_mut() {
        state = follower.run_from(state, &word[pos..l.end as usize]).ok_or(Error::NotAdmissible)?;
        pos = l.end as usize;
        l.state = state;
        l.length_factor = tail_length(&follower, state, beta.to_f64());
    }
    let tail = continuation(&follower, state)?;
    let beta_n = b.beta_n;
    Ok(LevelSetPoint { schedule: s.clone(), beta: beta.clone(), beta_n, seed, word, tail, levels })
}

/// Digits of `eps*` summed when evaluating a follower-state length.
const CONTINUATION_DIGITS: usize = 64;

/// `T^j 1 = sum_i eps*_{j+i} beta^-i` for follower state `j`.
fn tail_length(a: &ParryAutomaton, state: usize, beta: f64) -> f64 {
    let mut acc = 0.0;
    let mut scale = 1.0;
    let mut j = state;
    for _ in 0..CONTINUATION_DIGITS {
        if j >= a.states() {
            break;
        }
        scale /= beta;
        let lim = a.limit(j);
        acc += lim as f64 * scale;
        j = match a.step(j, lim) {
            Some(n) => n,
            None => break,
        };
    }
    acc
}

/// Shortest `0^s 1` admissible after `state`.
fn continuation(a: &ParryAutomaton, mut state: usize) -> Result<Vec<u32>> {
    let mut out = Vec::new();
    while out.len() < CONTINUATION_DIGITS {
        if state < a.states() && a.limit(state) > 0 {
            out.push(1);
            return Ok(out);
        }
        out.push(0);
        state = a.step(state, 0).ok_or(Error::NotAdmissible)?;
    }
    Err(Error::InsufficientDepth { depth: CONTINUATION_DIGITS, tail_start: state })
}

/// First `len` digits of the point selected by `seed`, without level counts.
pub fn construct_prefix(s: &Schedule, beta: &BetaSpec, seed: u64, len: usize) -> Result<Word> {
    let mut b = builder(s, beta, seed)?;
    for k in 1..=s.depth() {
        if b.word.len() >= len {
            break;
        }
        b.level(k, Some(len))?;
    }
    let mut w = std::mem::take(&mut b.word);
    if w.len() < len {
        w.push(1);
        w.resize(len, 0);
    }
    w.truncate(len);
    Ok(Word::new(w))
}

impl LevelSetPoint {
    pub fn schedule(&self) -> &Schedule {
        &self.schedule
    }

    pub fn beta(&self) -> &BetaSpec {
        &self.beta
    }

    pub fn beta_n(&self) -> &BetaSpec {
        &self.beta_n
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// Digit word of length `n_K`.
    pub fn word(&self) -> &Word {
        &self.word
    }

    pub fn levels(&self) -> &[LevelRecord] {
        &self.levels
    }

    pub fn depth(&self) -> usize {
        self.levels.len()
    }

    /// Block `u_k` of the word.
    pub fn block(&self, k: usize) -> &[u32] {
        let l = &self.levels[k - 1];
        &self.word[l.start as usize..l.end as usize]
    }

    pub fn q(&self, k: usize) -> &BigUint {
        &self.levels[k - 1].q
    }

    /// Digits of the representative: the word followed by its shortest admissible `0^s 1`.
    pub fn point_digits(&self) -> Word {
        let mut w = self.word.clone();
        w.extend_from(&self.tail);
        w
    }

    /// Enclosure of the representative from its first `bits / log2(beta)` digits plus a tail bound.
    pub fn value(&self, bits: u32) -> Enclosure {
        let digits = self.point_digits();
        let per = (self.beta.ln() / std::f64::consts::LN_2).max(1e-9);
        let l = ((bits as f64 / per).ceil() as usize + 2).min(digits.len());
        let s = series_enclosure(&self.beta, &digits[..l], bits + 8);
        if l == digits.len() {
            return s;
        }
        let inv = self.beta.refine(bits + 16).recip().expect("beta > 1");
        let tail = inv.powi(l as u64).round_out(bits + 8);
        Enclosure::new(s.lo().clone(), s.hi() + tail.hi()).expect("ordered bounds")
    }

    /// Uniform mass `1 / q_k` of the level-`k` cylinder.
    pub fn mu_mass(&self, level: usize) -> BigRational {
        BigRational::new(BigUint::one().into(), self.q(level).clone().into())
    }

    /// `ln q_k / -ln |I_{n_k}|`, with `|I_{n_k}|` from the follower state at level `k`.
    ///
    /// `lo` and `hi` use the sandwich `beta^{-(n+N)} <= |I_n| <= beta^{-n}`.
    pub fn local_dimension_series(&self) -> Vec<LocalDimension> {
        let ln_b = self.beta.ln();
        let big_n = self.schedule.big_n() as f64;
        self.levels
            .iter()
            .map(|l| {
                let lnq = log2_biguint(&l.q) * std::f64::consts::LN_2;
                let n = l.end as f64;
                LocalDimension {
                    level: l.level,
                    n: l.end,
                    ratio: lnq / (n * ln_b - l.length_factor.ln()),
                    lo: lnq / ((n + big_n) * ln_b),
                    hi: lnq / (n * ln_b),
                }
            })
            .collect()
    }

    /// Target `(1 - b^2 (1-a)/(b-a)) ln beta_bar / ln beta`.
    pub fn local_dimension_target(&self, beta_bar: &BetaSpec) -> f64 {
        let factor = crate::dimension::e_ab_factor(self.schedule.a_f64(), self.schedule.b_f64());
        factor * beta_bar.ln() / self.beta.ln()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::levelset::{block_alphabet, make_schedule};
    use crate::numerics::rat;
    use crate::runlength::{limit_estimates, run_profile};

    fn trib() -> BetaSpec {
        "poly:1,-1,-1,-1@1,2".parse().unwrap()
    }

    #[test]
    fn block_structure() {
        let beta = trib();
        let s = make_schedule(&rat(1, 5), &rat(1, 2), 2, 4).unwrap();
        let p = construct_point(&s, &beta, 11).unwrap();
        assert_eq!(p.word().len() as u64, s.n(4));
        let u2 = p.block(2);
        assert_eq!(u2[0], 1);
        assert!(u2[1..s.gap(1) as usize].iter().all(|&d| d == 0));
        for k in 1..=4 {
            assert_eq!(p.block(k).len() as u64, s.n(k) - if k == 1 { 0 } else { s.n(k - 1) });
        }
        let pre = &p.word()[..s.n(2) as usize];
        let state = crate::admissibility::automaton(&beta, 200).unwrap().run(pre).unwrap();
        assert_eq!(state, p.levels()[1].state);
        let cyl = crate::cylinders::interval(pre, &beta).unwrap();
        let want = cyl.length.to_f64() * beta.to_f64().powi(pre.len() as i32);
        assert!((want - p.levels()[1].length_factor).abs() < 1e-9);
        let g1 = block_alphabet(s.n(1) as usize, &beta, 2).unwrap();
        assert_eq!(&p.levels()[0].g_count, g1.cardinality());
        for k in 1..=4 {
            assert_eq!(p.mu_mass(k) * BigRational::from_integer(p.q(k).clone().into()), BigRational::one());
        }
    }

    #[test]
    fn deterministic_and_prefix_consistent() {
        let beta = trib();
        let s = make_schedule(&rat(1, 5), &rat(1, 2), 2, 5).unwrap();
        let a = construct_point(&s, &beta, 5).unwrap();
        let b = construct_point(&s, &beta, 5).unwrap();
        assert_eq!(a.word(), b.word());
        let c = construct_point(&s, &beta, 6).unwrap();
        assert_ne!(a.word(), c.word());
        let pre = construct_prefix(&s, &beta, 5, 300).unwrap();
        assert_eq!(pre.digits(), &a.word()[..300]);
        let z = construct_point(&s, &beta, 0).unwrap();
        assert!(z.levels().iter().all(|l| l.ranks.iter().all(|r| r.is_zero())));
    }

    #[test]
    fn value_encloses_point() {
        let beta = trib();
        let s = make_schedule(&rat(1, 5), &rat(1, 2), 2, 2).unwrap();
        let p = construct_point(&s, &beta, 2).unwrap();
        let v = p.value(40);
        assert!(v.width() < crate::numerics::pow2(-30));
        let x = v.to_f64();
        let direct: f64 = p.point_digits().iter().enumerate().map(|(i, &d)| d as f64 * beta.to_f64().powi(-(i as i32 + 1))).sum();
        assert!((x - direct).abs() < 1e-9);
    }

    #[test]
    fn run_profile_tracks_targets() {
        let s = make_schedule(&rat(1, 5), &rat(1, 2), 2, 7).unwrap();
        let p = construct_point(&s, &trib(), 1).unwrap();
        let e = limit_estimates(&run_profile(p.word()), s.n(5) as usize).unwrap();
        assert!((e.liminf - 0.2).abs() < 0.05 && (e.limsup - 0.5).abs() < 0.05, "{e:?}");
    }
}
