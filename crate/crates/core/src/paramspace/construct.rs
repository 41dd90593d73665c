use std::collections::HashMap;

use num_bigint::{BigUint, RandBigInt};
use num_rational::BigRational;
use num_traits::{One, Pow, Zero};

use super::cylinder::{param_cylinder, ParamCylinder};
use super::is_self_admissible;
use crate::admissibility::{z_function, ParryAutomaton};
use crate::error::{Error, Result};
use crate::expansion::{lex_compare, ParryStatus, Word};
use crate::levelset::{block_rng, make_schedule, Schedule};
use crate::numerics::{solve_unit_equation_truncated, BetaSpec, Enclosure};

/// Digits of the expansion of 1 scanned when testing for the simple Parry property.
const PARRY_PROBE: usize = 256;

/// Largest `N` tried when the caller leaves it open.
const MAX_INDEX: usize = 64;

/// Cylinders of the chain are certified up to this order.
const CHAIN_MAX: usize = 96;

/// Every prefix up to this length is checked for non-recurrence of `(u, 0^N)`.
const FULL_RECURRENCE_CHECK: usize = 256;

/// Digits of the word used for the base enclosure.
const BETA_PREFIX: usize = 192;

/// Targets and depth of a parameter-space construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParamTargets {
    pub a: BigRational,
    pub b: BigRational,
    /// Prefix index `N`; the least valid one when `None`.
    pub big_n: Option<usize>,
    pub depth: usize,
}

/// Bookkeeping for one level `u_k in G'_k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParamLevel {
    pub level: usize,
    pub start: u64,
    pub end: u64,
    pub g_count: BigUint,
    pub q: BigUint,
    pub ranks: Vec<BigUint>,
}

/// One certified cylinder of the chain, with the bound `C(beta_1) beta_2^{-(n+N)}`.
#[derive(Clone, Debug)]
pub struct ChainLink {
    pub n: usize,
    pub cylinder: ParamCylinder,
    pub bound: BigRational,
    pub holds: bool,
}

/// A base in `E(beta_1, beta_2)` given by its expansion of 1 up to `n_K`.
#[derive(Clone, Debug)]
pub struct ParamPoint {
    schedule: Schedule,
    beta1: BetaSpec,
    beta2: BetaSpec,
    big_n: usize,
    head: Word,
    word: Word,
    levels: Vec<ParamLevel>,
    chain: Vec<ChainLink>,
    beta: Enclosure,
}

fn check_endpoint(beta: &BetaSpec) -> Result<()> {
    match beta.expansion_of_one().status(PARRY_PROBE)? {
        ParryStatus::SimpleParry { .. } => Err(Error::SimpleParryEndpoint(beta.to_string())),
        _ => Ok(()),
    }
}

fn index_ok(e1: &[u32], e2: &[u32], n: usize) -> bool {
    e2[n - 1] > 0 && lex_compare(&e1[..n], &e2[..n]).is_lt()
}

fn choose_index(beta1: &BetaSpec, beta2: &BetaSpec, requested: Option<usize>) -> Result<usize> {
    let len = requested.unwrap_or(MAX_INDEX);
    let e1 = beta1.expansion_of_one().eps_one(len)?;
    let e2 = beta2.expansion_of_one().eps_one(len)?;
    match requested {
        Some(n) if n < 2 => Err(Error::InvalidTarget(format!("N = {n} must be at least 2"))),
        Some(n) if e2[n - 1] == 0 => Err(Error::ZeroTerminalDigit { index: n }),
        Some(n) if !index_ok(&e1, &e2, n) => Err(Error::PrefixOrderViolation { max: n }),
        Some(n) => Ok(n),
        None => (2..=MAX_INDEX)
            .find(|&n| index_ok(&e1, &e2, n))
            .ok_or(Error::PrefixOrderViolation { max: MAX_INDEX }),
    }
}

struct Builder {
    seed: u64,
    big_n: usize,
    head: Vec<u32>,
    automaton: ParryAutomaton,
    counts: HashMap<usize, BigUint>,
    word: Vec<u32>,
}

impl Builder {
    fn count(&mut self, d: u64) -> Result<BigUint> {
        let d = usize::try_from(d).map_err(|_| Error::ScheduleOverflow { level: 0 })?;
        if d <= 2 * self.big_n {
            return Err(Error::BlockTooShort { d: d as u64, min: 2 * self.big_n as u64 + 1 });
        }
        let a = &self.automaton;
        Ok(self.counts.entry(d).or_insert_with(|| a.count(d - 2 * self.big_n)).clone())
    }

    /// Appends `(lead, w, 0^N)` with `w` the tail of rank below `card` drawn for `(level, block)`.
    fn push(&mut self, lead: &[u32], card: &BigUint, d: u64, level: usize, block: u64) -> Result<BigUint> {
        self.count(d)?;
        let rank = if self.seed == 0 {
            BigUint::zero()
        } else {
            block_rng(self.seed, level, block).gen_biguint_below(card)
        };
        let inner = self.automaton.unrank(d as usize - 2 * self.big_n, &rank);
        self.word.extend_from_slice(lead);
        self.word.extend_from_slice(inner.digits());
        self.word.resize(self.word.len() + self.big_n, 0);
        Ok(rank)
    }
}

/// `(u, 0^N)` has no proper shift equal to its prefix.
fn padded_non_recurrent(u: &[u32], big_n: usize) -> bool {
    let mut w = u.to_vec();
    w.resize(u.len() + big_n, 0);
    let n = w.len();
    let z = z_function(&w);
    (1..n).all(|k| z[k] < n - k)
}

fn chain_bound(beta1: &BetaSpec, beta2: &BetaSpec, n: usize) -> BigRational {
    let b1 = beta1.refine(64).hi().clone();
    let c = (&b1 - BigRational::one()) * (&b1 - BigRational::one()) / &b1;
    let inv = BigRational::one() / beta2.refine(64).lo();
    c * Enclosure::point(inv).powi(n as u64).hi().clone()
}

/// Builds the base selected by `seed` from the blocks `G'_k`; seed 0 picks the least member of every block.
pub fn construct_param_point(
    targets: &ParamTargets,
    beta1: &BetaSpec,
    beta2: &BetaSpec,
    seed: u64,
) -> Result<ParamPoint> {
    let two = BetaSpec::integer(2)?;
    if !(beta1.cmp_beta(beta2).is_lt() && beta2.cmp_beta(&two).is_lt()) {
        return Err(Error::InvalidTarget(format!("need 1 < {beta1} < {beta2} < 2")));
    }
    check_endpoint(beta1)?;
    check_endpoint(beta2)?;
    let big_n = choose_index(beta1, beta2, targets.big_n)?;
    let s = make_schedule(&targets.a, &targets.b, big_n, targets.depth)?;
    usize::try_from(s.n(s.depth())).map_err(|_| Error::ScheduleOverflow { level: s.depth() })?;

    let n1 = s.n(1) as usize;
    let e2 = beta2.expansion_of_one().eps_one(n1)?.into_digits();
    let top = e2[..big_n].to_vec();
    let mut head = top.clone();
    head[big_n - 1] -= 1;
    let mut b = Builder {
        seed,
        big_n,
        head: head.clone(),
        automaton: ParryAutomaton::periodic(Word::new(head.clone())),
        counts: HashMap::new(),
        word: Vec::with_capacity(s.n(s.depth()) as usize),
    };

    let mut levels = Vec::with_capacity(s.depth());
    let mut q = BigUint::one();
    for k in 1..=s.depth() {
        let start = b.word.len() as u64;
        let mut ranks = Vec::new();
        let g = if k == 1 {
            // Tails are capped below eps(beta_2) so that the base stays under beta_2.
            let ceiling = b.automaton.rank_below(&e2[big_n..n1 - big_n]);
            if ceiling.is_zero() {
                return Err(Error::InvalidTarget(format!("no first block of length {n1} lies below eps({beta2})")));
            }
            ranks.push(b.push(&top, &ceiling, s.n(1), 1, 0)?);
            ceiling
        } else {
            let (gap, t, p) = (s.gap(k - 1), s.t(k - 1), s.p(k - 1));
            let lead = b.head.clone();
            b.word.extend_from_slice(&lead);
            b.word.resize(b.word.len() + (gap as usize - big_n), 0);
            let card = b.count(gap)?;
            for i in 0..t {
                ranks.push(b.push(&lead, &card, gap, k, i)?);
            }
            let mut g = Pow::pow(card, t);
            if p > 2 * big_n as u64 {
                let card = b.count(p)?;
                ranks.push(b.push(&lead, &card, p, k, t)?);
                g *= card;
            } else {
                b.word.resize(b.word.len() + p as usize, 0);
            }
            g
        };
        q *= &g;
        debug_assert_eq!(b.word.len() as u64, s.n(k));
        levels.push(ParamLevel { level: k, start, end: s.n(k), g_count: g, q: q.clone(), ranks });
    }

    let word = Word::new(std::mem::take(&mut b.word));
    if !is_self_admissible(&word) {
        return Err(Error::NotSelfAdmissible);
    }
    let ends = levels.iter().map(|l| l.end as usize);
    let checked = (1..=word.len().min(FULL_RECURRENCE_CHECK)).chain(ends);
    for n in checked {
        if !padded_non_recurrent(&word[..n], big_n) {
            return Err(Error::WitnessFailed(format!("padded prefix of length {n} is recurrent")));
        }
    }

    let mut orders: Vec<usize> = (1..=s.depth())
        .flat_map(|k| [s.n(k) as usize, s.m(k) as usize])
        .filter(|&n| n <= CHAIN_MAX.min(word.len()))
        .collect();
    orders.dedup();
    let chain = orders
        .into_iter()
        .map(|n| {
            let cylinder = param_cylinder(&word[..n], 64)?;
            let bound = chain_bound(beta1, beta2, n + big_n);
            let holds = cylinder.length().lo() >= &bound;
            Ok(ChainLink { n, cylinder, bound, holds })
        })
        .collect::<Result<Vec<_>>>()?;

    let l = word.len().min(BETA_PREFIX);
    let beta = solve_unit_equation_truncated(&word[..l], 1, 2 * l as u32 + 64)?;
    Ok(ParamPoint {
        schedule: s,
        beta1: beta1.clone(),
        beta2: beta2.clone(),
        big_n,
        head: Word::new(head),
        word,
        levels,
        chain,
        beta,
    })
}

impl ParamPoint {
    pub fn schedule(&self) -> &Schedule {
        &self.schedule
    }

    pub fn beta1(&self) -> &BetaSpec {
        &self.beta1
    }

    pub fn beta2(&self) -> &BetaSpec {
        &self.beta2
    }

    pub fn big_n(&self) -> usize {
        self.big_n
    }

    /// `(eps_1(beta_2), ..., eps_N(beta_2) - 1)`.
    pub fn head(&self) -> &Word {
        &self.head
    }

    /// Expansion of 1 of the constructed base, up to `n_K`.
    pub fn word(&self) -> &Word {
        &self.word
    }

    pub fn levels(&self) -> &[ParamLevel] {
        &self.levels
    }

    pub fn chain(&self) -> &[ChainLink] {
        &self.chain
    }

    /// Enclosure of the constructed base.
    pub fn beta(&self) -> &Enclosure {
        &self.beta
    }

    pub fn block(&self, k: usize) -> &[u32] {
        let l = &self.levels[k - 1];
        &self.word[l.start as usize..l.end as usize]
    }

    /// The base enclosure lies in `[beta_1, beta_2)`.
    pub fn in_range(&self) -> bool {
        self.beta.lo() >= self.beta1.refine(64).hi() && self.beta.hi() < self.beta2.refine(64).lo()
    }
}
