use num_bigint::{BigUint, RandBigInt};
use rand::Rng;

use crate::admissibility::{beta_n, beta_n_period, ParryAutomaton};
use crate::error::{Error, Result};
use crate::expansion::Word;
use crate::numerics::BetaSpec;

/// The block alphabet `M_d = { (1, 0^{N-1}, w) : w in Sigma_{beta_N}^{d-N} }`.
#[derive(Clone, Debug)]
pub struct BlockAlphabet {
    d: usize,
    big_n: usize,
    beta: BetaSpec,
    beta_n: BetaSpec,
    automaton: ParryAutomaton,
    cardinality: BigUint,
}

pub fn block_alphabet(d: usize, beta: &BetaSpec, big_n: usize) -> Result<BlockAlphabet> {
    let period = beta_n_period(beta, big_n)?;
    let bn = beta_n(beta, big_n)?;
    BlockAlphabet::from_parts(d, beta, bn, ParryAutomaton::periodic(period), big_n)
}

impl BlockAlphabet {
    pub(crate) fn from_parts(
        d: usize,
        beta: &BetaSpec,
        beta_n: BetaSpec,
        automaton: ParryAutomaton,
        big_n: usize,
    ) -> Result<Self> {
        if d <= 2 * big_n {
            return Err(Error::BlockTooShort { d: d as u64, min: 2 * big_n as u64 + 1 });
        }
        let cardinality = automaton.count(d - big_n);
        Ok(Self { d, big_n, beta: beta.clone(), beta_n, automaton, cardinality })
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn big_n(&self) -> usize {
        self.big_n
    }

    pub fn beta(&self) -> &BetaSpec {
        &self.beta
    }

    pub fn beta_n(&self) -> &BetaSpec {
        &self.beta_n
    }

    pub fn cardinality(&self) -> &BigUint {
        &self.cardinality
    }

    /// Member of lexicographic rank `rank`.
    pub fn member(&self, rank: &BigUint) -> Word {
        assert!(rank < &self.cardinality, "rank out of range");
        let tail = self.automaton.unrank(self.d - self.big_n, rank);
        let mut w = Vec::with_capacity(self.d);
        w.push(1);
        w.resize(self.big_n, 0);
        w.extend_from_slice(tail.digits());
        Word::new(w)
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> (BigUint, Word) {
        let rank = rng.gen_biguint_below(&self.cardinality);
        let w = self.member(&rank);
        (rank, w)
    }

    pub fn contains(&self, w: &[u32]) -> bool {
        w.len() == self.d
            && w[0] == 1
            && w[1..self.big_n].iter().all(|&x| x == 0)
            && self.automaton.accepts(&w[self.big_n..])
    }
}
