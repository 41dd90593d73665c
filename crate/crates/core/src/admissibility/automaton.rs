use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::expansion::Word;

/// Follower automaton of the beta-shift.
///
/// State `j` records that the current suffix matches `eps*_1 .. eps*_j`. Reading `d`
/// moves to state 0 when `d < eps*_{j+1}`, to `j + 1` when equal, and rejects otherwise.
/// A periodic `eps*` folds the states modulo the period.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParryAutomaton {
    star: Vec<u32>,
    periodic: bool,
}

impl ParryAutomaton {
    /// Automaton for words of length at most `star.len()` of an arbitrary `eps*`.
    pub fn truncated(star: Word) -> Self {
        Self { star: star.into_digits(), periodic: false }
    }

    /// Automaton for `eps* = period^inf`.
    pub fn periodic(period: Word) -> Self {
        assert!(!period.is_empty(), "period must be nonempty");
        Self { star: period.into_digits(), periodic: true }
    }

    pub fn states(&self) -> usize {
        self.star.len()
    }

    pub fn is_periodic(&self) -> bool {
        self.periodic
    }

    /// Limit digit `eps*_{j+1}` at state `j`.
    #[inline]
    pub fn limit(&self, state: usize) -> u32 {
        self.star[state]
    }

    #[inline]
    fn advance(&self, state: usize) -> usize {
        let next = state + 1;
        if self.periodic && next == self.star.len() {
            0
        } else {
            next
        }
    }

    /// Transition; `None` when the digit is forbidden or the truncation depth is exceeded.
    #[inline]
    pub fn step(&self, state: usize, d: u32) -> Option<usize> {
        let lim = *self.star.get(state)?;
        match d.cmp(&lim) {
            std::cmp::Ordering::Less => Some(0),
            std::cmp::Ordering::Equal => Some(self.advance(state)),
            std::cmp::Ordering::Greater => None,
        }
    }

    /// Run the automaton from state 0.
    pub fn run(&self, w: &[u32]) -> Option<usize> {
        self.run_from(0, w)
    }

    pub fn run_from(&self, state: usize, w: &[u32]) -> Option<usize> {
        let mut s = state;
        for &d in w {
            s = self.step(s, d)?;
        }
        Some(s)
    }

    pub fn accepts(&self, w: &[u32]) -> bool {
        if !self.periodic && w.len() > self.star.len() {
            return false;
        }
        self.run(w).is_some()
    }

    fn next_counts(&self, v: &[BigUint]) -> Vec<BigUint> {
        let k = self.star.len();
        let mut out = vec![BigUint::zero(); v.len()];
        for (j, vj) in v.iter().enumerate().take(k) {
            if vj.is_zero() {
                continue;
            }
            let lim = self.star[j];
            if lim > 0 {
                out[0] += vj * lim;
            }
            let n = self.advance(j);
            if n < out.len() {
                out[n] += vj;
            }
        }
        out
    }

    /// Completion counts `C(j, r)` of words of length `r` readable from state `j`.
    pub fn completions(&self, r: usize) -> Vec<BigUint> {
        let mut v = vec![BigUint::one(); self.star.len()];
        for _ in 0..r {
            v = self.backward(&v);
        }
        v
    }

    /// `C(., r+1)` from `C(., r)`.
    fn backward(&self, c: &[BigUint]) -> Vec<BigUint> {
        let k = self.star.len();
        (0..k)
            .map(|j| {
                let lim = self.star[j];
                let mut total = &c[0] * lim;
                let n = self.advance(j);
                if n < k {
                    total += &c[n];
                } else {
                    total += 1u32;
                }
                total
            })
            .collect()
    }

    /// Number of accepted words of each length `1..=n`.
    pub fn count_series(&self, n: usize) -> Vec<BigUint> {
        let states = if self.periodic { self.star.len() } else { self.star.len() + 1 };
        let mut v = vec![BigUint::zero(); states];
        v[0] = BigUint::one();
        let mut out = Vec::with_capacity(n);
        for _ in 0..n {
            v = self.next_counts(&v);
            out.push(v.iter().fold(BigUint::zero(), |a, b| a + b));
        }
        out
    }

    pub fn count(&self, n: usize) -> BigUint {
        if n == 0 {
            return BigUint::one();
        }
        let states = if self.periodic { self.star.len() } else { self.star.len() + 1 };
        let mut v = vec![BigUint::zero(); states];
        v[0] = BigUint::one();
        for _ in 0..n {
            v = self.next_counts(&v);
        }
        v.iter().fold(BigUint::zero(), |a, b| a + b)
    }

    /// The `rank`-th accepted word of length `len` in lexicographic order.
    pub fn unrank(&self, len: usize, rank: &BigUint) -> Word {
        if rank.is_zero() {
            return Word::zeros(len);
        }
        let table = CompletionTable::new(self, len);
        let mut r = rank.clone();
        let mut state = 0usize;
        let mut out = Vec::with_capacity(len);
        let mut cursor = table.cursor();
        for pos in 0..len {
            let remaining = len - pos - 1;
            let c = cursor.at(remaining);
            let lim = self.star[state];
            let c0 = &c[0];
            let block = c0 * lim;
            if r < block {
                let (d, rest) = r.div_rem(c0);
                out.push(digit_u32(&d));
                r = rest;
                state = 0;
            } else {
                r -= block;
                out.push(lim);
                state = self.advance(state);
                if state == self.star.len() {
                    debug_assert_eq!(remaining, 0);
                    state = 0;
                }
            }
        }
        Word::new(out)
    }

    /// Number of accepted words of length `w.len()` lexicographically below `w`.
    pub fn rank_below(&self, w: &[u32]) -> BigUint {
        let k = self.star.len();
        let table = CompletionTable::new(self, w.len());
        let mut cursor = table.cursor();
        let mut total = BigUint::zero();
        let mut state = 0usize;
        for (pos, &x) in w.iter().enumerate() {
            let c = cursor.at(w.len() - pos - 1);
            let lim = self.star[state];
            total += &c[0] * x.min(lim);
            let next = self.advance(state);
            if x > lim {
                total += if next < k { c[next].clone() } else { BigUint::one() };
                return total;
            }
            state = if x < lim || next == k { 0 } else { next };
        }
        total
    }
}

fn digit_u32(d: &BigUint) -> u32 {
    u32::try_from(d).expect("digit below the limit")
}

/// Checkpointed completion counts for descending remaining lengths.
struct CompletionTable<'a> {
    automaton: &'a ParryAutomaton,
    block: usize,
    checkpoints: Vec<Vec<BigUint>>,
}

impl<'a> CompletionTable<'a> {
    fn new(automaton: &'a ParryAutomaton, len: usize) -> Self {
        let block = ((len as f64).sqrt() as usize).max(16);
        let mut checkpoints = Vec::new();
        let mut v = vec![BigUint::one(); automaton.states()];
        for r in 0..len {
            if r % block == 0 {
                checkpoints.push(v.clone());
            }
            v = automaton.backward(&v);
        }
        if len.is_multiple_of(block) {
            checkpoints.push(v);
        }
        Self { automaton, block, checkpoints }
    }

    fn cursor(&self) -> Cursor<'_, 'a> {
        Cursor { table: self, base: usize::MAX, cache: Vec::new() }
    }
}

struct Cursor<'t, 'a> {
    table: &'t CompletionTable<'a>,
    base: usize,
    cache: Vec<Vec<BigUint>>,
}

impl Cursor<'_, '_> {
    /// `C(., r)` for non-increasing `r` across calls.
    fn at(&mut self, r: usize) -> &Vec<BigUint> {
        let b = self.table.block;
        let base = r / b * b;
        if base != self.base {
            self.base = base;
            self.cache.clear();
            let mut v = self.table.checkpoints[base / b].clone();
            for _ in base..=r {
                let next = self.table.automaton.backward(&v);
                self.cache.push(v);
                v = next;
            }
        }
        &self.cache[r - base]
    }
}
