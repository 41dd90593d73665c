//! Parry admissibility, counting and enumeration of `Sigma_beta^n`, zero-run statistics
//! of `eps*` and the approximating bases `beta_N`.

mod automaton;

use std::sync::Mutex;

use num_bigint::BigUint;
use num_traits::ToPrimitive;

pub use automaton::ParryAutomaton;

use crate::error::{Error, Result};
use crate::expansion::Word;
use crate::numerics::{solve_unit_equation, BetaSpec};

/// Default bound on the word length accepted by [`enumerate`].
pub const ENUMERATION_CAP: usize = 24;
/// Default bound on the number of words materialized by [`enumerate`].
pub const ENUMERATION_MAX_WORDS: u64 = 1 << 24;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EnumerationLimits {
    pub max_len: usize,
    pub max_words: u64,
}

impl Default for EnumerationLimits {
    fn default() -> Self {
        Self { max_len: ENUMERATION_CAP, max_words: ENUMERATION_MAX_WORDS }
    }
}

/// Follower automaton valid for words of length at most `n`.
///
/// A finite expansion of 1 observed within `n` digits gives the periodic automaton,
/// otherwise the `eps*` prefix of length `n` is used.
pub fn automaton(beta: &BetaSpec, n: usize) -> Result<ParryAutomaton> {
    let one = beta.expansion_of_one();
    if let Some(period) = one.period(n.max(1))? {
        return Ok(ParryAutomaton::periodic(period));
    }
    Ok(ParryAutomaton::truncated(one.eps_star(n.max(1))?))
}

/// Parry's criterion: every shift of `w` is lexicographically at most the matching prefix of `eps*`.
pub fn is_admissible(w: &[u32], beta: &BetaSpec) -> Result<bool> {
    let n = w.len();
    if n == 0 {
        return Ok(true);
    }
    let star = beta.expansion_of_one().eps_star(n)?;
    Ok(parry_check(w, &star))
}

/// Z-function test of `sigma^j w <= star[..n-j]` for all `j`.
pub(crate) fn parry_check(w: &[u32], star: &[u32]) -> bool {
    let n = w.len();
    let sep = u32::MAX;
    let s: Vec<u32> = star[..n].iter().copied().chain(std::iter::once(sep)).chain(w.iter().copied()).collect();
    let z = z_function(&s);
    (0..n).all(|j| {
        let l = z[n + 1 + j].min(n - j);
        l == n - j || w[j + l] < star[l]
    })
}

pub(crate) fn z_function(s: &[u32]) -> Vec<usize> {
    let n = s.len();
    let mut z = vec![0; n];
    if n == 0 {
        return z;
    }
    z[0] = n;
    let (mut l, mut r) = (0, 0);
    for i in 1..n {
        if i < r {
            z[i] = (r - i).min(z[i - l]);
        }
        while i + z[i] < n && s[z[i]] == s[i + z[i]] {
            z[i] += 1;
        }
        if i + z[i] > r {
            l = i;
            r = i + z[i];
        }
    }
    z
}

/// All admissible words of length `n` in lexicographic order.
pub fn enumerate(beta: &BetaSpec, n: usize) -> Result<Vec<Word>> {
    enumerate_with(beta, n, EnumerationLimits::default())
}

pub fn enumerate_with(beta: &BetaSpec, n: usize, limits: EnumerationLimits) -> Result<Vec<Word>> {
    if n > limits.max_len {
        return Err(Error::CapExceeded { n, cap: limits.max_len });
    }
    let a = automaton(beta, n)?;
    let total = a.count(n).to_u64().unwrap_or(u64::MAX);
    if total > limits.max_words {
        return Err(Error::CapExceeded { n, cap: limits.max_len });
    }
    let mut out = Vec::with_capacity(total as usize);
    let mut buf = Vec::with_capacity(n);
    dfs(&a, 0, n, &mut buf, &mut out);
    Ok(out)
}

fn dfs(a: &ParryAutomaton, state: usize, n: usize, buf: &mut Vec<u32>, out: &mut Vec<Word>) {
    if buf.len() == n {
        out.push(Word::new(buf.clone()));
        return;
    }
    for d in 0..=a.limit(state) {
        if let Some(next) = a.step(state, d) {
            buf.push(d);
            dfs(a, next, n, buf, out);
            buf.pop();
        }
    }
}

/// Exact cardinality of `Sigma_beta^n`.
pub fn count(beta: &BetaSpec, n: usize) -> Result<BigUint> {
    Ok(automaton(beta, n)?.count(n))
}

/// Zero-run lengths `t_k` of `eps*` and their running maxima `Gamma_k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GammaTable {
    t: Vec<u64>,
    gamma: Vec<u64>,
}

impl GammaTable {
    pub fn depth(&self) -> usize {
        self.t.len()
    }

    /// `t_k`, one-based.
    pub fn t(&self, k: usize) -> u64 {
        self.t[k - 1]
    }

    /// `Gamma_k`, with `Gamma_0 = 0`.
    pub fn gamma(&self, k: usize) -> u64 {
        if k == 0 {
            0
        } else {
            self.gamma[k - 1]
        }
    }

    pub fn t_values(&self) -> &[u64] {
        &self.t
    }

    pub fn gamma_values(&self) -> &[u64] {
        &self.gamma
    }
}

/// Longest zero run searched for before giving up on an aperiodic `eps*`.
const MAX_ZERO_RUN: usize = 1 << 20;

pub fn zero_run_table(beta: &BetaSpec, n: usize) -> Result<GammaTable> {
    let one = beta.expansion_of_one();
    let mut len = 2 * n + 2;
    let mut star = one.eps_star(len)?;
    let mut t = Vec::with_capacity(n);
    let mut gamma = Vec::with_capacity(n);
    let mut g = 0;
    let mut k = 1;
    while k <= n {
        let mut j = 0;
        loop {
            while k + j >= len {
                if len > n + MAX_ZERO_RUN {
                    return Err(Error::InsufficientDepth { depth: len, tail_start: k });
                }
                len *= 2;
                star = one.eps_star(len)?;
            }
            if star[k + j] != 0 {
                break;
            }
            j += 1;
        }
        t.push(j as u64);
        g = g.max(j as u64);
        gamma.push(g);
        k += 1;
    }
    Ok(GammaTable { t, gamma })
}

/// `w` followed by `Gamma_n + 1` zeros, a full word.
pub fn make_full(w: &[u32], beta: &BetaSpec) -> Result<Word> {
    if w.is_empty() {
        return Ok(Word::empty());
    }
    if !is_admissible(w, beta)? {
        return Err(Error::NotAdmissible);
    }
    let g = zero_run_table(beta, w.len())?.gamma(w.len());
    Ok(Word::new(w.to_vec()).with_zeros(g as usize + 1))
}

/// The root of `1 = eps*_1 / x + ... + eps*_N / x^N`, with `eps*(beta_N) = (eps*_1, ..., eps*_N - 1)^inf`.
pub fn beta_n(beta: &BetaSpec, n: usize) -> Result<BetaSpec> {
    if n == 0 {
        return Err(Error::RootAtOrBelowOne);
    }
    let star = beta.expansion_of_one().eps_star(n)?;
    if star[n - 1] == 0 {
        return Err(Error::ZeroTerminalDigit { index: n });
    }
    let bracket = solve_unit_equation(star.digits(), 32)?;
    BetaSpec::from_unit_equation(star.digits(), &bracket).map(|b| b.with_precision(beta.precision()))
}

/// Period of `eps*(beta_N)`.
pub fn beta_n_period(beta: &BetaSpec, n: usize) -> Result<Word> {
    let mut star = beta.expansion_of_one().eps_star(n)?.into_digits();
    match star.last_mut() {
        Some(d) if *d > 0 => *d -= 1,
        _ => return Err(Error::ZeroTerminalDigit { index: n }),
    }
    Ok(Word::new(star))
}

/// Cached view of `Sigma_beta^*` for one base.
pub struct AdmissibleSetHandle {
    beta: BetaSpec,
    counts: Mutex<Vec<BigUint>>,
}

impl AdmissibleSetHandle {
    pub fn new(beta: &BetaSpec) -> Self {
        Self { beta: beta.clone(), counts: Mutex::new(Vec::new()) }
    }

    pub fn beta(&self) -> &BetaSpec {
        &self.beta
    }

    pub fn eps_star(&self, n: usize) -> Result<Word> {
        self.beta.expansion_of_one().eps_star(n)
    }

    pub fn is_admissible(&self, w: &[u32]) -> Result<bool> {
        is_admissible(w, &self.beta)
    }

    pub fn count(&self, n: usize) -> Result<BigUint> {
        if n == 0 {
            return Ok(BigUint::from(1u32));
        }
        let mut c = self.counts.lock().unwrap_or_else(|e| e.into_inner());
        if c.len() < n {
            let target = n.max(2 * c.len());
            *c = automaton(&self.beta, target)?.count_series(target);
        }
        Ok(c[n - 1].clone())
    }

    pub fn enumerate(&self, n: usize) -> Result<Vec<Word>> {
        enumerate(&self.beta, n)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn phi() -> BetaSpec {
        "poly:1,-1,-1@1,2".parse().unwrap()
    }

    fn trib() -> BetaSpec {
        "poly:1,-1,-1,-1@1,2".parse().unwrap()
    }

    fn brute(beta: &BetaSpec, n: usize) -> Vec<Word> {
        let q = beta.ceil() + 1;
        let star = beta.expansion_of_one().eps_star(n).unwrap();
        let mut out = Vec::new();
        for mut code in 0..(q as u64).pow(n as u32) {
            let mut w = vec![0; n];
            for d in w.iter_mut().rev() {
                *d = (code % q as u64) as u32;
                code /= q as u64;
            }
            let ok = (0..n).all(|j| crate::expansion::lex_compare(&w[j..], &star[..n - j]).is_le());
            if ok {
                out.push(Word::new(w));
            }
        }
        out
    }

    #[test]
    fn admissibility_examples() {
        assert!(!is_admissible(&[1, 1], &phi()).unwrap());
        assert!(is_admissible(&[1, 0, 1], &phi()).unwrap());
        assert!(is_admissible(&[0, 0, 0], &trib()).unwrap());
    }

    #[test]
    fn enumeration_examples() {
        let w: Vec<Vec<u32>> = enumerate(&phi(), 3).unwrap().into_iter().map(Word::into_digits).collect();
        assert_eq!(w, vec![vec![0, 0, 0], vec![0, 0, 1], vec![0, 1, 0], vec![1, 0, 0], vec![1, 0, 1]]);
        assert_eq!(enumerate(&BetaSpec::integer(2).unwrap(), 4).unwrap().len(), 16);
        let t = enumerate(&trib(), 3).unwrap();
        assert_eq!(t.len(), 7);
        assert!(!t.contains(&Word::new(vec![1, 1, 1])));
        assert!(matches!(enumerate(&phi(), 25), Err(Error::CapExceeded { .. })));
    }

    #[test]
    fn enumeration_matches_brute_force() {
        let nine_fifths: BetaSpec = "rat:9/5".parse().unwrap();
        for beta in [phi(), trib(), nine_fifths, "rat:5/2".parse().unwrap()] {
            for n in 1..=7 {
                assert_eq!(enumerate(&beta, n).unwrap(), brute(&beta, n), "beta {beta} n {n}");
            }
        }
    }

    #[test]
    fn count_examples() {
        let c: Vec<u64> = (1..=5).map(|n| count(&phi(), n).unwrap().to_u64().unwrap()).collect();
        assert_eq!(c, vec![2, 3, 5, 8, 13]);
        assert_eq!(count(&BetaSpec::integer(2).unwrap(), 10).unwrap(), BigUint::from(1024u32));
        let h = AdmissibleSetHandle::new(&phi());
        assert_eq!(h.count(18).unwrap(), BigUint::from(6765u32));
        assert_eq!(h.count(3).unwrap(), BigUint::from(5u32));
    }

    #[test]
    fn gamma_examples() {
        let g = zero_run_table(&BetaSpec::integer(2).unwrap(), 10).unwrap();
        assert!(g.t_values().iter().all(|&t| t == 0));
        let g = zero_run_table(&phi(), 10).unwrap();
        assert!((1..=10).all(|k| g.gamma(k) == 1));
        let g = zero_run_table(&trib(), 10).unwrap();
        assert!((2..=10).all(|k| g.gamma(k) == 1));
        assert_eq!(g.gamma(1), 0);
    }

    #[test]
    fn make_full_examples() {
        assert_eq!(make_full(&[0, 1], &phi()).unwrap().digits(), &[0, 1, 0, 0]);
        assert_eq!(make_full(&[1, 0, 1], &BetaSpec::integer(2).unwrap()).unwrap().digits(), &[1, 0, 1, 0]);
        assert!(make_full(&[], &phi()).unwrap().is_empty());
        assert_eq!(make_full(&[1, 1], &phi()), Err(Error::NotAdmissible));
    }

    #[test]
    fn beta_n_examples() {
        let b = beta_n(&phi(), 3).unwrap();
        assert!((b.to_f64() - 1.465_571_231_876_768).abs() < 1e-12);
        let b = beta_n(&trib(), 2).unwrap();
        assert!((b.to_f64() - 1.618_033_988_749_895).abs() < 1e-12);
        assert_eq!(beta_n(&phi(), 2).unwrap_err(), Error::ZeroTerminalDigit { index: 2 });
        let e = b.expansion_of_one().period(50).unwrap().unwrap();
        assert_eq!(e.digits(), &[1, 0]);
    }
}
