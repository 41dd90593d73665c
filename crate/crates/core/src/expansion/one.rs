use std::sync::Mutex;

use num_rational::BigRational;
use num_traits::One;

use super::orbit::Orbit;
use super::word::Word;
use crate::error::Result;
use crate::numerics::BetaSpec;

pub const DEFAULT_PROBE_DEPTH: usize = 10_000;

/// Lazily extended expansion of 1, shared through [`BetaSpec::expansion_of_one`].
pub struct ExpansionOfOne {
    beta: BetaSpec,
    state: Mutex<OneState>,
}

struct OneState {
    /// Digits of `eps(1, beta)` computed so far (without trailing zeros once terminated).
    digits: Vec<u32>,
    orbit: Option<Orbit>,
    /// Length `m` of a finite expansion.
    terminated: Option<usize>,
}

/// Simple-Parry status as far as it can be certified.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ParryStatus {
    /// `eps(1, beta) = (e_1, ..., e_m, 0^inf)`.
    SimpleParry { expansion: Word },
    /// Certified never to terminate (non-integer rational bases).
    NotSimpleParry,
    /// No termination within the probe depth.
    Unknown { probe_depth: usize },
}

impl ExpansionOfOne {
    pub(crate) fn new(beta: BetaSpec) -> Self {
        let orbit = Orbit::new(&beta, &BigRational::one()).expect("1 lies in [0, 1]");
        Self { beta, state: Mutex::new(OneState { digits: Vec::new(), orbit: Some(orbit), terminated: None }) }
    }

    pub fn beta(&self) -> &BetaSpec {
        &self.beta
    }

    fn extend(&self, n: usize) -> Result<std::sync::MutexGuard<'_, OneState>> {
        let mut st = self.state.lock().unwrap_or_else(|e| e.into_inner());
        while st.terminated.is_none() && st.digits.len() < n {
            let orbit = st.orbit.as_mut().expect("orbit present until termination");
            let d = orbit.step()?;
            let zero = orbit.is_zero()?;
            st.digits.push(d);
            if zero {
                st.terminated = Some(st.digits.len());
                st.orbit = None;
            }
        }
        Ok(st)
    }

    /// First `n` digits of `eps(1, beta)`, zero padded after termination.
    pub fn eps_one(&self, n: usize) -> Result<Word> {
        let st = self.extend(n)?;
        let mut v: Vec<u32> = st.digits.iter().take(n).copied().collect();
        v.resize(n, 0);
        Ok(Word::new(v))
    }

    /// First `n` digits of `eps*(beta)`.
    pub fn eps_star(&self, n: usize) -> Result<Word> {
        let st = self.extend(n)?;
        match st.terminated {
            Some(m) if m <= n => {
                let mut period = st.digits.clone();
                period[m - 1] -= 1;
                Ok(Word::new((0..n).map(|i| period[i % m]).collect()))
            }
            _ => Ok(Word::new(st.digits[..n].to_vec())),
        }
    }

    /// The digit `eps*_i`, one-based.
    pub fn eps_star_digit(&self, i: usize) -> Result<u32> {
        Ok(self.eps_star(i)?[i - 1])
    }

    /// Period of `eps*` if termination has been observed within `probe_depth` steps.
    pub fn period(&self, probe_depth: usize) -> Result<Option<Word>> {
        let st = self.extend(probe_depth)?;
        Ok(st.terminated.map(|m| {
            let mut p = st.digits.clone();
            p[m - 1] -= 1;
            Word::new(p)
        }))
    }

    pub fn status(&self, probe_depth: usize) -> Result<ParryStatus> {
        if let Some(r) = self.beta.as_rational() {
            if !r.is_integer() {
                return Ok(ParryStatus::NotSimpleParry);
            }
        }
        let st = self.extend(probe_depth)?;
        Ok(match st.terminated {
            Some(_) => ParryStatus::SimpleParry { expansion: Word::new(st.digits.clone()) },
            None => ParryStatus::Unknown { probe_depth },
        })
    }
}

/// Snapshot of the simple-Parry structure of `eps*(beta)`.
#[derive(Clone, Debug)]
pub struct InfiniteExpansionOfOne {
    beta: BetaSpec,
    kind: OneKind,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OneKind {
    SimpleParry { expansion: Word, period: Word },
    /// `certified` is set when termination is impossible, not merely unobserved.
    Aperiodic { certified: bool, probe_depth: usize },
}

pub fn infinite_expansion_of_one(beta: &BetaSpec, probe_depth: usize) -> Result<InfiniteExpansionOfOne> {
    let one = beta.expansion_of_one();
    let kind = match one.status(probe_depth)? {
        ParryStatus::SimpleParry { expansion } => {
            let mut period = expansion.clone().into_digits();
            *period.last_mut().expect("nonempty expansion") -= 1;
            OneKind::SimpleParry { expansion, period: Word::new(period) }
        }
        ParryStatus::NotSimpleParry => OneKind::Aperiodic { certified: true, probe_depth },
        ParryStatus::Unknown { probe_depth } => OneKind::Aperiodic { certified: false, probe_depth },
    };
    Ok(InfiniteExpansionOfOne { beta: beta.clone(), kind })
}

impl InfiniteExpansionOfOne {
    pub fn kind(&self) -> &OneKind {
        &self.kind
    }

    pub fn is_simple_parry(&self) -> bool {
        matches!(self.kind, OneKind::SimpleParry { .. })
    }

    pub fn eps_star(&self, n: usize) -> Result<Word> {
        self.beta.expansion_of_one().eps_star(n)
    }

    pub fn eps_one(&self, n: usize) -> Result<Word> {
        self.beta.expansion_of_one().eps_one(n)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        let two = BetaSpec::integer(2).unwrap();
        let e = infinite_expansion_of_one(&two, 100).unwrap();
        assert_eq!(
            e.kind(),
            &OneKind::SimpleParry { expansion: Word::new(vec![2]), period: Word::new(vec![1]) }
        );
        assert_eq!(e.eps_star(4).unwrap(), Word::new(vec![1, 1, 1, 1]));

        let phi: BetaSpec = "poly:1,-1,-1@1,2".parse().unwrap();
        let e = infinite_expansion_of_one(&phi, 100).unwrap();
        assert_eq!(e.eps_star(5).unwrap(), Word::new(vec![1, 0, 1, 0, 1]));
        assert_eq!(e.eps_one(4).unwrap(), Word::new(vec![1, 1, 0, 0]));

        let trib: BetaSpec = "poly:1,-1,-1,-1@1,2".parse().unwrap();
        let e = infinite_expansion_of_one(&trib, 100).unwrap();
        assert_eq!(e.eps_star(6).unwrap(), Word::new(vec![1, 1, 0, 1, 1, 0]));
    }

    #[test]
    fn rational_base_is_certified_aperiodic() {
        let b: BetaSpec = "rat:9/5".parse().unwrap();
        let e = infinite_expansion_of_one(&b, 50).unwrap();
        assert_eq!(e.kind(), &OneKind::Aperiodic { certified: true, probe_depth: 50 });
        assert_eq!(e.eps_star(3).unwrap()[0], 1);
    }

    #[test]
    fn prefix_before_termination_is_unchanged() {
        let trib: BetaSpec = "poly:1,-1,-1,-1@1,2".parse().unwrap();
        let one = trib.expansion_of_one();
        assert_eq!(one.eps_star(2).unwrap(), Word::new(vec![1, 1]));
        assert_eq!(one.eps_star(3).unwrap(), Word::new(vec![1, 1, 0]));
    }
}
