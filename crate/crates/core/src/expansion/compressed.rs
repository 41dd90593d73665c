use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use super::word::Word;

/// Piece of a [`CompressedWord`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Segment {
    Digits(Vec<u32>),
    Zeros(BigUint),
    Repeat { unit: CompressedWord, times: BigUint },
}

/// Digit word with run-length compressed zero runs and repeated blocks.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CompressedWord {
    segments: Vec<Segment>,
}

/// Zero-run summary of a word; combines associatively under concatenation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunSummary {
    pub len: BigUint,
    pub lead: BigUint,
    pub trail: BigUint,
    pub max_run: BigUint,
}

impl RunSummary {
    pub fn empty() -> Self {
        Self { len: BigUint::zero(), lead: BigUint::zero(), trail: BigUint::zero(), max_run: BigUint::zero() }
    }

    pub fn zeros(n: BigUint) -> Self {
        Self { len: n.clone(), lead: n.clone(), trail: n.clone(), max_run: n }
    }

    pub fn of_digits(d: &[u32]) -> Self {
        let mut lead = 0u64;
        while (lead as usize) < d.len() && d[lead as usize] == 0 {
            lead += 1;
        }
        let trail = d.iter().rev().take_while(|&&x| x == 0).count() as u64;
        let mut best = 0u64;
        let mut cur = 0u64;
        for &x in d {
            cur = if x == 0 { cur + 1 } else { 0 };
            best = best.max(cur);
        }
        Self {
            len: BigUint::from(d.len()),
            lead: BigUint::from(lead),
            trail: BigUint::from(trail),
            max_run: BigUint::from(best),
        }
    }

    pub fn all_zero(&self) -> bool {
        self.lead == self.len
    }

    pub fn then(&self, next: &RunSummary) -> RunSummary {
        let lead = if self.all_zero() { &self.len + &next.lead } else { self.lead.clone() };
        let trail = if next.all_zero() { &next.len + &self.trail } else { next.trail.clone() };
        let bridge = &self.trail + &next.lead;
        let max_run = self.max_run.clone().max(next.max_run.clone()).max(bridge);
        RunSummary { len: &self.len + &next.len, lead, trail, max_run }
    }

    pub fn repeat(&self, times: &BigUint) -> RunSummary {
        if times.is_zero() {
            return RunSummary::empty();
        }
        if self.all_zero() {
            return RunSummary::zeros(&self.len * times);
        }
        let mut max_run = self.max_run.clone();
        if times > &BigUint::one() {
            max_run = max_run.max(&self.trail + &self.lead);
        }
        RunSummary { len: &self.len * times, lead: self.lead.clone(), trail: self.trail.clone(), max_run }
    }
}

impl CompressedWord {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn segments(&self) -> &[Segment] {
        &self.segments
    }

    pub fn digits(mut self, d: &[u32]) -> Self {
        if !d.is_empty() {
            if let Some(Segment::Digits(v)) = self.segments.last_mut() {
                v.extend_from_slice(d);
            } else {
                self.segments.push(Segment::Digits(d.to_vec()));
            }
        }
        self
    }

    pub fn zeros(mut self, n: BigUint) -> Self {
        if !n.is_zero() {
            if let Some(Segment::Zeros(z)) = self.segments.last_mut() {
                *z += n;
            } else {
                self.segments.push(Segment::Zeros(n));
            }
        }
        self
    }

    pub fn repeat(mut self, unit: CompressedWord, times: BigUint) -> Self {
        if !times.is_zero() && !unit.segments.is_empty() {
            self.segments.push(Segment::Repeat { unit, times });
        }
        self
    }

    pub fn append(mut self, other: CompressedWord) -> Self {
        for s in other.segments {
            self = match s {
                Segment::Digits(d) => self.digits(&d),
                Segment::Zeros(z) => self.zeros(z),
                Segment::Repeat { unit, times } => self.repeat(unit, times),
            };
        }
        self
    }

    pub fn len(&self) -> BigUint {
        self.segments.iter().map(segment_len).fold(BigUint::zero(), |a, b| a + b)
    }

    pub fn is_empty(&self) -> bool {
        self.len().is_zero()
    }

    pub fn summary(&self) -> RunSummary {
        self.segments.iter().fold(RunSummary::empty(), |acc, s| acc.then(&segment_summary(s)))
    }

    /// Summary of the prefix of length `n`.
    pub fn prefix_summary(&self, n: &BigUint) -> RunSummary {
        let mut left = n.clone();
        let mut acc = RunSummary::empty();
        for s in &self.segments {
            if left.is_zero() {
                break;
            }
            let l = segment_len(s);
            if l <= left {
                acc = acc.then(&segment_summary(s));
                left -= l;
                continue;
            }
            let part = match s {
                Segment::Digits(d) => RunSummary::of_digits(&d[..left.to_usize().expect("below a small length")]),
                Segment::Zeros(_) => RunSummary::zeros(left.clone()),
                Segment::Repeat { unit, .. } => {
                    let ul = unit.len();
                    let (q, r) = left.div_rem(&ul);
                    unit.summary().repeat(&q).then(&unit.prefix_summary(&r))
                }
            };
            acc = acc.then(&part);
            break;
        }
        acc
    }

    /// Run length `r_n` of the prefix of length `n`.
    pub fn run_length(&self, n: &BigUint) -> BigUint {
        self.prefix_summary(n).max_run
    }

    /// First `n` digits, materialized.
    pub fn prefix(&self, n: usize) -> Word {
        let mut out = Vec::with_capacity(n);
        self.write_prefix(n, &mut out);
        Word::new(out)
    }

    fn write_prefix(&self, n: usize, out: &mut Vec<u32>) {
        for s in &self.segments {
            if out.len() >= n {
                return;
            }
            match s {
                Segment::Digits(d) => {
                    let k = (n - out.len()).min(d.len());
                    out.extend_from_slice(&d[..k]);
                }
                Segment::Zeros(z) => {
                    let k = z.to_usize().map_or(n - out.len(), |z| z.min(n - out.len()));
                    out.resize(out.len() + k, 0);
                }
                Segment::Repeat { unit, times } => {
                    let mut t = times.clone();
                    while !t.is_zero() && out.len() < n {
                        unit.write_prefix(n, out);
                        t -= 1u32;
                    }
                }
            }
        }
    }

    /// Materialize if the length fits `limit`.
    pub fn to_word(&self, limit: usize) -> Option<Word> {
        let n = self.len().to_usize()?;
        (n <= limit).then(|| self.prefix(n))
    }

    /// Same shape with every zero run capped at `cap` and every repeat count capped at `max_times`.
    pub fn reduced(&self, cap: u64, max_times: u64) -> CompressedWord {
        let mut out = CompressedWord::new();
        for s in &self.segments {
            out = match s {
                Segment::Digits(d) => out.digits(d),
                Segment::Zeros(z) => out.zeros(z.clone().min(BigUint::from(cap))),
                Segment::Repeat { unit, times } => {
                    out.repeat(unit.reduced(cap, max_times), times.clone().min(BigUint::from(max_times)))
                }
            };
        }
        out
    }

    /// Position one past the last nonzero digit, or zero.
    pub fn last_nonzero_end(&self) -> BigUint {
        let s = self.summary();
        if s.all_zero() {
            BigUint::zero()
        } else {
            s.len - s.trail
        }
    }
}

impl From<&[u32]> for CompressedWord {
    fn from(d: &[u32]) -> Self {
        CompressedWord::new().digits(d)
    }
}

fn segment_len(s: &Segment) -> BigUint {
    match s {
        Segment::Digits(d) => BigUint::from(d.len()),
        Segment::Zeros(z) => z.clone(),
        Segment::Repeat { unit, times } => unit.len() * times,
    }
}

fn segment_summary(s: &Segment) -> RunSummary {
    match s {
        Segment::Digits(d) => RunSummary::of_digits(d),
        Segment::Zeros(z) => RunSummary::zeros(z.clone()),
        Segment::Repeat { unit, times } => unit.summary().repeat(times),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn naive_run(d: &[u32]) -> u64 {
        RunSummary::of_digits(d).max_run.to_u64().unwrap()
    }

    #[test]
    fn prefix_runs_match_materialized() {
        let block = CompressedWord::new().digits(&[1]).zeros(BigUint::from(3u32));
        let w = CompressedWord::new()
            .digits(&[1, 1, 0])
            .zeros(BigUint::from(5u32))
            .repeat(block, BigUint::from(4u32))
            .zeros(BigUint::from(2u32))
            .digits(&[1]);
        let flat = w.to_word(1000).unwrap();
        assert_eq!(flat.len(), 27);
        for n in 0..=flat.len() {
            assert_eq!(w.run_length(&BigUint::from(n)).to_u64().unwrap(), naive_run(&flat[..n]), "n = {n}");
        }
        assert_eq!(w.summary(), RunSummary::of_digits(&flat));
    }

    #[test]
    fn huge_lengths_stay_symbolic() {
        let z = BigUint::from(10u32).pow(40);
        let w = CompressedWord::new().digits(&[1]).zeros(z.clone()).digits(&[1]);
        assert_eq!(w.run_length(&(&z + 2u32)), z);
        assert_eq!(w.prefix(4).digits(), &[1, 0, 0, 0]);
        assert!(w.to_word(100).is_none());
        assert_eq!(w.reduced(3, 2).to_word(10).unwrap().digits(), &[1, 0, 0, 0, 1]);
    }
}
