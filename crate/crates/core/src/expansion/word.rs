use std::cmp::Ordering;
use std::fmt;
use std::ops::Deref;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Finite digit word.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(Vec<u32>);

impl Word {
    pub fn new(digits: Vec<u32>) -> Self {
        Self(digits)
    }

    pub fn empty() -> Self {
        Self(Vec::new())
    }

    pub fn zeros(n: usize) -> Self {
        Self(vec![0; n])
    }

    pub fn digits(&self) -> &[u32] {
        &self.0
    }

    pub fn into_digits(self) -> Vec<u32> {
        self.0
    }

    pub fn push(&mut self, d: u32) {
        self.0.push(d);
    }

    pub fn extend_from(&mut self, other: &[u32]) {
        self.0.extend_from_slice(other);
    }

    pub fn concat(&self, other: &[u32]) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(other);
        Word(v)
    }

    pub fn with_zeros(&self, n: usize) -> Word {
        let mut v = self.0.clone();
        v.resize(v.len() + n, 0);
        Word(v)
    }

    pub fn prefix(&self, n: usize) -> Word {
        Word(self.0[..n.min(self.0.len())].to_vec())
    }

    pub fn max_digit(&self) -> u32 {
        self.0.iter().copied().max().unwrap_or(0)
    }

    /// Every digit at most `bound`.
    pub fn fits(&self, bound: u32) -> bool {
        self.0.iter().all(|&d| d <= bound)
    }

    /// Chunked text form: a length header followed by `width` digits per line.
    pub fn to_stream_text(&self, width: usize) -> String {
        let mut s = format!("# length {}\n", self.0.len());
        for chunk in self.0.chunks(width.max(1)) {
            let line: Vec<String> = chunk.iter().map(u32::to_string).collect();
            s.push_str(&line.join(","));
            s.push_str(",\n");
        }
        s
    }

    /// Parse comma-separated digits, ignoring `#` comment lines and whitespace.
    pub fn parse_text(text: &str) -> Result<Word> {
        let mut digits = Vec::new();
        let mut declared = None;
        for line in text.lines() {
            let line = line.trim();
            if let Some(comment) = line.strip_prefix('#') {
                if let Some(n) = comment.trim().strip_prefix("length") {
                    declared = n.trim().parse::<usize>().ok();
                }
                continue;
            }
            for tok in line.split(',') {
                let tok = tok.trim();
                if tok.is_empty() {
                    continue;
                }
                let d = tok
                    .parse::<u32>()
                    .map_err(|_| Error::Parse { what: "digit", input: tok.to_string() })?;
                digits.push(d);
            }
        }
        if let Some(n) = declared {
            if n != digits.len() {
                return Err(Error::Parse { what: "word length", input: format!("{} != {n}", digits.len()) });
            }
        }
        Ok(Word(digits))
    }
}

impl Deref for Word {
    type Target = [u32];

    fn deref(&self) -> &[u32] {
        &self.0
    }
}

impl From<Vec<u32>> for Word {
    fn from(v: Vec<u32>) -> Self {
        Word(v)
    }
}

impl From<&[u32]> for Word {
    fn from(v: &[u32]) -> Self {
        Word(v.to_vec())
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, d) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{d}")?;
        }
        Ok(())
    }
}

impl FromStr for Word {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        let t = t.strip_prefix('(').and_then(|t| t.strip_suffix(')')).unwrap_or(t);
        Word::parse_text(t)
    }
}

/// Lexicographic order on sequences padded with `0^inf`.
pub fn lex_compare(u: &[u32], v: &[u32]) -> Ordering {
    let n = u.len().max(v.len());
    for i in 0..n {
        let a = u.get(i).copied().unwrap_or(0);
        let b = v.get(i).copied().unwrap_or(0);
        match a.cmp(&b) {
            Ordering::Equal => continue,
            o => return o,
        }
    }
    Ordering::Equal
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lex_examples() {
        assert_eq!(lex_compare(&[1, 0], &[1, 1]), Ordering::Less);
        assert_eq!(lex_compare(&[1], &[1, 0]), Ordering::Equal);
        assert_eq!(lex_compare(&[0, 2], &[1, 0]), Ordering::Less);
        assert_eq!(lex_compare(&[], &[0, 0]), Ordering::Equal);
    }

    #[test]
    fn text_round_trip() {
        let w = Word::new((0..150).map(|i| i % 3).collect());
        assert_eq!(Word::parse_text(&w.to_stream_text(64)).unwrap(), w);
        assert_eq!("1,0,1".parse::<Word>().unwrap(), Word::new(vec![1, 0, 1]));
        assert_eq!("()".parse::<Word>().unwrap(), Word::empty());
        assert!(Word::parse_text("# length 3\n1,0\n").is_err());
        assert!("1,x".parse::<Word>().is_err());
    }
}
