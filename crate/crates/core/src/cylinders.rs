//! Cylinders `I_n(w)` in `[0, 1)`: endpoints, lengths and fullness.

use num_rational::BigRational;

use crate::admissibility::{automaton, is_admissible};
use crate::error::{Error, Result};
use crate::expansion::{digits, Word};
use crate::numerics::{BetaSpec, Enclosure, FieldElem};

/// Half-open interval `[left, right)` of points whose first `order` digits are `word`.
#[derive(Clone, Debug)]
pub struct CylinderInterval {
    pub word: Word,
    pub left: Enclosure,
    pub right: Enclosure,
    pub length: Enclosure,
    pub order: usize,
    pub full: bool,
    left_exact: FieldElem,
    length_exact: FieldElem,
}

impl CylinderInterval {
    pub fn left_exact(&self) -> &FieldElem {
        &self.left_exact
    }

    pub fn length_exact(&self) -> &FieldElem {
        &self.length_exact
    }

    pub fn contains(&self, beta: &BetaSpec, x: &BigRational) -> Result<bool> {
        let x = beta.elem_from_rational(x.clone());
        let right = beta.elem_add(&self.left_exact, &self.length_exact);
        Ok(beta.elem_cmp(&self.left_exact, &x)?.is_le() && beta.elem_cmp(&x, &right)?.is_lt())
    }
}

/// Lexicographic successor of `w` in `Sigma_beta^n`, or `None` for the largest word.
pub fn successor(w: &[u32], beta: &BetaSpec) -> Result<Option<Word>> {
    let a = automaton(beta, w.len())?;
    let mut state = 0;
    let mut last = None;
    for (i, &d) in w.iter().enumerate() {
        if d < a.limit(state) {
            last = Some(i);
        }
        state = a.step(state, d).ok_or(Error::NotAdmissible)?;
    }
    Ok(last.map(|i| {
        let mut s = w[..=i].to_vec();
        s[i] += 1;
        s.resize(w.len(), 0);
        Word::new(s)
    }))
}

fn exact_length(w: &[u32], beta: &BetaSpec, left: &FieldElem) -> Result<FieldElem> {
    let right = match successor(w, beta)? {
        Some(s) => beta.elem_series(&s),
        None => beta.elem_from_int(1),
    };
    Ok(beta.elem_sub(&right, left))
}

pub fn interval(w: &[u32], beta: &BetaSpec) -> Result<CylinderInterval> {
    if !is_admissible(w, beta)? {
        return Err(Error::NotAdmissible);
    }
    let left = beta.elem_series(w);
    let length = exact_length(w, beta, &left)?;
    let n = w.len();
    let full = beta.elem_cmp(&length, &beta.elem_beta_pow_neg(n as u64))?.is_eq();
    let bits = beta.precision();
    let right = beta.elem_add(&left, &length);
    Ok(CylinderInterval {
        word: Word::new(w.to_vec()),
        left: beta.elem_enclosure(&left, bits),
        right: beta.elem_enclosure(&right, bits),
        length: beta.elem_enclosure(&length, bits),
        order: n,
        full,
        left_exact: left,
        length_exact: length,
    })
}

pub fn is_full(w: &[u32], beta: &BetaSpec) -> Result<bool> {
    if !is_admissible(w, beta)? {
        return Err(Error::NotAdmissible);
    }
    let left = beta.elem_series(w);
    let length = exact_length(w, beta, &left)?;
    Ok(beta.elem_cmp(&length, &beta.elem_beta_pow_neg(w.len() as u64))?.is_eq())
}

/// Cylinder of order `n` containing `x`.
pub fn locate(x: &BigRational, beta: &BetaSpec, n: usize) -> Result<CylinderInterval> {
    if x >= &BigRational::from_integer(1.into()) {
        return Err(Error::InvalidDigits(format!("point {x} outside [0, 1)")));
    }
    interval(&digits(x, beta, n)?, beta)
}

/// Both sides of `|I_{n+m}(u v)| = beta^-n |I_m(v)|`.
#[derive(Clone, Debug)]
pub struct ConcatCheck {
    pub lhs: Enclosure,
    pub rhs: Enclosure,
    pub equal: bool,
}

pub fn concat_length_check(u: &[u32], v: &[u32], beta: &BetaSpec) -> Result<ConcatCheck> {
    if !is_admissible(u, beta)? || !is_admissible(v, beta)? {
        return Err(Error::NotAdmissible);
    }
    if !is_full(u, beta)? {
        return Err(Error::NotFull);
    }
    let uv: Vec<u32> = u.iter().chain(v).copied().collect();
    let lhs = interval(&uv, beta)?.length_exact;
    let iv = interval(v, beta)?.length_exact;
    let rhs = beta.elem_mul(&beta.elem_beta_pow_neg(u.len() as u64), &iv);
    let bits = beta.precision();
    Ok(ConcatCheck {
        equal: beta.elem_cmp(&lhs, &rhs)?.is_eq(),
        lhs: beta.elem_enclosure(&lhs, bits),
        rhs: beta.elem_enclosure(&rhs, bits),
    })
}
