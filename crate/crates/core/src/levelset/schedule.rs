use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Pow, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::numerics::rational_to_f64;

/// Index shifts tried before a target pair is declared unreachable.
const MAX_SHIFT: usize = 100_000;

/// Block schedule `n_k < m_k < n_{k+1}` with `n_{k+1} = (m_k - n_k) t_k + m_k + p_k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Schedule {
    a: BigRational,
    b: BigRational,
    big_n: usize,
    k0: usize,
    n: Vec<u64>,
    m: Vec<u64>,
    t: Vec<u64>,
    p: Vec<u64>,
}

/// Unadjusted sequences `(n'_k, m'_k)`.
pub fn raw_schedule(a: &BigRational, b: &BigRational, k: usize) -> (BigInt, BigInt) {
    let inv = BigRational::one() / (BigRational::one() - b);
    let base = if a.is_zero() {
        let k = BigInt::from(k);
        BigRational::from_integer(Pow::pow(&k, k.to_u32().expect("small index")))
    } else {
        let rho = b * (BigRational::one() - a) / (a * (BigRational::one() - b));
        Pow::pow(&rho, k as i32)
    };
    ((base.floor()).to_integer(), (base * inv).floor().to_integer())
}

pub(crate) fn validate_targets(a: &BigRational, b: &BigRational) -> Result<()> {
    if !b.is_positive() || b >= &BigRational::one() {
        return Err(Error::InvalidTarget(format!("b = {b} must lie in (0, 1)")));
    }
    if a.is_negative() {
        return Err(Error::InvalidTarget(format!("a = {a} must be nonnegative")));
    }
    if a > &(b / (BigRational::one() + b)) {
        return Err(Error::EmptyLevelSet { a: a.to_string(), b: b.to_string() });
    }
    Ok(())
}

fn to_u64(x: &BigInt, level: usize) -> Result<u64> {
    x.to_u64().ok_or(Error::ScheduleOverflow { level })
}

pub fn make_schedule(a: &BigRational, b: &BigRational, big_n: usize, depth: usize) -> Result<Schedule> {
    validate_targets(a, b)?;
    if big_n < 2 {
        return Err(Error::InvalidTarget(format!("N = {big_n} must be at least 2")));
    }
    if depth == 0 {
        return Err(Error::InvalidTarget("depth K must be at least 1".into()));
    }
    let two_n = BigInt::from(2 * big_n);
    let mut k0 = 0;
    loop {
        let (n1, m1) = raw_schedule(a, b, 1 + k0);
        if n1 > two_n && &m1 - &n1 > two_n {
            break;
        }
        k0 += 1;
        if k0 > MAX_SHIFT {
            return Err(Error::InvalidTarget(format!("no admissible start for a = {a}, b = {b}")));
        }
    }
    let mut n = Vec::with_capacity(depth);
    let mut m = Vec::with_capacity(depth);
    for k in 1..=depth {
        let (rn, rm) = raw_schedule(a, b, k + k0);
        let mut nk = to_u64(&rn, k)?;
        let mut mk = to_u64(&rm, k)?;
        if let (Some(&pn), Some(&pm)) = (n.last(), m.last()) {
            let pm: u64 = pm;
            nk = nk.max(pm + 1);
            let gap = pm - pn;
            mk = mk.max(nk.checked_add(gap + 1).ok_or(Error::ScheduleOverflow { level: k })?);
        }
        mk = mk.max(nk + 1);
        n.push(nk);
        m.push(mk);
    }
    let mut t = Vec::with_capacity(depth.saturating_sub(1));
    let mut p = Vec::with_capacity(depth.saturating_sub(1));
    for k in 0..depth.saturating_sub(1) {
        let (tk, pk) = (n[k + 1] - m[k]).div_rem(&(m[k] - n[k]));
        t.push(tk);
        p.push(pk);
    }
    Ok(Schedule { a: a.clone(), b: b.clone(), big_n, k0, n, m, t, p })
}

impl Schedule {
    pub fn a(&self) -> &BigRational {
        &self.a
    }

    pub fn b(&self) -> &BigRational {
        &self.b
    }

    pub fn big_n(&self) -> usize {
        self.big_n
    }

    pub fn k0(&self) -> usize {
        self.k0
    }

    pub fn depth(&self) -> usize {
        self.n.len()
    }

    /// `n_k`, one-based.
    pub fn n(&self, k: usize) -> u64 {
        self.n[k - 1]
    }

    pub fn m(&self, k: usize) -> u64 {
        self.m[k - 1]
    }

    pub fn gap(&self, k: usize) -> u64 {
        self.m(k) - self.n(k)
    }

    /// `t_k` for `k < depth`.
    pub fn t(&self, k: usize) -> u64 {
        self.t[k - 1]
    }

    pub fn p(&self, k: usize) -> u64 {
        self.p[k - 1]
    }

    /// `(m_k - n_k) / m_k`, tending to `b`.
    pub fn sup_ratio(&self, k: usize) -> f64 {
        self.gap(k) as f64 / self.m(k) as f64
    }

    /// `(m_k - n_k) / (n_{k+1} + m_k - n_k)`, tending to `a`.
    pub fn inf_ratio(&self, k: usize) -> f64 {
        self.gap(k) as f64 / (self.n(k + 1) + self.gap(k)) as f64
    }

    /// `sum_{j<k} (n_{j+1} - m_j) / m_k`.
    pub fn stolz_value(&self, k: usize) -> f64 {
        let s: u64 = (1..k).map(|j| self.n(j + 1) - self.m(j)).sum();
        s as f64 / self.m(k) as f64
    }

    pub fn a_f64(&self) -> f64 {
        rational_to_f64(&self.a)
    }

    pub fn b_f64(&self) -> f64 {
        rational_to_f64(&self.b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::rat;

    #[test]
    fn raw_examples() {
        let (a, b) = (rat(1, 5), rat(1, 2));
        for k in 1..6 {
            let (n, m) = raw_schedule(&a, &b, k);
            assert_eq!(n, BigInt::from(4u64.pow(k as u32)));
            assert_eq!(m, BigInt::from(2 * 4u64.pow(k as u32)));
        }
        let (n, m) = raw_schedule(&rat(0, 1), &b, 3);
        assert_eq!((n, m), (BigInt::from(27), BigInt::from(54)));
    }

    #[test]
    fn invariants_and_limits() {
        let s = make_schedule(&rat(1, 5), &rat(1, 2), 2, 9).unwrap();
        assert!(s.n(1) > 4 && s.gap(1) > 4);
        for k in 1..s.depth() {
            assert!(s.n(k) < s.m(k) && s.m(k) < s.n(k + 1));
            assert!(s.gap(k + 1) > s.gap(k));
            assert_eq!(s.n(k + 1), s.gap(k) * s.t(k) + s.m(k) + s.p(k));
            assert!(s.p(k) < s.gap(k));
        }
        assert!((s.sup_ratio(8) - 0.5).abs() < 0.02);
        assert!((s.inf_ratio(8) - 0.2).abs() < 0.02);
        assert!((s.stolz_value(8) - 1.0 / 3.0).abs() < 0.05);
    }

    #[test]
    fn guards() {
        assert!(matches!(make_schedule(&rat(3, 5), &rat(1, 2), 2, 3), Err(Error::EmptyLevelSet { .. })));
        assert!(matches!(make_schedule(&rat(0, 1), &rat(1, 1), 2, 3), Err(Error::InvalidTarget(_))));
        assert!(make_schedule(&rat(1, 3), &rat(1, 2), 2, 4).is_ok());
        assert!(make_schedule(&rat(0, 1), &rat(1, 2), 3, 5).is_ok());
    }
}
