use std::sync::Mutex;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::orbit::Orbit;
use super::word::Word;
use crate::error::{Error, Result};
use crate::numerics::{BetaSpec, Enclosure};

/// Starting point of a digit stream.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Seed {
    Point(BigRational),
    /// Any point of the enclosure; digits are emitted while all members agree.
    Interval(Enclosure),
    Unit,
}

/// Digits of a seed under `beta`, extended on demand and cached.
pub struct DigitStream {
    beta: BetaSpec,
    seed: Seed,
    state: Mutex<StreamState>,
}

enum Engine {
    Exact(Orbit),
    Pair(Orbit, Orbit),
    Unit,
}

struct StreamState {
    digits: Vec<u32>,
    engine: Engine,
}

impl DigitStream {
    pub fn new(beta: &BetaSpec, seed: Seed) -> Result<Self> {
        let engine = match &seed {
            Seed::Point(x) => {
                check_unit_interval(x)?;
                if x.is_one() {
                    Engine::Unit
                } else {
                    Engine::Exact(Orbit::new(beta, x)?)
                }
            }
            Seed::Interval(e) => {
                check_unit_interval(e.lo())?;
                check_unit_interval(e.hi())?;
                if e.hi() >= &BigRational::one() {
                    return Err(Error::InvalidDigits("interval seed must lie in [0, 1)".into()));
                }
                Engine::Pair(Orbit::new(beta, e.lo())?, Orbit::new(beta, e.hi())?)
            }
            Seed::Unit => Engine::Unit,
        };
        Ok(Self { beta: beta.clone(), seed, state: Mutex::new(StreamState { digits: Vec::new(), engine }) })
    }

    pub fn beta(&self) -> &BetaSpec {
        &self.beta
    }

    pub fn seed(&self) -> &Seed {
        &self.seed
    }

    /// Number of digits cached so far.
    pub fn cached(&self) -> usize {
        self.state.lock().unwrap_or_else(|e| e.into_inner()).digits.len()
    }

    pub fn prefix(&self, n: usize) -> Result<Word> {
        let mut st = self.state.lock().unwrap_or_else(|e| e.into_inner());
        if let Engine::Unit = st.engine {
            return self.beta.expansion_of_one().eps_one(n);
        }
        while st.digits.len() < n {
            let d = match &mut st.engine {
                Engine::Exact(o) => o.step()?,
                Engine::Pair(a, b) => {
                    let da = a.step()?;
                    let db = b.step()?;
                    if da != db {
                        return Err(Error::BoundaryUndecidable { bits: self.beta.precision() });
                    }
                    da
                }
                Engine::Unit => unreachable!(),
            };
            st.digits.push(d);
        }
        Ok(Word::new(st.digits[..n].to_vec()))
    }
}

fn check_unit_interval(x: &BigRational) -> Result<()> {
    if x.is_negative() || x > &BigRational::one() {
        return Err(Error::InvalidDigits(format!("point {x} outside [0, 1]")));
    }
    Ok(())
}

/// First `n` greedy digits of `x`; `x = 1` yields the expansion of 1.
pub fn digits(x: &BigRational, beta: &BetaSpec, n: usize) -> Result<Word> {
    check_unit_interval(x)?;
    if x.is_one() {
        return beta.expansion_of_one().eps_one(n);
    }
    let mut o = Orbit::new(beta, x)?;
    let mut v = Vec::with_capacity(n);
    for _ in 0..n {
        v.push(o.step()?);
    }
    Ok(Word::new(v))
}

/// One step of the beta-transformation on an enclosure in `[0, 1]`.
pub fn transform(x: &Enclosure, beta: &BetaSpec) -> Result<(u32, Enclosure)> {
    check_unit_interval(x.lo())?;
    check_unit_interval(x.hi())?;
    if x.is_point() && x.lo().is_one() {
        let d = beta.floor();
        let b = beta.elem_beta();
        let img = beta.elem_add_int(&b, -(d as i64));
        return Ok((d, beta.elem_enclosure(&img, beta.precision())));
    }
    if x.is_point() {
        let mut o = Orbit::new(beta, x.lo())?;
        let d = o.step()?;
        return Ok((d, o.value(beta.precision())));
    }
    let mut bits = beta.precision();
    loop {
        let bx = x.mul(&beta.refine(bits));
        if let Some(k) = bx.certified_floor() {
            let d: u32 = k.try_into().map_err(|_| Error::InvalidDigits("digit overflow".into()))?;
            let img = bx.add_rational(&BigRational::from_integer(-BigInt::from(d)));
            let lo = if img.lo().is_negative() { BigRational::zero() } else { img.lo().clone() };
            return Ok((d, Enclosure::new(lo, img.hi().clone())?));
        }
        if bits > 1 << 12 || beta.is_integer() || beta.refine(bits).is_point() {
            return Err(Error::BoundaryUndecidable { bits });
        }
        bits *= 2;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::rat;

    fn phi() -> BetaSpec {
        "poly:1,-1,-1@1,2".parse().unwrap()
    }

    #[test]
    fn digit_examples() {
        let two = BetaSpec::integer(2).unwrap();
        assert_eq!(digits(&rat(1, 3), &two, 6).unwrap().digits(), &[0, 1, 0, 1, 0, 1]);
        assert_eq!(digits(&rat(1, 1), &phi(), 4).unwrap().digits(), &[1, 1, 0, 0]);
        assert_eq!(digits(&rat(0, 1), &phi(), 5).unwrap().digits(), &[0; 5]);
    }

    #[test]
    fn transform_examples() {
        let two = BetaSpec::integer(2).unwrap();
        let (d, img) = transform(&Enclosure::point(rat(1, 3)), &two).unwrap();
        assert_eq!((d, img), (0, Enclosure::point(rat(2, 3))));
        let (d, img) = transform(&Enclosure::point(rat(1, 1)), &phi()).unwrap();
        assert_eq!(d, 1);
        assert!((img.to_f64() - 0.618_033_988_749_895).abs() < 1e-15);
        let (d, img) = transform(&Enclosure::point(rat(0, 1)), &phi()).unwrap();
        assert_eq!((d, img), (0, Enclosure::point(rat(0, 1))));
    }

    #[test]
    fn interval_transform_undecidable_at_boundary() {
        let two = BetaSpec::integer(2).unwrap();
        let straddle = Enclosure::new(rat(49, 100), rat(51, 100)).unwrap();
        assert!(matches!(transform(&straddle, &two), Err(Error::BoundaryUndecidable { .. })));
    }

    #[test]
    fn stream_prefix_matches_digits() {
        let s = DigitStream::new(&phi(), Seed::Point(rat(2, 7))).unwrap();
        let direct = digits(&rat(2, 7), &phi(), 30).unwrap();
        assert_eq!(s.prefix(10).unwrap(), direct.prefix(10));
        assert_eq!(s.prefix(30).unwrap(), direct);
        assert_eq!(s.cached(), 30);
    }

    #[test]
    fn interval_stream_stops_at_disagreement() {
        let two = BetaSpec::integer(2).unwrap();
        let e = Enclosure::new(rat(1, 4), rat(1, 4) + rat(1, 1 << 20)).unwrap();
        let s = DigitStream::new(&two, Seed::Interval(e)).unwrap();
        assert_eq!(s.prefix(19).unwrap().digits()[..2], [0, 1]);
        assert!(s.prefix(25).is_err());
    }
}
