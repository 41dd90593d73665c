use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::enclosure::{parse_rational, pow2, Enclosure};
use super::field::Field;
use super::poly::Poly;
use crate::error::{Error, Result};
use crate::expansion::ExpansionOfOne;

pub const DEFAULT_PRECISION: u32 = 128;

/// Highest degree for which the isolating bracket is re-verified with a Sturm sequence.
const STURM_DEGREE_LIMIT: usize = 96;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum BetaKind {
    Rational(BigRational),
    /// Integer coefficients `c_k, ..., c_0` and a bracket holding exactly one root.
    Algebraic { coeffs: Vec<BigInt>, lo: BigRational, hi: BigRational },
}

/// A real base `beta > 1`, known exactly.
#[derive(Clone)]
pub struct BetaSpec {
    inner: Arc<Inner>,
    precision: u32,
}

struct Inner {
    kind: BetaKind,
    poly: Poly,
    field: Field,
    lo_sign: Ordering,
    bisection: Mutex<Bisection>,
    one: OnceLock<ExpansionOfOne>,
}

#[derive(Default)]
struct Bisection {
    /// `true` selects the upper half at each step.
    steps: Vec<bool>,
    /// Step at which a dyadic midpoint hit the root exactly.
    exact: Option<(usize, BigRational)>,
}

impl BetaSpec {
    pub fn rational(value: BigRational) -> Result<Self> {
        if value <= BigRational::one() {
            return Err(Error::InvalidBase(format!("{value} is not greater than 1")));
        }
        let poly = Poly::new(vec![-value.clone(), BigRational::one()]);
        Ok(Self::build(BetaKind::Rational(value), poly, Ordering::Less))
    }

    pub fn integer(value: u64) -> Result<Self> {
        Self::rational(BigRational::from_integer(BigInt::from(value)))
    }

    /// Root of `sum c_i x^i` isolated by `[lo, hi]`; coefficients listed highest degree first.
    pub fn algebraic(coeffs: Vec<BigInt>, lo: BigRational, hi: BigRational) -> Result<Self> {
        Self::algebraic_inner(coeffs, lo, hi, true)
    }

    /// Root `> 1` of `1 = sum d_i x^-i`, given a bracket with a sign change.
    ///
    /// The polynomial `x^m - sum d_i x^(m-i)` has a single positive root by Descartes' rule,
    /// so no Sturm verification is needed.
    pub(crate) fn from_unit_equation(digits: &[u32], bracket: &Enclosure) -> Result<Self> {
        if bracket.is_point() {
            return Self::rational(bracket.lo().clone());
        }
        let mut coeffs = vec![BigInt::one()];
        coeffs.extend(digits.iter().map(|&d| -BigInt::from(d)));
        Self::algebraic_inner(coeffs, bracket.lo().clone(), bracket.hi().clone(), false)
    }

    fn algebraic_inner(coeffs: Vec<BigInt>, lo: BigRational, hi: BigRational, sturm: bool) -> Result<Self> {
        let mut coeffs: Vec<BigInt> = coeffs.into_iter().skip_while(Zero::is_zero).collect();
        if coeffs.len() < 2 {
            return Err(Error::InvalidBase("polynomial must have positive degree".into()));
        }
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        if lo >= hi {
            return Err(Error::InvalidBase(format!("bracket [{lo}, {hi}] is empty")));
        }
        let poly = Poly::from_integers_desc(&coeffs);
        let s_lo = poly.sign_at(&lo);
        let s_hi = poly.sign_at(&hi);
        if s_lo == Ordering::Equal || s_hi == Ordering::Equal || s_lo == s_hi {
            return Err(Error::InvalidBase(format!("no strict sign change on [{lo}, {hi}]")));
        }
        if sturm && poly.degree().unwrap_or(0) <= STURM_DEGREE_LIMIT && poly.sturm_count(&lo, &hi) != 1 {
            return Err(Error::InvalidBase(format!("bracket [{lo}, {hi}] holds more than one root")));
        }
        let one = BigRational::one();
        let lo = if lo < one {
            if hi <= one {
                return Err(Error::InvalidBase("root is not greater than 1".into()));
            }
            let s1 = poly.sign_at(&one);
            if s1 != s_lo {
                return Err(Error::InvalidBase("root is not greater than 1".into()));
            }
            one
        } else {
            lo
        };
        if coeffs.len() == 2 {
            let r = BigRational::new(-coeffs[1].clone(), coeffs[0].clone());
            return Self::rational(r);
        }
        let kind = BetaKind::Algebraic { coeffs, lo, hi };
        Ok(Self::build(kind, poly, s_lo))
    }

    fn build(kind: BetaKind, poly: Poly, lo_sign: Ordering) -> Self {
        let field = Field::new(&poly);
        Self {
            inner: Arc::new(Inner {
                kind,
                poly,
                field,
                lo_sign,
                bisection: Mutex::new(Bisection::default()),
                one: OnceLock::new(),
            }),
            precision: DEFAULT_PRECISION,
        }
    }

    pub fn with_precision(&self, bits: u32) -> Self {
        Self { inner: Arc::clone(&self.inner), precision: bits.max(8) }
    }

    pub fn precision(&self) -> u32 {
        self.precision
    }

    pub fn kind(&self) -> &BetaKind {
        &self.inner.kind
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match &self.inner.kind {
            BetaKind::Rational(r) => Some(r),
            BetaKind::Algebraic { .. } => None,
        }
    }

    pub fn as_integer(&self) -> Option<u64> {
        use num_traits::ToPrimitive;
        self.as_rational().filter(|r| r.is_integer()).and_then(|r| r.to_integer().to_u64())
    }

    pub fn polynomial(&self) -> &Poly {
        &self.inner.poly
    }

    pub(crate) fn field(&self) -> &Field {
        &self.inner.field
    }

    /// Enclosure at the working precision.
    pub fn enclosure(&self) -> Enclosure {
        self.refine(self.precision)
    }

    pub fn to_f64(&self) -> f64 {
        self.refine(64).to_f64()
    }

    pub fn ln(&self) -> f64 {
        self.to_f64().ln()
    }

    /// Enclosure of width at most `2^-bits`; deterministic and nested across precisions.
    pub fn refine(&self, bits: u32) -> Enclosure {
        let (lo0, hi0) = match &self.inner.kind {
            BetaKind::Rational(r) => return Enclosure::point(r.clone()),
            BetaKind::Algebraic { lo, hi, .. } => (lo, hi),
        };
        let width = hi0 - lo0;
        let target = pow2(-(bits as i64));
        let mut steps = 0usize;
        let mut w = width.clone();
        while w > target {
            w /= BigRational::from_integer(BigInt::from(2));
            steps += 1;
        }
        let mut state = self.inner.bisection.lock().unwrap_or_else(|e| e.into_inner());
        if let Some((at, x)) = &state.exact {
            if *at <= steps {
                return Enclosure::point(x.clone());
            }
        }
        while state.steps.len() < steps && state.exact.is_none() {
            let (lo, hi) = replay(lo0, &width, &state.steps);
            let mid = (&lo + &hi) / BigRational::from_integer(BigInt::from(2));
            match self.inner.poly.sign_at(&mid) {
                Ordering::Equal => {
                    let at = state.steps.len() + 1;
                    state.exact = Some((at, mid.clone()));
                    if at <= steps {
                        return Enclosure::point(mid);
                    }
                }
                s => state.steps.push(s == self.inner.lo_sign),
            }
        }
        let (lo, hi) = replay(lo0, &width, &state.steps[..steps.min(state.steps.len())]);
        Enclosure::new_unchecked(lo, hi)
    }

    /// Cached expansion of 1 at this base.
    pub fn expansion_of_one(&self) -> &ExpansionOfOne {
        self.inner.one.get_or_init(|| ExpansionOfOne::new(self.clone()))
    }

    /// Smallest integer `>= beta`.
    pub fn ceil(&self) -> u32 {
        let f = self.floor();
        if self.is_integer() {
            f
        } else {
            f + 1
        }
    }

    pub fn floor(&self) -> u32 {
        use num_traits::ToPrimitive;
        match &self.inner.kind {
            BetaKind::Rational(r) => r.floor().to_integer().to_u32().unwrap_or(u32::MAX),
            BetaKind::Algebraic { .. } => {
                let mut bits = 16;
                loop {
                    if let Some(k) = self.refine(bits).certified_floor() {
                        return k.to_u32().unwrap_or(u32::MAX);
                    }
                    bits *= 2;
                }
            }
        }
    }

    pub fn is_integer(&self) -> bool {
        self.as_rational().is_some_and(|r| r.is_integer())
    }

    /// Certified comparison of two bases.
    pub fn cmp_beta(&self, other: &BetaSpec) -> Ordering {
        if self == other {
            return Ordering::Equal;
        }
        let mut bits = 32;
        loop {
            if let Some(o) = self.refine(bits).compare(&other.refine(bits)) {
                return o;
            }
            if bits > 4096 {
                if let (Some(a), Some(b)) = (self.as_rational(), other.as_rational()) {
                    return a.cmp(b);
                }
                if self.same_value(other) {
                    return Ordering::Equal;
                }
            }
            bits *= 2;
        }
    }

    fn same_value(&self, other: &BetaSpec) -> bool {
        let g = self.inner.poly.gcd(&other.inner.poly);
        let a = self.refine(64);
        let b = other.refine(64);
        let lo = if a.lo() > b.lo() { a.lo() } else { b.lo() };
        let hi = if a.hi() < b.hi() { a.hi() } else { b.hi() };
        lo <= hi && g.degree().unwrap_or(0) > 0 && g.has_root_in(lo, hi)
    }
}

fn replay(lo0: &BigRational, width: &BigRational, steps: &[bool]) -> (BigRational, BigRational) {
    let mut m = BigInt::zero();
    for &s in steps {
        m <<= 1;
        if s {
            m += 1;
        }
    }
    let denom = BigInt::one() << steps.len();
    let lo = lo0 + width * BigRational::new(m, denom.clone());
    let hi = &lo + width / BigRational::from_integer(denom);
    (lo, hi)
}

impl PartialEq for BetaSpec {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner) || self.inner.kind == other.inner.kind
    }
}

impl Eq for BetaSpec {}

impl fmt::Debug for BetaSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BetaSpec({self}, {} bits)", self.precision)
    }
}

impl fmt::Display for BetaSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.inner.kind {
            BetaKind::Rational(r) => write!(f, "rat:{}/{}", r.numer(), r.denom()),
            BetaKind::Algebraic { coeffs, lo, hi } => {
                let c: Vec<String> = coeffs.iter().map(ToString::to_string).collect();
                write!(f, "poly:{}@{},{}", c.join(","), lo, hi)
            }
        }
    }
}

impl FromStr for BetaSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let err = || Error::Parse { what: "base", input: s.to_string() };
        if let Some(body) = s.strip_prefix("rat:").or_else(|| s.strip_prefix("dec:")) {
            return Self::rational(parse_rational(body)?);
        }
        if let Some(body) = s.strip_prefix("poly:") {
            let (coeffs, bracket) = body.split_once('@').ok_or_else(err)?;
            let coeffs = coeffs
                .split(',')
                .map(|c| c.trim().parse::<BigInt>().map_err(|_| err()))
                .collect::<Result<Vec<_>>>()?;
            let (lo, hi) = bracket.split_once(',').ok_or_else(err)?;
            let lo = parse_rational(lo)?;
            let hi = parse_rational(hi)?;
            if lo.is_negative() && hi.is_negative() {
                return Err(Error::InvalidBase("bracket below zero".into()));
            }
            return Self::algebraic(coeffs, lo, hi);
        }
        parse_rational(s).map_err(|_| err()).and_then(Self::rational)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::enclosure::rat;

    fn golden() -> BetaSpec {
        "poly:1,-1,-1@1,2".parse().unwrap()
    }

    #[test]
    fn parses_all_forms() {
        assert_eq!("rat:9/5".parse::<BetaSpec>().unwrap().as_rational(), Some(&rat(9, 5)));
        assert_eq!("dec:1.8".parse::<BetaSpec>().unwrap().as_rational(), Some(&rat(9, 5)));
        assert!(matches!(golden().kind(), BetaKind::Algebraic { .. }));
        assert!("rat:1".parse::<BetaSpec>().is_err());
        assert!("rat:1/2".parse::<BetaSpec>().is_err());
        assert!("poly:1,-1,-1@-2,2".parse::<BetaSpec>().is_err());
        assert!("poly:1,-1,-1@2,3".parse::<BetaSpec>().is_err());
        assert!("poly:1,-1,-1@0,1".parse::<BetaSpec>().is_err());
    }

    #[test]
    fn clamps_bracket_to_one() {
        let b: BetaSpec = "poly:1,-1,-1@0,2".parse().unwrap();
        match b.kind() {
            BetaKind::Algebraic { lo, .. } => assert_eq!(lo, &rat(1, 1)),
            BetaKind::Rational(_) => panic!("expected algebraic"),
        }
    }

    #[test]
    fn refine_is_nested_and_deterministic() {
        let b = golden();
        let e64 = b.refine(64);
        assert!(e64.width_at_most(64));
        let e128 = b.refine(128);
        assert!(e64.contains_enclosure(&e128));
        assert_eq!(b.refine(64), e64);
        let phi = (1.0 + 5f64.sqrt()) / 2.0;
        assert!((e64.to_f64() - phi).abs() < 1e-15);
    }

    #[test]
    fn rational_refine_is_point() {
        let b: BetaSpec = "rat:9/5".parse().unwrap();
        assert_eq!(b.refine(300), Enclosure::point(rat(9, 5)));
    }

    #[test]
    fn floor_and_ceil() {
        assert_eq!(golden().floor(), 1);
        assert_eq!(golden().ceil(), 2);
        let two = BetaSpec::integer(2).unwrap();
        assert_eq!((two.floor(), two.ceil()), (2, 2));
    }

    #[test]
    fn linear_polynomial_becomes_rational() {
        let b: BetaSpec = "poly:2,-3@1,2".parse().unwrap();
        assert_eq!(b.as_rational(), Some(&rat(3, 2)));
    }

    #[test]
    fn rational_root_found_exactly() {
        let b: BetaSpec = "poly:1,0,-4@1,3".parse().unwrap();
        assert_eq!(b.refine(40), Enclosure::point(rat(2, 1)));
    }

    #[test]
    fn display_round_trips() {
        for s in ["rat:9/5", "poly:1,-1,-1@1,2", "poly:1,-1,-1,-1@3/2,2"] {
            let b: BetaSpec = s.parse().unwrap();
            assert_eq!(b.to_string().parse::<BetaSpec>().unwrap(), b);
        }
    }
}
