use std::cmp::Ordering;
use std::collections::HashSet;

use betadyn::admissibility::{beta_n, beta_n_period, count, enumerate, is_admissible, ParryAutomaton};
use betadyn::cylinders::{interval, is_full};
use betadyn::dimension::{dim_e_a, dim_e_ab, dim_f_b, dim_u, DimensionValue, Family, DimensionFormula};
use betadyn::levelset::{construct_point, make_schedule};
use betadyn::numerics::{rat, solve_unit_equation, Enclosure};
use betadyn::paramspace::{beta_from_expansion, is_self_admissible, param_cylinder};
use betadyn::runlength::{limit_estimates, run_profile};
use betadyn::{digits, lex_compare, BetaSpec, Word};
use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::One;
use proptest::prelude::*;

fn golden() -> BetaSpec {
    "poly:1,-1,-1@1,2".parse().unwrap()
}

fn trib() -> BetaSpec {
    "poly:1,-1,-1,-1@1,2".parse().unwrap()
}

fn nine_fifths() -> BetaSpec {
    BetaSpec::rational(rat(9, 5)).unwrap()
}

fn bases() -> Vec<BetaSpec> {
    vec![golden(), trib(), nine_fifths()]
}

fn base_strategy() -> impl Strategy<Value = BetaSpec> {
    (0usize..3).prop_map(|i| bases().swap_remove(i))
}

fn rational_in_unit() -> impl Strategy<Value = BigRational> {
    (1i64..1_000_000).prop_flat_map(|d| (0..d, Just(d))).prop_map(|(n, d)| rat(n, d))
}

/// Rational base in `(1, 3)` with a small denominator.
fn rational_base() -> impl Strategy<Value = BigRational> {
    (2i64..97).prop_flat_map(|d| (d + 1..3 * d, Just(d))).prop_map(|(n, d)| rat(n, d))
}

fn all_words(alphabet: u32, n: usize) -> Vec<Vec<u32>> {
    let mut out = vec![vec![]];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|w| {
                (0..alphabet).map(move |d| {
                    let mut v = w.clone();
                    v.push(d);
                    v
                })
            })
            .collect();
    }
    out
}

// numerics

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn enclosure_arithmetic_is_conservative(a in -1000i64..1000, b in -1000i64..1000, da in 1i64..50, db in 1i64..50) {
        let (x, y) = (rat(a, da), rat(b, db));
        let w = rat(1, 1000);
        let ex = Enclosure::new(&x - &w, &x + &w).unwrap();
        let ey = Enclosure::new(&y - &w, &y + &w).unwrap();
        prop_assert!(ex.mul(&ey).contains(&(&x * &y)));
        prop_assert!(ex.add(&ey).contains(&(&x + &y)));
        prop_assert!(ex.sub(&ey).contains(&(&x - &y)));
        prop_assert!(ex.mul(&ey).round_out(16).contains(&(&x * &y)));
    }

    #[test]
    fn unit_root_is_monotone(u in prop::collection::vec(0u32..2, 1..12), v in prop::collection::vec(0u32..2, 1..12)) {
        let mut u = u;
        let mut v = v;
        u.insert(0, 1);
        v.insert(0, 1);
        u.push(1);
        v.push(1);
        // lexicographic and numeric order agree on expansions of 1
        prop_assume!(is_self_admissible(&u) && is_self_admissible(&v));
        let n = u.len().max(v.len());
        let (mut pu, mut pv) = (u.clone(), v.clone());
        pu.resize(n, 0);
        pv.resize(n, 0);
        let (ru, rv) = (solve_unit_equation(&u, 64).unwrap(), solve_unit_equation(&v, 64).unwrap());
        match lex_compare(&pu, &pv) {
            Ordering::Less => prop_assert!(ru.lo() <= rv.hi()),
            Ordering::Greater => prop_assert!(rv.lo() <= ru.hi()),
            Ordering::Equal => prop_assert_eq!(ru, rv),
        }
    }

    #[test]
    fn refinement_is_deterministic(bits in 16u32..200) {
        for b in bases() {
            prop_assert_eq!(b.refine(bits), b.refine(bits));
        }
    }
}

// expansion

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn digits_reconstruct_the_point(x in rational_in_unit(), beta in base_strategy(), n in 1usize..60) {
        let w = digits(&x, &beta, n).unwrap();
        let series = beta.elem_series(&w);
        let diff = beta.elem_sub(&beta.elem_from_rational(x.clone()), &series);
        prop_assert_ne!(beta.elem_sign(&diff).unwrap(), Ordering::Less);
        prop_assert_eq!(beta.elem_cmp(&diff, &beta.elem_beta_pow_neg(n as u64)).unwrap(), Ordering::Less);
        prop_assert!(w.iter().all(|&d| d < beta.ceil()));
        prop_assert!(is_admissible(&w, &beta).unwrap());
    }

    #[test]
    fn first_digit_of_one_is_floor(beta in rational_base()) {
        let b = BetaSpec::rational(beta).unwrap();
        prop_assert_eq!(b.expansion_of_one().eps_one(1).unwrap()[0], b.floor());
    }

    #[test]
    fn expansion_of_one_is_monotone(a in rational_base(), b in rational_base()) {
        prop_assume!(a != b);
        let (lo, hi) = if a < b { (a, b) } else { (b, a) };
        let (lo, hi) = (BetaSpec::rational(lo).unwrap(), BetaSpec::rational(hi).unwrap());
        let el = lo.expansion_of_one().eps_star(64).unwrap();
        let eh = hi.expansion_of_one().eps_star(64).unwrap();
        prop_assert_ne!(lex_compare(&el, &eh), Ordering::Greater);
    }
}

#[test]
fn shifts_of_star_expansion_are_dominated() {
    for b in bases() {
        let e = b.expansion_of_one().eps_star(400).unwrap();
        for k in 1..=200 {
            assert_ne!(lex_compare(&e[k..k + 200], &e[..200]), Ordering::Greater, "{b} k = {k}");
        }
    }
}

// admissibility

#[test]
fn enumeration_matches_brute_force() {
    for b in bases() {
        for n in 1..=8 {
            let brute: Vec<Word> = all_words(b.ceil(), n)
                .into_iter()
                .filter(|w| is_admissible(w, &b).unwrap())
                .map(Word::new)
                .collect();
            assert_eq!(enumerate(&b, n).unwrap(), brute, "{b} n = {n}");
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn admissible_sets_are_nested(a in rational_base(), b in rational_base(), n in 1usize..7) {
        prop_assume!(a < b);
        let (lo, hi) = (BetaSpec::rational(a).unwrap(), BetaSpec::rational(b).unwrap());
        let small: HashSet<Word> = enumerate(&lo, n).unwrap().into_iter().collect();
        let big: HashSet<Word> = enumerate(&hi, n).unwrap().into_iter().collect();
        prop_assert!(small.is_subset(&big));
    }

    #[test]
    fn renyi_count_bounds(beta in rational_base(), n in 1u32..16) {
        let b = BetaSpec::rational(beta.clone()).unwrap();
        let c = BigRational::from_integer(BigInt::from(count(&b, n as usize).unwrap()));
        let pow = num_traits::Pow::pow(&beta, n);
        prop_assert!(pow <= c);
        prop_assert!(c <= &pow * &beta / (&beta - BigRational::one()));
    }

    #[test]
    fn periodic_block_words_sandwich(n in 3usize..9, idx in 0usize..3) {
        let big_n = [2, 4, 5][idx];
        let beta = trib();
        let period = beta_n_period(&beta, big_n).unwrap();
        let bn = beta_n(&beta, big_n).unwrap();
        let a = ParryAutomaton::periodic(period);
        let words: Vec<Word> = enumerate(&bn, n).unwrap();
        for w in words.iter().filter(|w| a.accepts(w)) {
            let len = interval(w, &beta).unwrap().length;
            let lo = beta.elem_enclosure(&beta.elem_beta_pow_neg((n + big_n) as u64), 80);
            let hi = beta.elem_enclosure(&beta.elem_beta_pow_neg(n as u64), 80);
            prop_assert!(len.hi() >= lo.lo());
            prop_assert!(len.lo() <= hi.hi());
        }
    }
}

// cylinders

#[test]
fn cylinders_partition_the_unit_interval() {
    for b in [golden(), nine_fifths()] {
        for n in 1..=10 {
            let mut next = b.elem_zero();
            let mut total = b.elem_zero();
            for w in enumerate(&b, n).unwrap() {
                let c = interval(&w, &b).unwrap();
                assert!(b.elem_is_zero(&b.elem_sub(c.left_exact(), &next)).unwrap());
                next = b.elem_add(c.left_exact(), c.length_exact());
                total = b.elem_add(&total, c.length_exact());
            }
            assert!(b.elem_equals(&total, &BigRational::one()), "{b} n = {n}");
        }
    }
}

fn full_words(b: &BetaSpec, n: usize) -> Vec<Word> {
    enumerate(b, n).unwrap().into_iter().filter(|w| is_full(w, b).unwrap()).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn full_words_are_closed(i in 0usize..1000, j in 0usize..1000, l in 0usize..6, beta in base_strategy()) {
        let fu = full_words(&beta, 4);
        let fv = full_words(&beta, 3);
        let u = &fu[i % fu.len()];
        let v = &fv[j % fv.len()];
        prop_assert!(is_full(&u.concat(v), &beta).unwrap());
        prop_assert!(is_full(&u.with_zeros(l), &beta).unwrap());
    }
}

// runlength

proptest! {
    #[test]
    fn run_length_steps(w in prop::collection::vec(0u32..3, 1..300)) {
        let p = run_profile(&w);
        let mut prev = 0;
        for n in 1..=p.depth() {
            let r = p.r(n);
            prop_assert!(r == prev || r == prev + 1);
            prop_assert!(r as usize <= n);
            prev = r;
        }
        if p.depth() > 2 {
            let e = limit_estimates(&p, 1).unwrap();
            prop_assert!(e.liminf <= e.limsup);
        }
    }
}

// levelset

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn schedule_invariants(bn in 2i64..9, an in 0i64..100, big_n in 2usize..5) {
        let b = rat(bn, 10);
        let a = &b / (BigRational::one() + &b) * rat(an, 100);
        let s = make_schedule(&a, &b, big_n, 5).unwrap();
        prop_assert!(s.n(1) > 2 * big_n as u64 && s.gap(1) > 2 * big_n as u64);
        for k in 1..s.depth() {
            prop_assert!(s.n(k) < s.m(k) && s.m(k) < s.n(k + 1));
            prop_assert!(s.gap(k + 1) > s.gap(k));
            prop_assert_eq!(s.n(k + 1), s.gap(k) * s.t(k) + s.m(k) + s.p(k));
            prop_assert!(s.p(k) < s.gap(k));
        }
    }

    #[test]
    fn level_blocks_and_masses(seed in 0u64..1000) {
        let beta = trib();
        let s = make_schedule(&rat(1, 5), &rat(1, 2), 2, 4).unwrap();
        let p = construct_point(&s, &beta, seed).unwrap();
        prop_assert_eq!(p.word().len() as u64, s.n(s.depth()));
        prop_assert!(is_admissible(p.word(), &beta).unwrap());
        let mut q = BigUint::one();
        for k in 1..=s.depth() {
            let start = if k == 1 { 0 } else { s.n(k - 1) };
            prop_assert_eq!(p.block(k).len() as u64, s.n(k) - start);
            q *= &p.levels()[k - 1].g_count;
            prop_assert_eq!(p.q(k), &q);
            // q_k cylinders of mass 1/q_k each
            let total = p.mu_mass(k) * BigRational::from_integer(BigInt::from(q.clone()));
            prop_assert!(total.is_one());
        }
    }
}

// paramspace

#[test]
fn prefixes_of_one_are_self_admissible() {
    for b in bases() {
        let e = b.expansion_of_one().eps_one(200).unwrap();
        for n in 1..=200 {
            assert!(is_self_admissible(&e[..n]), "{b} n = {n}");
        }
    }
}

#[test]
fn beta_recovered_from_expansion() {
    for b in [golden(), trib()] {
        let w = b.expansion_of_one().eps_one(8).unwrap();
        let r = beta_from_expansion(&w, 64).unwrap();
        assert!((r.to_f64() - b.to_f64()).abs() < 1e-12);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn parameter_cylinders_nest(w in prop::collection::vec(0u32..2, 1..7), d in 0u32..2) {
        let mut w = w;
        w.insert(0, 1);
        prop_assume!(is_self_admissible(&w));
        let mut e = w.clone();
        e.push(d);
        prop_assume!(is_self_admissible(&e));
        let outer = param_cylinder(&w, 48).unwrap();
        if let Ok(inner) = param_cylinder(&e, 48) {
            prop_assert!(inner.beta_lower.hi() >= outer.beta_lower.lo());
            prop_assert!(inner.beta_upper.lo() <= outer.beta_upper.hi());
        }
    }
}

#[test]
fn self_admissible_words_are_realized_prefixes() {
    let grid = 1u64 << 13;
    for n in 1..=12usize {
        let realized: HashSet<Vec<u32>> = (1..grid)
            .map(|j| {
                let b = BetaSpec::rational(BigRational::new((grid + j).into(), grid.into())).unwrap();
                b.expansion_of_one().eps_one(n).unwrap().into_digits()
            })
            .collect();
        let candidates: HashSet<Vec<u32>> = all_words(2, n).into_iter().filter(|w| is_self_admissible(w)).collect();
        assert!(realized.is_subset(&candidates), "n = {n}");
        for w in candidates.difference(&realized) {
            // sample the cylinder interior found by bisection
            let c = param_cylinder(w, 64).unwrap();
            let mid = (c.beta_lower.hi() + c.beta_upper.lo()) / BigRational::from_integer(2.into());
            let b = BetaSpec::rational(mid).unwrap();
            assert_eq!(b.expansion_of_one().eps_one(n).unwrap().digits(), &w[..], "n = {n}");
        }
    }
}

// dimension

proptest! {
    #[test]
    fn formula_identities(vhat in 0.01f64..0.95, v in 0.01f64..20.0) {
        let a = vhat / (1.0 + vhat);
        let b = v / (1.0 + v);
        match (dim_e_ab(a, b), dim_u(vhat, v)) {
            (Ok(DimensionValue::Value(x)), Ok(DimensionValue::Value(y))) => prop_assert!((x - y).abs() < 1e-12),
            (Ok(DimensionValue::Empty), Ok(DimensionValue::Empty)) => {}
            (x, y) => prop_assert!(false, "mismatch {:?} vs {:?}", x, y),
        }
        let bb = b.min(0.99);
        prop_assert!((dim_e_ab(0.0, bb).unwrap().value().unwrap() - dim_f_b(bb).unwrap()).abs() < 1e-12);
        let a2 = a.min(0.49);
        let vh = a2 / (1.0 - a2);
        let expect = ((1.0 - vh) / (1.0 + vh)).powi(2);
        prop_assert!((dim_e_a(a2).unwrap().value().unwrap() - expect).abs() < 1e-12);
    }

    #[test]
    fn formulas_stay_in_unit_interval(x in 0.0f64..1.0, y in 0.0f64..1.0) {
        for f in Family::ALL {
            let params: Vec<f64> = match f.params().len() {
                1 => vec![x],
                _ => vec![x, y],
            };
            if let Ok(form) = DimensionFormula::new(f, params) {
                if let Ok(DimensionValue::Value(d)) = form.evaluate() {
                    prop_assert!((0.0..=1.0).contains(&d), "{} {}", f.name(), d);
                }
            }
        }
    }
}

#[test]
fn zero_targets_are_full_measure() {
    assert_eq!(dim_e_ab(0.0, 0.0).unwrap(), DimensionValue::FullMeasure);
}
