use std::collections::BTreeMap;

use hahn_automata::algebra::bivariate::XPoly;
use hahn_automata::algebra::field::Field;
use hahn_automata::algebra::fq::{Fq, FqField};
use hahn_automata::algebra::ratfunc::RationalFunctionField;
use hahn_automata::newton::envelope::prime_to;
use hahn_automata::newton::{
    count_roots_oracle, envelope_of_lines, ore_additive_multiple, ramification_bound,
    root_truncations, Line, OracleConfig,
};
use hahn_automata::series::arith::{add, equals, evaluate_polynomial};
use hahn_automata::series::{AutomaticSeries, Exponent};
use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

/// Monic f of X-degree `n` with the given lower coefficients in t.
fn monic(field: &FqField, lower: &[Vec<u32>]) -> XPoly {
    let mut terms = BTreeMap::new();
    for (i, row) in lower.iter().enumerate() {
        for (j, &c) in row.iter().enumerate() {
            terms.insert((i, j), Fq(c));
        }
    }
    terms.insert((lower.len(), 0), Fq::ONE);
    XPoly::from_terms(field, &terms)
}

fn lower_coeffs(p: u32) -> impl Strategy<Value = Vec<Vec<u32>>> {
    (1usize..=4)
        .prop_flat_map(move |n| prop::collection::vec(prop::collection::vec(0..p, 0..=3), n))
}

/// Remainder of a by the monic b in F_p[t][X], by schoolbook division.
fn remainder(field: &FqField, a: &[Vec<Fq>], b: &[Vec<Fq>]) -> Vec<Vec<Fq>> {
    let mut r: Vec<Vec<Fq>> = a.to_vec();
    let n = b.len() - 1;
    for i in (n..r.len()).rev() {
        let c = std::mem::take(&mut r[i]);
        for (j, bj) in b.iter().enumerate().take(n) {
            let target = &mut r[i - n + j];
            for (u, cu) in c.iter().enumerate() {
                for (v, bv) in bj.iter().enumerate() {
                    if target.len() <= u + v {
                        target.resize(u + v + 1, Fq::ZERO);
                    }
                    target[u + v] = field.sub(&target[u + v], &field.mul(cu, bv));
                }
            }
        }
    }
    r.truncate(n);
    r
}

fn check_ore(p: u32, lower: &[Vec<u32>]) {
    let field = FqField::prime(p).unwrap();
    let f = monic(&field, lower);
    let k = RationalFunctionField::new(field.clone());
    let pa = ore_additive_multiple(&k, &f.to_ratfunc(&k)).unwrap();
    let px = pa.to_xpoly().expect("denominators are cleared");
    let r = remainder(&field, &px.dense(), &f.dense());
    assert!(
        r.iter().flatten().all(|c| *c == Fq::ZERO),
        "{f} does not divide {pa}"
    );
    assert!(pa
        .support()
        .iter()
        .all(|&i| i as usize <= f.degree().unwrap()));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn ore_multiple_is_divisible_f2(lower in lower_coeffs(2)) {
        check_ore(2, &lower);
    }

    #[test]
    fn ore_multiple_is_divisible_f3(lower in lower_coeffs(3)) {
        check_ore(3, &lower);
    }
}

fn series(field: &FqField, terms: &[(u64, u32, u32)]) -> AutomaticSeries {
    let p = field.p() as u64;
    let mut dict: BTreeMap<Exponent, Fq> = BTreeMap::new();
    for &(num, k, c) in terms {
        dict.insert(
            Exponent::from_rational(BigRational::new(num.into(), p.pow(k).into())).unwrap(),
            Fq(c),
        );
    }
    let terms: Vec<(Exponent, Fq)> = dict.into_iter().filter(|(_, c)| *c != Fq::ZERO).collect();
    AutomaticSeries::from_finite_series(field, &terms).unwrap()
}

fn series_terms(p: u32) -> impl Strategy<Value = Vec<(u64, u32, u32)>> {
    prop::collection::vec((0u64..6, 0u32..2, 1..p), 0..3)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(10))]

    #[test]
    fn additive_multiple_is_additive(
        p in prop::sample::select(vec![2u32, 3]),
        lower in prop::collection::vec(prop::collection::vec(0u32..2, 0..=2), 1..=2),
        xs in series_terms(2),
        ys in series_terms(2),
    ) {
        let field = FqField::prime(p).unwrap();
        let f = monic(&field, &lower);
        let k = RationalFunctionField::new(field.clone());
        let pa = ore_additive_multiple(&k, &f.to_ratfunc(&k)).unwrap().to_xpoly().unwrap().dense();
        let x = series(&field, &xs);
        let y = series(&field, &ys);
        let lhs = evaluate_polynomial(&pa, &add(&x, &y).unwrap()).unwrap();
        let rhs = add(&evaluate_polynomial(&pa, &x).unwrap(), &evaluate_polynomial(&pa, &y).unwrap()).unwrap();
        prop_assert!(equals(&lhs, &rhs).unwrap());
    }
}

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(50))]

    #[test]
    fn envelope_is_the_pointwise_minimum(
        p in prop::sample::select(vec![2i64, 3, 5]),
        intercepts in prop::collection::vec(prop::option::of(-20i64..20), 1..5),
        rs in prop::collection::vec((-200i64..200, 1i64..13), 200),
    ) {
        let lines: Vec<Line> = intercepts
            .iter()
            .enumerate()
            .filter_map(|(i, v)| v.map(|v| Line { index: i as u32, slope: BigInt::from(p).pow(i as u32), intercept: v.into() }))
            .collect();
        prop_assume!(!lines.is_empty());
        let env = envelope_of_lines(lines.clone()).unwrap();
        for (n, d) in rs {
            let r = rat(n, d);
            let brute = lines.iter().map(|l| l.at(&r)).min().unwrap();
            let active = env.active_at(&r);
            let line = lines.iter().find(|l| l.index == active).unwrap();
            prop_assert_eq!(line.at(&r), brute.clone());
            prop_assert_eq!(env.value_at(&r), brute);
        }
        for b in &env.breakpoints {
            let brute = lines.iter().map(|l| l.at(&b.r)).min().unwrap();
            let tied: Vec<u32> = lines.iter().filter(|l| l.at(&b.r) == brute).map(|l| l.index).collect();
            prop_assert_eq!(&b.lines, &tied);
            prop_assert!(tied.len() >= 2);
        }
        prop_assert_eq!(env.breakpoints.len() + 1, env.active.len());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn roots_ramify_only_within_the_bound(
        p in prop::sample::select(vec![2u32, 3]),
        lower in prop::collection::vec(prop::collection::vec(0u32..3, 0..=3), 1..=3),
    ) {
        let field = FqField::prime(p).unwrap();
        let lower: Vec<Vec<u32>> = lower.into_iter().map(|r| r.into_iter().map(|c| c % p).collect()).collect();
        let f = monic(&field, &lower);
        let m = ramification_bound(&f).unwrap().m;
        // every root of a cubic ramifies with index at most 3
        let wide = 6;
        let cfg = OracleConfig { use_bound: false, ..OracleConfig::default() };
        if let (Ok(a), Ok(b)) = (count_roots_oracle(&f, m, cfg), count_roots_oracle(&f, wide, cfg)) {
            prop_assert_eq!(a, b);
        }
        let (_, roots) = root_truncations(&f, wide, 6, cfg).unwrap();
        for r in roots {
            for (e, _) in r.terms {
                let d = prime_to(e.denom(), p);
                prop_assert!((BigInt::from(m) % d) == BigInt::from(0), "{} has exponent {} outside bound {}", f, e, m);
            }
        }
    }
}

#[test]
fn known_bounds() {
    let f3 = FqField::prime(3).unwrap();
    let b = ramification_bound(
        &hahn_automata::algebra::bivariate::parse_xpoly("X^2 - t^3", &f3).unwrap(),
    )
    .unwrap();
    assert_eq!(b.m, 2);
    assert_eq!(b.additive.to_string(), "X^3 + 2*t^3*X");
    assert_eq!(b.envelope.breakpoints[0].r, rat(3, 2));
}
