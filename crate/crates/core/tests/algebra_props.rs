use hahn_automata::algebra::field::Field;
use hahn_automata::algebra::fq::{Fq, FqField};
use hahn_automata::algebra::poly::{Poly, PolyRing};
use hahn_automata::algebra::ratfunc::RationalFunctionField;
use hahn_automata::algebra::squarefree::{squarefree_layers, squarefree_part};
use proptest::prelude::*;

fn fields() -> Vec<FqField> {
    vec![
        FqField::prime(2).unwrap(),
        FqField::prime(3).unwrap(),
        FqField::new(2, 2).unwrap(),
        FqField::new(3, 2).unwrap(),
        FqField::new(2, 4).unwrap(),
        FqField::new(3, 4).unwrap(),
        FqField::prime(7).unwrap(),
    ]
}

fn field_and_elems(n: usize) -> impl Strategy<Value = (FqField, Vec<Fq>)> {
    (0..fields().len()).prop_flat_map(move |i| {
        let f = fields()[i].clone();
        let q = f.size();
        (Just(f), prop::collection::vec((0..q).prop_map(Fq), n))
    })
}

fn poly_over(f: &FqField, c: &[u32]) -> Poly<Fq> {
    PolyRing::new(f.clone()).from_coeffs(c.iter().map(|&x| Fq(x % f.size())).collect())
}

proptest! {
    #[test]
    fn field_axioms((f, v) in field_and_elems(3)) {
        let (a, b, c) = (v[0], v[1], v[2]);
        prop_assert_eq!(f.mul(&f.mul(&a, &b), &c), f.mul(&a, &f.mul(&b, &c)));
        prop_assert_eq!(f.add(&f.add(&a, &b), &c), f.add(&a, &f.add(&b, &c)));
        prop_assert_eq!(f.mul(&a, &f.add(&b, &c)), f.add(&f.mul(&a, &b), &f.mul(&a, &c)));
        prop_assert_eq!(f.add(&a, &f.neg(&a)), Fq::ZERO);
        if a != Fq::ZERO {
            prop_assert_eq!(f.mul(&a, &f.inv(&a).unwrap()), Fq::ONE);
        }
    }

    #[test]
    fn divmod_reconstruction(
        i in 0usize..7,
        a in prop::collection::vec(0u32..1000, 0..8),
        b in prop::collection::vec(0u32..1000, 1..7),
    ) {
        let f = fields()[i].clone();
        let r = PolyRing::new(f.clone());
        let pa = poly_over(&f, &a);
        let pb = poly_over(&f, &b);
        prop_assume!(!pb.is_zero());
        let (q, rem) = r.divmod(&pa, &pb).unwrap();
        prop_assert!(rem.is_zero() || rem.degree() < pb.degree());
        prop_assert_eq!(r.add(&r.mul(&q, &pb), &rem), pa);
    }

    #[test]
    fn gcd_divides_both(
        i in 0usize..7,
        a in prop::collection::vec(0u32..1000, 0..7),
        b in prop::collection::vec(0u32..1000, 0..7),
        c in prop::collection::vec(0u32..1000, 0..3),
    ) {
        let f = fields()[i].clone();
        let r = PolyRing::new(f.clone());
        let common = poly_over(&f, &c);
        let pa = r.mul(&poly_over(&f, &a), &common);
        let pb = r.mul(&poly_over(&f, &b), &common);
        let g = r.gcd(&pa, &pb);
        if !g.is_zero() {
            prop_assert!(r.is_monic(&g));
            prop_assert!(r.div_exact(&pa, &g).is_some());
            prop_assert!(r.div_exact(&pb, &g).is_some());
            if !common.is_zero() {
                prop_assert!(r.div_exact(&g, &common).is_some());
            }
        }
    }

    #[test]
    fn squarefree_part_properties(
        p in prop::sample::select(vec![2u32, 3]),
        factors in prop::collection::vec((prop::collection::vec(0u32..3, 0..3), 1u32..4, any::<bool>()), 1..4),
    ) {
        let k = RationalFunctionField::new(FqField::prime(p).unwrap());
        let r = PolyRing::new(k.clone());
        let mut f = r.one();
        for (tc, e, insep) in &factors {
            // X^{1 or p} - c(t)
            let c = k.from_poly(poly_over(k.base(), tc));
            let deg = if *insep { p as usize } else { 1 };
            let g = r.sub(&r.monomial(k.one(), deg), &r.constant(c));
            f = r.mul(&f, &r.pow(&g, *e as u64));
        }
        let s = squarefree_part(&r, &f).unwrap();
        prop_assert!(r.div_exact(&f, &s).is_some());
        for layer in squarefree_layers(&r, &f).unwrap() {
            let g = &layer.factor;
            prop_assert_eq!(r.gcd(g, &r.derivative(g)), r.one());
        }
        let ds = r.derivative(&s);
        if !ds.is_zero() && factors.iter().all(|(_, _, insep)| !insep) {
            prop_assert_eq!(r.gcd(&s, &ds), r.one());
        }
        let s2 = r.mul(&s, &s);
        prop_assert_eq!(squarefree_part(&r, &s2).unwrap(), s);
    }
}

#[test]
fn subfield_membership_matches_exhaustion() {
    for (p, e) in [(2, 2), (2, 4), (3, 2), (3, 4), (2, 6)] {
        let f = FqField::new(p, e).unwrap();
        if f.size() > 81 {
            continue;
        }
        for d in (1..=e).filter(|d| e % d == 0) {
            let sub = FqField::new(p, d).unwrap();
            let emb = sub.embedding_into(&f).unwrap();
            let image: Vec<Fq> = sub.elements().map(|a| emb.apply(a)).collect();
            for a in f.elements() {
                let fixed = f.pow(&a, (p as u64).pow(d)) == a;
                assert_eq!(f.is_in_subfield(a, d), fixed);
                assert_eq!(fixed, image.contains(&a));
            }
        }
    }
}
