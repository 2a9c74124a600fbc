use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use cend_core::cend::{
    apart_product_at, apply_antiinv, conjugate, homomorphism_image, product_at, AntiInvSpec,
    AutoSpec, HomSpec,
};
use cend_core::cend1::closure;
use cend_core::poly::{bipoly_div_exact, parse_mpoly, rat, Monomial, Subst};
use cend_core::polymat::smith_form;
use cend_core::structure::decide_isomorphism;
use cend_core::{CendElem, MPoly, PolyMat, UPoly, Var};

fn mpoly(vars: usize, max_deg: u32) -> impl Strategy<Value = MPoly> {
    prop::collection::vec((prop::collection::vec(0..=max_deg, vars), -4i64..=4), 0..5).prop_map(
        move |terms| {
            let mut p = MPoly::zero();
            for (e, c) in terms {
                let mut m = [0u32; 4];
                m[..e.len()].copy_from_slice(&e);
                p.add_term(Monomial(m), rat(c));
            }
            p
        },
    )
}

fn elem(n: usize) -> impl Strategy<Value = CendElem> {
    prop::collection::vec(mpoly(2, 2), n * n).prop_map(move |e| CendElem::from_entries(n, e).unwrap())
}

fn lam() -> MPoly {
    MPoly::var(Var::L)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_laws(a in mpoly(4, 2), b in mpoly(4, 2), c in mpoly(4, 2)) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert!((&a - &a).is_zero());
    }

    #[test]
    fn substitution_is_a_ring_map(a in mpoly(4, 2), b in mpoly(4, 2), s in mpoly(4, 1), t in mpoly(4, 1)) {
        let sub = Subst::new().with(Var::X, s).with(Var::D, t);
        prop_assert_eq!((&a * &b).substitute(&sub), &a.substitute(&sub) * &b.substitute(&sub));
        prop_assert_eq!((&a + &b).substitute(&sub), &a.substitute(&sub) + &b.substitute(&sub));
    }

    #[test]
    fn text_round_trip(a in mpoly(4, 3)) {
        let text = a.to_string();
        let back = parse_mpoly(&text).unwrap();
        prop_assert_eq!(back.to_string(), text);
        prop_assert_eq!(back, a);
    }

    #[test]
    fn shift_inverts(c in prop::collection::vec(-5i64..=5, 0..5), s in -6i64..=6) {
        let p = UPoly::from_ints(&c);
        prop_assert_eq!(p.shift(&rat(s)).shift(&rat(-s)), p);
    }

    #[test]
    fn smith_divisors_are_unimodular_invariants(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m = PolyMat::random(&mut rng, 3, 3, 2, 4);
        let u = PolyMat::random_unimodular(&mut rng, 3, 1, 4);
        let v = PolyMat::random_unimodular(&mut rng, 3, 1, 4);
        let c = smith_form(&m);
        prop_assert!(c.verify(&m));
        let moved = &(&u * &m) * &v;
        let c2 = smith_form(&moved);
        prop_assert!(c2.verify(&moved));
        prop_assert_eq!(c.divisors, c2.divisors);
        prop_assert_eq!((&u * &v).det().degree(), Some(0));
    }

    #[test]
    fn det_multiplicative(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = PolyMat::random(&mut rng, 3, 3, 2, 3);
        let b = PolyMat::random(&mut rng, 3, 3, 2, 3);
        prop_assert_eq!((&a * &b).det(), &a.det() * &b.det());
    }

    #[test]
    fn factorization_homomorphism(a in elem(1), b in elem(1)) {
        let x = UPoly::var();
        let p = PolyMat::scalar(1, x.pow(2));
        let spec = HomSpec::new(p.clone(), PolyMat::scalar(1, x.clone()), PolyMat::scalar(1, x), rat(0)).unwrap();
        let lhs = homomorphism_image(&apart_product_at(&a, &b, &p, &lam()), &spec);
        let rhs = product_at(&homomorphism_image(&a, &spec), &homomorphism_image(&b, &spec), &lam());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn conjugation_is_multiplicative(a in elem(2), b in elem(2), f in -2i64..=2, alpha in -2i64..=2) {
        let c = PolyMat::from_rows(vec![
            vec![UPoly::one(), UPoly::from_ints(&[f, 1])],
            vec![UPoly::zero(), UPoly::one()],
        ]).unwrap();
        let spec = AutoSpec::new(c, rat(alpha)).unwrap();
        let lhs = conjugate(&product_at(&a, &b, &lam()), &spec).unwrap();
        let rhs = product_at(&conjugate(&a, &spec).unwrap(), &conjugate(&b, &spec).unwrap(), &lam());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn anti_involution_reverses_products(a in elem(1), b in elem(1)) {
        // Bloch: P = x, Y = 1, ε = -1, α = 0
        let p = PolyMat::scalar(1, UPoly::var());
        let spec = AntiInvSpec::new(p.clone(), PolyMat::identity(1), -1, rat(0)).unwrap();
        let flipped = &(-&lam()) - &MPoly::var(Var::D);
        let lhs = apply_antiinv(&apart_product_at(&a, &b, &p, &lam()), &spec);
        let rhs = apart_product_at(&apply_antiinv(&b, &spec), &apply_antiinv(&a, &spec), &p, &flipped);
        prop_assert_eq!(lhs, rhs);
        prop_assert_eq!(apply_antiinv(&apply_antiinv(&a, &spec), &spec), a);
    }

    #[test]
    fn isomorphism_is_symmetric(r1 in -3i64..=3, r2 in -3i64..=3, s in -3i64..=3, off in 0i64..=1) {
        let lin = |r: i64| UPoly::from_ints(&[-r, 1]);
        let p = PolyMat::diag(&[lin(r1), lin(r2)]);
        let q = PolyMat::diag(&[lin(r1 + s), lin(r2 + s + off)]);
        let pq = decide_isomorphism(&p, &q).unwrap();
        let qp = decide_isomorphism(&q, &p).unwrap();
        prop_assert_eq!(pq.isomorphic, qp.isomorphic);
        prop_assert_eq!(pq.alpha.map(|a| -a), qp.alpha);
        if off == 0 {
            prop_assert!(pq.isomorphic);
        }
    }
}

fn cend1_gen() -> impl Strategy<Value = MPoly> {
    prop::sample::select(vec!["1", "x", "x^2", "d", "d + x", "d*x + x^2", "x^2 - x", "x^3"])
        .prop_map(|s| parse_mpoly(s).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn cend1_closure_idempotent_and_monotone(gens in prop::collection::vec(cend1_gen(), 1..3), extra in cend1_gen()) {
        let cap = Some(10);
        let st = closure(&gens, cap, 12).unwrap();
        prop_assume!(st.status == cend_core::cend1::ClosureStatus::Stabilized);
        let again = closure(&st.basis, cap, 12).unwrap();
        prop_assert_eq!(&again.basis, &st.basis);
        prop_assert_eq!(&again.gcd, &st.gcd);
        let mut more = gens.clone();
        more.push(extra);
        let bigger = closure(&more, cap, 12).unwrap();
        prop_assume!(bigger.status == cend_core::cend1::ClosureStatus::Stabilized);
        prop_assert!(bipoly_div_exact(&st.gcd, &bigger.gcd).is_some(), "{} vs {}", st.gcd, bigger.gcd);
    }
}
