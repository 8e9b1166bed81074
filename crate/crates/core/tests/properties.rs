mod common;

use common::*;
use dualbraid_core::cyclo::{cyc_add, cyc_from_root, cyc_inv, cyc_mul, CycNum, Cyclotomic};
use dualbraid_core::hurwitz::{hurwitz_move, hurwitz_orbit, ConjugationTable, ReflTuple};
use dualbraid_core::interval::absolute_leq;
use dualbraid_core::reflgroup::{element_order, fixed_space_codim, multiply};
use dualbraid_core::CycloError;
use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;
use rand::Rng;

fn num(m: u32) -> impl Strategy<Value = CycNum> {
    let field = Cyclotomic::new(m);
    let d = field.degree();
    prop::collection::vec((-20i64..20, 1i64..6), d).prop_map(move |cs| {
        field.from_poly(
            cs.into_iter()
                .map(|(p, q)| BigRational::new(BigInt::from(p), BigInt::from(q)))
                .collect(),
        )
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn field_axioms(
        (a, b, c) in prop::sample::select(vec![3u32, 4, 5, 7, 8, 12, 15]).prop_flat_map(|m| (num(m), num(m), num(m)))
    ) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(cyc_add(&a, &b), &b + &a);
        prop_assert_eq!(cyc_mul(&a, &b), &b * &a);
        if a.is_zero() {
            prop_assert_eq!(cyc_inv(&a), Err(CycloError::ZeroDivision));
        } else {
            prop_assert!((&a * &cyc_inv(&a).unwrap()).is_one());
        }
        prop_assert_eq!(a.canonicalize().canonicalize(), a.canonicalize());
        prop_assert_eq!(a.canonicalize(), a.clone());
    }

    #[test]
    fn embedding_is_a_ring_map(a in num(5), b in num(5), k in 2u32..4) {
        let big = Cyclotomic::new(5 * k);
        let (ea, eb) = (a.embed(&big).unwrap(), b.embed(&big).unwrap());
        prop_assert_eq!((&a * &b).embed(&big).unwrap(), &ea * &eb);
        prop_assert_eq!((&a + &b).embed(&big).unwrap(), &ea + &eb);
        // mixed-conductor arithmetic coerces to the lcm
        let z3 = cyc_from_root(3, 1);
        prop_assert_eq!((&a * &z3).conductor(), 15);
    }
}

#[test]
fn root_examples() {
    assert!(cyc_from_root(1, 0).is_one());
    assert_eq!(cyc_from_root(4, 2), Cyclotomic::new(4).integer(-1));
    assert_eq!(
        cyc_add(&cyc_from_root(3, 1), &cyc_from_root(3, 2)),
        Cyclotomic::new(3).integer(-1)
    );
    assert_eq!(cyc_inv(&cyc_from_root(7, 3)).unwrap(), cyc_from_root(7, 4));
}

#[test]
fn codim_is_conjugation_invariant_and_matches_matrices() {
    for name in ["B3", "G(3,3,3)", "I2(5)", "D4"] {
        let (g, p) = family(name);
        let all = g.enumerate_elements(10_000).unwrap();
        let mut r = rng(7);
        for _ in 0..60 {
            let w = &all[r.gen_range(0..all.len())];
            let x = &all[r.gen_range(0..all.len())];
            let conj = x.compose(w).compose(&x.inverse());
            assert_eq!(g.codim(w), g.codim(&conj));
            let (mw, mc) = (g.element_of(w), g.element_of(&conj));
            assert_eq!(fixed_space_codim(&mw), g.codim(w), "{name}");
            assert_eq!(fixed_space_codim(&mc), g.codim(w), "{name}");
        }
        for u in 0..p.len() {
            assert!(absolute_leq(&p.group_element(u), &p.group_element(p.top())));
            assert!(absolute_leq(&g.entry().identity(), &p.group_element(u)));
        }
    }
}

#[test]
fn group_element_examples() {
    let (g, _) = family("I2(5)");
    let gens = &g.entry().generators;
    let prod = multiply(&gens[0], &gens[1]).unwrap();
    assert_eq!(element_order(&prod, 10).unwrap(), 5);
    assert_eq!(element_order(&gens[0], 10).unwrap(), 2);
    assert!(multiply(&gens[0], &gens[0]).unwrap().is_identity());
    assert_eq!(fixed_space_codim(&g.entry().identity()), 0);
    let (g, _) = family("A2");
    let c = g.coxeter_element();
    assert_eq!(element_order(c, g.order_bound()).unwrap(), 3);
    assert_eq!(fixed_space_codim(c), 2);
}

#[test]
fn kreweras_is_an_anti_automorphism() {
    for name in ["A4", "B4", "D5", "G(4,4,3)", "I2(9)"] {
        let (_, p) = family(name);
        check_kreweras(&p).unwrap();
        let poin = p.poincare_polynomial();
        assert!(poin.iter().eq(poin.iter().rev()), "{name}");
    }
}

#[test]
fn lattice_and_zeta_on_families() {
    let names = [
        "A1", "A2", "A3", "A4", "A5", "B2", "B3", "B4", "B5", "D4", "D5", "G(3,3,3)", "G(3,3,4)", "G(4,4,3)",
        "G(4,4,4)", "G(5,5,3)", "G(5,5,4)",
    ];
    for name in names {
        let (_, p) = family(name);
        let report = p.verify_lattice();
        assert!(report.passed(), "{name}: {:?}", report.failures.first());
        let n = p.len() as u64;
        assert_eq!(report.pairs, n * (n + 1) / 2);
        for k in 1..=4 {
            p.zeta_count(k).unwrap();
        }
        p.count_maximal_chains().unwrap();
    }
}

#[test]
fn garside_suite_on_families() {
    for (i, name) in ["A3", "B3", "D4", "G(3,3,3)", "I2(7)", "G(4,4,4)"].iter().enumerate() {
        let (_, p) = family(name);
        check_garside(&p, 500, i as u64).unwrap();
    }
}

#[test]
fn hurwitz_moves() {
    let (g, p) = family("A3");
    let conj = ConjugationTable::new(&g);
    let decomps = p.reduced_decompositions(p.top(), 1000).unwrap();
    let mut r = rng(3);
    for _ in 0..200 {
        let t = ReflTuple::new(decomps[r.gen_range(0..decomps.len())].clone());
        let i = r.gen_range(1..3);
        let back = hurwitz_move(&conj, &hurwitz_move(&conj, &t, i, false).unwrap(), i, true).unwrap();
        assert_eq!(back, t);
        // braid relation σ1σ2σ1 = σ2σ1σ2
        let apply = |t: &ReflTuple, seq: &[usize]| {
            seq.iter()
                .fold(t.clone(), |acc, &j| hurwitz_move(&conj, &acc, j, false).unwrap())
        };
        assert_eq!(apply(&t, &[1, 2, 1]), apply(&t, &[2, 1, 2]));
        // the product is invariant
        let prod = |t: &ReflTuple| {
            t.entries
                .iter()
                .fold(g.roots().identity(), |acc, &e| acc.compose(g.reflection_perm(e)))
        };
        assert_eq!(prod(&apply(&t, &[1, 2, 2, 1, 2])), prod(&t));
    }
    let orbit = hurwitz_orbit(&conj, &ReflTuple::new(decomps[0].clone()), 1000).unwrap();
    assert_eq!(orbit.len() as u128, p.count_maximal_chains().unwrap());
    assert!(hurwitz_move(&conj, &ReflTuple::new(decomps[0].clone()), 3, false).is_err());
}

#[test]
fn a2_hurwitz_example() {
    // ((12),(23)) · σ1 = ((23),(13)) with the permutation-matrix model of S3
    let (g, _) = family("A2");
    let conj = ConjugationTable::new(&g);
    let refl = g.reflections();
    assert_eq!(refl.len(), 3);
    for a in 0..3 {
        for b in 0..3 {
            if a != b {
                let moved = hurwitz_move(&conj, &ReflTuple::new(vec![a, b]), 1, false).unwrap();
                let third = 3 - a - b;
                assert_eq!(moved.entries, [b, third]);
            }
        }
    }
}
