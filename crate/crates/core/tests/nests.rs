use std::collections::BTreeSet;

use nestalg::{random, Error, Gf2, Nest, Rational, Scalar, Subspace};
use proptest::prelude::*;

fn check_principal<S: Scalar>(seed: u64, n: usize) {
    let mut rng = random::seeded(seed);
    let nest: Nest<S> = random::nest(&mut rng, n);
    for _ in 0..100 {
        let x: Vec<S> = random::nonzero_vector(&mut rng, n);
        let p = nest.principal(&x).unwrap();
        let pred = nest.principal_pred(&x).unwrap();
        assert!(p.contains_vector(&x).unwrap());
        assert!(!pred.contains_vector(&x).unwrap());
        assert!(pred.leq(p).unwrap() && pred != p);
        for m in nest.chain() {
            assert_eq!(m.contains_vector(&x).unwrap(), p.leq(m).unwrap());
            assert_eq!(!m.contains_vector(&x).unwrap(), m.leq(pred).unwrap());
            let between = pred.leq(m).unwrap() && m.leq(p).unwrap() && m != pred && m != p;
            assert!(!between);
        }
    }
}

fn check_dual<S: Scalar>(seed: u64, n: usize) {
    let mut rng = random::seeded(seed);
    let nest: Nest<S> = random::nest(&mut rng, n);
    let dual = nest.dual();
    assert_eq!(dual.len(), nest.len());
    assert_eq!(dual.dual(), nest);
    for a in nest.chain() {
        assert!(dual.contains_member(&a.annihilator()));
        for b in nest.chain() {
            assert_eq!(a.leq(b).unwrap(), b.annihilator().leq(&a.annihilator()).unwrap());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn principal_equivalences_q(seed in any::<u64>(), n in 1usize..=6) {
        check_principal::<Rational>(seed, n);
    }

    #[test]
    fn principal_equivalences_gf2(seed in any::<u64>(), n in 1usize..=6) {
        check_principal::<Gf2>(seed, n);
    }

    #[test]
    fn dual_is_anti_isomorphism(seed in any::<u64>(), n in 1usize..=6) {
        check_dual::<Rational>(seed, n);
        check_dual::<Gf2>(seed, n);
    }

    #[test]
    fn ordinal_sum_shape(seed in any::<u64>(), n1 in 1usize..=3, n2 in 1usize..=3) {
        let mut rng = random::seeded(seed);
        let a: Nest<Rational> = random::nest(&mut rng, n1);
        let b: Nest<Rational> = random::nest(&mut rng, n2);
        let s = a.ordinal_sum(&b);
        prop_assert_eq!(s.ambient_dim(), n1 + n2);
        prop_assert_eq!(s.len(), a.len() + b.len() - 1);
        let mut atoms = a.atom_dims();
        atoms.extend(b.atom_dims());
        prop_assert_eq!(s.atom_dims(), atoms);
        for m in a.chain() {
            prop_assert!(s.contains_member(&m.embed(0, n2)));
        }
    }
}

/// Over GF(2)^n the principal elements `N(x)` of all nonzero `x` are exactly
/// the join-irreducibles.
#[test]
fn join_irreducibles_are_principal_elements() {
    let mut rng = random::seeded(3);
    for n in 1..=4 {
        for _ in 0..10 {
            let nest: Nest<Gf2> = random::nest(&mut rng, n);
            let principal: BTreeSet<Subspace<Gf2>> = Subspace::full(n)
                .elements()
                .unwrap()
                .into_iter()
                .filter(|x| x.iter().any(|c| *c != Gf2::from_i64(0)))
                .map(|x| nest.principal(&x).unwrap().clone())
                .collect();
            let irreducible: BTreeSet<Subspace<Gf2>> = nest.join_irreducibles().into_iter().map(|j| j.member).collect();
            assert_eq!(principal, irreducible);
            for j in nest.join_irreducibles() {
                assert_eq!(nest.principal(&j.witness).unwrap(), &j.member);
            }
        }
    }
}

#[test]
fn adapted_vectors_have_expected_principals() {
    let mut rng = random::seeded(8);
    for n in 1..=6 {
        let nest: Nest<Rational> = random::nest(&mut rng, n);
        for (i, v) in nest.adapted_vectors() {
            assert_eq!(nest.principal(&v).unwrap(), &nest.chain()[i]);
            assert_eq!(nest.principal_pred(&v).unwrap(), &nest.chain()[i - 1]);
        }
    }
}

#[test]
fn construction_normalizes_and_rejects() {
    let e = |i: usize| -> Vec<Rational> { nestalg::matrix::unit_vector(3, i) };
    let a = Subspace::span_of(&[e(0)], 3).unwrap();
    let b = Subspace::span_of(&[e(0), e(1)], 3).unwrap();
    let (nest, notes) = Nest::normalize(3, vec![b.clone(), a.clone(), a.clone()]).unwrap();
    assert_eq!(nest, Nest::flag(3));
    assert!(notes.inserted_bottom && notes.inserted_top && notes.reordered);
    assert_eq!(notes.duplicates_removed, 1);

    let c = Subspace::span_of(&[e(1)], 3).unwrap();
    assert!(matches!(Nest::new(3, vec![a, c]), Err(Error::NotAChain { .. })));
    assert!(Nest::new(2, vec![b]).is_err());
}
