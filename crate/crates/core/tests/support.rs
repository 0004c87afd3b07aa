use nestalg::algebra::{alg_basis, in_alg};
use nestalg::radical::{radical_report, strict_ideal_basis};
use nestalg::support::{
    chain_union, dual_complete_check, dual_support_nest, grade_level, graded_quasi_inverse, grading_containment,
    principal_support, truncated_dual_nest, verify_witness, IndexRange, Label, SymbolicSet,
};
use nestalg::{random, Matrix, Rational, Scalar, SupportNest, SupportSet, Zero};
use proptest::prelude::*;

fn ranges() -> Vec<IndexRange> {
    let mut out = vec![IndexRange::all()];
    for a in -4..=4 {
        out.push(IndexRange::from(a));
        out.push(IndexRange::up_to(a));
        for b in a..=4 {
            out.push(IndexRange::between(a, b));
        }
    }
    out
}

#[test]
fn meet_of_annihilators_is_annihilator_of_union() {
    for (name, nest) in SupportNest::catalog() {
        for r in ranges() {
            // Ranges entirely below the label domain are empty.
            let Ok(c) = dual_complete_check(&nest, r) else { continue };
            assert!(c.meet_identity, "{name} {r:?}");
            assert!(c.union_contained, "{name} {r:?}");
        }
    }
}

#[test]
fn well_ordering_matches_dual_completeness() {
    for (name, nest) in SupportNest::catalog() {
        let d = dual_support_nest::<Rational>(&nest).unwrap();
        assert_eq!(d.complete, nest.is_well_ordered(), "{name}");
        assert_eq!(d.witness.is_some(), !d.complete);
        if let Some(w) = &d.witness {
            let check = verify_witness(&nest, w).unwrap();
            assert!(check.passes(), "{name}: {check:?}");
        }
    }
}

#[test]
fn members_are_totally_ordered() {
    for (_, nest) in SupportNest::catalog() {
        for nest in [nest, nest.dual().unwrap()] {
            let labels: Vec<Label> = std::iter::once(Label::Bottom)
                .chain((-5..=5).map(Label::Index))
                .chain(std::iter::once(Label::Top))
                .filter(|l| nest.is_valid_label(*l))
                .collect();
            let sets = |l: Label| -> Vec<SymbolicSet> {
                nest.member(l).unwrap().into_iter().map(SymbolicSet::Support).collect()
            };
            for &a in &labels {
                for &b in &labels {
                    assert!(nest.leq(&sets(a), &sets(b)) || nest.leq(&sets(b), &sets(a)));
                }
            }
        }
    }
}

#[test]
fn unions_of_finite_ranges_are_members() {
    for (_, nest) in SupportNest::catalog() {
        for r in ranges().into_iter().filter(|r| r.start.is_some() && r.end.is_some()) {
            if let Ok(u) = chain_union(&nest, r) {
                assert!(u.member.is_some());
            }
        }
    }
    let d = SupportNest::omega_star().dual().unwrap();
    assert_eq!(chain_union(&d, IndexRange::from(3)).unwrap().member, None);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    /// `N(x)` contains `x`, `N(x)_-` does not, and no member lies between.
    #[test]
    fn principal_support_brackets_x(seed in any::<u64>(), len in 1usize..8) {
        let mut rng = random::seeded(seed);
        for (_, nest) in SupportNest::catalog() {
            let x: Vec<Vec<Rational>> = (0..nest.blocks()).map(|_| random::vector(&mut rng, len)).collect();
            if x.iter().flatten().all(|c| c == &Rational::from_i64(0)) {
                continue;
            }
            let (p, pred) = principal_support(&nest, &x).unwrap();
            let holds = |l: Label| {
                nest.member(l).unwrap().iter().zip(&x).all(|(s, v)| {
                    v.iter().enumerate().all(|(i, c)| c == &Rational::from_i64(0) || s.contains_index(i as u64 + 1))
                })
            };
            prop_assert!(holds(p));
            prop_assert!(!holds(pred));
            let sym = |l: Label| -> Vec<SymbolicSet> {
                nest.member(l).unwrap().into_iter().map(SymbolicSet::Support).collect()
            };
            for k in -10..=10 {
                let l = Label::Index(k);
                if !nest.is_valid_label(l) {
                    continue;
                }
                if holds(l) {
                    prop_assert!(nest.leq(&sym(p), &sym(l)));
                } else {
                    prop_assert!(nest.leq(&sym(l), &sym(pred)));
                }
            }
        }
    }

    /// Random admissible pairs on the level-`m` truncation: the series stops
    /// by `(a t)^m = 0` and matches the exact inverse.
    #[test]
    fn graded_series_terminates_and_inverts(seed in any::<u64>(), m in 1usize..=8) {
        let mut rng = random::seeded(seed);
        let nest = truncated_dual_nest::<Rational>(m);
        let a = random::combination(&mut rng, &alg_basis(&nest).basis, m);
        let t = random::combination(&mut rng, &strict_ideal_basis(&nest).basis, m);
        let s = graded_quasi_inverse(&t, &a, m).unwrap();
        let q = a.matmul(&t);
        prop_assert!(q.pow(m as u32).is_zero());
        prop_assert!(grading_containment(&q, m));
        let one_minus = &Matrix::identity(m) - &q;
        prop_assert_eq!(Some(s.clone()), one_minus.try_invert().unwrap());
        prop_assert!(in_alg(&nest, &s).unwrap());
    }
}

#[test]
fn truncations_are_lower_triangular_with_equal_radical() {
    for m in 1..=6 {
        let nest = truncated_dual_nest::<Rational>(m);
        for b in alg_basis(&nest).basis {
            for i in 0..m {
                for j in i + 1..m {
                    assert!(b.get(i, j).is_zero());
                }
            }
        }
        assert_eq!(grade_level::<Rational>(m, 0).dim(), m);
        assert_eq!(radical_report(&nest).equal, Some(true));
    }
}

#[test]
fn descriptor_display() {
    assert_eq!(SupportSet::Initial(3).to_string(), "{1..3}");
    assert_eq!(SupportSet::Tail(3).to_string(), "{4..}");
    assert_eq!(SupportSet::Tail(0).to_string(), "N");
}
