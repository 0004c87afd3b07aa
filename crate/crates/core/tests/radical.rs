use nestalg::algebra::{alg_basis, in_alg};
use nestalg::radical::{
    in_strict_ideal, in_strict_ideal_pointwise, nilpotency_index, ordsum_analyze, quasi_inverse, raddef_probe,
    radical_basis_oracle, radical_exclusion_witness, radical_report, strict_dim_formula, strict_ideal_basis,
};
use nestalg::{random, Gf2, Matrix, Nest, Rational, Scalar};
use proptest::prelude::*;

/// A random element of `Alg N` that is not in `A_-`.
fn non_strict<S: Scalar>(rng: &mut random::SeededRng, nest: &Nest<S>) -> Matrix<S> {
    let basis = alg_basis(nest).basis;
    loop {
        let t = random::combination(rng, &basis, nest.ambient_dim());
        if !in_strict_ideal(nest, &t).unwrap() {
            return t;
        }
    }
}

fn check_pointwise<S: Scalar>(seed: u64, n: usize) {
    let mut rng = random::seeded(seed);
    let nest: Nest<S> = random::nest(&mut rng, n);
    let xs: Vec<Vec<S>> = (0..200).map(|_| random::nonzero_vector(&mut rng, n)).collect();
    let strict = strict_ideal_basis(&nest);
    let inside = random::combination(&mut rng, &strict.basis, n);
    assert!(in_strict_ideal(&nest, &inside).unwrap());
    assert!(in_strict_ideal_pointwise(&nest, &inside, &xs).unwrap());
    let outside = non_strict(&mut rng, &nest);
    assert!(!in_strict_ideal_pointwise(&nest, &outside, &xs).unwrap());
    let nil = nilpotency_index(&nest, &inside).unwrap().expect("strict elements are nilpotent");
    assert!(nil <= nest.num_atoms());
}

fn check_quotient<S: Scalar>(seed: u64, n: usize) {
    let mut rng = random::seeded(seed);
    let nest: Nest<S> = random::nest(&mut rng, n);
    let report = radical_report(&nest);
    let atoms = nest.atom_dims();
    assert_eq!(report.strict_basis.dim(), strict_dim_formula(&atoms));
    assert_eq!(report.quotient_dim, atoms.iter().map(|d| d * d).sum::<usize>());
    assert!(report.strict_is_ideal);
    assert!(report.nilpotency_index <= nest.num_atoms());
    assert!(report.passes());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn radical_is_strict_ideal(seed in any::<u64>(), n in 1usize..=6) {
        let mut rng = random::seeded(seed);
        let nest: Nest<Rational> = random::nest(&mut rng, n);
        let rad = radical_basis_oracle(&nest).unwrap();
        let strict = strict_ideal_basis(&nest);
        prop_assert!(rad.as_subspace().leq(&strict.as_subspace()).unwrap());
        prop_assert!(rad.same_span(&strict));
    }

    #[test]
    fn pointwise_and_shift_agree(seed in any::<u64>(), n in 1usize..=6) {
        check_pointwise::<Rational>(seed, n);
        check_pointwise::<Gf2>(seed, n);
    }

    #[test]
    fn quotient_dimension(seed in any::<u64>(), n in 1usize..=6) {
        check_quotient::<Rational>(seed, n);
        check_quotient::<Gf2>(seed, n);
    }

    #[test]
    fn quasi_inverse_is_two_sided_and_in_alg(seed in any::<u64>(), n in 1usize..=6) {
        let mut rng = random::seeded(seed);
        let nest: Nest<Rational> = random::nest(&mut rng, n);
        let a = random::combination(&mut rng, &alg_basis(&nest).basis, n);
        let t = random::combination(&mut rng, &strict_ideal_basis(&nest).basis, n);
        let q = quasi_inverse(&nest, &a, &t).unwrap();
        let one_minus = &Matrix::identity(n) - &a.matmul(&t);
        prop_assert_eq!(q.inverse.matmul(&one_minus), Matrix::identity(n));
        prop_assert_eq!(one_minus.matmul(&q.inverse), Matrix::identity(n));
        prop_assert!(in_alg(&nest, &q.inverse).unwrap());
        prop_assert!(q.series_length <= nest.num_atoms());
    }

    #[test]
    fn exclusion_witness_is_singular(seed in any::<u64>(), n in 1usize..=6) {
        let mut rng = random::seeded(seed);
        let nest: Nest<Rational> = random::nest(&mut rng, n);
        let t = non_strict(&mut rng, &nest);
        let w = radical_exclusion_witness(&nest, &t).unwrap();
        prop_assert!(in_alg(&nest, &w.rank_one.matrix).unwrap());
        prop_assert!(w.defect.try_invert().unwrap().is_none());
        prop_assert!(w.defect.mul_vec(&w.x).iter().all(|c| c == &Rational::from_i64(0)));
        prop_assert!(!raddef_probe(&nest, &t, 5, seed).unwrap());
    }

    #[test]
    fn strict_elements_pass_probe(seed in any::<u64>(), n in 1usize..=5) {
        let mut rng = random::seeded(seed);
        let nest: Nest<Rational> = random::nest(&mut rng, n);
        let t = random::combination(&mut rng, &strict_ideal_basis(&nest).basis, n);
        prop_assert!(raddef_probe(&nest, &t, 10, seed).unwrap());
    }

    #[test]
    fn ordinal_sum_blocks_agree(seed in any::<u64>(), n1 in 1usize..=3, n2 in 1usize..=3) {
        let mut rng = random::seeded(seed);
        let a: Nest<Rational> = random::nest(&mut rng, n1);
        let b: Nest<Rational> = random::nest(&mut rng, n2);
        let s = a.ordinal_sum(&b);
        let n = n1 + n2;
        let candidates = [
            random::combination(&mut rng, &alg_basis(&s).basis, n),
            random::combination(&mut rng, &strict_ideal_basis(&s).basis, n),
            random::matrix(&mut rng, n, n),
        ];
        for t in &candidates {
            prop_assert!(ordsum_analyze(&a, &b, t).unwrap().agrees());
        }
    }
}
