use std::collections::BTreeSet;

use nestalg::random;
use nestalg::{Gf2, Matrix, Rational, Scalar, Zero};
use proptest::prelude::*;
use rand::Rng;

fn gf2_matrix(n: usize, bits: u32) -> Matrix<Gf2> {
    Matrix::from_fn(n, n, |i, j| Gf2::from_i64(((bits >> (i * n + j)) & 1) as i64))
}

/// All vectors of GF(2)^n.
fn gf2_vectors(n: usize) -> Vec<Vec<Gf2>> {
    (0..1u32 << n).map(|b| (0..n).map(|i| Gf2::from_i64(((b >> i) & 1) as i64)).collect()).collect()
}

/// Inverse by exhaustive search over all n×n matrices.
fn brute_inverse(m: &Matrix<Gf2>) -> Option<Matrix<Gf2>> {
    let n = m.rows();
    let id = Matrix::identity(n);
    (0..1u32 << (n * n)).map(|b| gf2_matrix(n, b)).find(|b| b.matmul(m) == id)
}

fn check_rref<S: Scalar>(m: &Matrix<S>) {
    let r = m.rref();
    assert_eq!(r.matrix.rref().matrix, r.matrix);
    assert_eq!(r.rank + m.kernel_basis().rows(), m.cols());
    for k in m.kernel_basis().row_vectors() {
        assert!(m.mul_vec(&k).iter().all(|x| x.is_zero()));
    }
    assert_eq!(r.pivots.len(), r.rank);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(150))]

    #[test]
    fn rref_idempotent_and_rank_nullity_q(seed in any::<u64>(), r in 0usize..6, c in 0usize..6) {
        let mut rng = random::seeded(seed);
        check_rref(&random::matrix::<Rational, _>(&mut rng, r, c));
    }

    #[test]
    fn rref_idempotent_and_rank_nullity_gf2(seed in any::<u64>(), r in 0usize..6, c in 0usize..6) {
        let mut rng = random::seeded(seed);
        check_rref(&random::matrix::<Gf2, _>(&mut rng, r, c));
    }

    #[test]
    fn inverse_is_two_sided(seed in any::<u64>(), n in 1usize..6) {
        let mut rng = random::seeded(seed);
        let m: Matrix<Rational> = random::matrix(&mut rng, n, n);
        match m.try_invert().unwrap() {
            Some(inv) => {
                prop_assert_eq!(inv.matmul(&m), Matrix::identity(n));
                prop_assert_eq!(m.matmul(&inv), Matrix::identity(n));
            }
            None => prop_assert!(m.rank() < n),
        }
    }

    #[test]
    fn solve_matches_product(seed in any::<u64>(), r in 1usize..5, c in 1usize..5) {
        let mut rng = random::seeded(seed);
        let m: Matrix<Rational> = random::matrix(&mut rng, r, c);
        let x: Vec<Rational> = random::vector(&mut rng, c);
        let b = m.mul_vec(&x);
        let y = m.solve(&b).unwrap().expect("b is in the column space");
        prop_assert_eq!(m.mul_vec(&y), b);
    }
}

#[test]
fn gf2_rank_matches_image_count() {
    let mut rng = random::seeded(11);
    for _ in 0..60 {
        let r = rng.random_range(1..5);
        let c = rng.random_range(1..5);
        let m: Matrix<Gf2> = random::matrix(&mut rng, r, c);
        let image: BTreeSet<Vec<Gf2>> = gf2_vectors(c).iter().map(|x| m.mul_vec(x)).collect();
        let kernel = gf2_vectors(c).iter().filter(|x| m.mul_vec(x).iter().all(|v| v.is_zero())).count();
        assert_eq!(image.len(), 1 << m.rank());
        assert_eq!(kernel, 1 << m.kernel_basis().rows());
    }
}

#[test]
fn gf2_inverse_matches_brute_force() {
    let mut rng = random::seeded(5);
    for case in 0..60 {
        let n = 1 + case % 4;
        let m: Matrix<Gf2> = random::matrix(&mut rng, n, n);
        assert_eq!(m.try_invert().unwrap(), brute_inverse(&m), "{m:?}");
    }
}

#[test]
fn non_square_inverse_is_an_error() {
    assert!(Matrix::<Rational>::zeros(2, 3).try_invert().is_err());
}
