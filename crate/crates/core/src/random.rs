//! Seeded generators for vectors, subspaces, nests and algebra elements.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::matrix::{is_zero_vector, Matrix};
use crate::nest::Nest;
use crate::scalar::Scalar;
use crate::subspace::Subspace;

pub type SeededRng = ChaCha8Rng;

pub fn seeded(seed: u64) -> SeededRng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn vector<S: Scalar, R: Rng + ?Sized>(rng: &mut R, n: usize) -> Vec<S> {
    (0..n).map(|_| S::random(rng)).collect()
}

pub fn nonzero_vector<S: Scalar, R: Rng + ?Sized>(rng: &mut R, n: usize) -> Vec<S> {
    assert!(n > 0);
    loop {
        let v = vector(rng, n);
        if !is_zero_vector(&v) {
            return v;
        }
    }
}

/// Random vector of `s`, as a combination of its basis.
pub fn vector_in<S: Scalar, R: Rng + ?Sized>(rng: &mut R, s: &Subspace<S>) -> Vec<S> {
    let coeffs: Vec<S> = vector(rng, s.dim());
    let mut v = vec![S::zero(); s.ambient_dim()];
    for (c, row) in coeffs.iter().zip(s.basis_vectors()) {
        for (x, r) in v.iter_mut().zip(row) {
            *x = x.clone() + c.clone() * r;
        }
    }
    v
}

pub fn matrix<S: Scalar, R: Rng + ?Sized>(rng: &mut R, rows: usize, cols: usize) -> Matrix<S> {
    Matrix::from_vec(rows, cols, vector(rng, rows * cols)).expect("entry count matches shape")
}

pub fn invertible_matrix<S: Scalar, R: Rng + ?Sized>(rng: &mut R, n: usize) -> Matrix<S> {
    loop {
        let rows: Vec<Vec<S>> = (0..n).map(|_| vector(rng, n)).collect();
        let m = Matrix::from_rows(rows, n).expect("square");
        if m.rank() == n {
            return m;
        }
    }
}

pub fn subspace<S: Scalar, R: Rng + ?Sized>(rng: &mut R, ambient: usize, dim: usize) -> Subspace<S> {
    assert!(dim <= ambient);
    loop {
        let rows: Vec<Vec<S>> = (0..dim).map(|_| vector(rng, ambient)).collect();
        let s = Subspace::span_of(&rows, ambient).expect("rows have ambient length");
        if s.dim() == dim {
            return s;
        }
    }
}

/// Random composition of `n` into positive parts.
pub fn composition<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Vec<usize> {
    let mut parts = Vec::new();
    let mut run = 1;
    for _ in 1..n {
        if rng.random_bool(0.5) {
            parts.push(run);
            run = 1;
        } else {
            run += 1;
        }
    }
    if n > 0 {
        parts.push(run);
    }
    parts
}

/// A nest with the given atom dimensions, in a random basis.
pub fn nest_with_atoms<S: Scalar, R: Rng + ?Sized>(rng: &mut R, atoms: &[usize]) -> Nest<S> {
    let n: usize = atoms.iter().sum();
    let g: Matrix<S> = invertible_matrix(rng, n);
    let basis = g.row_vectors();
    let mut chain = Vec::new();
    let mut k = 0;
    for &d in atoms {
        k += d;
        chain.push(Subspace::span_of(&basis[..k], n).expect("rows have ambient length"));
    }
    Nest::new(n, chain).expect("prefix spans form a chain")
}

/// A nest with random atom structure in a random basis.
pub fn nest<S: Scalar, R: Rng + ?Sized>(rng: &mut R, n: usize) -> Nest<S> {
    let atoms = composition(rng, n);
    nest_with_atoms(rng, &atoms)
}

/// Random linear combination of `basis`.
pub fn combination<S: Scalar, R: Rng + ?Sized>(rng: &mut R, basis: &[Matrix<S>], n: usize) -> Matrix<S> {
    let mut acc = Matrix::zeros(n, n);
    for b in basis {
        let c = S::random(rng);
        if !c.is_zero() {
            acc = &acc + &b.scale(&c);
        }
    }
    acc
}

pub fn shuffle<T, R: Rng + ?Sized>(rng: &mut R, items: &mut [T]) {
    items.shuffle(rng);
}
