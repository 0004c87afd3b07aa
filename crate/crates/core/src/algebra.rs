//! The nest algebra `Alg N` as an explicit space of matrices, and the
//! rank-one constructions that live inside it.
//!
//! `Alg N` is computed as the solution space of the linear constraints
//! `(M⊥ basis) · T · (M basis)ᵀ = 0` over every chain member `M`, which works
//! for arbitrary (non-coordinate) chains. The block dimension formula
//! `Σ_{i≤j} d_i d_j` is an independent check used by the tests.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::matrix::{is_zero_vector, sub_vectors, Matrix};
use crate::nest::Nest;
use crate::scalar::Scalar;
use crate::subspace::{all_subspaces, Functional, Subspace};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum AlgebraKind {
    FullAlgebra,
    StrictIdeal,
    Radical,
}

/// A basis of a subspace of `n×n` matrices attached to a nest.
///
/// Basis matrices are the rows of an RREF basis of the vectorized span, so
/// two bases of the same space are identical.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlgebraBasis<S: Scalar> {
    pub nest: Nest<S>,
    pub kind: AlgebraKind,
    pub basis: Vec<Matrix<S>>,
}

impl<S: Scalar> AlgebraBasis<S> {
    /// Canonical basis of the span of `matrices`.
    pub fn from_span(nest: Nest<S>, kind: AlgebraKind, matrices: &[Matrix<S>]) -> Self {
        let n = nest.ambient_dim();
        let span = span_of_matrices(matrices, n);
        AlgebraBasis { nest, kind, basis: unvectorize_rows(span.basis(), n) }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.nest.ambient_dim()
    }

    /// The span as a subspace of `F^(n²)` (row-major vectorization).
    pub fn as_subspace(&self) -> Subspace<S> {
        span_of_matrices(&self.basis, self.ambient_dim())
    }

    pub fn contains(&self, t: &Matrix<S>) -> Result<bool> {
        check_square(t, self.ambient_dim())?;
        self.as_subspace().contains_vector(t.entries())
    }

    /// Whether the two bases span the same space.
    pub fn same_span(&self, other: &Self) -> bool {
        self.basis == other.basis
    }
}

pub(crate) fn check_square<S: Scalar>(t: &Matrix<S>, n: usize) -> Result<()> {
    if t.rows() != n || t.cols() != n {
        return Err(Error::NotSquare { rows: t.rows(), cols: t.cols(), expected: n });
    }
    Ok(())
}

pub fn span_of_matrices<S: Scalar>(matrices: &[Matrix<S>], n: usize) -> Subspace<S> {
    let rows: Vec<Vec<S>> = matrices.iter().map(|m| m.entries().to_vec()).collect();
    Subspace::span_of(&rows, n * n).expect("matrices are n×n")
}

fn unvectorize_rows<S: Scalar>(rows: &Matrix<S>, n: usize) -> Vec<Matrix<S>> {
    (0..rows.rows()).map(|i| Matrix::from_vec(n, n, rows.row(i).to_vec()).expect("row has n² entries")).collect()
}

/// Basis of `{T : T(source) ⊆ target}` for every `(target⊥, source)` pair.
pub(crate) fn invariance_kernel<S: Scalar>(n: usize, pairs: &[(Subspace<S>, &Subspace<S>)]) -> Vec<Matrix<S>> {
    let mut constraints = Vec::new();
    for (target_perp, source) in pairs {
        for u in target_perp.basis_vectors() {
            for v in source.basis_vectors() {
                let mut row = vec![S::zero(); n * n];
                for (a, ua) in u.iter().enumerate() {
                    if ua.is_zero() {
                        continue;
                    }
                    for (b, vb) in v.iter().enumerate() {
                        row[a * n + b] = ua.clone() * vb.clone();
                    }
                }
                constraints.push(row);
            }
        }
    }
    let system = Matrix::from_rows(constraints, n * n).expect("constraint rows have n² entries");
    unvectorize_rows(&system.kernel_basis(), n)
}

pub fn alg_basis<S: Scalar>(nest: &Nest<S>) -> AlgebraBasis<S> {
    let n = nest.ambient_dim();
    let pairs: Vec<(Subspace<S>, &Subspace<S>)> =
        nest.chain().iter().filter(|m| !m.is_zero() && !m.is_full()).map(|m| (m.annihilator(), m)).collect();
    AlgebraBasis { nest: nest.clone(), kind: AlgebraKind::FullAlgebra, basis: invariance_kernel(n, &pairs) }
}

/// `Σ_{i≤j} d_i d_j` over the atom dimensions.
pub fn alg_dim_formula(atoms: &[usize]) -> usize {
    let total: usize = atoms.iter().sum();
    let squares: usize = atoms.iter().map(|d| d * d).sum();
    (total * total + squares) / 2
}

/// Index of the first chain member `t` does not leave invariant.
pub fn first_violated_member<S: Scalar>(nest: &Nest<S>, t: &Matrix<S>) -> Result<Option<usize>> {
    check_square(t, nest.ambient_dim())?;
    Ok(nest.chain().iter().position(|m| !m.is_invariant_under(t)))
}

pub fn in_alg<S: Scalar>(nest: &Nest<S>, t: &Matrix<S>) -> Result<bool> {
    Ok(first_violated_member(nest, t)?.is_none())
}

pub(crate) fn require_in_alg<S: Scalar>(nest: &Nest<S>, t: &Matrix<S>) -> Result<()> {
    match first_violated_member(nest, t)? {
        Some(member) => Err(Error::NotInAlgebra { member }),
        None => Ok(()),
    }
}

/// The operator `x ⊗ φ : y ↦ φ(y) x`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RankOneOp<S: Scalar> {
    pub x: Vec<S>,
    pub phi: Functional<S>,
    pub matrix: Matrix<S>,
}

impl<S: Scalar> RankOneOp<S> {
    pub fn new(x: Vec<S>, phi: Functional<S>) -> Result<Self> {
        if x.len() != phi.ambient_dim() {
            return Err(Error::DimensionMismatch { expected: x.len(), found: phi.ambient_dim() });
        }
        if is_zero_vector(&x) || phi.is_zero() {
            return Err(Error::ZeroVector);
        }
        let n = x.len();
        let matrix = Matrix::from_fn(n, n, |i, j| x[i].clone() * phi.coeffs()[j].clone());
        Ok(RankOneOp { x, phi, matrix })
    }

    /// `x ⊗ φ` is idempotent exactly when `φ(x) = 1`.
    pub fn is_idempotent(&self) -> bool {
        self.phi.apply(&self.x).is_one()
    }

    pub fn apply(&self, y: &[S]) -> Vec<S> {
        let c = self.phi.apply(y);
        self.x.iter().map(|xi| c.clone() * xi.clone()).collect()
    }
}

/// `x ⊗ φ ∈ Alg N` iff `N(x)_- ⊆ ker φ`.
pub fn rank_one_in_alg<S: Scalar>(nest: &Nest<S>, r: &RankOneOp<S>) -> Result<bool> {
    let pred = nest.principal_pred(&r.x)?;
    Ok(pred.basis_vectors().iter().all(|v| r.phi.apply(v).is_zero()))
}

/// A rank-one `R ∈ Alg N` with `R x = y`, for `y ∈ N(x)`.
pub fn transporter<S: Scalar>(nest: &Nest<S>, x: &[S], y: &[S]) -> Result<RankOneOp<S>> {
    if is_zero_vector(y) {
        return Err(Error::ZeroVector);
    }
    let px = nest.principal(x)?;
    if !px.contains_vector(y)? {
        return Err(Error::OutsidePrincipal { vector: crate::subspace::format_vector(y) });
    }
    let phi = nest.principal_pred(y)?.separating_functional(x)?;
    RankOneOp::new(y.to_vec(), phi)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdempotentDecomposition<S: Scalar> {
    pub idempotent: Matrix<S>,
    pub parts: Vec<RankOneOp<S>>,
}

/// An idempotent `P ∈ Alg N` with range `m`, written as a sum of `dim m`
/// pairwise-annihilating rank-one idempotents of `Alg N`.
///
/// Built by induction on `dim m`: split off the last RREF basis vector `y`,
/// decompose the pivot-greedy complement `M#`, then add `x ⊗ φ` with
/// `x = y - P# y` and `φ` separating `x` from `N(x)_- + M#`.
pub fn idempotent_onto<S: Scalar>(nest: &Nest<S>, m: &Subspace<S>) -> Result<IdempotentDecomposition<S>> {
    if m.ambient_dim() != nest.ambient_dim() {
        return Err(Error::DimensionMismatch { expected: nest.ambient_dim(), found: m.ambient_dim() });
    }
    if m.is_zero() {
        return Err(Error::ZeroVector);
    }
    let n = nest.ambient_dim();
    let basis = m.basis_vectors();
    let y = basis.last().expect("m is nonzero").clone();
    if m.dim() == 1 {
        let phi = nest.principal_pred(&y)?.separating_functional(&y)?;
        let part = RankOneOp::new(y, phi)?;
        return Ok(IdempotentDecomposition { idempotent: part.matrix.clone(), parts: vec![part] });
    }
    let line = Subspace::span_of(std::slice::from_ref(&y), n)?;
    let m_sharp = line.complement_within(m)?;
    let IdempotentDecomposition { idempotent: p_sharp, mut parts } = idempotent_onto(nest, &m_sharp)?;
    let x = sub_vectors(&y, &p_sharp.mul_vec(&y));
    let excluded = nest.principal_pred(&x)?.join(&m_sharp)?;
    let phi = excluded.separating_functional(&x).map_err(|_| Error::Internal("x lies in N(x)_- + ran P#".into()))?;
    let part = RankOneOp::new(x, phi)?;
    let idempotent = &p_sharp + &part.matrix;
    parts.push(part);
    Ok(IdempotentDecomposition { idempotent, parts })
}

/// `t = Σ P_k t` with `P = Σ P_k` the idempotent onto `ran t`; every summand
/// is a rank-one element of `Alg N` and there are exactly `rank t` of them.
pub fn rank_decompose<S: Scalar>(nest: &Nest<S>, t: &Matrix<S>) -> Result<Vec<Matrix<S>>> {
    require_in_alg(nest, t)?;
    if t.is_zero() {
        return Err(Error::ZeroOperator);
    }
    let range = Subspace::column_space(t);
    let decomposition = idempotent_onto(nest, &range)?;
    let summands: Vec<Matrix<S>> =
        decomposition.parts.iter().map(|p| p.matrix.matmul(t)).filter(|s| !s.is_zero()).collect();
    if summands.len() != range.dim() {
        return Err(Error::Internal(format!("{} nonzero summands for rank {}", summands.len(), range.dim())));
    }
    Ok(summands)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Approximant<S: Scalar> {
    pub matrix: Matrix<S>,
    pub summands: Vec<Matrix<S>>,
}

/// `S = Σ t P_k`, agreeing with `t` on `span f`.
pub fn strict_approximant<S: Scalar>(nest: &Nest<S>, t: &Matrix<S>, f: &[Vec<S>]) -> Result<Approximant<S>> {
    require_in_alg(nest, t)?;
    let n = nest.ambient_dim();
    let span = Subspace::span_of(f, n)?;
    if span.is_zero() {
        return Ok(Approximant { matrix: Matrix::zeros(n, n), summands: Vec::new() });
    }
    let decomposition = idempotent_onto(nest, &span)?;
    let summands: Vec<Matrix<S>> =
        decomposition.parts.iter().map(|p| t.matmul(&p.matrix)).filter(|s| !s.is_zero()).collect();
    let matrix = summands.iter().fold(Matrix::zeros(n, n), |acc, s| &acc + s);
    Ok(Approximant { matrix, summands })
}

/// Largest field order `q` with `q^n ≤ ENUMERATION_LIMIT` decides what
/// [`invariant_lattice`] accepts: GF(2) and GF(3) up to dimension 4.
pub const ENUMERATION_LIMIT: u64 = 81;
pub const ENUMERATION_MAX_DIM: usize = 4;

pub fn check_enumeration_bound<S: Scalar>(ambient: usize) -> Result<()> {
    let q = S::field().order().ok_or(Error::UnsupportedField(S::field()))?;
    if ambient > ENUMERATION_MAX_DIM || q.saturating_pow(ambient as u32) > ENUMERATION_LIMIT {
        return Err(Error::BoundExceeded(format!(
            "enumerating subspaces of {}^{ambient} exceeds {ENUMERATION_LIMIT} vectors",
            S::field()
        )));
    }
    Ok(())
}

/// `Lat(ops)`: every subspace of `F_q^n` invariant under all of `ops`, in
/// canonical order.
pub fn invariant_lattice<S: Scalar>(ops: &[Matrix<S>], ambient: usize) -> Result<Vec<Subspace<S>>> {
    check_enumeration_bound::<S>(ambient)?;
    for op in ops {
        check_square(op, ambient)?;
    }
    Ok(all_subspaces::<S>(ambient)?.into_iter().filter(|s| ops.iter().all(|op| s.is_invariant_under(op))).collect())
}

/// Every rank-one operator `x ⊗ φ` of `Alg N` over a small finite field,
/// deduplicated by matrix.
pub fn rank_one_generators<S: Scalar>(nest: &Nest<S>) -> Result<Vec<Matrix<S>>> {
    let n = nest.ambient_dim();
    check_enumeration_bound::<S>(n)?;
    let vectors: Vec<Vec<S>> =
        Subspace::<S>::full(n).elements().expect("finite field").into_iter().filter(|v| !is_zero_vector(v)).collect();
    let mut out = BTreeSet::new();
    for x in &vectors {
        for phi in &vectors {
            let r = RankOneOp::new(x.clone(), Functional::new(phi.clone()))?;
            if rank_one_in_alg(nest, &r)? {
                out.insert(r.matrix);
            }
        }
    }
    Ok(out.into_iter().collect())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReflexivityWitness<S: Scalar> {
    pub rank_one: RankOneOp<S>,
    pub x: Vec<S>,
}

impl<S: Scalar> ReflexivityWitness<S> {
    /// `R x`, which must lie outside the certified subspace.
    pub fn image(&self) -> Vec<S> {
        self.rank_one.matrix.mul_vec(&self.x)
    }
}

/// For `m ∉ N`, a rank-one `R ∈ Alg N` and `x ∈ m` with `R x ∉ m`.
///
/// Searches basis vectors of `m`, then their pairwise sums; for each
/// candidate `x` with `N(x) ⊄ m`, transports `x` onto a basis vector of
/// `N(x)` outside `m`.
pub fn reflexivity_witness<S: Scalar>(nest: &Nest<S>, m: &Subspace<S>) -> Result<ReflexivityWitness<S>> {
    if nest.contains_member(m) {
        return Err(Error::MemberOfNest);
    }
    if m.is_zero() {
        return Err(Error::ZeroVector);
    }
    let basis = m.basis_vectors();
    let sums = basis
        .iter()
        .enumerate()
        .flat_map(|(i, a)| basis[i + 1..].iter().map(move |b| crate::matrix::add_vectors(a, b)));
    for x in basis.iter().cloned().chain(sums) {
        if is_zero_vector(&x) {
            continue;
        }
        let px = nest.principal(&x)?;
        for y in px.basis_vectors() {
            if !m.contains_vector(&y)? {
                let rank_one = transporter(nest, &x, &y)?;
                return Ok(ReflexivityWitness { rank_one, x });
            }
        }
    }
    Err(Error::Internal("no reflexivity witness found for a non-member".into()))
}

/// Basis of the principal left ideal `A·a = {b a : b ∈ A}`.
pub fn left_ideal_basis<S: Scalar>(alg: &AlgebraBasis<S>, a: &Matrix<S>) -> Vec<Matrix<S>> {
    let products: Vec<Matrix<S>> = alg.basis.iter().map(|b| b.matmul(a)).collect();
    AlgebraBasis::from_span(alg.nest.clone(), alg.kind, &products).basis
}

/// Basis of the principal right ideal `a·A = {a b : b ∈ A}`.
pub fn right_ideal_basis<S: Scalar>(alg: &AlgebraBasis<S>, a: &Matrix<S>) -> Vec<Matrix<S>> {
    let products: Vec<Matrix<S>> = alg.basis.iter().map(|b| a.matmul(b)).collect();
    AlgebraBasis::from_span(alg.nest.clone(), alg.kind, &products).basis
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::unit_vector;
    use crate::scalar::{Gf2, Gf3, Rational};
    use num_traits::Zero;

    fn qv(xs: &[i64]) -> Vec<Rational> {
        xs.iter().map(|&x| Rational::from_i64(x)).collect()
    }

    fn qm(rows: &[&[i64]]) -> Matrix<Rational> {
        Matrix::from_rows(rows.iter().map(|r| qv(r)).collect(), rows.len()).unwrap()
    }

    fn e(n: usize, i: usize) -> Vec<Rational> {
        unit_vector(n, i)
    }

    fn e_star(n: usize, i: usize) -> Functional<Rational> {
        Functional::new(unit_vector(n, i))
    }

    #[test]
    fn alg_basis_dimensions() {
        assert_eq!(alg_basis(&Nest::<Rational>::trivial(2)).dim(), 4);
        let flag = alg_basis(&Nest::<Rational>::flag(3));
        assert_eq!(flag.dim(), 6);
        assert_eq!(alg_dim_formula(&[1, 1, 1]), 6);
        for b in &flag.basis {
            for i in 0..3 {
                for j in 0..i {
                    assert!(b.get(i, j).is_zero(), "flag algebra is upper triangular");
                }
            }
        }
        let a = Nest::<Rational>::from_atoms(&[2, 1]).unwrap();
        assert_eq!(alg_basis(&a).dim(), 7);
        assert_eq!(alg_dim_formula(&[2, 1]), 7);
    }

    #[test]
    fn in_alg_examples() {
        let flag = Nest::<Rational>::flag(2);
        assert!(in_alg(&flag, &Matrix::identity(2)).unwrap());
        assert!(!in_alg(&flag, &Matrix::unit(2, 1, 0)).unwrap());
        assert_eq!(first_violated_member(&flag, &Matrix::unit(2, 1, 0)).unwrap(), Some(1));
        assert!(matches!(in_alg(&flag, &Matrix::identity(3)), Err(Error::NotSquare { .. })));
    }

    #[test]
    fn rank_one_examples() {
        let r = RankOneOp::new(e(2, 0), e_star(2, 0)).unwrap();
        assert_eq!(r.matrix, Matrix::unit(2, 0, 0));
        assert!(r.is_idempotent());
        let r = RankOneOp::new(e(2, 0), e_star(2, 1)).unwrap();
        assert_eq!(r.matrix, Matrix::unit(2, 0, 1));
        assert!(!r.is_idempotent());
        assert_eq!(RankOneOp::new(qv(&[0, 0]), e_star(2, 0)), Err(Error::ZeroVector));
        assert_eq!(RankOneOp::new(e(2, 0), Functional::new(qv(&[0, 0]))), Err(Error::ZeroVector));
    }

    #[test]
    fn rank_one_membership_examples() {
        let flag = Nest::<Rational>::flag(3);
        assert!(rank_one_in_alg(&flag, &RankOneOp::new(e(3, 0), e_star(3, 1)).unwrap()).unwrap());
        assert!(!rank_one_in_alg(&flag, &RankOneOp::new(e(3, 1), e_star(3, 0)).unwrap()).unwrap());
    }

    #[test]
    fn rank_one_membership_matches_in_alg_exhaustively_gf3() {
        // All scaled coordinate rank-ones a·e_i ⊗ b·e_j* on the flag of GF(3)^2.
        let flag = Nest::<Gf3>::flag(2);
        let mut checked = 0;
        for i in 0..2 {
            for j in 0..2 {
                for a in 1..3 {
                    for b in 1..3 {
                        let mut x = vec![Gf3::new(0); 2];
                        x[i] = Gf3::new(a);
                        let mut phi = vec![Gf3::new(0); 2];
                        phi[j] = Gf3::new(b);
                        let r = RankOneOp::new(x, Functional::new(phi)).unwrap();
                        assert_eq!(rank_one_in_alg(&flag, &r).unwrap(), in_alg(&flag, &r.matrix).unwrap());
                        checked += 1;
                    }
                }
            }
        }
        // Every nonzero x and φ in GF(3)^2 as well: 8 × 8 pairs.
        let all: Vec<Vec<Gf3>> =
            Subspace::<Gf3>::full(2).elements().unwrap().into_iter().filter(|v| !is_zero_vector(v)).collect();
        for x in &all {
            for phi in &all {
                let r = RankOneOp::new(x.clone(), Functional::new(phi.clone())).unwrap();
                assert_eq!(rank_one_in_alg(&flag, &r).unwrap(), in_alg(&flag, &r.matrix).unwrap());
                checked += 1;
            }
        }
        assert_eq!(checked, 16 + 64);
    }

    #[test]
    fn transporter_examples() {
        let flag = Nest::<Rational>::flag(3);
        let r = transporter(&flag, &e(3, 1), &e(3, 0)).unwrap();
        assert_eq!(r.matrix, Matrix::unit(3, 0, 1));
        let x = qv(&[1, 2, 0]);
        let r = transporter(&flag, &x, &x).unwrap();
        assert!(r.is_idempotent());
        assert_eq!(r.apply(&x), x);
        assert!(matches!(transporter(&flag, &e(3, 0), &e(3, 2)), Err(Error::OutsidePrincipal { .. })));
    }

    #[test]
    fn idempotent_examples() {
        let flag = Nest::<Rational>::flag(3);
        let d = idempotent_onto(&flag, &Subspace::coordinate(3, 1)).unwrap();
        assert_eq!(d.idempotent, Matrix::unit(3, 0, 0));
        assert_eq!(d.parts.len(), 1);

        let d = idempotent_onto(&flag, &Subspace::full(3)).unwrap();
        assert_eq!(d.idempotent, Matrix::identity(3));
        assert_eq!(d.parts.len(), 3);
        for p in &d.parts {
            assert!(p.is_idempotent());
            assert!(in_alg(&flag, &p.matrix).unwrap());
        }

        let x = qv(&[1, 1, 1]);
        let line = Subspace::span_of(std::slice::from_ref(&x), 3).unwrap();
        let d = idempotent_onto(&flag, &line).unwrap();
        let part = &d.parts[0];
        assert!(part.is_idempotent());
        assert!(flag.principal_pred(&part.x).unwrap().leq(&part.phi.kernel()).unwrap());

        assert_eq!(idempotent_onto(&flag, &Subspace::zero(3)), Err(Error::ZeroVector));
    }

    #[test]
    fn rank_decompose_examples() {
        let flag = Nest::<Rational>::flag(3);
        let t = Matrix::unit(3, 0, 1);
        assert_eq!(rank_decompose(&flag, &t).unwrap(), vec![t.clone()]);

        let t = qm(&[&[0, 1, 1], &[0, 0, 1], &[0, 0, 0]]);
        let parts = rank_decompose(&flag, &t).unwrap();
        assert_eq!(parts.len(), 2);
        let sum = parts.iter().fold(Matrix::zeros(3, 3), |acc, p| &acc + p);
        assert_eq!(sum, t);
        for p in &parts {
            assert_eq!(p.rank(), 1);
            assert!(in_alg(&flag, p).unwrap());
        }

        assert_eq!(rank_decompose(&flag, &Matrix::identity(3)).unwrap().len(), 3);
        assert_eq!(rank_decompose(&flag, &Matrix::zeros(3, 3)), Err(Error::ZeroOperator));
        assert_eq!(rank_decompose(&flag, &Matrix::unit(3, 2, 0)), Err(Error::NotInAlgebra { member: 1 }));
    }

    #[test]
    fn strict_approximant_examples() {
        let flag = Nest::<Rational>::flag(4);
        let t = qm(&[&[1, 2, 0, -1], &[0, 3, 1, 1], &[0, 0, 2, 5], &[0, 0, 0, 7]]);
        let all: Vec<Vec<Rational>> = (0..4).map(|i| e(4, i)).collect();
        assert_eq!(strict_approximant(&flag, &t, &all).unwrap().matrix, t);
        assert!(strict_approximant(&flag, &t, &[]).unwrap().matrix.is_zero());

        let f = vec![e(4, 0), e(4, 1)];
        let s = strict_approximant(&flag, &t, &f).unwrap();
        for x in &f {
            assert_eq!(s.matrix.mul_vec(x), t.mul_vec(x));
        }
        assert!(s.summands.len() <= 2);
        for p in &s.summands {
            assert_eq!(p.rank(), 1);
            assert!(in_alg(&flag, p).unwrap());
        }
        assert!(strict_approximant(&flag, &Matrix::unit(4, 3, 0), &f).is_err());
    }

    #[test]
    fn invariant_lattice_examples() {
        assert_eq!(invariant_lattice::<Gf2>(&[], 4).unwrap().len(), 67);
        assert_eq!(invariant_lattice(&[Matrix::<Gf2>::identity(4)], 4).unwrap().len(), 67);
        let flag = Nest::<Gf2>::flag(3);
        let mut lat = invariant_lattice(&alg_basis(&flag).basis, 3).unwrap();
        lat.sort_by_key(|s| s.dim());
        assert_eq!(lat, flag.chain());
        assert!(matches!(invariant_lattice::<Gf2>(&[], 5), Err(Error::BoundExceeded(_))));
        assert!(matches!(invariant_lattice::<Rational>(&[], 2), Err(Error::UnsupportedField(_))));
    }

    #[test]
    fn reflexivity_witness_examples() {
        let flag = Nest::<Rational>::flag(2);
        let m = Subspace::span_of(&[e(2, 1)], 2).unwrap();
        let w = reflexivity_witness(&flag, &m).unwrap();
        assert_eq!(w.x, e(2, 1));
        assert_eq!(w.rank_one, transporter(&flag, &e(2, 1), &e(2, 0)).unwrap());
        assert_eq!(w.image(), e(2, 0));
        assert!(!m.contains_vector(&w.image()).unwrap());

        let m = Subspace::span_of(&[qv(&[1, 1])], 2).unwrap();
        let w = reflexivity_witness(&flag, &m).unwrap();
        assert!(m.contains_vector(&w.x).unwrap());
        assert!(!m.contains_vector(&w.image()).unwrap());
        assert!(Subspace::coordinate(2, 1).contains_vector(&w.image()).unwrap());
        assert!(in_alg(&flag, &w.rank_one.matrix).unwrap());

        assert_eq!(reflexivity_witness(&flag, &Subspace::coordinate(2, 1)), Err(Error::MemberOfNest));
    }
}
