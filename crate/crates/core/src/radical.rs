//! The strictly triangular ideal `A_-`, its local nilpotence, and the
//! Jacobson radical of a finite nest algebra.
//!
//! For a finite chain `M_0 ⊂ ... ⊂ M_k` the pointwise condition
//! `T x ∈ N(x)_-` is equivalent to the chain shift `T M_i ⊆ M_{i-1}`, which is
//! what the basis computation uses. The radical itself is computed
//! independently as the kernel of the trace form `(S, T) ↦ tr(S T)` on
//! `Alg N`, which characterizes the radical of a unital matrix algebra in
//! characteristic zero.

use crate::algebra::{
    alg_basis, check_square, invariance_kernel, require_in_alg, AlgebraBasis, AlgebraKind, RankOneOp,
};
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::nest::Nest;
use crate::random;
use crate::scalar::{FieldDesc, Scalar};
use crate::subspace::{Functional, Subspace};

pub fn strict_ideal_basis<S: Scalar>(nest: &Nest<S>) -> AlgebraBasis<S> {
    let n = nest.ambient_dim();
    let chain = nest.chain();
    let pairs: Vec<(Subspace<S>, &Subspace<S>)> = chain.windows(2).map(|w| (w[0].annihilator(), &w[1])).collect();
    AlgebraBasis { nest: nest.clone(), kind: AlgebraKind::StrictIdeal, basis: invariance_kernel(n, &pairs) }
}

/// `Σ_{i<j} d_i d_j`.
pub fn strict_dim_formula(atoms: &[usize]) -> usize {
    let total: usize = atoms.iter().sum();
    let squares: usize = atoms.iter().map(|d| d * d).sum();
    (total * total - squares) / 2
}

/// `Σ d_i²`, the dimension of `Alg N / A_-`.
pub fn quotient_dim_formula(atoms: &[usize]) -> usize {
    atoms.iter().map(|d| d * d).sum()
}

pub fn in_strict_ideal<S: Scalar>(nest: &Nest<S>, t: &Matrix<S>) -> Result<bool> {
    check_square(t, nest.ambient_dim())?;
    Ok(nest.chain().windows(2).all(|w| w[1].image(t).leq(&w[0]).expect("same ambient")))
}

/// The pointwise definition `T x ∈ N(x)_-`, checked on the given nonzero vectors.
pub fn in_strict_ideal_pointwise<S: Scalar>(nest: &Nest<S>, t: &Matrix<S>, xs: &[Vec<S>]) -> Result<bool> {
    check_square(t, nest.ambient_dim())?;
    for x in xs {
        if !nest.principal_pred(x)?.contains_vector(&t.mul_vec(x))? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Least `k` with `t^k = 0`, or `None` when `t` is not nilpotent.
pub fn nilpotency_index<S: Scalar>(nest: &Nest<S>, t: &Matrix<S>) -> Result<Option<usize>> {
    require_in_alg(nest, t)?;
    Ok(matrix_nilpotency(t))
}

fn matrix_nilpotency<S: Scalar>(t: &Matrix<S>) -> Option<usize> {
    let n = t.rows();
    let mut power = t.clone();
    for k in 1..=n.max(1) {
        if power.is_zero() {
            return Some(k);
        }
        power = power.matmul(t);
    }
    None
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuasiInverse<S: Scalar> {
    /// `(1 - a t)^{-1}`.
    pub inverse: Matrix<S>,
    /// Least `k` with `(a t)^k = 0`; the series has `k` terms including `1`.
    pub series_length: usize,
}

/// `S = 1 + Σ (a t)^n`, a finite sum because `a t ∈ A_-` is nilpotent.
pub fn quasi_inverse<S: Scalar>(nest: &Nest<S>, a: &Matrix<S>, t: &Matrix<S>) -> Result<QuasiInverse<S>> {
    require_in_alg(nest, a)?;
    if !in_strict_ideal(nest, t)? {
        return Err(Error::NotInStrictIdeal);
    }
    let (inverse, series_length) = geometric_series(&a.matmul(t))
        .ok_or_else(|| Error::Internal("product with the strict ideal is not nilpotent".into()))?;
    Ok(QuasiInverse { inverse, series_length })
}

/// `1 + q + q² + ...` for nilpotent `q`, with the nilpotency index.
pub(crate) fn geometric_series<S: Scalar>(q: &Matrix<S>) -> Option<(Matrix<S>, usize)> {
    let n = q.rows();
    let mut sum = Matrix::identity(n);
    let mut power = q.clone();
    let mut k = 1;
    while !power.is_zero() {
        if k > n {
            return None;
        }
        sum = &sum + &power;
        power = power.matmul(q);
        k += 1;
    }
    Some((sum, k))
}

/// Trace-form kernel `{T ∈ Alg N : tr(T S) = 0 for all S ∈ Alg N}`.
///
/// Only sound in characteristic zero; prime fields are rejected.
pub fn radical_basis_oracle<S: Scalar>(nest: &Nest<S>) -> Result<AlgebraBasis<S>> {
    if S::field() != FieldDesc::Rationals {
        return Err(Error::UnsupportedField(S::field()));
    }
    let alg = alg_basis(nest);
    let d = alg.dim();
    let n = nest.ambient_dim();
    let gram = Matrix::from_fn(d, d, |i, j| trace_of_product(&alg.basis[i], &alg.basis[j]));
    let kernel = gram.kernel_basis();
    let members: Vec<Matrix<S>> = (0..kernel.rows())
        .map(|r| {
            kernel.row(r).iter().zip(&alg.basis).fold(Matrix::zeros(n, n), |acc, (c, b)| {
                if c.is_zero() {
                    acc
                } else {
                    &acc + &b.scale(c)
                }
            })
        })
        .collect();
    Ok(AlgebraBasis::from_span(nest.clone(), AlgebraKind::Radical, &members))
}

/// `tr(A B)` without forming the product.
fn trace_of_product<S: Scalar>(a: &Matrix<S>, b: &Matrix<S>) -> S {
    let n = a.rows();
    let mut acc = S::zero();
    for i in 0..n {
        for j in 0..n {
            let x = a.get(i, j);
            if !x.is_zero() {
                acc = acc + x.clone() * b.get(j, i).clone();
            }
        }
    }
    acc
}

/// Necessary-condition sampler for radical membership: `1 - A t` and
/// `1 - t A` must be invertible for every basis element of `Alg N`, for
/// `trials` random combinations, and for the rank-ones `x ⊗ φ` built from
/// adapted vectors with `t x ∉ N(x)_-`. `false` proves `t ∉ Rad`; `true` is
/// only consistent with membership.
pub fn raddef_probe<S: Scalar>(nest: &Nest<S>, t: &Matrix<S>, trials: usize, seed: u64) -> Result<bool> {
    require_in_alg(nest, t)?;
    let n = nest.ambient_dim();
    let alg = alg_basis(nest);
    let mut rng = random::seeded(seed);
    let mut candidates = alg.basis.clone();
    candidates.extend((0..trials).map(|_| random::combination(&mut rng, &alg.basis, n)));
    for (_, x) in nest.adapted_vectors() {
        let tx = t.mul_vec(&x);
        let pred = nest.principal_pred(&x)?;
        if !pred.contains_vector(&tx)? {
            candidates.push(RankOneOp::new(x, pred.separating_functional(&tx)?)?.matrix);
        }
    }
    let identity = Matrix::identity(n);
    for a in &candidates {
        let left = &identity - &a.matmul(t);
        let right = &identity - &t.matmul(a);
        if left.try_invert()?.is_none() || right.try_invert()?.is_none() {
            return Ok(false);
        }
    }
    Ok(true)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExclusionWitness<S: Scalar> {
    pub x: Vec<S>,
    pub phi: Functional<S>,
    /// `x ⊗ φ`, an element of `Alg N`.
    pub rank_one: RankOneOp<S>,
    /// `1 - (x ⊗ φ) t`, which kills `x`.
    pub defect: Matrix<S>,
}

/// For `t ∈ Alg N \ A_-`, a rank-one `x ⊗ φ ∈ Alg N` making
/// `1 - (x ⊗ φ) t` singular.
pub fn radical_exclusion_witness<S: Scalar>(nest: &Nest<S>, t: &Matrix<S>) -> Result<ExclusionWitness<S>> {
    require_in_alg(nest, t)?;
    let n = nest.ambient_dim();
    for (_, x) in nest.adapted_vectors() {
        let pred = nest.principal_pred(&x)?;
        let tx = t.mul_vec(&x);
        if pred.contains_vector(&tx)? {
            continue;
        }
        let phi = pred.separating_functional(&tx)?;
        let rank_one = RankOneOp::new(x.clone(), phi.clone())?;
        let defect = &Matrix::identity(n) - &rank_one.matrix.matmul(t);
        return Ok(ExclusionWitness { x, phi, rank_one, defect });
    }
    Err(Error::InStrictIdeal)
}

/// Least `k` such that every product of `k` elements of the span is zero.
pub fn ideal_nilpotency_index<S: Scalar>(basis: &[Matrix<S>], n: usize) -> Option<usize> {
    let nest = Nest::trivial(n);
    let mut power = AlgebraBasis::from_span(nest.clone(), AlgebraKind::StrictIdeal, basis);
    for k in 1..=n + 1 {
        if power.dim() == 0 {
            return Some(k);
        }
        let products: Vec<Matrix<S>> =
            power.basis.iter().flat_map(|p| basis.iter().map(move |b| p.matmul(b))).collect();
        power = AlgebraBasis::from_span(nest.clone(), AlgebraKind::StrictIdeal, &products);
    }
    None
}

/// Whether `A x`, `x A` stay in the span of `ideal` for all basis elements.
pub fn is_two_sided_ideal<S: Scalar>(alg: &AlgebraBasis<S>, ideal: &AlgebraBasis<S>) -> bool {
    let span = ideal.as_subspace();
    alg.basis.iter().all(|a| {
        ideal.basis.iter().all(|x| {
            span.contains_vector(a.matmul(x).entries()).expect("square")
                && span.contains_vector(x.matmul(a).entries()).expect("square")
        })
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RadicalReport<S: Scalar> {
    pub nest: Nest<S>,
    pub alg_dim: usize,
    pub strict_basis: AlgebraBasis<S>,
    /// Trace-form radical; `None` over prime fields.
    pub radical_basis: Option<AlgebraBasis<S>>,
    /// Span equality of the strict ideal and the radical; `None` when the
    /// oracle was skipped.
    pub equal: Option<bool>,
    pub radical_in_strict: Option<bool>,
    /// Nilpotency index of the ideal `A_-`.
    pub nilpotency_index: usize,
    pub num_atoms: usize,
    pub strict_is_ideal: bool,
    pub expected_strict_dim: usize,
    pub quotient_dim: usize,
    pub expected_quotient_dim: usize,
}

impl<S: Scalar> RadicalReport<S> {
    /// Every structural check, plus radical equality when the oracle ran.
    pub fn passes(&self) -> bool {
        self.equal.unwrap_or(true)
            && self.radical_in_strict.unwrap_or(true)
            && self.nilpotency_index <= self.num_atoms.max(1)
            && self.strict_is_ideal
            && self.strict_basis.dim() == self.expected_strict_dim
            && self.quotient_dim == self.expected_quotient_dim
    }
}

pub fn radical_report<S: Scalar>(nest: &Nest<S>) -> RadicalReport<S> {
    let n = nest.ambient_dim();
    let atoms = nest.atom_dims();
    let alg = alg_basis(nest);
    let strict = strict_ideal_basis(nest);
    let radical = radical_basis_oracle(nest).ok();
    let equal = radical.as_ref().map(|r| r.same_span(&strict));
    let radical_in_strict = radical.as_ref().map(|r| r.as_subspace().leq(&strict.as_subspace()).expect("same ambient"));
    let nilpotency_index = ideal_nilpotency_index(&strict.basis, n).unwrap_or(usize::MAX);
    RadicalReport {
        nest: nest.clone(),
        alg_dim: alg.dim(),
        strict_is_ideal: is_two_sided_ideal(&alg, &strict),
        expected_strict_dim: strict_dim_formula(&atoms),
        quotient_dim: alg.dim() - strict.dim(),
        expected_quotient_dim: quotient_dim_formula(&atoms),
        num_atoms: nest.num_atoms(),
        strict_basis: strict,
        radical_basis: radical,
        equal,
        radical_in_strict,
        nilpotency_index,
    }
}

/// Membership verdicts for `𝒜`, `𝒜_-` and `Rad 𝒜`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Membership {
    pub in_alg: bool,
    pub in_strict: bool,
    /// `None` when the radical oracle is unavailable.
    pub in_radical: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrdsumAnalysis<S: Scalar> {
    pub summed: Nest<S>,
    /// Decided from the blocks `(A1, B; C, A2)` and the summand nests.
    pub blockwise: Membership,
    /// Decided on the summed nest directly.
    pub direct: Membership,
}

impl<S: Scalar> OrdsumAnalysis<S> {
    pub fn agrees(&self) -> bool {
        self.blockwise == self.direct
    }
}

fn radical_contains<S: Scalar>(nest: &Nest<S>, t: &Matrix<S>) -> Option<bool> {
    radical_basis_oracle(nest).ok().map(|r| r.contains(t).expect("square"))
}

pub fn ordsum_analyze<S: Scalar>(n1: &Nest<S>, n2: &Nest<S>, t: &Matrix<S>) -> Result<OrdsumAnalysis<S>> {
    let (d1, d2) = (n1.ambient_dim(), n2.ambient_dim());
    check_square(t, d1 + d2)?;
    let summed = n1.ordinal_sum(n2);
    let a1 = t.block(0, d1, 0, d1);
    let c = t.block(d1, d1 + d2, 0, d1);
    let a2 = t.block(d1, d1 + d2, d1, d1 + d2);
    let c_zero = c.is_zero();
    let in_alg = |n: &Nest<S>, m: &Matrix<S>| crate::algebra::in_alg(n, m).expect("square");
    let blockwise = Membership {
        in_alg: c_zero && in_alg(n1, &a1) && in_alg(n2, &a2),
        in_strict: c_zero && in_strict_ideal(n1, &a1)? && in_strict_ideal(n2, &a2)?,
        in_radical: match (radical_contains(n1, &a1), radical_contains(n2, &a2)) {
            (Some(r1), Some(r2)) => Some(c_zero && r1 && r2),
            _ => None,
        },
    };
    let direct = Membership {
        in_alg: in_alg(&summed, t),
        in_strict: in_strict_ideal(&summed, t)?,
        in_radical: radical_contains(&summed, t),
    };
    Ok(OrdsumAnalysis { summed, blockwise, direct })
}

/// `Rad 𝒜 = 𝒜_-` for the sum and for each summand; `None` over prime fields.
pub fn ordsum_radical_law<S: Scalar>(n1: &Nest<S>, n2: &Nest<S>) -> Option<(bool, bool, bool)> {
    let eq = |n: &Nest<S>| radical_report(n).equal;
    Some((eq(&n1.ordinal_sum(n2))?, eq(n1)?, eq(n2)?))
}
