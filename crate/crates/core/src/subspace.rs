//! Subspaces of `F^n` in canonical form.
//!
//! A subspace is stored as the nonzero rows of its RREF basis, so equality of
//! subspaces is structural equality. The dual space is identified with the
//! coordinate space `F^n`: a functional is its coefficient vector and an
//! annihilator is again a [`Subspace`] of the same ambient dimension.

use std::fmt;

use crate::error::{Error, Result};
use crate::matrix::{dot, is_zero_vector, Matrix};
use crate::scalar::Scalar;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Subspace<S> {
    ambient: usize,
    basis: Matrix<S>,
}

/// A linear functional `y ↦ Σ coeffs[i] * y[i]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Functional<S> {
    coeffs: Vec<S>,
}

impl<S: Scalar> Functional<S> {
    pub fn new(coeffs: Vec<S>) -> Self {
        Functional { coeffs }
    }

    pub fn coeffs(&self) -> &[S] {
        &self.coeffs
    }

    pub fn ambient_dim(&self) -> usize {
        self.coeffs.len()
    }

    pub fn apply(&self, v: &[S]) -> S {
        dot(&self.coeffs, v)
    }

    pub fn is_zero(&self) -> bool {
        is_zero_vector(&self.coeffs)
    }

    /// `ker φ` as a subspace.
    pub fn kernel(&self) -> Subspace<S> {
        Subspace::span_of(std::slice::from_ref(&self.coeffs), self.coeffs.len())
            .expect("functional has ambient length")
            .annihilator()
    }
}

impl<S: Scalar> Subspace<S> {
    pub fn zero(ambient: usize) -> Self {
        Subspace { ambient, basis: Matrix::zeros(0, ambient) }
    }

    pub fn full(ambient: usize) -> Self {
        Subspace { ambient, basis: Matrix::identity(ambient) }
    }

    pub fn span_of(vectors: &[Vec<S>], ambient: usize) -> Result<Self> {
        let m = Matrix::from_rows(vectors.to_vec(), ambient)?;
        Ok(Self::from_rows_matrix(&m))
    }

    /// Span of the rows of `m`.
    pub fn from_rows_matrix(m: &Matrix<S>) -> Self {
        Subspace { ambient: m.cols(), basis: m.row_space_basis() }
    }

    /// Span of the columns of `m`, i.e. the range of `m` as an operator.
    pub fn column_space(m: &Matrix<S>) -> Self {
        Self::from_rows_matrix(&m.transpose())
    }

    /// Span of the first `k` standard basis vectors.
    pub fn coordinate(ambient: usize, k: usize) -> Self {
        Subspace { ambient, basis: Matrix::from_fn(k, ambient, |i, j| if i == j { S::one() } else { S::zero() }) }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    pub fn is_full(&self) -> bool {
        self.dim() == self.ambient
    }

    /// RREF basis, one vector per row.
    pub fn basis(&self) -> &Matrix<S> {
        &self.basis
    }

    pub fn basis_vectors(&self) -> Vec<Vec<S>> {
        self.basis.row_vectors()
    }

    fn check_ambient(&self, other: &Self) -> Result<()> {
        if self.ambient != other.ambient {
            return Err(Error::DimensionMismatch { expected: self.ambient, found: other.ambient });
        }
        Ok(())
    }

    pub fn join(&self, other: &Self) -> Result<Self> {
        self.check_ambient(other)?;
        Ok(Self::from_rows_matrix(&self.basis.vstack(&other.basis)))
    }

    /// Intersection, as the common kernel of both annihilator constraint systems.
    pub fn meet(&self, other: &Self) -> Result<Self> {
        self.check_ambient(other)?;
        let constraints = self.annihilator().basis.vstack(&other.annihilator().basis);
        Ok(Subspace { ambient: self.ambient, basis: constraints.kernel_basis() })
    }

    pub fn contains_vector(&self, v: &[S]) -> Result<bool> {
        if v.len() != self.ambient {
            return Err(Error::DimensionMismatch { expected: self.ambient, found: v.len() });
        }
        Ok(is_zero_vector(&self.reduce(v)))
    }

    pub fn leq(&self, other: &Self) -> Result<bool> {
        self.check_ambient(other)?;
        if self.dim() > other.dim() {
            return Ok(false);
        }
        Ok((0..self.dim()).all(|i| is_zero_vector(&other.reduce(self.basis.row(i)))))
    }

    /// Remainder of `v` after elimination against the RREF basis.
    fn reduce(&self, v: &[S]) -> Vec<S> {
        let mut v = v.to_vec();
        for i in 0..self.dim() {
            let row = self.basis.row(i);
            let pivot = row.iter().position(|x| !x.is_zero()).expect("basis rows are nonzero");
            if v[pivot].is_zero() {
                continue;
            }
            let c = v[pivot].clone();
            for (x, r) in v.iter_mut().zip(row) {
                *x = x.clone() - c.clone() * r.clone();
            }
        }
        v
    }

    /// `{φ : φ(s) = 0 for all s}` in the coordinate dual.
    pub fn annihilator(&self) -> Self {
        Subspace { ambient: self.ambient, basis: self.basis.kernel_basis() }
    }

    /// A complement of `self` inside `outer`: the subspace spanned by the
    /// basis vectors of `outer`, taken in pivot order, that enlarge the span
    /// of `self`.
    pub fn complement_within(&self, outer: &Self) -> Result<Self> {
        if !self.leq(outer)? {
            return Err(Error::NotContained);
        }
        let mut current = self.clone();
        let mut chosen = Vec::new();
        for v in outer.basis_vectors() {
            if !current.contains_vector(&v)? {
                current = current.join(&Self::span_of(std::slice::from_ref(&v), self.ambient)?)?;
                chosen.push(v);
            }
        }
        Self::span_of(&chosen, self.ambient)
    }

    /// A functional with `φ(x) = 1` vanishing on `self`.
    pub fn separating_functional(&self, x: &[S]) -> Result<Functional<S>> {
        if self.contains_vector(x)? {
            return Err(Error::VectorInSubspace { vector: format_vector(x), subspace: self.to_string() });
        }
        let system = self.basis.vstack(&Matrix::from_rows(vec![x.to_vec()], self.ambient)?);
        let mut rhs = vec![S::zero(); self.dim()];
        rhs.push(S::one());
        let phi = system
            .solve(&rhs)?
            .ok_or_else(|| Error::Internal("x outside w but separating system inconsistent".into()))?;
        Ok(Functional::new(phi))
    }

    /// Whether `op` maps this subspace into itself.
    pub fn is_invariant_under(&self, op: &Matrix<S>) -> bool {
        (0..self.dim()).all(|i| is_zero_vector(&self.reduce(&op.mul_vec(self.basis.row(i)))))
    }

    /// Image of the subspace under `op`.
    pub fn image(&self, op: &Matrix<S>) -> Self {
        let rows: Vec<Vec<S>> = (0..self.dim()).map(|i| op.mul_vec(self.basis.row(i))).collect();
        Self::span_of(&rows, op.rows()).expect("image rows have ambient length")
    }

    /// Direct-sum embedding `S ↦ S ⊕ {0}` (pad `after` zeros) or
    /// `{0} ⊕ S` (pad `before` zeros).
    pub fn embed(&self, before: usize, after: usize) -> Self {
        let n = before + self.ambient + after;
        let basis = Matrix::from_fn(self.dim(), n, |i, j| {
            if j >= before && j < before + self.ambient {
                self.basis.get(i, j - before).clone()
            } else {
                S::zero()
            }
        });
        Subspace { ambient: n, basis }
    }

    /// Every vector of the subspace. Finite fields only, small dimensions.
    pub fn elements(&self) -> Option<Vec<Vec<S>>> {
        let field = S::elements()?;
        let mut out = vec![vec![S::zero(); self.ambient]];
        for i in 0..self.dim() {
            let row = self.basis.row(i);
            let mut next = Vec::with_capacity(out.len() * field.len());
            for v in &out {
                for c in &field {
                    next.push(v.iter().zip(row).map(|(a, b)| a.clone() + c.clone() * b.clone()).collect());
                }
            }
            out = next;
        }
        Some(out)
    }

    /// Canonical ordering key: dimension first, then RREF entries.
    pub fn sort_key(&self) -> (usize, &[S]) {
        (self.dim(), self.basis.entries())
    }
}

impl<S: Scalar> PartialOrd for Subspace<S> {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Canonical total order (dimension, then basis entries). Not inclusion.
impl<S: Scalar> Ord for Subspace<S> {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.ambient, self.sort_key()).cmp(&(other.ambient, other.sort_key()))
    }
}

/// Every subspace of `F^n` for a finite field, in canonical order.
///
/// Enumerates RREF matrices by choosing a pivot set and then all free entries.
pub fn all_subspaces<S: Scalar>(ambient: usize) -> Result<Vec<Subspace<S>>> {
    let field = S::elements().ok_or(Error::UnsupportedField(S::field()))?;
    let mut out = Vec::new();
    for mask in 0u64..(1 << ambient) {
        let pivots: Vec<usize> = (0..ambient).filter(|i| mask >> i & 1 == 1).collect();
        // Free slots: row r, column c > pivots[r], c not a pivot column.
        let slots: Vec<(usize, usize)> = pivots
            .iter()
            .enumerate()
            .flat_map(|(r, &p)| ((p + 1)..ambient).filter(|c| !pivots.contains(c)).map(move |c| (r, c)))
            .collect();
        let total = (field.len() as u64).pow(slots.len() as u32);
        for mut code in 0..total {
            let mut m = Matrix::zeros(pivots.len(), ambient);
            for (r, &p) in pivots.iter().enumerate() {
                m.set(r, p, S::one());
            }
            for &(r, c) in &slots {
                m.set(r, c, field[(code % field.len() as u64) as usize].clone());
                code /= field.len() as u64;
            }
            out.push(Subspace { ambient, basis: m });
        }
    }
    out.sort();
    Ok(out)
}

pub fn format_vector<S: Scalar>(v: &[S]) -> String {
    let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    format!("({})", parts.join(", "))
}

impl<S: Scalar> fmt::Display for Subspace<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.basis_vectors().iter().map(|v| format_vector(v)).collect();
        write!(f, "span{{{}}} in F^{}", parts.join(", "), self.ambient)
    }
}

impl<S: Scalar> fmt::Debug for Subspace<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::unit_vector;
    use crate::scalar::{Gf2, Gf3, Rational};

    fn qv(xs: &[i64]) -> Vec<Rational> {
        xs.iter().map(|&x| Rational::from_i64(x)).collect()
    }

    fn gv(xs: &[i64]) -> Vec<Gf2> {
        xs.iter().map(|&x| Gf2::from_i64(x)).collect()
    }

    fn qspan(vs: &[&[i64]], n: usize) -> Subspace<Rational> {
        Subspace::span_of(&vs.iter().map(|v| qv(v)).collect::<Vec<_>>(), n).unwrap()
    }

    #[test]
    fn span_examples() {
        assert!(Subspace::<Rational>::span_of(&[], 3).unwrap().is_zero());
        let s = qspan(&[&[1, 0, 0], &[1, 1, 0]], 3);
        assert_eq!(s.basis_vectors(), vec![qv(&[1, 0, 0]), qv(&[0, 1, 0])]);
        assert_eq!(qspan(&[&[1, 1, 0], &[0, 1, 1], &[1, 0, -1]], 3).dim(), 2);
        assert!(Subspace::<Rational>::span_of(&[qv(&[1, 0])], 3).is_err());
    }

    #[test]
    fn meet_join_examples() {
        let s = qspan(&[&[1, 2, 3]], 3);
        assert_eq!(s.meet(&Subspace::full(3)).unwrap(), s);
        assert_eq!(s.join(&Subspace::zero(3)).unwrap(), s);
        let e1 = qspan(&[&[1, 0]], 2);
        let e2 = qspan(&[&[0, 1]], 2);
        assert!(e1.meet(&e2).unwrap().is_zero());
        assert!(e1.join(&e2).unwrap().is_full());
        let a = qspan(&[&[1, 0, 0], &[0, 1, 0]], 3);
        let b = qspan(&[&[0, 1, 0], &[0, 0, 1]], 3);
        assert_eq!(a.meet(&b).unwrap(), qspan(&[&[0, 1, 0]], 3));
        assert!(a.meet(&Subspace::zero(2)).is_err());
    }

    #[test]
    fn containment_examples() {
        let s = qspan(&[&[1, 1, 1]], 3);
        assert!(s.contains_vector(&qv(&[0, 0, 0])).unwrap());
        assert!(Subspace::zero(3).leq(&s).unwrap());
        // GF(2): the span of (1,0,0),(0,1,0) has 4 elements; (1,1,0) is one of them.
        let w = Subspace::span_of(&[gv(&[1, 0, 0]), gv(&[0, 1, 0])], 3).unwrap();
        let elements = w.elements().unwrap();
        assert_eq!(elements.len(), 4);
        assert!(elements.contains(&gv(&[1, 1, 0])));
        assert!(w.contains_vector(&gv(&[1, 1, 0])).unwrap());
    }

    #[test]
    fn annihilator_examples() {
        assert!(Subspace::<Rational>::zero(3).annihilator().is_full());
        assert!(Subspace::<Rational>::full(3).annihilator().is_zero());
        assert_eq!(qspan(&[&[1, 0, 0]], 3).annihilator(), qspan(&[&[0, 1, 0], &[0, 0, 1]], 3));
    }

    #[test]
    fn complement_examples() {
        let s = qspan(&[&[1, 2, 0]], 3);
        assert!(s.complement_within(&s).unwrap().is_zero());
        assert_eq!(Subspace::zero(3).complement_within(&s).unwrap(), s);
        let inner = qspan(&[&[1, 1]], 2);
        let c = inner.complement_within(&Subspace::full(2)).unwrap();
        assert_eq!(c.dim(), 1);
        assert!(c.meet(&inner).unwrap().is_zero());
        assert!(c.join(&inner).unwrap().is_full());
        assert_eq!(Subspace::full(2).complement_within(&inner), Err(Error::NotContained));
    }

    #[test]
    fn separating_functional_examples() {
        let phi = Subspace::zero(2).separating_functional(&qv(&[1, 0])).unwrap();
        assert_eq!(phi.coeffs(), qv(&[1, 0]).as_slice());

        let phi = qspan(&[&[1, 0, 0]], 3).separating_functional(&qv(&[0, 1, 0])).unwrap();
        assert_eq!(phi.coeffs(), qv(&[0, 1, 0]).as_slice());

        let w = qspan(&[&[1, -1]], 2);
        let phi = w.separating_functional(&qv(&[1, 1])).unwrap();
        assert_eq!(phi.apply(&qv(&[1, -1])), Rational::from_i64(0));
        assert_eq!(phi.apply(&qv(&[1, 1])), Rational::from_i64(1));

        assert!(matches!(w.separating_functional(&qv(&[2, -2])), Err(Error::VectorInSubspace { .. })));
    }

    #[test]
    fn functional_kernel() {
        let phi = Functional::new(qv(&[0, 1, 0]));
        assert_eq!(phi.kernel(), qspan(&[&[1, 0, 0], &[0, 0, 1]], 3));
        assert!(Functional::new(unit_vector::<Rational>(2, 0)).kernel().contains_vector(&qv(&[0, 5])).unwrap());
    }

    #[test]
    fn subspace_counts_match_gaussian_binomials() {
        // Σ_k C(n,k)_q computed from the q-binomial recursion.
        fn gaussian_total(n: usize, q: u64) -> usize {
            let mut row = vec![1u64];
            for _ in 0..n {
                let mut next = vec![1u64; row.len() + 1];
                for k in 1..row.len() {
                    next[k] = row[k - 1] + q.pow(k as u32) * row[k];
                }
                row = next;
            }
            row.iter().sum::<u64>() as usize
        }
        for n in 0..=4 {
            assert_eq!(all_subspaces::<Gf2>(n).unwrap().len(), gaussian_total(n, 2));
        }
        assert_eq!(all_subspaces::<Gf2>(4).unwrap().len(), 67);
        assert_eq!(all_subspaces::<Gf3>(3).unwrap().len(), gaussian_total(3, 3));
        assert!(all_subspaces::<Rational>(2).is_err());
    }
}
