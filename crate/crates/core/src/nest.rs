//! Finite nests: chains of subspaces from `{0}` to the whole space.

use std::fmt;

use crate::error::{Error, Result};
use crate::matrix::is_zero_vector;
use crate::scalar::Scalar;
use crate::subspace::{all_subspaces, Subspace};

/// A strictly increasing chain `{0} = M_0 ⊂ M_1 ⊂ ... ⊂ M_k = F^n`.
///
/// Finite chains are complete and well-ordered automatically.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Nest<S> {
    ambient: usize,
    chain: Vec<Subspace<S>>,
}

/// What [`Nest::normalize`] had to change to produce a valid chain.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Normalization {
    pub inserted_bottom: bool,
    pub inserted_top: bool,
    pub duplicates_removed: usize,
    pub reordered: bool,
}

/// A nonzero chain member together with a vector whose principal element it is.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JoinIrreducible<S: Scalar> {
    pub member: Subspace<S>,
    pub witness: Vec<S>,
}

impl<S: Scalar> Nest<S> {
    /// Normalizes and validates `chain` into a nest.
    pub fn new(ambient: usize, chain: Vec<Subspace<S>>) -> Result<Self> {
        Self::normalize(ambient, chain).map(|(n, _)| n)
    }

    /// Like [`Nest::new`], also reporting what normalization changed.
    pub fn normalize(ambient: usize, chain: Vec<Subspace<S>>) -> Result<(Self, Normalization)> {
        for s in &chain {
            if s.ambient_dim() != ambient {
                return Err(Error::DimensionMismatch { expected: ambient, found: s.ambient_dim() });
            }
        }
        let mut distinct: Vec<Subspace<S>> = Vec::with_capacity(chain.len() + 2);
        for s in &chain {
            if !distinct.contains(s) {
                distinct.push(s.clone());
            }
        }
        let notes = Normalization {
            inserted_bottom: !distinct.iter().any(|s| s.is_zero()),
            inserted_top: !distinct.iter().any(|s| s.is_full()),
            duplicates_removed: chain.len() - distinct.len(),
            reordered: !chain.windows(2).all(|w| w[0].dim() <= w[1].dim()),
        };
        if notes.inserted_bottom {
            distinct.push(Subspace::zero(ambient));
        }
        if notes.inserted_top && ambient > 0 {
            distinct.push(Subspace::full(ambient));
        }
        distinct.sort_by_key(|s| s.dim());
        for w in distinct.windows(2) {
            if !w[0].leq(&w[1])? {
                return Err(Error::NotAChain { first: w[0].to_string(), second: w[1].to_string() });
            }
        }
        Ok((Nest { ambient, chain: distinct }, notes))
    }

    /// `{0} ⊂ F^n`.
    pub fn trivial(ambient: usize) -> Self {
        Self::new(ambient, Vec::new()).expect("trivial nest is valid")
    }

    /// Coordinate nest whose atoms have the given dimensions.
    pub fn from_atoms(atoms: &[usize]) -> Result<Self> {
        if atoms.contains(&0) {
            return Err(Error::Parse("atom dimensions must be positive".into()));
        }
        let ambient = atoms.iter().sum();
        let mut k = 0;
        let mut chain = Vec::new();
        for &d in atoms {
            k += d;
            chain.push(Subspace::coordinate(ambient, k));
        }
        Self::new(ambient, chain)
    }

    /// The full coordinate flag `{0} ⊂ span{e1} ⊂ span{e1,e2} ⊂ ... ⊂ F^n`.
    pub fn flag(ambient: usize) -> Self {
        Self::from_atoms(&vec![1; ambient]).expect("flag is a chain")
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn chain(&self) -> &[Subspace<S>] {
        &self.chain
    }

    pub fn len(&self) -> usize {
        self.chain.len()
    }

    pub fn is_empty(&self) -> bool {
        self.chain.is_empty()
    }

    pub fn num_atoms(&self) -> usize {
        self.chain.len() - 1
    }

    /// `dim M_{i+1} - dim M_i` for consecutive members.
    pub fn atom_dims(&self) -> Vec<usize> {
        self.chain.windows(2).map(|w| w[1].dim() - w[0].dim()).collect()
    }

    pub fn is_complete(&self) -> bool {
        true
    }

    pub fn is_well_ordered(&self) -> bool {
        true
    }

    pub fn contains_member(&self, s: &Subspace<S>) -> bool {
        self.chain.contains(s)
    }

    /// Index of the smallest chain member containing `x`.
    pub fn principal_index(&self, x: &[S]) -> Result<usize> {
        if x.len() != self.ambient {
            return Err(Error::DimensionMismatch { expected: self.ambient, found: x.len() });
        }
        if is_zero_vector(x) {
            return Err(Error::ZeroVector);
        }
        for (i, m) in self.chain.iter().enumerate() {
            if m.contains_vector(x)? {
                return Ok(i);
            }
        }
        unreachable!("the top member contains every vector")
    }

    /// `N(x)`: the smallest chain member containing `x`.
    pub fn principal(&self, x: &[S]) -> Result<&Subspace<S>> {
        Ok(&self.chain[self.principal_index(x)?])
    }

    /// `N(x)_-`: the largest chain member not containing `x`.
    pub fn principal_pred(&self, x: &[S]) -> Result<&Subspace<S>> {
        let i = self.principal_index(x)?;
        // x ≠ 0 so i ≥ 1.
        Ok(&self.chain[i - 1])
    }

    /// Every nonzero member paired with a witness `x` such that `N(x)` is that member.
    pub fn join_irreducibles(&self) -> Vec<JoinIrreducible<S>> {
        self.chain
            .windows(2)
            .map(|w| {
                let c = w[0].complement_within(&w[1]).expect("chain is increasing");
                JoinIrreducible { member: w[1].clone(), witness: c.basis().row(0).to_vec() }
            })
            .collect()
    }

    /// Vectors adapted to the chain: for each atom `i`, a basis of a
    /// complement of `M_{i-1}` in `M_i`. Each such vector `v` has
    /// `N(v) = M_i` and `N(v)_- = M_{i-1}`.
    pub fn adapted_vectors(&self) -> Vec<(usize, Vec<S>)> {
        let mut out = Vec::new();
        for (i, w) in self.chain.windows(2).enumerate() {
            let c = w[0].complement_within(&w[1]).expect("chain is increasing");
            out.extend(c.basis_vectors().into_iter().map(|v| (i + 1, v)));
        }
        out
    }

    /// The nest of annihilators, in reversed order.
    pub fn dual(&self) -> Self {
        Nest { ambient: self.ambient, chain: self.chain.iter().rev().map(|m| m.annihilator()).collect() }
    }

    /// Ordinal sum: `{N ⊕ 0 : N ∈ self} ∪ {F^n1 ⊕ N : N ∈ other}` on `F^(n1+n2)`.
    pub fn ordinal_sum(&self, other: &Self) -> Self {
        let (n1, n2) = (self.ambient, other.ambient);
        let first = Subspace::full(n1).embed(0, n2);
        let mut chain: Vec<Subspace<S>> = self.chain.iter().map(|m| m.embed(0, n2)).collect();
        for m in other.chain.iter().skip(1) {
            chain.push(first.join(&m.embed(n1, 0)).expect("same ambient"));
        }
        Nest { ambient: n1 + n2, chain }
    }
}

impl<S: Scalar> fmt::Display for Nest<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let dims: Vec<String> = self.chain.iter().map(|m| m.dim().to_string()).collect();
        write!(f, "nest on F^{} with member dims [{}]", self.ambient, dims.join(", "))
    }
}

impl<S: Scalar> fmt::Debug for Nest<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.chain.iter()).finish()
    }
}

/// Every nest of `F^n` over a finite field, built from [`all_subspaces`].
pub fn all_nests<S: Scalar>(ambient: usize) -> Result<Vec<Nest<S>>> {
    fn extend<S: Scalar>(subs: &[Subspace<S>], chain: &mut Vec<Subspace<S>>, out: &mut Vec<Vec<Subspace<S>>>) {
        let last = chain.last().expect("chain starts at zero").clone();
        if last.is_full() {
            out.push(chain.clone());
            return;
        }
        for s in subs {
            if s.dim() > last.dim() && last.leq(s).expect("same ambient") {
                chain.push(s.clone());
                extend(subs, chain, out);
                chain.pop();
            }
        }
    }
    let subs = all_subspaces::<S>(ambient)?;
    let mut chains = Vec::new();
    extend(&subs, &mut vec![Subspace::zero(ambient)], &mut chains);
    chains.into_iter().map(|c| Nest::new(ambient, c)).collect()
}

/// Every composition of `n` into positive parts, for atom dimensions.
pub fn compositions(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    (0..1u64 << (n - 1))
        .map(|cuts| {
            let mut parts = vec![1];
            for i in 0..n - 1 {
                if cuts >> i & 1 == 1 {
                    parts.push(1);
                } else {
                    *parts.last_mut().expect("nonempty") += 1;
                }
            }
            parts
        })
        .collect()
}
