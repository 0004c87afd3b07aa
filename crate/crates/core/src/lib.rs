//! Exact nest algebras over the rationals and prime fields.

pub mod algebra;
pub mod error;
pub mod matrix;
pub mod nest;
pub mod radical;
pub mod random;
pub mod scalar;
pub mod subspace;
pub mod support;

pub use num_traits::{One, Zero};

pub use algebra::{AlgebraBasis, AlgebraKind, RankOneOp};
pub use error::{Error, Result};
pub use matrix::{Matrix, Rref};
pub use nest::Nest;
pub use radical::RadicalReport;
pub use scalar::{FieldDesc, FieldVisitor, Fp, Gf2, Gf3, Rational, Scalar};
pub use subspace::{Functional, Subspace};
pub use support::{SupportNest, SupportSet, TailFunctional};
