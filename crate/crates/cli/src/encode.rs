//! JSON encodings of library values. Scalars are strings.

use nestalg::{Functional, Matrix, Nest, RankOneOp, Scalar, Subspace};
use serde_json::{json, Value};

pub fn vector<S: Scalar>(v: &[S]) -> Value {
    Value::Array(v.iter().map(|x| x.to_json()).collect())
}

pub fn matrix<S: Scalar>(m: &Matrix<S>) -> Value {
    Value::Array(m.row_vectors().iter().map(|r| vector(r)).collect())
}

pub fn matrices<S: Scalar>(ms: &[Matrix<S>]) -> Value {
    Value::Array(ms.iter().map(matrix).collect())
}

pub fn subspace<S: Scalar>(s: &Subspace<S>) -> Value {
    json!({ "dim": s.dim(), "basis": Value::Array(s.basis_vectors().iter().map(|v| vector(v)).collect()) })
}

pub fn functional<S: Scalar>(f: &Functional<S>) -> Value {
    vector(f.coeffs())
}

pub fn rank_one<S: Scalar>(r: &RankOneOp<S>) -> Value {
    json!({ "x": vector(&r.x), "phi": functional(&r.phi), "matrix": matrix(&r.matrix) })
}

pub fn nest<S: Scalar>(n: &Nest<S>) -> Value {
    json!({
        "field": S::field().to_string(),
        "dim": n.ambient_dim(),
        "chain_dims": n.chain().iter().map(|m| m.dim()).collect::<Vec<_>>(),
        "atoms": n.atom_dims(),
        "chain": n.chain().iter().map(subspace).collect::<Vec<_>>(),
    })
}
