//! Reading nest specs, matrices and vectors from JSON files.

use std::path::Path;

use nestalg::nest::Normalization;
use nestalg::{FieldDesc, Matrix, Nest, Scalar, Subspace};
use serde_json::Value;
use sha2::{Digest, Sha256};

/// A parse or validation problem in user input.
pub type InputResult<T> = Result<T, String>;

#[derive(Debug, Clone)]
pub struct Loaded {
    pub path: String,
    pub value: Value,
    pub digest: String,
}

pub fn load(path: &Path) -> InputResult<Loaded> {
    let bytes = std::fs::read(path).map_err(|e| format!("{}: {e}", path.display()))?;
    let value: Value = serde_json::from_slice(&bytes).map_err(|e| format!("{}: invalid JSON: {e}", path.display()))?;
    let digest = format!("sha256:{}", hex::encode(Sha256::digest(&bytes)));
    Ok(Loaded { path: path.display().to_string(), value, digest })
}

fn field_of<'a>(v: &'a Value, key: &str, ctx: &str) -> InputResult<&'a Value> {
    v.get(key).ok_or_else(|| format!("{ctx}: missing field {key:?}"))
}

pub fn spec_field(spec: &Loaded) -> InputResult<FieldDesc> {
    let f = field_of(&spec.value, "field", &spec.path)?;
    serde_json::from_value(f.clone()).map_err(|e| format!("{}: bad field {f}: {e}", spec.path))
}

pub fn spec_dim(spec: &Loaded) -> InputResult<usize> {
    field_of(&spec.value, "dim", &spec.path)?
        .as_u64()
        .map(|d| d as usize)
        .ok_or_else(|| format!("{}: \"dim\" must be a nonnegative integer", spec.path))
}

pub fn spec_name(spec: &Loaded) -> Option<String> {
    spec.value.get("name").and_then(|n| n.as_str()).map(str::to_string)
}

pub fn parse_vector<S: Scalar>(v: &Value, n: usize, ctx: &str) -> InputResult<Vec<S>> {
    let items = v.as_array().ok_or_else(|| format!("{ctx}: expected a vector, found {v}"))?;
    if items.len() != n {
        return Err(format!("{ctx}: vector has length {}, expected {n}", items.len()));
    }
    items.iter().map(|x| S::from_json(x).map_err(|e| format!("{ctx}: {e}"))).collect()
}

pub fn parse_vectors<S: Scalar>(v: &Value, n: usize, ctx: &str) -> InputResult<Vec<Vec<S>>> {
    let items = v.as_array().ok_or_else(|| format!("{ctx}: expected a list of vectors"))?;
    items.iter().enumerate().map(|(i, x)| parse_vector(x, n, &format!("{ctx}[{i}]"))).collect()
}

/// A square matrix given as a list of rows.
pub fn parse_matrix<S: Scalar>(v: &Value, n: usize, ctx: &str) -> InputResult<Matrix<S>> {
    let rows = parse_vectors(v, n, ctx)?;
    if rows.len() != n {
        return Err(format!("{ctx}: matrix has {} rows, expected {n}", rows.len()));
    }
    Matrix::from_rows(rows, n).map_err(|e| format!("{ctx}: {e}"))
}

/// Parses a spec into a nest over `S`. Chain validation errors are returned
/// as library errors so callers can report the offending pair.
pub fn parse_nest<S: Scalar>(spec: &Loaded) -> InputResult<Result<(Nest<S>, Normalization), nestalg::Error>> {
    let field = spec_field(spec)?;
    if field != S::field() {
        return Err(format!("{}: field {field} does not match {}", spec.path, S::field()));
    }
    let n = spec_dim(spec)?;
    let chain = field_of(&spec.value, "chain", &spec.path)?
        .as_array()
        .ok_or_else(|| format!("{}: \"chain\" must be a list", spec.path))?;
    let mut members = Vec::with_capacity(chain.len());
    for (i, m) in chain.iter().enumerate() {
        let vectors = parse_vectors::<S>(m, n, &format!("{}: chain[{i}]", spec.path))?;
        members.push(Subspace::span_of(&vectors, n).map_err(|e| format!("{}: chain[{i}]: {e}", spec.path))?);
    }
    Ok(Nest::normalize(n, members))
}

/// A nest whose chain must be valid.
pub fn require_nest<S: Scalar>(spec: &Loaded) -> InputResult<Nest<S>> {
    parse_nest(spec)?.map(|(n, _)| n).map_err(|e| format!("{}: {e}", spec.path))
}

pub struct MatrixFile<S> {
    pub matrix: Option<Matrix<S>>,
    pub vectors: Option<Vec<Vec<S>>>,
}

/// A matrix file: a list of rows, or an object with `"matrix"` and optional
/// `"vectors"`.
pub fn parse_matrix_file<S: Scalar>(file: &Loaded, n: usize) -> InputResult<MatrixFile<S>> {
    match &file.value {
        Value::Array(_) => Ok(MatrixFile { matrix: Some(parse_matrix(&file.value, n, &file.path)?), vectors: None }),
        Value::Object(map) => {
            let matrix =
                map.get("matrix").map(|m| parse_matrix(m, n, &format!("{}: matrix", file.path))).transpose()?;
            let vectors =
                map.get("vectors").map(|v| parse_vectors(v, n, &format!("{}: vectors", file.path))).transpose()?;
            Ok(MatrixFile { matrix, vectors })
        }
        other => Err(format!("{}: expected a matrix or an object, found {other}", file.path)),
    }
}
