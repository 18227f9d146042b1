//! JSON documents for matrices, vectors and bases.
//!
//! A matrix is `{"rows": r, "cols": c, "entries": [[re, im], ...]}` in
//! row-major order. A vector is a matrix with a single column (a single row
//! is accepted too). A basis is `{"d": d, "kind": "...", "elements": [...]}`
//! with `d²` matrices in flat `(j, k)` order.
//!
//! Parse errors name the field that is wrong.

use std::fs;
use std::path::Path;

use num_complex::Complex64;
use serde_json::{json, Map, Value};

use crate::bases::{BasisKind, MatrixBasis};
use crate::hs_core::ComplexMatrix;
use crate::{Error, Result};

const MATRIX: &str = "matrix document";
const VECTOR: &str = "vector document";
const BASIS: &str = "basis document";

fn format_err(
    document: &'static str,
    field: impl Into<String>,
    reason: impl Into<String>,
) -> Error {
    Error::Format {
        document,
        field: field.into(),
        reason: reason.into(),
    }
}

fn as_object<'a>(
    v: &'a Value,
    document: &'static str,
    field: &str,
) -> Result<&'a Map<String, Value>> {
    v.as_object()
        .ok_or_else(|| format_err(document, field, "expected an object"))
}

fn get_field<'a>(
    obj: &'a Map<String, Value>,
    document: &'static str,
    prefix: &str,
    name: &str,
) -> Result<&'a Value> {
    obj.get(name)
        .ok_or_else(|| format_err(document, join(prefix, name), "missing"))
}

fn join(prefix: &str, name: &str) -> String {
    if prefix.is_empty() {
        name.to_string()
    } else {
        format!("{prefix}.{name}")
    }
}

fn positive_int(v: &Value, document: &'static str, field: &str) -> Result<usize> {
    match v.as_u64() {
        Some(n) if n > 0 => {
            usize::try_from(n).map_err(|_| format_err(document, field, "too large"))
        }
        _ => Err(format_err(
            document,
            field,
            format!("expected a positive integer, found {v}"),
        )),
    }
}

fn parse_entry(v: &Value, document: &'static str, field: &str) -> Result<Complex64> {
    let pair = v
        .as_array()
        .ok_or_else(|| format_err(document, field, "expected a [re, im] pair"))?;
    if pair.len() != 2 {
        return Err(format_err(
            document,
            field,
            format!("expected 2 numbers, found {}", pair.len()),
        ));
    }
    let part = |i: usize| {
        pair[i].as_f64().filter(|x| x.is_finite()).ok_or_else(|| {
            format_err(
                document,
                format!("{field}[{i}]"),
                format!("expected a finite number, found {}", pair[i]),
            )
        })
    };
    Ok(Complex64::new(part(0)?, part(1)?))
}

fn matrix_from_value_in(v: &Value, document: &'static str, prefix: &str) -> Result<ComplexMatrix> {
    let obj = as_object(
        v,
        document,
        if prefix.is_empty() { "<root>" } else { prefix },
    )?;
    let rows_field = join(prefix, "rows");
    let cols_field = join(prefix, "cols");
    let entries_field = join(prefix, "entries");
    let rows = positive_int(
        get_field(obj, document, prefix, "rows")?,
        document,
        &rows_field,
    )?;
    let cols = positive_int(
        get_field(obj, document, prefix, "cols")?,
        document,
        &cols_field,
    )?;
    let entries = get_field(obj, document, prefix, "entries")?
        .as_array()
        .ok_or_else(|| format_err(document, entries_field.clone(), "expected an array"))?;
    let want = rows
        .checked_mul(cols)
        .ok_or_else(|| format_err(document, rows_field.clone(), "rows × cols overflows"))?;
    if entries.len() != want {
        return Err(format_err(
            document,
            entries_field,
            format!(
                "expected rows × cols = {want} entries, found {}",
                entries.len()
            ),
        ));
    }
    let data = entries
        .iter()
        .enumerate()
        .map(|(i, e)| parse_entry(e, document, &format!("{entries_field}[{i}]")))
        .collect::<Result<Vec<_>>>()?;
    ComplexMatrix::from_vec(rows, cols, data)
}

pub fn matrix_from_value(v: &Value) -> Result<ComplexMatrix> {
    matrix_from_value_in(v, MATRIX, "")
}

pub fn matrix_to_value(m: &ComplexMatrix) -> Value {
    let entries: Vec<Value> = m.as_slice().iter().map(|z| json!([z.re, z.im])).collect();
    json!({ "rows": m.rows(), "cols": m.cols(), "entries": entries })
}

fn parse_json(text: &str, document: &'static str) -> Result<Value> {
    serde_json::from_str(text)
        .map_err(|e| format_err(document, "<root>", format!("not valid JSON: {e}")))
}

pub fn parse_matrix(text: &str) -> Result<ComplexMatrix> {
    matrix_from_value(&parse_json(text, MATRIX)?)
}

pub fn parse_vector(text: &str) -> Result<Vec<Complex64>> {
    let m = matrix_from_value_in(&parse_json(text, VECTOR)?, VECTOR, "")?;
    if m.cols() != 1 && m.rows() != 1 {
        return Err(format_err(
            VECTOR,
            "cols",
            format!("expected a single column, found {}×{}", m.rows(), m.cols()),
        ));
    }
    Ok(m.into_vec())
}

pub fn vector_to_value(v: &[Complex64]) -> Value {
    matrix_to_value(&ComplexMatrix::column(v))
}

pub fn parse_basis(text: &str) -> Result<MatrixBasis> {
    let root = parse_json(text, BASIS)?;
    let obj = as_object(&root, BASIS, "<root>")?;
    let d = positive_int(get_field(obj, BASIS, "", "d")?, BASIS, "d")?;
    let kind = match obj.get("kind") {
        None | Some(Value::Null) => BasisKind::Custom,
        Some(Value::String(s)) => s
            .parse::<BasisKind>()
            .map_err(|_| format_err(BASIS, "kind", format!("unknown basis kind `{s}`")))?,
        Some(other) => {
            return Err(format_err(
                BASIS,
                "kind",
                format!("expected a string, found {other}"),
            ))
        }
    };
    let elements = get_field(obj, BASIS, "", "elements")?
        .as_array()
        .ok_or_else(|| format_err(BASIS, "elements", "expected an array"))?;
    if elements.len() != d * d {
        return Err(format_err(
            BASIS,
            "elements",
            format!("expected d² = {} matrices, found {}", d * d, elements.len()),
        ));
    }
    let mats = elements
        .iter()
        .enumerate()
        .map(|(i, e)| {
            let prefix = format!("elements[{i}]");
            let m = matrix_from_value_in(e, BASIS, &prefix)?;
            if m.shape() != (d, d) {
                return Err(format_err(
                    BASIS,
                    prefix,
                    format!("expected a {d}×{d} matrix, found {}×{}", m.rows(), m.cols()),
                ));
            }
            Ok(m)
        })
        .collect::<Result<Vec<_>>>()?;
    MatrixBasis::new(d, kind, mats)
}

pub fn basis_to_value(b: &MatrixBasis) -> Value {
    let elements: Vec<Value> = b.iter().map(matrix_to_value).collect();
    json!({ "d": b.dim(), "kind": b.kind().name(), "elements": elements })
}

fn to_text(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values always serialize");
    s.push('\n');
    s
}

pub fn read_matrix(path: impl AsRef<Path>) -> Result<ComplexMatrix> {
    parse_matrix(&fs::read_to_string(path)?)
}

pub fn read_vector(path: impl AsRef<Path>) -> Result<Vec<Complex64>> {
    parse_vector(&fs::read_to_string(path)?)
}

pub fn read_basis(path: impl AsRef<Path>) -> Result<MatrixBasis> {
    parse_basis(&fs::read_to_string(path)?)
}

pub fn write_matrix(path: impl AsRef<Path>, m: &ComplexMatrix) -> Result<()> {
    Ok(fs::write(path, to_text(&matrix_to_value(m)))?)
}

pub fn write_vector(path: impl AsRef<Path>, v: &[Complex64]) -> Result<()> {
    Ok(fs::write(path, to_text(&vector_to_value(v)))?)
}

pub fn write_basis(path: impl AsRef<Path>, b: &MatrixBasis) -> Result<()> {
    Ok(fs::write(path, to_text(&basis_to_value(b)))?)
}

pub fn matrix_to_string(m: &ComplexMatrix) -> String {
    to_text(&matrix_to_value(m))
}

pub fn basis_to_string(b: &MatrixBasis) -> String {
    to_text(&basis_to_value(b))
}
