//! Frame files for `pythagoras project`.
//!
//! ```json
//! {"n": 3, "m": 2, "vectors": [[1, 0, 1], [0, 1, 1]]}
//! ```
//!
//! `n` and `m` are optional, and a bare array stands for `vectors`. Complex
//! entries are `[re, im]` pairs. The array may list the `m` spanning vectors
//! or the `n` rows of the matrix; when `n`/`m` are absent the reading with
//! `m <= n` is used.

use num_complex::Complex64;
use serde_json::Value;

use crate::linalg::{ComplexFrame, RealFrame};

#[derive(Debug, Clone, PartialEq)]
pub enum FrameInput {
    Real(RealFrame),
    Complex(ComplexFrame),
}

fn parse_json(text: &str) -> Result<Value, String> {
    serde_json::from_str(text).map_err(|e| format!("line {}, column {}: {e}", e.line(), e.column()))
}

fn real_entry(v: &Value) -> Result<f64, String> {
    v.as_f64().ok_or_else(|| format!("expected a number, found {v}"))
}

fn complex_entry(v: &Value) -> Result<Complex64, String> {
    match v {
        Value::Array(pair) if pair.len() == 2 => Ok(Complex64::new(real_entry(&pair[0])?, real_entry(&pair[1])?)),
        Value::Number(_) => Ok(Complex64::new(real_entry(v)?, 0.0)),
        _ => Err(format!("expected a complex entry [re, im], found {v}")),
    }
}

fn dimension(obj: &serde_json::Map<String, Value>, key: &str) -> Result<Option<usize>, String> {
    match obj.get(key) {
        None | Some(Value::Null) => Ok(None),
        Some(v) => v
            .as_u64()
            .map(|d| Some(d as usize))
            .ok_or_else(|| format!("\"{key}\" must be a non-negative integer, found {v}")),
    }
}

fn transpose<T: Copy>(rows: &[Vec<T>]) -> Vec<Vec<T>> {
    let cols = rows.first().map_or(0, Vec::len);
    (0..cols).map(|j| rows.iter().map(|r| r[j]).collect()).collect()
}

/// Turns the parsed array into spanning vectors, transposing when the
/// array holds the rows of the matrix.
fn orient<T: Copy>(arrays: Vec<Vec<T>>, n: Option<usize>, m: Option<usize>) -> Result<(usize, Vec<Vec<T>>), String> {
    if arrays.is_empty() {
        return Err("frame has no vectors".into());
    }
    let (outer, inner) = (arrays.len(), arrays[0].len());
    if arrays.iter().any(|a| a.len() != inner) {
        return Err("all vectors must have the same length".into());
    }
    if inner == 0 {
        return Err("vectors must have at least one component".into());
    }
    let as_vectors = n.is_none_or(|n| n == inner) && m.is_none_or(|m| m == outer) && outer <= inner;
    let as_rows = n.is_none_or(|n| n == outer) && m.is_none_or(|m| m == inner) && inner <= outer;
    if as_vectors {
        Ok((inner, arrays))
    } else if as_rows {
        Ok((outer, transpose(&arrays)))
    } else {
        Err(format!(
            "a {outer}x{inner} array is not a frame with n = {}, m = {} and m <= n",
            n.map_or("?".into(), |n| n.to_string()),
            m.map_or("?".into(), |m| m.to_string())
        ))
    }
}

fn arrays<T>(value: &Value, entry: impl Fn(&Value) -> Result<T, String>) -> Result<Vec<Vec<T>>, String> {
    let outer = value.as_array().ok_or("\"vectors\" must be an array of arrays")?;
    outer
        .iter()
        .map(|v| v.as_array().ok_or_else(|| format!("expected an array, found {v}"))?.iter().map(&entry).collect())
        .collect()
}

/// Parses a frame file; `complex` selects `[re, im]` entries.
pub fn parse_frame(text: &str, complex: bool) -> Result<FrameInput, String> {
    let value = parse_json(text)?;
    let (vectors, n, m) = match &value {
        Value::Array(_) => (&value, None, None),
        Value::Object(obj) => {
            (obj.get("vectors").ok_or("missing \"vectors\"")?, dimension(obj, "n")?, dimension(obj, "m")?)
        }
        _ => return Err("expected an object with \"vectors\" or an array of vectors".into()),
    };
    if complex {
        let (n, vs) = orient(arrays(vectors, complex_entry)?, n, m)?;
        ComplexFrame::with_dim(n, vs).map(FrameInput::Complex).map_err(|e| e.to_string())
    } else {
        let (n, vs) = orient(arrays(vectors, real_entry)?, n, m)?;
        RealFrame::with_dim(n, vs).map(FrameInput::Real).map_err(|e| e.to_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn real(text: &str) -> RealFrame {
        match parse_frame(text, false).unwrap() {
            FrameInput::Real(f) => f,
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn object_and_bare_array() {
        let f = real(r#"{"n": 3, "m": 2, "vectors": [[1, 0, 1], [0, 1, 1]]}"#);
        assert_eq!((f.n(), f.m()), (3, 2));
        assert_eq!(real("[[1, 0, 1], [0, 1, 1]]"), f);
    }

    #[test]
    fn rows_are_transposed() {
        let f = real("[[1, 0], [0, 1], [1, 1]]");
        assert_eq!((f.n(), f.m()), (3, 2));
        assert_eq!(f.vectors()[1], vec![0.0, 1.0, 1.0]);
    }

    #[test]
    fn complex_column() {
        let FrameInput::Complex(f) = parse_frame("[[[1, 2]], [[3, 4]]]", true).unwrap() else { panic!() };
        assert_eq!((f.n(), f.m()), (2, 1));
        assert_eq!(f.vectors()[0], vec![Complex64::new(1.0, 2.0), Complex64::new(3.0, 4.0)]);
    }

    #[test]
    fn explicit_dimensions_are_checked() {
        assert!(parse_frame(r#"{"n": 4, "vectors": [[1, 0, 1]]}"#, false).is_err());
        let f = real(r#"{"n": 2, "m": 2, "vectors": [[1, 2], [3, 4]]}"#);
        assert_eq!(f.vectors()[0], vec![1.0, 2.0]);
    }

    #[test]
    fn errors() {
        let err = parse_frame("{\n  \"vectors\": [1,\n}", false).unwrap_err();
        assert!(err.starts_with("line 3, column 1"), "{err}");
        assert!(parse_frame("[]", false).is_err());
        assert!(parse_frame(r#"{"vectors": []}"#, false).is_err());
        assert!(parse_frame("[[1, 2], [3]]", false).is_err());
        assert!(parse_frame("[[\"x\"]]", false).is_err());
        assert!(parse_frame("[[[1, 2, 3]]]", true).is_err());
        assert!(parse_frame("3", false).is_err());
    }
}
