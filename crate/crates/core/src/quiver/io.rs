//! Quiver documents.
//!
//! ```text
//! { "n": 2, "matrix": [[0, 1], [-1, 0]], "frozen_rows": [[1, 0], [0, 1]] }
//! { "n": 3, "arrows": [[1, 2, 2], [2, 3, 2], [3, 1, 2]] }
//! ```
//!
//! Vertices in `arrows` are 1-based. Integers may be written with any number
//! of digits; values outside the 64-bit range are rejected.

use serde::{Deserialize, Serialize};
use serde_json::Number;

use super::ice::IceQuiver;
use super::matrix::ExchangeMatrix;
use crate::error::FormatError;

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawDocument {
    n: Number,
    #[serde(default)]
    matrix: Option<Vec<Vec<Number>>>,
    #[serde(default)]
    arrows: Option<Vec<Vec<Number>>>,
    #[serde(default)]
    frozen_rows: Option<Vec<Vec<Number>>>,
}

#[derive(Debug, Serialize)]
struct OutDocument<'a> {
    n: usize,
    matrix: &'a ExchangeMatrix,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    frozen_rows: Vec<Vec<i64>>,
}

fn int(x: &Number) -> Result<i64, FormatError> {
    x.as_i64()
        .ok_or_else(|| FormatError::Invalid(format!("integer {x} is not a supported 64-bit value")))
}

fn rows(raw: &[Vec<Number>]) -> Result<Vec<Vec<i64>>, FormatError> {
    raw.iter()
        .map(|r| r.iter().map(int).collect::<Result<Vec<_>, _>>())
        .collect()
}

/// Parses a quiver document into an ice quiver (no frozen rows unless the
/// document lists them).
pub fn parse_quiver(text: &str) -> Result<IceQuiver, FormatError> {
    from_raw(serde_json::from_str(text)?)
}

/// As [`parse_quiver`], from an already parsed JSON value.
pub fn parse_quiver_value(value: serde_json::Value) -> Result<IceQuiver, FormatError> {
    from_raw(serde_json::from_value(value)?)
}

fn from_raw(raw: RawDocument) -> Result<IceQuiver, FormatError> {
    let n = usize::try_from(int(&raw.n)?)
        .map_err(|_| FormatError::Invalid("n must be nonnegative".into()))?;
    let principal = match (&raw.matrix, &raw.arrows) {
        (Some(m), None) => {
            let m = rows(m)?;
            if m.len() != n {
                return Err(FormatError::Invalid(format!(
                    "n = {n} but matrix has {} rows",
                    m.len()
                )));
            }
            ExchangeMatrix::new(m)?
        }
        (None, Some(a)) => {
            let mut arrows = Vec::with_capacity(a.len());
            for triple in rows(a)? {
                let [s, t, mult] = triple[..] else {
                    return Err(FormatError::Invalid(
                        "arrows must be [source, target, multiplicity] triples".into(),
                    ));
                };
                if s < 1 || t < 1 || s as u64 > n as u64 || t as u64 > n as u64 {
                    return Err(FormatError::Invalid(format!(
                        "arrow [{s}, {t}, {mult}] has a vertex outside 1..={n}"
                    )));
                }
                if mult < 0 {
                    return Err(FormatError::Invalid(format!(
                        "arrow [{s}, {t}, {mult}] has negative multiplicity"
                    )));
                }
                arrows.push((s as usize - 1, t as usize - 1, mult));
            }
            ExchangeMatrix::from_arrows(n, arrows)?
        }
        (Some(_), Some(_)) => {
            return Err(FormatError::Invalid(
                "document has both `matrix` and `arrows`".into(),
            ))
        }
        (None, None) => {
            return Err(FormatError::Invalid(
                "document needs `matrix` or `arrows`".into(),
            ))
        }
    };
    let frozen = match &raw.frozen_rows {
        Some(f) => rows(f)?,
        None => Vec::new(),
    };
    Ok(IceQuiver::new(principal, frozen)?)
}

/// Parses a document and returns only its principal part.
pub fn parse_exchange_matrix(text: &str) -> Result<ExchangeMatrix, FormatError> {
    Ok(parse_quiver(text)?.principal().clone())
}

pub fn quiver_to_json(q: &IceQuiver) -> serde_json::Value {
    serde_json::to_value(OutDocument {
        n: q.n(),
        matrix: q.principal(),
        frozen_rows: q.frozen_rows(),
    })
    .expect("quiver documents always serialize")
}

pub fn write_quiver(q: &IceQuiver) -> String {
    serde_json::to_string_pretty(&quiver_to_json(q)).expect("quiver documents always serialize")
}

impl Serialize for IceQuiver {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        quiver_to_json(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for IceQuiver {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let value = serde_json::Value::deserialize(d)?;
        parse_quiver_value(value).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matrix_form() {
        let q = parse_quiver("{ \"n\" : 2 ,\n \"matrix\": [[0,1],[-1,0]] }").unwrap();
        assert_eq!(q.principal().rows(), vec![vec![0, 1], vec![-1, 0]]);
        assert_eq!(q.frozen_count(), 0);
    }

    #[test]
    fn arrow_form_matches_matrix_form() {
        let a = parse_exchange_matrix(r#"{"n":3,"arrows":[[1,2,2],[2,3,2],[3,1,2]]}"#).unwrap();
        let m = parse_exchange_matrix(r#"{"n":3,"matrix":[[0,2,-2],[-2,0,2],[2,-2,0]]}"#).unwrap();
        assert_eq!(a, m);
    }

    #[test]
    fn frozen_rows_round_trip() {
        let q = IceQuiver::frame(&parse_exchange_matrix(r#"{"n":2,"arrows":[[1,2,1]]}"#).unwrap())
            .mutate(0)
            .unwrap();
        assert_eq!(parse_quiver(&write_quiver(&q)).unwrap(), q);
    }

    #[test]
    fn rejects_bad_documents() {
        for bad in [
            r#"{"n":2,"matrix":[[0,1],[1,0]]}"#,
            r#"{"n":3,"matrix":[[0,1],[-1,0]]}"#,
            r#"{"n":2}"#,
            r#"{"n":2,"arrows":[[1,3,1]]}"#,
            r#"{"n":2,"arrows":[[1,2]]}"#,
            r#"{"n":2,"matrix":[[0,99999999999999999999999],[-99999999999999999999999,0]]}"#,
            r#"{"n":2,"matrix":[[0,1],[-1,0]],"frozen_rows":[[1]]}"#,
            r#"{"n":2,"matrix":[[0,1],[-1,0]],"extra":1}"#,
            "not json",
        ] {
            assert!(parse_quiver(bad).is_err(), "{bad}");
        }
    }
}
