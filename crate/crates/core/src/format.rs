//! The JSON arrangement file format.
//!
//! ```json
//! {"dim": 3, "hyperplanes": [[1, -1, 0], ["1/2", 0, 1]], "labels": ["a", "b"], "mult": [2, 1]}
//! ```
//!
//! Coefficients are integers or `"p/q"` strings. `labels` and `mult` are
//! optional. Corpus files may also carry `name`, `description` and
//! `expected`; any other key is rejected.

use num_traits::Zero;
use serde_json::{Map, Value};

use crate::arrangement::{canonicalize, CentralArrangement, Multiarrangement};
use crate::error::{Error, Result};
use crate::rational::{parse_rational, Rational};

const KNOWN_KEYS: &[&str] = &[
    "dim",
    "hyperplanes",
    "labels",
    "mult",
    "name",
    "description",
    "expected",
];

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ArrangementFile {
    pub dim: usize,
    pub hyperplanes: Vec<Vec<Rational>>,
    pub labels: Option<Vec<String>>,
    pub mult: Option<Vec<u32>>,
}

impl ArrangementFile {
    pub fn arrangement(&self) -> Result<CentralArrangement> {
        canonicalize(&self.hyperplanes, self.dim).map_err(|e| match e {
            Error::ZeroForm { index } => Error::parse(format!("hyperplanes[{index}]"), "zero linear form"),
            Error::DuplicateHyperplane { first, second } => Error::parse(
                format!("hyperplanes[{second}]"),
                format!("same hyperplane as hyperplanes[{first}]"),
            ),
            other => other,
        })
    }

    /// The multiarrangement with the file's multiplicities, all ones when
    /// absent.
    pub fn multiarrangement(&self) -> Result<Multiarrangement> {
        let a = self.arrangement()?;
        match &self.mult {
            Some(m) => Multiarrangement::new(a, m.clone()),
            None => Ok(Multiarrangement::simple(a)),
        }
    }

    pub fn from_arrangement(a: &CentralArrangement) -> Self {
        ArrangementFile {
            dim: a.dim(),
            hyperplanes: a.forms().iter().map(|f| f.to_rationals()).collect(),
            labels: None,
            mult: None,
        }
    }

    pub fn from_multiarrangement(m: &Multiarrangement) -> Self {
        ArrangementFile {
            mult: Some(m.mult().to_vec()),
            ..Self::from_arrangement(m.base())
        }
    }

    pub fn to_value(&self) -> Value {
        let mut obj = Map::new();
        obj.insert("dim".into(), Value::from(self.dim));
        obj.insert(
            "hyperplanes".into(),
            Value::Array(
                self.hyperplanes
                    .iter()
                    .map(|row| Value::Array(row.iter().map(rational_value).collect()))
                    .collect(),
            ),
        );
        if let Some(labels) = &self.labels {
            obj.insert("labels".into(), Value::from(labels.clone()));
        }
        if let Some(mult) = &self.mult {
            obj.insert("mult".into(), Value::from(mult.clone()));
        }
        Value::Object(obj)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_value()).expect("values serialize")
    }
}

fn rational_value(r: &Rational) -> Value {
    if r.is_integer() {
        if let Ok(n) = i64::try_from(r.to_integer()) {
            return Value::from(n);
        }
    }
    Value::from(r.to_string())
}

fn parse_coefficient(v: &Value, loc: &str) -> Result<Rational> {
    match v {
        Value::Number(n) => {
            if let Some(i) = n.as_i64() {
                Ok(Rational::from_integer(i.into()))
            } else {
                Err(Error::parse(
                    loc,
                    format!("{n} is not an integer; write fractions as \"p/q\""),
                ))
            }
        }
        Value::String(s) => parse_rational(s).ok_or_else(|| Error::parse(loc, format!("{s:?} is not a rational"))),
        other => Err(Error::parse(
            loc,
            format!("expected a number or \"p/q\" string, found {other}"),
        )),
    }
}

fn as_usize(v: &Value, loc: &str) -> Result<usize> {
    v.as_u64()
        .and_then(|n| usize::try_from(n).ok())
        .ok_or_else(|| Error::parse(loc, format!("expected a nonnegative integer, found {v}")))
}

/// Parses an arrangement file. Syntax errors carry a line and column,
/// content errors the path of the offending field.
pub fn parse_arrangement_file(text: &str) -> Result<ArrangementFile> {
    let value: Value = serde_json::from_str(text)
        .map_err(|e| Error::parse(format!("line {}, column {}", e.line(), e.column()), e.to_string()))?;
    parse_arrangement_value(&value)
}

pub fn parse_arrangement_value(value: &Value) -> Result<ArrangementFile> {
    let obj = value
        .as_object()
        .ok_or_else(|| Error::parse("top level", "expected a JSON object"))?;
    if let Some(key) = obj.keys().find(|k| !KNOWN_KEYS.contains(&k.as_str())) {
        return Err(Error::parse(key.clone(), "unknown field"));
    }
    let dim = as_usize(
        obj.get("dim").ok_or_else(|| Error::parse("dim", "missing field"))?,
        "dim",
    )?;
    if dim == 0 {
        return Err(Error::parse("dim", "dimension must be at least 1"));
    }
    let rows = obj
        .get("hyperplanes")
        .ok_or_else(|| Error::parse("hyperplanes", "missing field"))?
        .as_array()
        .ok_or_else(|| Error::parse("hyperplanes", "expected an array of rows"))?;
    let mut hyperplanes = Vec::with_capacity(rows.len());
    for (i, row) in rows.iter().enumerate() {
        let loc = format!("hyperplanes[{i}]");
        let row = row
            .as_array()
            .ok_or_else(|| Error::parse(&loc, "expected an array of coefficients"))?;
        if row.len() != dim {
            return Err(Error::parse(
                &loc,
                format!("expected {dim} coefficients, found {}", row.len()),
            ));
        }
        let coeffs = row
            .iter()
            .enumerate()
            .map(|(j, v)| parse_coefficient(v, &format!("{loc}[{j}]")))
            .collect::<Result<Vec<_>>>()?;
        if coeffs.iter().all(Zero::is_zero) {
            return Err(Error::parse(&loc, "zero linear form"));
        }
        hyperplanes.push(coeffs);
    }
    let labels = match obj.get("labels") {
        None | Some(Value::Null) => None,
        Some(Value::Array(items)) => {
            if items.len() != hyperplanes.len() {
                return Err(Error::parse(
                    "labels",
                    format!("expected {} labels, found {}", hyperplanes.len(), items.len()),
                ));
            }
            Some(
                items
                    .iter()
                    .enumerate()
                    .map(|(i, v)| {
                        v.as_str()
                            .map(str::to_string)
                            .ok_or_else(|| Error::parse(format!("labels[{i}]"), "expected a string"))
                    })
                    .collect::<Result<_>>()?,
            )
        }
        Some(_) => return Err(Error::parse("labels", "expected an array of strings")),
    };
    let mult = match obj.get("mult") {
        None | Some(Value::Null) => None,
        Some(Value::Array(items)) => {
            if items.len() != hyperplanes.len() {
                return Err(Error::parse(
                    "mult",
                    format!("expected {} multiplicities, found {}", hyperplanes.len(), items.len()),
                ));
            }
            Some(
                items
                    .iter()
                    .enumerate()
                    .map(|(i, v)| {
                        v.as_u64().and_then(|n| u32::try_from(n).ok()).ok_or_else(|| {
                            Error::parse(
                                format!("mult[{i}]"),
                                format!("expected a nonnegative integer, found {v}"),
                            )
                        })
                    })
                    .collect::<Result<_>>()?,
            )
        }
        Some(_) => return Err(Error::parse("mult", "expected an array of integers")),
    };
    Ok(ArrangementFile {
        dim,
        hyperplanes,
        labels,
        mult,
    })
}
