//! Built-in example arrangements with their known invariants.
//!
//! Each entry is an arrangement file with an `expected` record. Every
//! expected value carries its provenance; the test suites recompute all of
//! them through the pipelines.

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::arrangement::{CentralArrangement, Multiarrangement};
use crate::error::{Error, Result};
use crate::format::{parse_arrangement_value, ArrangementFile};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Provenance {
    /// Follows directly from the definitions.
    Trivial,
    /// Computed by an independent implementation.
    DerivedByOracle,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Tagged<T> {
    pub value: T,
    pub provenance: Provenance,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Expected {
    /// Coefficients of `χ(A, t)`, lowest degree first.
    pub char_poly: Tagged<Vec<i64>>,
    pub chambers: Tagged<u64>,
    /// Exponents of the simple arrangement, `null` when not free.
    pub exponents: Tagged<Option<Vec<u64>>>,
    /// Hyperplane used for `b`, `sigma` and the restriction.
    pub h0: usize,
    pub b: Tagged<Vec<i64>>,
    /// `null` entries are out of reach of the σ computation.
    pub sigma: Tagged<Vec<Option<i64>>>,
    /// Exponents of the Ziegler restriction at `h0`, `null` when not free.
    pub restriction_exponents: Tagged<Option<Vec<u64>>>,
    /// Exponents of the multiarrangement given by `mult`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub multi_exponents: Option<Tagged<Vec<u64>>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CorpusEntry {
    pub name: String,
    pub description: String,
    pub file: ArrangementFile,
    pub expected: Expected,
    source: &'static str,
}

impl CorpusEntry {
    pub fn arrangement(&self) -> CentralArrangement {
        self.file.arrangement().expect("corpus arrangements are valid")
    }

    pub fn multiarrangement(&self) -> Multiarrangement {
        self.file.multiarrangement().expect("corpus arrangements are valid")
    }

    pub fn is_multi(&self) -> bool {
        self.file.mult.is_some()
    }

    /// The file text, including the expected record.
    pub fn source(&self) -> &'static str {
        self.source
    }
}

const SOURCES: &[&str] = &[
    include_str!("../corpus/boolean2.json"),
    include_str!("../corpus/boolean3.json"),
    include_str!("../corpus/boolean4.json"),
    include_str!("../corpus/braid-ess3.json"),
    include_str!("../corpus/braid-ess4.json"),
    include_str!("../corpus/generic34.json"),
    include_str!("../corpus/generic45.json"),
    include_str!("../corpus/supersolvable7.json"),
    include_str!("../corpus/multi221.json"),
];

fn load(source: &'static str) -> Result<CorpusEntry> {
    let value: Value = serde_json::from_str(source).map_err(|e| Error::parse("corpus", e.to_string()))?;
    let file = parse_arrangement_value(&value)?;
    let text = |key: &str| {
        value
            .get(key)
            .and_then(Value::as_str)
            .map(str::to_string)
            .ok_or_else(|| Error::parse(key, "missing corpus field"))
    };
    let expected = serde_json::from_value(value.get("expected").cloned().unwrap_or(Value::Null))
        .map_err(|e| Error::parse("expected", e.to_string()))?;
    Ok(CorpusEntry {
        name: text("name")?,
        description: text("description")?,
        file,
        expected,
        source,
    })
}

pub fn corpus() -> Vec<CorpusEntry> {
    SOURCES
        .iter()
        .map(|s| load(s).expect("built-in corpus parses"))
        .collect()
}

pub fn corpus_names() -> Vec<String> {
    corpus().into_iter().map(|e| e.name).collect()
}

pub fn corpus_entry(name: &str) -> Option<CorpusEntry> {
    corpus().into_iter().find(|e| e.name == name)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_entries_load() {
        let names = corpus_names();
        assert_eq!(
            names,
            vec![
                "boolean2",
                "boolean3",
                "boolean4",
                "braid-ess3",
                "braid-ess4",
                "generic34",
                "generic45",
                "supersolvable7",
                "multi221"
            ]
        );
        for e in corpus() {
            let a = e.arrangement();
            assert!(a.dim() <= 4 && a.len() <= 10, "{}", e.name);
            assert_eq!(e.expected.char_poly.value.len(), a.dim() + 1);
            assert_eq!(e.expected.b.value.len(), a.dim());
            assert!(e.expected.h0 < a.len());
        }
    }

    #[test]
    fn lookup() {
        let e = corpus_entry("multi221").unwrap();
        assert!(e.is_multi());
        assert_eq!(e.multiarrangement().total(), 5);
        assert!(corpus_entry("nope").is_none());
    }
}
