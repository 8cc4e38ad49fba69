//! The structure document: named sets, named index tables, and kind-specific
//! bindings, stored as JSON with a canonical sorted-key layout.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use serde_json::Value;
use thiserror::Error;

pub const FORMAT_VERSION: &str = "1";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Kind {
    Link,
    Groupoid,
    Group,
    Monoid,
    InverseSemigroup,
    Cover,
    Action,
    RelationAction,
    Magma,
}

impl Kind {
    /// The structure keys a document of this kind must bind.
    pub fn bindings(self) -> &'static [&'static str] {
        match self {
            Kind::Link => &["m", "phi", "theta"],
            Kind::Groupoid => &["c", "d", "e", "i", "m", "pi1", "pi2"],
            Kind::Group | Kind::Monoid => &["op"],
            Kind::InverseSemigroup | Kind::Magma => &["inv", "op"],
            Kind::Cover => &["base", "parts"],
            Kind::Action => &["act", "op"],
            Kind::RelationAction => &["act", "g", "inv", "op", "r1", "r2"],
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Kind::Link => "link",
            Kind::Groupoid => "groupoid",
            Kind::Group => "group",
            Kind::Monoid => "monoid",
            Kind::InverseSemigroup => "inverse_semigroup",
            Kind::Cover => "cover",
            Kind::Action => "action",
            Kind::RelationAction => "relation_action",
            Kind::Magma => "magma",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SetDecl {
    pub size: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
}

/// A single set, or a product of sets laid out row-major.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Domain {
    Set(String),
    Product(Vec<String>),
}

impl Domain {
    pub fn factors(&self) -> Vec<&str> {
        match self {
            Domain::Set(s) => vec![s.as_str()],
            Domain::Product(v) => v.iter().map(String::as_str).collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MapDecl {
    pub dom: Domain,
    pub cod: String,
    pub table: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Binding {
    Name(String),
    Names(Vec<String>),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StructureDocument {
    pub format_version: String,
    pub kind: Kind,
    #[serde(default)]
    pub sets: BTreeMap<String, SetDecl>,
    #[serde(default)]
    pub maps: BTreeMap<String, MapDecl>,
    pub structure: BTreeMap<String, Binding>,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum DocError {
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("schema error at line {line}, column {column}: {message}")]
    Schema {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("{name}: {message}")]
    Semantic { name: String, message: String },
}

fn semantic(name: impl Into<String>, message: impl Into<String>) -> DocError {
    DocError::Semantic {
        name: name.into(),
        message: message.into(),
    }
}

pub fn parse(text: &str) -> Result<StructureDocument, DocError> {
    let doc: StructureDocument = serde_json::from_str(text).map_err(|e| {
        let (line, column) = (e.line(), e.column());
        let full = e.to_string();
        let suffix = format!(" at line {line} column {column}");
        let message = full.strip_suffix(&suffix).unwrap_or(&full).to_string();
        match e.classify() {
            serde_json::error::Category::Data => DocError::Schema {
                line,
                column,
                message,
            },
            _ => DocError::Syntax {
                line,
                column,
                message,
            },
        }
    })?;
    doc.check()?;
    Ok(doc)
}

impl StructureDocument {
    pub fn new(kind: Kind) -> Self {
        StructureDocument {
            format_version: FORMAT_VERSION.to_string(),
            kind,
            sets: BTreeMap::new(),
            maps: BTreeMap::new(),
            structure: BTreeMap::new(),
        }
    }

    /// Sizes, label counts, table lengths and ranges, and binding names.
    pub fn check(&self) -> Result<(), DocError> {
        if self.format_version != FORMAT_VERSION {
            return Err(semantic(
                "format_version",
                format!(
                    "unsupported version {:?}, expected {FORMAT_VERSION:?}",
                    self.format_version
                ),
            ));
        }
        for (name, set) in &self.sets {
            if let Some(labels) = &set.labels {
                if labels.len() != set.size {
                    return Err(semantic(
                        name,
                        format!("{} labels for a set of size {}", labels.len(), set.size),
                    ));
                }
                let mut sorted: Vec<&String> = labels.iter().collect();
                sorted.sort();
                if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
                    return Err(semantic(name, format!("duplicate label {:?}", w[0])));
                }
            }
        }
        for (name, map) in &self.maps {
            let mut len = 1usize;
            for factor in map.dom.factors() {
                len *= self
                    .set_size(factor)
                    .ok_or_else(|| semantic(name, format!("undeclared set {factor:?}")))?;
            }
            let cod = self
                .set_size(&map.cod)
                .ok_or_else(|| semantic(name, format!("undeclared set {:?}", map.cod)))?;
            if map.table.len() != len {
                return Err(semantic(
                    name,
                    format!("table has {} entries, expected {len}", map.table.len()),
                ));
            }
            if let Some((k, v)) = map.table.iter().enumerate().find(|(_, &v)| v >= cod) {
                return Err(semantic(
                    name,
                    format!("entry {k} is {v}, outside {:?} of size {cod}", map.cod),
                ));
            }
        }
        let expected = self.kind.bindings();
        for key in self.structure.keys() {
            if !expected.contains(&key.as_str()) {
                return Err(semantic(
                    key,
                    format!("not a field of a {} document", self.kind.name()),
                ));
            }
        }
        if let Some(missing) = expected.iter().find(|k| !self.structure.contains_key(**k)) {
            return Err(semantic(
                *missing,
                format!("missing from the {} structure", self.kind.name()),
            ));
        }
        Ok(())
    }

    fn set_size(&self, name: &str) -> Option<usize> {
        self.sets.get(name).map(|s| s.size)
    }

    pub fn serialize(&self) -> String {
        let value = serde_json::to_value(self).expect("documents serialize");
        let mut out = String::new();
        write_value(&mut out, &value, 0);
        out.push('\n');
        out
    }
}

/// Pretty JSON with sorted keys, two-space indentation, and scalar arrays on
/// one line.
fn write_value(out: &mut String, value: &Value, depth: usize) {
    let pad = |out: &mut String, d: usize| out.extend(std::iter::repeat_n("  ", d));
    match value {
        Value::Object(map) if !map.is_empty() => {
            let mut keys: Vec<&String> = map.keys().collect();
            keys.sort();
            out.push_str("{\n");
            for (k, key) in keys.iter().enumerate() {
                pad(out, depth + 1);
                let _ = write!(out, "{}: ", Value::String((*key).clone()));
                write_value(out, &map[*key], depth + 1);
                out.push_str(if k + 1 < keys.len() { ",\n" } else { "\n" });
            }
            pad(out, depth);
            out.push('}');
        }
        Value::Array(items) if items.iter().any(|v| v.is_object() || v.is_array()) => {
            out.push_str("[\n");
            for (k, item) in items.iter().enumerate() {
                pad(out, depth + 1);
                write_value(out, item, depth + 1);
                out.push_str(if k + 1 < items.len() { ",\n" } else { "\n" });
            }
            pad(out, depth);
            out.push(']');
        }
        Value::Array(items) => {
            out.push('[');
            for (k, item) in items.iter().enumerate() {
                if k > 0 {
                    out.push_str(", ");
                }
                let _ = write!(out, "{item}");
            }
            out.push(']');
        }
        other => {
            let _ = write!(out, "{other}");
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const DISCRETE_ONE: &str = r#"{
  "format_version": "1",
  "kind": "link",
  "maps": {
    "m": {
      "cod": "C1",
      "dom": "C2",
      "table": [0]
    },
    "phi": {
      "cod": "C2",
      "dom": "C2",
      "table": [0]
    },
    "theta": {
      "cod": "C2",
      "dom": "C2",
      "table": [0]
    }
  },
  "sets": {
    "C1": {
      "size": 1
    },
    "C2": {
      "size": 1
    }
  },
  "structure": {
    "m": "m",
    "phi": "phi",
    "theta": "theta"
  }
}
"#;

    #[test]
    fn shipped_fixtures_are_canonical() {
        let dir = concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures");
        let mut seen = 0;
        for entry in std::fs::read_dir(dir).unwrap() {
            let path = entry.unwrap().path();
            if path.extension().is_some_and(|e| e == "json") {
                let text = std::fs::read_to_string(&path).unwrap();
                let doc = parse(&text).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
                assert_eq!(doc.serialize(), text, "{}", path.display());
                seen += 1;
            }
        }
        assert!(seen > 0);
    }

    #[test]
    fn canonical_text_round_trips() {
        let doc = parse(DISCRETE_ONE).unwrap();
        assert_eq!(doc.serialize(), DISCRETE_ONE);
    }

    #[test]
    fn reordered_keys_canonicalize() {
        let compact = r#"{"structure":{"theta":"theta","phi":"phi","m":"m"},"kind":"link","format_version":"1",
            "sets":{"C2":{"size":1},"C1":{"size":1}},
            "maps":{"theta":{"table":[0],"dom":"C2","cod":"C2"},"phi":{"dom":"C2","cod":"C2","table":[0]},"m":{"dom":"C2","cod":"C1","table":[0]}}}"#;
        assert_eq!(parse(compact).unwrap().serialize(), DISCRETE_ONE);
    }

    #[test]
    fn out_of_range_entry_names_the_map() {
        // the first table belongs to m
        let bad = DISCRETE_ONE.replacen("\"table\": [0]", "\"table\": [3]", 1);
        match parse(&bad) {
            Err(DocError::Semantic { name, message }) => {
                assert_eq!(name, "m");
                assert!(message.contains("outside"), "{message}");
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn syntax_errors_carry_positions() {
        match parse("{\n  \"kind\": link\n}") {
            Err(DocError::Syntax { line, column, .. }) => assert_eq!((line, column), (2, 11)),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn unknown_fields_are_rejected() {
        let bad = DISCRETE_ONE.replacen("\"kind\"", "\"extra\": 1,\n  \"kind\"", 1);
        assert!(matches!(parse(&bad), Err(DocError::Schema { .. })));
    }

    #[test]
    fn bindings_must_match_the_kind() {
        let bad = DISCRETE_ONE.replacen("\"theta\": \"theta\"", "\"tau\": \"theta\"", 1);
        match parse(&bad) {
            Err(DocError::Semantic { name, .. }) => assert_eq!(name, "tau"),
            other => panic!("{other:?}"),
        }
    }
}
