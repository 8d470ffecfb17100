//! JSON documents for group tables, character tables and count reports.
//!
//! Loading always re-checks the mathematical invariants: a document that is
//! well-formed but describes a non-group is a load error.

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::characters::CharacterTable;
use crate::error::{Error, Result};
use crate::group::GroupTable;

fn read(path: impl AsRef<Path>) -> Result<String> {
    let p = path.as_ref();
    fs::read_to_string(p).map_err(|e| Error::Io {
        path: p.display().to_string(),
        message: e.to_string(),
    })
}

fn write(path: impl AsRef<Path>, text: &str) -> Result<()> {
    let p = path.as_ref();
    fs::write(p, text).map_err(|e| Error::Io {
        path: p.display().to_string(),
        message: e.to_string(),
    })
}

fn schema_error(origin: &str, e: serde_json::Error) -> Error {
    Error::parse(format!("{origin}:{}:{}", e.line(), e.column()), e.to_string())
}

fn to_json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("documents serialize");
    s.push('\n');
    s
}

/// `{ "order": n, "mul": [[...], ...], "names": [...] }` with element 0 the
/// identity and `mul[x][y]` the index of `x*y`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupDoc {
    pub order: usize,
    pub mul: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub names: Option<Vec<String>>,
}

impl GroupDoc {
    pub fn from_group(g: &GroupTable) -> GroupDoc {
        GroupDoc {
            order: g.order(),
            mul: g.rows(),
            names: g.names().map(<[String]>::to_vec),
        }
    }

    pub fn from_json(text: &str) -> Result<GroupDoc> {
        serde_json::from_str(text).map_err(|e| schema_error("group document", e))
    }

    pub fn to_json(&self) -> String {
        to_json(self)
    }

    pub fn into_group(self) -> Result<GroupTable> {
        if self.mul.len() != self.order {
            return Err(Error::InvalidGroup(format!(
                "order is {} but mul has {} rows",
                self.order,
                self.mul.len()
            )));
        }
        GroupTable::from_table(&self.mul, self.names)
    }
}

pub fn load_group(path: &str) -> Result<GroupTable> {
    GroupDoc::from_json(&read(path)?)
        .map_err(|e| relocate(e, path))?
        .into_group()
}

pub fn save_group(g: &GroupTable, path: impl AsRef<Path>) -> Result<()> {
    write(path, &GroupDoc::from_group(g).to_json())
}

fn relocate(e: Error, path: &str) -> Error {
    match e {
        Error::Parse { location, message } => {
            let at = location.split_once(':').map_or("", |(_, rest)| rest);
            Error::parse(format!("{path}:{at}"), message)
        }
        other => other,
    }
}

/// Character table document. Columns follow the canonical class order of the
/// target group; values use the `E(n)` literal grammar.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CharTableDoc {
    pub group_order: usize,
    pub class_sizes: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub class_rep_orders: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
    pub irreducibles: Vec<Vec<String>>,
}

impl CharTableDoc {
    pub fn from_table(t: &CharacterTable) -> CharTableDoc {
        let g = t.group();
        let cls = g.classes();
        CharTableDoc {
            group_order: g.order(),
            class_sizes: cls.sizes.clone(),
            class_rep_orders: Some(cls.reps.iter().map(|&r| g.order_of(r)).collect()),
            labels: Some(t.labels().to_vec()),
            irreducibles: t
                .irreducibles()
                .iter()
                .map(|chi| chi.values().iter().map(|v| v.to_string()).collect())
                .collect(),
        }
    }

    pub fn from_json(text: &str) -> Result<CharTableDoc> {
        serde_json::from_str(text).map_err(|e| schema_error("character table", e))
    }

    pub fn to_json(&self) -> String {
        to_json(self)
    }
}

pub fn load_chartable(path: &str) -> Result<CharTableDoc> {
    CharTableDoc::from_json(&read(path)?).map_err(|e| relocate(e, path))
}

pub fn save_chartable(t: &CharacterTable, path: impl AsRef<Path>) -> Result<()> {
    write(path, &CharTableDoc::from_table(t).to_json())
}

/// One conjugacy class row of a report.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ClassRow {
    pub rep: String,
    pub rep_order: usize,
    pub size: usize,
    pub value: String,
}

/// One irreducible character row of a report.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CoeffRow {
    pub character: String,
    pub degree: u64,
    pub coefficient: String,
}

/// Result of a counting run. Values are exact: integers, `p/q` rationals or
/// `E(n)` literals.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CountReport {
    pub group: String,
    pub function: String,
    pub n: usize,
    pub method: String,
    pub classes: Vec<ClassRow>,
    pub coefficients: Vec<CoeffRow>,
    pub timing_ms: u64,
}

impl CountReport {
    pub fn from_json(text: &str) -> Result<CountReport> {
        serde_json::from_str(text).map_err(|e| schema_error("count report", e))
    }

    pub fn to_json(&self) -> String {
        to_json(self)
    }
}

pub fn load_report(path: &str) -> Result<CountReport> {
    CountReport::from_json(&read(path)?).map_err(|e| relocate(e, path))
}

pub fn save_report(r: &CountReport, path: impl AsRef<Path>) -> Result<()> {
    write(path, &r.to_json())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::characters::{build_table, Provider};
    use crate::group::make_group;

    #[test]
    fn group_round_trip() {
        let g = make_group("cyclic:4").unwrap();
        let doc = GroupDoc::from_group(&g);
        let back = GroupDoc::from_json(&doc.to_json()).unwrap();
        assert_eq!(back, doc);
        assert_eq!(back.into_group().unwrap(), *g);
    }

    #[test]
    fn non_group_document_is_rejected() {
        let text = r#"{"order": 2, "mul": [[0, 1], [1, 1]]}"#;
        assert!(GroupDoc::from_json(text).unwrap().into_group().is_err());
        let bad = r#"{"order": 2, "mul": [[0, 1], [1, 0]], "extra": 1}"#;
        match GroupDoc::from_json(bad) {
            Err(Error::Parse { location, .. }) => assert!(location.contains(":1:")),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn chartable_round_trip_and_size_mismatch() {
        let g = make_group("dihedral:6").unwrap();
        let t = build_table(&g, &Provider::Auto).unwrap();
        let doc = CharTableDoc::from_table(&t);
        let back = CharTableDoc::from_json(&doc.to_json()).unwrap();
        assert_eq!(back, doc);
        let t2 = back
            .clone()
            .into_table(&g, crate::characters::Provenance::FileImport)
            .unwrap()
            .validated()
            .unwrap();
        assert_eq!(t2.irreducibles(), t.irreducibles());

        let mut short_labels = back.clone();
        short_labels.labels = Some(vec!["chi1".into()]);
        let err = short_labels
            .into_table(&g, crate::characters::Provenance::FileImport)
            .unwrap_err();
        assert!(matches!(&err, Error::CorruptTable(m) if m.contains("labels")), "{err}");

        let mut wrong = back;
        wrong.class_sizes[1] += 1;
        let err = wrong
            .into_table(&g, crate::characters::Provenance::FileImport)
            .unwrap_err();
        assert!(matches!(&err, Error::CorruptTable(m) if m.contains("class 1")), "{err}");
    }

    #[test]
    fn report_round_trip() {
        let r = CountReport {
            group: "cyclic:2".into(),
            function: "f".into(),
            n: 3,
            method: "brute".into(),
            classes: vec![ClassRow {
                rep: "1".into(),
                rep_order: 1,
                size: 1,
                value: "8".into(),
            }],
            coefficients: vec![CoeffRow {
                character: "chi0".into(),
                degree: 1,
                coefficient: "1/2".into(),
            }],
            timing_ms: 0,
        };
        assert_eq!(CountReport::from_json(&r.to_json()).unwrap(), r);
    }
}
