//! JSON matroid files.
//!
//! Two forms are accepted. The basis form lists bases explicitly:
//!
//! ```json
//! {"elements": ["1", "2", "3"], "rank": 2, "bases": [["1", "2"], ["1", "3"], ["2", "3"]]}
//! ```
//!
//! The geometry form lists the lines (three or more points) of a simple
//! rank-3 matroid; the rank is implied:
//!
//! ```json
//! {"elements": ["1", "2", "3", "4"], "lines": [["2", "3", "4"]]}
//! ```
//!
//! Both forms may carry an optional `"name"`. Any other key is rejected. The
//! order of `"elements"` fixes the variable order used in polynomial output.

use std::path::Path;

use serde::{Deserialize, Serialize};

use super::{Geometry, Matroid};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatroidFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub elements: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rank: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bases: Option<Vec<Vec<String>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lines: Option<Vec<Vec<String>>>,
}

impl MatroidFile {
    pub fn to_matroid(&self) -> Result<Matroid> {
        match (&self.rank, &self.bases, &self.lines) {
            (Some(rank), Some(bases), None) => Matroid::from_bases(&self.elements, *rank, bases),
            (None, None, Some(lines)) => Geometry {
                points: self.elements.clone(),
                lines: lines.clone(),
            }
            .to_matroid(),
            _ => Err(Error::Parse(
                "expected either \"rank\" and \"bases\", or \"lines\"".into(),
            )),
        }
    }

    pub fn from_matroid(m: &Matroid, name: Option<&str>) -> MatroidFile {
        MatroidFile {
            name: name.map(str::to_string),
            elements: m.elements().map(|e| m.label(e).to_string()).collect(),
            rank: Some(m.rank()),
            bases: Some(
                m.bases()
                    .iter()
                    .map(|b| b.iter().map(|e| m.label(e).to_string()).collect())
                    .collect(),
            ),
            lines: None,
        }
    }

    pub fn from_geometry(g: &Geometry, name: Option<&str>) -> MatroidFile {
        MatroidFile {
            name: name.map(str::to_string),
            elements: g.points.clone(),
            rank: None,
            bases: None,
            lines: Some(g.lines.clone()),
        }
    }
}

pub fn parse_file(text: &str) -> Result<MatroidFile> {
    serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
}

pub fn parse_matroid(text: &str) -> Result<Matroid> {
    parse_file(text)?.to_matroid()
}

pub fn load_matroid(path: impl AsRef<Path>) -> Result<Matroid> {
    let text = std::fs::read_to_string(path.as_ref())
        .map_err(|e| Error::Parse(format!("{}: {e}", path.as_ref().display())))?;
    parse_matroid(&text)
}

pub fn to_json(file: &MatroidFile) -> String {
    serde_json::to_string_pretty(file).expect("matroid file serializes")
}
