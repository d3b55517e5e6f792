//! Family files and report output.
//!
//! A family file is JSON:
//!
//! ```json
//! {
//!   "group": {"kind": "cyclic", "n": 10},
//!   "sets": [[0], [5], [1, 9], [2, 3]],
//!   "metadata": {"name": "z10", "expect": {"rwedf": "2", "bimodal": false}}
//! }
//! ```
//!
//! Weights, when present, are `"p/q"` strings. Files written by
//! [`FamilyFile::to_json`] are pretty-printed with a trailing newline and
//! read back to the same bytes.

use std::fmt;
use std::path::Path;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::analysis::DisjointFamily;
use crate::classify::{classify_with_weights, ClassificationReport};
use crate::error::{Error, Result};
use crate::group::{Element, ElementSet, GroupDescriptor};
use crate::rational::Rational;

/// An expected verdict: `false` (must be absent), `true` (must be present)
/// or an exact value.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Expected<T> {
    Holds(bool),
    Value(T),
}

impl<T: PartialEq + fmt::Display> Expected<T> {
    fn check(&self, what: &str, actual: Option<&T>, out: &mut Vec<String>) {
        match (self, actual) {
            (Expected::Holds(true), None) => out.push(format!("expected {what}, found none")),
            (Expected::Holds(false), Some(v)) => out.push(format!("expected no {what}, found {v}")),
            (Expected::Value(want), None) => {
                out.push(format!("expected {what} {want}, found none"))
            }
            (Expected::Value(want), Some(v)) if want != v => {
                out.push(format!("expected {what} {want}, found {v}"))
            }
            _ => {}
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Expectations {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rwedf: Option<Expected<Rational>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub wedf: Option<Expected<Rational>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub edf: Option<Expected<u64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sedf: Option<Expected<u64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bimodal: Option<bool>,
}

impl Expectations {
    /// One message per expectation the report contradicts.
    pub fn mismatches(&self, r: &ClassificationReport) -> Vec<String> {
        let mut out = Vec::new();
        if let Some(e) = &self.rwedf {
            e.check("RWEDF ℓ", r.rwedf.as_ref(), &mut out);
        }
        if let Some(e) = &self.wedf {
            e.check(
                "WEDF ℓ",
                r.wedf.as_ref().and_then(|w| w.ell.as_ref()),
                &mut out,
            );
        }
        if let Some(e) = &self.edf {
            e.check("EDF λ", r.edf.as_ref(), &mut out);
        }
        if let Some(e) = &self.sedf {
            e.check("SEDF λ", r.sedf.as_ref(), &mut out);
        }
        if let Some(b) = self.bimodal {
            if b != r.bimodal.holds {
                out.push(format!("expected bimodal = {b}, found {}", r.bimodal.holds));
            }
        }
        out
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Metadata {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub provenance: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expect: Option<Expectations>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FamilyFile {
    pub group: GroupDescriptor,
    pub sets: Vec<Vec<Element>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weights: Option<Vec<Rational>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub metadata: Option<Metadata>,
}

impl FamilyFile {
    pub fn from_family(f: &DisjointFamily) -> Self {
        FamilyFile {
            group: f.group().descriptor(),
            sets: f.sets().iter().map(|s| s.members().to_vec()).collect(),
            weights: None,
            metadata: None,
        }
    }

    pub fn with_weights(mut self, weights: Vec<Rational>) -> Self {
        self.weights = Some(weights);
        self
    }

    pub fn with_metadata(mut self, metadata: Metadata) -> Self {
        self.metadata = Some(metadata);
        self
    }

    pub fn name(&self) -> Option<&str> {
        self.metadata.as_ref()?.name.as_deref()
    }

    pub fn expectations(&self) -> Option<&Expectations> {
        self.metadata.as_ref()?.expect.as_ref()
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    /// Pretty JSON with a trailing newline.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("family files always serialize");
        s.push('\n');
        s
    }

    /// Single-line JSON, as used for JSONL output.
    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("family files always serialize")
    }

    pub fn read(path: impl AsRef<Path>) -> Result<Self> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }

    pub fn write(&self, path: impl AsRef<Path>) -> Result<()> {
        Ok(std::fs::write(path, self.to_json())?)
    }

    /// Builds the group and validates the sets.
    pub fn to_family(&self) -> Result<DisjointFamily> {
        let g = Arc::new(self.group.build()?);
        let sets = self
            .sets
            .iter()
            .map(|s| ElementSet::new(s.clone()))
            .collect();
        DisjointFamily::new(g, sets)
    }

    pub fn classify(&self) -> Result<(DisjointFamily, ClassificationReport)> {
        let f = self.to_family()?;
        let r = classify_with_weights(&f, self.weights.as_deref())?;
        Ok((f, r))
    }
}

/// One row of a batch report.
#[derive(Clone, Debug, Serialize)]
pub struct ReportRow {
    pub path: String,
    pub name: Option<String>,
    #[serde(flatten)]
    pub outcome: RowOutcome,
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RowOutcome {
    Report(Box<ClassificationReport>),
    Error(String),
}

pub fn report_row(path: &str) -> ReportRow {
    let parsed = FamilyFile::read(path);
    let name = parsed
        .as_ref()
        .ok()
        .and_then(|f| f.name().map(str::to_owned));
    let outcome = match parsed.and_then(|f| f.classify()) {
        Ok((_, r)) => RowOutcome::Report(Box::new(r)),
        Err(e) => RowOutcome::Error(e.to_string()),
    };
    ReportRow {
        path: path.to_owned(),
        name,
        outcome,
    }
}

fn opt<T: fmt::Display>(v: &Option<T>) -> String {
    v.as_ref().map_or_else(|| "-".to_owned(), T::to_string)
}

fn join<T: fmt::Display>(v: &[T]) -> String {
    v.iter().map(T::to_string).collect::<Vec<_>>().join(",")
}

/// Fixed-width text table, one line per row plus a header.
pub fn render_table(rows: &[ReportRow]) -> String {
    let mut out = format!(
        "{:<24} {:>4} {:>3} {:<28} {:>8} {:>6} {:>6} {:<7} {:>8} {:>8}\n",
        "family", "n", "m", "sizes", "rwedf", "edf", "sedf", "bimodal", "e_hat", "r_bound"
    );
    for row in rows {
        let label = row.name.clone().unwrap_or_else(|| row.path.clone());
        match &row.outcome {
            RowOutcome::Report(r) => out.push_str(&format!(
                "{:<24} {:>4} {:>3} {:<28} {:>8} {:>6} {:>6} {:<7} {:>8} {:>8}\n",
                label,
                r.n,
                r.m,
                join(&r.sizes),
                opt(&r.rwedf),
                opt(&r.edf),
                opt(&r.sedf),
                r.bimodal.holds,
                r.amd.e_hat.to_string(),
                r.amd.r_bound.to_string()
            )),
            RowOutcome::Error(e) => out.push_str(&format!("{label:<24} error: {e}\n")),
        }
    }
    out
}

/// Checks a file for its declared expectations.
pub fn verify_file(file: &FamilyFile) -> Result<(ClassificationReport, Vec<String>)> {
    let (_, report) = file.classify()?;
    let mismatches = file
        .expectations()
        .map(|e| e.mismatches(&report))
        .unwrap_or_default();
    Ok((report, mismatches))
}

impl From<&DisjointFamily> for FamilyFile {
    fn from(f: &DisjointFamily) -> Self {
        Self::from_family(f)
    }
}

pub fn parse_sizes(s: &str) -> Result<Vec<usize>> {
    s.split(',')
        .map(|t| {
            t.trim()
                .parse::<usize>()
                .map_err(|_| Error::InvalidParameters(format!("bad size {t:?}")))
        })
        .collect()
}
