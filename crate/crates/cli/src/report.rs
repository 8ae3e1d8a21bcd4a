//! Serializable reports and their JSON, CSV and text renderings.

use std::fmt::Write as _;

use anyhow::{Context, Result};
use cyclocert::VerificationReport;
use serde::{Deserialize, Serialize};

/// One verified character, flattened for output.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportRow {
    pub group: String,
    pub q: u64,
    pub family: String,
    pub params: Vec<i64>,
    pub degree_formula: String,
    pub conductor: u64,
    pub witness_label: Option<String>,
    /// The witness value in expression syntax.
    pub witness_value: Option<String>,
    pub case_label: Option<String>,
    pub field_generated: bool,
    pub subset_size: String,
    pub pass: bool,
}

impl From<&VerificationReport> for ReportRow {
    fn from(r: &VerificationReport) -> Self {
        let c = &r.character;
        Self {
            group: c.group.name().to_string(),
            q: c.q,
            family: c.family.name().to_string(),
            params: c.params.clone(),
            degree_formula: c.degree_formula().to_string(),
            conductor: r.conductor,
            witness_label: r.witness.as_ref().map(|(w, _)| w.to_string()),
            witness_value: r.witness.as_ref().map(|(_, v)| v.to_string()),
            case_label: r.case.as_ref().map(|k| k.label.name().to_string()),
            field_generated: r.field_generated,
            subset_size: r.generating_subset_size.to_string(),
            pass: r.pass,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Metadata {
    pub tool: String,
    pub version: String,
    pub group: String,
    pub q_values: Vec<u64>,
    /// Only present with `--timing`, so default output is reproducible.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timestamp: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Summary {
    pub passed: usize,
    pub failed: usize,
    pub max_conductor: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub wall_time_secs: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportDocument {
    pub metadata: Metadata,
    pub reports: Vec<ReportRow>,
    pub summary: Summary,
}

impl ReportDocument {
    pub fn new(metadata: Metadata, reports: Vec<ReportRow>, wall_time_secs: Option<f64>) -> Self {
        let passed = reports.iter().filter(|r| r.pass).count();
        let summary = Summary {
            passed,
            failed: reports.len() - passed,
            max_conductor: reports.iter().map(|r| r.conductor).max().unwrap_or(1),
            wall_time_secs,
        };
        Self {
            metadata,
            reports,
            summary,
        }
    }

    pub fn all_passed(&self) -> bool {
        self.summary.failed == 0
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)? + "\n")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).context("malformed report document")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for r in &self.reports {
            let _ = writeln!(
                out,
                "{} {}({}) deg {}: conductor {}, witness {} = {}, case {}, generated {}, subset {}: {}",
                character_label(r),
                r.family,
                join_params(&r.params, ","),
                r.degree_formula,
                r.conductor,
                r.witness_label.as_deref().unwrap_or("-"),
                r.witness_value.as_deref().unwrap_or("-"),
                r.case_label.as_deref().unwrap_or("-"),
                if r.field_generated { "yes" } else { "no" },
                r.subset_size,
                if r.pass { "PASS" } else { "FAIL" },
            );
        }
        let s = &self.summary;
        let _ = write!(
            out,
            "{} passed, {} failed, max conductor {}",
            s.passed, s.failed, s.max_conductor
        );
        if let Some(t) = s.wall_time_secs {
            let _ = write!(out, ", {t:.3}s");
        }
        out.push('\n');
        out
    }
}

fn character_label(r: &ReportRow) -> String {
    format!("{}({})", r.group, r.q)
}

fn join_params(params: &[i64], sep: &str) -> String {
    params
        .iter()
        .map(|p| p.to_string())
        .collect::<Vec<_>>()
        .join(sep)
}

/// Flat CSV form of a row: parameters joined by `;`, absent fields empty.
#[derive(Debug, Serialize, Deserialize)]
struct CsvRow {
    group: String,
    q: u64,
    family: String,
    params: String,
    degree_formula: String,
    conductor: u64,
    witness_label: String,
    witness_value: String,
    case_label: String,
    field_generated: bool,
    subset_size: String,
    pass: bool,
}

impl From<&ReportRow> for CsvRow {
    fn from(r: &ReportRow) -> Self {
        Self {
            group: r.group.clone(),
            q: r.q,
            family: r.family.clone(),
            params: join_params(&r.params, ";"),
            degree_formula: r.degree_formula.clone(),
            conductor: r.conductor,
            witness_label: r.witness_label.clone().unwrap_or_default(),
            witness_value: r.witness_value.clone().unwrap_or_default(),
            case_label: r.case_label.clone().unwrap_or_default(),
            field_generated: r.field_generated,
            subset_size: r.subset_size.clone(),
            pass: r.pass,
        }
    }
}

impl TryFrom<CsvRow> for ReportRow {
    type Error = anyhow::Error;

    fn try_from(r: CsvRow) -> Result<Self> {
        let params = if r.params.is_empty() {
            Vec::new()
        } else {
            r.params
                .split(';')
                .map(|p| p.parse().with_context(|| format!("bad parameter {p:?}")))
                .collect::<Result<_>>()?
        };
        let opt = |s: String| (!s.is_empty()).then_some(s);
        Ok(Self {
            group: r.group,
            q: r.q,
            family: r.family,
            params,
            degree_formula: r.degree_formula,
            conductor: r.conductor,
            witness_label: opt(r.witness_label),
            witness_value: opt(r.witness_value),
            case_label: opt(r.case_label),
            field_generated: r.field_generated,
            subset_size: r.subset_size,
            pass: r.pass,
        })
    }
}

const CSV_HEADER: [&str; 12] = [
    "group",
    "q",
    "family",
    "params",
    "degree_formula",
    "conductor",
    "witness_label",
    "witness_value",
    "case_label",
    "field_generated",
    "subset_size",
    "pass",
];

pub fn rows_to_csv(rows: &[ReportRow]) -> Result<String> {
    let mut w = csv::WriterBuilder::new()
        .has_headers(false)
        .from_writer(Vec::new());
    w.write_record(CSV_HEADER)?;
    for r in rows {
        w.serialize(CsvRow::from(r))?;
    }
    Ok(String::from_utf8(w.into_inner()?)?)
}

pub fn rows_from_csv(text: &str) -> Result<Vec<ReportRow>> {
    csv::Reader::from_reader(text.as_bytes())
        .deserialize::<CsvRow>()
        .map(|r| ReportRow::try_from(r.context("malformed CSV row")?))
        .collect()
}
