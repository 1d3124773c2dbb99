use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;
use std::str::FromStr;
use std::time::Duration;

use serde::Serialize;
use serde_json::Value;

use super::experiment::ExperimentSpec;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skip,
}

impl Status {
    pub fn as_str(&self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Skip => "skip",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CaseRecord {
    pub index: usize,
    pub status: Status,
    pub inputs: BTreeMap<String, Value>,
    pub measured: BTreeMap<String, Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub pass: usize,
    pub fail: usize,
    pub skip: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub tool: String,
    pub version: String,
    pub experiment: ExperimentSpec,
    pub cases: Vec<CaseRecord>,
    pub summary: Summary,
    /// Not serialized, so that reports are reproducible byte for byte.
    #[serde(skip)]
    pub wall_time: Duration,
}

impl Report {
    pub fn new(experiment: ExperimentSpec, cases: Vec<CaseRecord>, wall_time: Duration) -> Self {
        let mut summary = Summary::default();
        for c in &cases {
            match c.status {
                Status::Pass => summary.pass += 1,
                Status::Fail => summary.fail += 1,
                Status::Skip => summary.skip += 1,
            }
        }
        Self {
            tool: env!("CARGO_PKG_NAME").to_string(),
            version: env!("CARGO_PKG_VERSION").to_string(),
            experiment,
            cases,
            summary,
            wall_time,
        }
    }

    /// Every case passed; skips count against this.
    pub fn all_passed(&self) -> bool {
        self.summary.fail == 0 && self.summary.skip == 0
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ReportFormat {
    Json,
    Csv,
    Text,
}

impl FromStr for ReportFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "json" => Ok(ReportFormat::Json),
            "csv" => Ok(ReportFormat::Csv),
            "text" | "txt" => Ok(ReportFormat::Text),
            _ => Err(Error::UnknownFormat(s.to_string())),
        }
    }
}

impl ReportFormat {
    pub fn extension(&self) -> &'static str {
        match self {
            ReportFormat::Json => "json",
            ReportFormat::Csv => "csv",
            ReportFormat::Text => "txt",
        }
    }
}

pub fn emit_report(r: &Report, format: ReportFormat) -> Vec<u8> {
    match format {
        ReportFormat::Json => {
            let mut s = serde_json::to_string_pretty(r).expect("report serializes");
            s.push('\n');
            s.into_bytes()
        }
        ReportFormat::Csv => emit_csv(r).into_bytes(),
        ReportFormat::Text => emit_text(r).into_bytes(),
    }
}

/// Cell text for a JSON value: strings bare, `null` empty.
fn cell(v: &Value) -> String {
    match v {
        Value::Null => String::new(),
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn quote(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

/// One row per case; columns are `index,status,note` then the union of
/// `inputs.*` and `measured.*` keys in sorted order.
fn emit_csv(r: &Report) -> String {
    let inputs: BTreeSet<&String> = r.cases.iter().flat_map(|c| c.inputs.keys()).collect();
    let measured: BTreeSet<&String> = r.cases.iter().flat_map(|c| c.measured.keys()).collect();
    let mut out = String::from("index,status,note");
    for k in &inputs {
        write!(out, ",{}", quote(&format!("inputs.{k}"))).unwrap();
    }
    for k in &measured {
        write!(out, ",{}", quote(&format!("measured.{k}"))).unwrap();
    }
    out.push('\n');
    for c in &r.cases {
        write!(out, "{},{},{}", c.index, c.status.as_str(), quote(c.note.as_deref().unwrap_or(""))).unwrap();
        for k in &inputs {
            write!(out, ",{}", quote(&c.inputs.get(*k).map(cell).unwrap_or_default())).unwrap();
        }
        for k in &measured {
            write!(out, ",{}", quote(&c.measured.get(*k).map(cell).unwrap_or_default())).unwrap();
        }
        out.push('\n');
    }
    out
}

fn emit_text(r: &Report) -> String {
    let mut out = String::new();
    writeln!(out, "{} {}: {} (seed {}, degree {})", r.tool, r.version, r.experiment.params.kind(), r.experiment.seed, r.experiment.degree).unwrap();
    if r.experiment.perturbation != 0.0 {
        writeln!(out, "perturbation {}", r.experiment.perturbation).unwrap();
    }
    for c in &r.cases {
        let kv = |m: &BTreeMap<String, Value>| m.iter().map(|(k, v)| format!("{k}={}", cell(v))).collect::<Vec<_>>().join(" ");
        write!(out, "#{:<5} {:<4} {} | {}", c.index, c.status.as_str(), kv(&c.inputs), kv(&c.measured)).unwrap();
        if let Some(n) = &c.note {
            write!(out, " | {n}").unwrap();
        }
        out.push('\n');
    }
    writeln!(out, "pass {} fail {} skip {}", r.summary.pass, r.summary.fail, r.summary.skip).unwrap();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harness::experiment::{ExperimentKind, ExperimentSpec};

    fn spec() -> ExperimentSpec {
        ExperimentSpec::default_for(ExperimentKind::NilpotentSections)
    }

    #[test]
    fn empty_report_is_valid_json() {
        let r = Report::new(spec(), vec![], Duration::ZERO);
        let v: Value = serde_json::from_slice(&emit_report(&r, ReportFormat::Json)).unwrap();
        assert_eq!(v["cases"].as_array().unwrap().len(), 0);
        assert_eq!(v["summary"]["pass"], 0);
        assert!(r.all_passed());
    }

    #[test]
    fn one_passing_case() {
        let case = CaseRecord {
            index: 0,
            status: Status::Pass,
            inputs: BTreeMap::from([("x".to_string(), Value::from(1.5))]),
            measured: BTreeMap::from([("y, z".to_string(), Value::from("a\"b"))]),
            note: None,
        };
        let r = Report::new(spec(), vec![case], Duration::from_secs(3));
        let v: Value = serde_json::from_slice(&emit_report(&r, ReportFormat::Json)).unwrap();
        assert_eq!(v["summary"], serde_json::json!({"pass": 1, "fail": 0, "skip": 0}));
        assert!(v.get("wall_time").is_none());
        let csv = String::from_utf8(emit_report(&r, ReportFormat::Csv)).unwrap();
        assert_eq!(csv, "index,status,note,inputs.x,\"measured.y, z\"\n0,pass,,1.5,\"a\"\"b\"\n");
    }

    #[test]
    fn formats_parse() {
        assert_eq!("JSON".parse::<ReportFormat>().unwrap(), ReportFormat::Json);
        assert_eq!("csv".parse::<ReportFormat>().unwrap(), ReportFormat::Csv);
        assert_eq!("text".parse::<ReportFormat>().unwrap(), ReportFormat::Text);
        assert_eq!("xml".parse::<ReportFormat>(), Err(Error::UnknownFormat("xml".into())));
    }
}
