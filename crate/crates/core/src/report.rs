//! Serialized forms of verdicts: JSON records and CSV report rows.

use std::io::Write;

use serde::{Deserialize, Serialize};

use crate::classify::{ClassRecord, Donaldson, RibbonFamily, Status, Verdict};
use crate::error::Result;
use crate::fibered::{FiberStatus, Subcase};
use crate::params::{ParamList, PretzelKind};

/// One analyzed input, as printed by `pretzelc analyze --json`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnalysisRecord {
    pub input: String,
    pub normalized: ParamList,
    pub kind: PretzelKind,
    pub fibered: FiberStatus,
    pub subcase: Subcase,
    pub determinant: Option<u64>,
    pub signature: Option<i64>,
    /// Carries the witness when embeddable.
    pub donaldson: Option<Donaldson>,
    pub graph_mirrored: Option<bool>,
    pub family: Option<RibbonFamily>,
    pub family_matches: Vec<RibbonFamily>,
    pub exceptional: bool,
    pub detectably_ribbon: bool,
    #[serde(flatten)]
    pub status: Status,
    pub nodes: u64,
    /// Wall time in milliseconds, when measured.
    pub ms: Option<u64>,
}

impl AnalysisRecord {
    pub fn new(input: impl Into<String>, v: &Verdict, ms: Option<u64>) -> Self {
        let o = v.obstructions.as_ref();
        AnalysisRecord {
            input: input.into(),
            normalized: v.normalized.clone(),
            kind: v.kind,
            fibered: v.fibered.status,
            subcase: v.fibered.subcase,
            determinant: o.map(|o| o.det),
            signature: o.map(|o| o.signature),
            donaldson: o.map(|o| o.donaldson.clone()),
            graph_mirrored: o.map(|o| o.graph_mirrored),
            family: v.family.clone(),
            family_matches: v.family_matches.clone(),
            exceptional: v.exceptional,
            detectably_ribbon: v.detectably_ribbon,
            status: v.status.clone(),
            nodes: o.map_or(0, |o| o.nodes),
            ms,
        }
    }
}

pub const CSV_HEADER: [&str; 13] = [
    "class_key",
    "kind",
    "subcase",
    "fibered",
    "det",
    "det_square",
    "sigma",
    "donaldson",
    "family",
    "exceptional",
    "status",
    "nodes",
    "ms",
];

/// Report row for one class; `ms` stays empty unless timings are wanted.
pub fn csv_row(r: &ClassRecord, ms: Option<u64>) -> Vec<String> {
    let v = &r.verdict;
    let o = v.obstructions.as_ref();
    let opt = |x: Option<String>| x.unwrap_or_default();
    vec![
        r.class_key.clone(),
        v.kind.to_string(),
        v.fibered.subcase.to_string(),
        r.fiberable.to_string(),
        opt(o.map(|o| o.det.to_string())),
        opt(o.map(|o| o.det_square.to_string())),
        opt(o.map(|o| o.signature.to_string())),
        opt(o.map(|o| o.donaldson.as_str().to_string())),
        opt(v.family.as_ref().map(|f| f.tag().to_string())),
        v.exceptional.to_string(),
        v.status.to_string(),
        o.map_or(0, |o| o.nodes).to_string(),
        opt(ms.map(|m| m.to_string())),
    ]
}

pub fn write_csv<W: Write>(out: W, records: &[(ClassRecord, Option<u64>)]) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(CSV_HEADER)?;
    for (r, ms) in records {
        w.write_record(csv_row(r, *ms))?;
    }
    w.flush()?;
    Ok(())
}

/// JSON-lines report: one record per class.
pub fn write_jsonl<W: Write>(mut out: W, records: &[(ClassRecord, Option<u64>)]) -> Result<()> {
    for (r, ms) in records {
        let rec = AnalysisRecord::new(r.class_key.clone(), &r.verdict, *ms);
        let line = serde_json::json!({ "fiberable": r.fiberable, "record": rec });
        serde_json::to_writer(&mut out, &line)?;
        out.write_all(b"\n")?;
    }
    Ok(())
}
