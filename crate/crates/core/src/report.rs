//! JSON and CSV rendering of bound reports.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::bounds::{BoundReport, Side};
use crate::exact::interval::Verdict;
use crate::exact::to_decimal;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
}

/// Flat, serializable form of a [`BoundReport`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportRecord {
    pub name: String,
    pub lhs: String,
    pub rhs: String,
    /// `None` when the comparison was undecided.
    pub holds: Option<bool>,
    pub sharp: bool,
    pub strict: bool,
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub bits_used: Option<u32>,
    pub context: BTreeMap<String, String>,
}

impl ReportRecord {
    /// `decimal` renders exact values with that many digits instead of `p/q`.
    pub fn new(r: &BoundReport, decimal: Option<usize>) -> Self {
        let side = |s: &Side| match (s, decimal) {
            (Side::Exact(v), Some(d)) => to_decimal(v, d),
            (Side::Enclosed(iv), Some(d)) => iv.to_decimal(d),
            _ => s.render(),
        };
        ReportRecord {
            name: r.name.to_string(),
            lhs: side(&r.lhs),
            rhs: side(&r.rhs),
            holds: match r.verdict {
                Verdict::Holds => Some(true),
                Verdict::Violated => Some(false),
                Verdict::Undecided => None,
            },
            sharp: r.sharp,
            strict: r.strict,
            verdict: r.verdict,
            bits_used: r.bits_used,
            context: r.context.clone(),
        }
    }
}

fn context_cell(ctx: &BTreeMap<String, String>) -> String {
    ctx.iter()
        .map(|(k, v)| format!("{k}={v}"))
        .collect::<Vec<_>>()
        .join(";")
}

pub fn emit_report(reports: &[BoundReport], format: Format, decimal: Option<usize>) -> String {
    let records: Vec<ReportRecord> = reports.iter().map(|r| ReportRecord::new(r, decimal)).collect();
    match format {
        Format::Json => serde_json::to_string_pretty(&records).expect("records serialize"),
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(["name", "lhs", "rhs", "holds", "sharp", "strict", "context"])
                .expect("in-memory write");
            for r in &records {
                let holds = r.holds.map_or(String::new(), |h| h.to_string());
                w.write_record([
                    r.name.as_str(),
                    &r.lhs,
                    &r.rhs,
                    &holds,
                    &r.sharp.to_string(),
                    &r.strict.to_string(),
                    &context_cell(&r.context),
                ])
                .expect("in-memory write");
            }
            String::from_utf8(w.into_inner().expect("flush")).expect("utf8")
        }
    }
}

/// Parses the JSON produced by [`emit_report`].
pub fn parse_report_json(text: &str) -> serde_json::Result<Vec<ReportRecord>> {
    serde_json::from_str(text)
}
