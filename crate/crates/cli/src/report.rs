//! Report assembly and rendering.

use std::fmt::Write as _;

use serde::Serialize;

use crate::checks::{Record, Verdict};

pub const SCHEMA: &str = "gradpi-report/1";

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Text,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub schema: &'static str,
    pub scenario: String,
    pub seed: u64,
    pub summary: Summary,
    pub records: Vec<Record>,
}

#[derive(Clone, Debug, Default, Serialize, PartialEq, Eq)]
pub struct Summary {
    pub holds: usize,
    pub fails: usize,
    pub skipped: usize,
    pub errors: usize,
}

impl Report {
    pub fn new(scenario: impl Into<String>, seed: u64, records: Vec<Record>) -> Self {
        let mut summary = Summary::default();
        for r in &records {
            match r.verdict {
                Verdict::Holds => summary.holds += 1,
                Verdict::Fails => summary.fails += 1,
                Verdict::SkippedBudget => summary.skipped += 1,
                Verdict::Error => summary.errors += 1,
            }
        }
        Report {
            schema: SCHEMA,
            scenario: scenario.into(),
            seed,
            summary,
            records,
        }
    }

    /// No check failed or errored.
    pub fn success(&self) -> bool {
        self.summary.fails == 0 && self.summary.errors == 0
    }
}

pub fn emit_report(report: &Report, format: Format) -> String {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(report).expect("report serializes");
            s.push('\n');
            s
        }
        Format::Text => text(report),
    }
}

fn text(report: &Report) -> String {
    let rows: Vec<[String; 6]> = report
        .records
        .iter()
        .map(|r| {
            [
                r.id.clone(),
                r.kind.clone(),
                r.lhs.to_string(),
                r.rhs.to_string(),
                r.verdict.as_str().to_string(),
                format!("{:.1}", r.wall_time_ms),
            ]
        })
        .collect();
    let header = ["id", "kind", "lhs", "rhs", "verdict", "ms"];
    let mut width = header.map(str::len);
    for row in &rows {
        for (w, cell) in width.iter_mut().zip(row) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let mut out = String::new();
    let _ = writeln!(out, "{} ({}), seed {}", report.scenario, report.schema, report.seed);
    let line = |out: &mut String, cells: &[String]| {
        let padded: Vec<String> = cells
            .iter()
            .zip(width)
            .map(|(c, w)| format!("{c}{}", " ".repeat(w - c.chars().count())))
            .collect();
        let _ = writeln!(out, "{}", padded.join("  ").trim_end());
    };
    line(&mut out, &header.map(String::from));
    for (row, r) in rows.iter().zip(&report.records) {
        line(&mut out, row);
        if !r.detail.is_empty() {
            let _ = writeln!(out, "    {}", r.detail);
        }
    }
    let s = &report.summary;
    let _ = writeln!(
        out,
        "{} holds, {} fails, {} skipped, {} errors",
        s.holds, s.fails, s.skipped, s.errors
    );
    out
}
