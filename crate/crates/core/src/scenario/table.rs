//! Comparison of computed intervals with reference values.

use serde::Serialize;

use super::TableEntry;
use crate::bounds::{BoundReport, Invariant};

/// A computed interval next to its reference value. `matches` holds when the
/// certified upper bound equals the reference and the lower bound does not
/// exceed it.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TableRow {
    pub scenario: String,
    pub class: String,
    pub n: usize,
    pub invariant: Invariant,
    pub lower: Option<usize>,
    pub upper: Option<usize>,
    pub reference: usize,
    pub matches: bool,
}

impl TableRow {
    pub fn is_missing(&self) -> bool {
        self.lower.is_none()
    }

    fn stage(&self) -> String {
        match self.invariant {
            Invariant::Tc(k) | Invariant::Cat(k) => k.to_string(),
            Invariant::TcInf | Invariant::CatInf => "inf".into(),
        }
    }

    fn cells(&self) -> Vec<String> {
        let opt = |v: Option<usize>| v.map_or("-".to_string(), |v| v.to_string());
        vec![
            self.scenario.clone(),
            self.class.clone(),
            self.n.to_string(),
            self.invariant.to_string(),
            self.stage(),
            opt(self.lower),
            opt(self.upper),
            self.reference.to_string(),
            if self.is_missing() { "missing" } else if self.matches { "yes" } else { "no" }.to_string(),
        ]
    }
}

const HEADER: [&str; 9] = ["scenario", "class", "n", "invariant", "stage", "lower", "upper", "reference", "match"];

pub(crate) fn table_rows(scenario: &str, entries: &[TableEntry], reports: &[BoundReport]) -> Vec<TableRow> {
    entries
        .iter()
        .map(|e| {
            let r = reports.iter().find(|r| r.invariant == e.invariant);
            let lower = r.map(|r| r.lower);
            let upper = r.and_then(|r| r.upper);
            TableRow {
                scenario: scenario.to_string(),
                class: e.class.clone(),
                n: e.n,
                invariant: e.invariant,
                lower,
                upper,
                reference: e.reference,
                matches: upper == Some(e.reference) && lower.is_some_and(|l| l <= e.reference),
            }
        })
        .collect()
}

/// Aligned plain-text rendering.
pub fn table_text(rows: &[TableRow]) -> String {
    let cells: Vec<Vec<String>> = rows.iter().map(TableRow::cells).collect();
    let widths: Vec<usize> = (0..HEADER.len())
        .map(|i| cells.iter().map(|c| c[i].chars().count()).chain([HEADER[i].len()]).max().unwrap_or(0))
        .collect();
    let line = |c: &[String]| {
        let padded: Vec<String> = c.iter().zip(&widths).map(|(s, w)| format!("{s:<w$}")).collect();
        padded.join("  ").trim_end().to_string()
    };
    let mut out = line(&HEADER.map(String::from));
    out.push('\n');
    for c in &cells {
        out.push_str(&line(c));
        out.push('\n');
    }
    out
}

pub fn table_csv(rows: &[TableRow]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(HEADER).expect("in-memory write");
    for r in rows {
        w.write_record(r.cells()).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 fields")
}
