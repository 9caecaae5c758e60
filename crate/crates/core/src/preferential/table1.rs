//! Diff harness against the published 46-instance preferential-algorithm
//! table.
//!
//! The published values live verbatim in `data/table1.csv`; nothing here
//! hard-codes them.

use serde::Serialize;

use super::select::{esi, select_in, SelectionReport};
use super::space::{compose_space, labels_match, CompositionSpace};
use super::weights::{PriorityClass, WeightVector};
use crate::catalog::MetricCatalog;
use crate::error::TableError;

pub const TABLE1_CSV: &str = include_str!("../../data/table1.csv");

pub const TABLE1_HEADER: [&str; 9] = [
    "row",
    "w_p",
    "w_t",
    "w_r",
    "priority",
    "esi_t",
    "best",
    "worst",
    "eligible_percent",
];

/// One published row.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PublishedRow {
    pub row: u32,
    pub weights: WeightVector,
    pub priority: PriorityClass,
    pub esi_t: f64,
    pub best: String,
    pub worst: String,
    pub eligible_percent: f64,
}

/// Parses a table transcription in the `data/table1.csv` layout.
pub fn load_published(source: &str) -> Result<Vec<PublishedRow>, TableError> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(true)
        .comment(Some(b'#'))
        .trim(csv::Trim::All)
        .from_reader(source.as_bytes());
    let to_err = |err: csv::Error| TableError::Parse {
        line: err.position().map_or(0, |p| p.line()),
        message: err.to_string(),
    };
    let header = reader.headers().map_err(to_err)?.clone();
    if header.iter().ne(TABLE1_HEADER.iter().copied()) {
        return Err(TableError::Parse {
            line: 1,
            message: format!("expected header `{}`", TABLE1_HEADER.join(",")),
        });
    }

    let mut rows = Vec::new();
    for record in reader.records() {
        let record = record.map_err(to_err)?;
        let line = record.position().map_or(0, |p| p.line());
        let bad = |field: &str| TableError::Parse {
            line,
            message: format!("invalid {field} `{}`", field_value(&record, field)),
        };
        let row: u32 = record[0].parse().map_err(|_| bad("row"))?;
        let weights = format!("{},{},{}", &record[1], &record[2], &record[3])
            .parse()
            .map_err(|source| TableError::Weights { row, source })?;
        let priority = record[4].parse().map_err(|_| bad("priority"))?;
        let esi_t = parse_finite(&record[5]).ok_or_else(|| bad("esi_t"))?;
        let eligible_percent = parse_finite(&record[8]).ok_or_else(|| bad("eligible_percent"))?;
        rows.push(PublishedRow {
            row,
            weights,
            priority,
            esi_t,
            best: record[6].to_string(),
            worst: record[7].to_string(),
            eligible_percent,
        });
    }
    Ok(rows)
}

fn field_value<'r>(record: &'r csv::StringRecord, field: &str) -> &'r str {
    TABLE1_HEADER
        .iter()
        .position(|h| *h == field)
        .and_then(|i| record.get(i))
        .unwrap_or("")
}

fn parse_finite(s: &str) -> Option<f64> {
    s.parse::<f64>().ok().filter(|v| v.is_finite())
}

/// The bundled transcription.
pub fn published_table1() -> Vec<PublishedRow> {
    load_published(TABLE1_CSV).expect("bundled table is valid")
}

/// Computed-versus-published comparison of one row.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RowDiff {
    pub row: u32,
    pub weights: WeightVector,
    pub priority_published: PriorityClass,
    pub priority_computed: PriorityClass,
    #[serde(rename = "esi_t_paper")]
    pub esi_t_published: f64,
    pub esi_t_computed: f64,
    pub esi_t_delta: f64,
    pub best_published: String,
    pub best_computed: String,
    pub best_match: bool,
    /// ESI of the published best suite under the computed model.
    pub best_published_esi: Option<f64>,
    pub best_computed_esi: f64,
    pub worst_published: String,
    pub worst_computed: String,
    pub worst_match: bool,
    pub worst_published_esi: Option<f64>,
    pub worst_computed_esi: f64,
    pub pct_published: f64,
    pub pct_computed: f64,
    pub pct_delta: f64,
}

/// Full reproduction report with summary counts.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Table1Diff {
    pub rows: Vec<RowDiff>,
    pub max_abs_esi_t_delta: f64,
    pub best_matches: usize,
    pub worst_matches: usize,
    /// Rows whose eligibility percentage is within 5 points of the published one.
    pub pct_within_5: usize,
}

impl Table1Diff {
    pub fn best_mismatches(&self) -> impl Iterator<Item = &RowDiff> {
        self.rows.iter().filter(|r| !r.best_match)
    }

    pub fn worst_mismatches(&self) -> impl Iterator<Item = &RowDiff> {
        self.rows.iter().filter(|r| !r.worst_match)
    }

    pub fn pct_mismatches(&self, tolerance: f64) -> impl Iterator<Item = &RowDiff> {
        self.rows
            .iter()
            .filter(move |r| r.pct_delta.abs() > tolerance)
    }
}

fn diff_row(space: &CompositionSpace<'_>, published: &PublishedRow) -> RowDiff {
    let report: SelectionReport = select_in(space, &published.weights);
    let esi_of = |label: &str| {
        space
            .find_label(label)
            .and_then(|idx| space.cell(idx))
            .map(|cell| esi(cell, space, &published.weights))
    };
    RowDiff {
        row: published.row,
        weights: published.weights,
        priority_published: published.priority,
        priority_computed: report.priority,
        esi_t_published: published.esi_t,
        esi_t_computed: report.esi_t,
        esi_t_delta: report.esi_t - published.esi_t,
        best_match: labels_match(&report.best.label, &published.best),
        best_published_esi: esi_of(&published.best),
        best_computed_esi: report.best.esi,
        best_published: published.best.clone(),
        best_computed: report.best.label.clone(),
        worst_match: labels_match(&report.worst.label, &published.worst),
        worst_published_esi: esi_of(&published.worst),
        worst_computed_esi: report.worst.esi,
        worst_published: published.worst.clone(),
        worst_computed: report.worst.label.clone(),
        pct_published: published.eligible_percent,
        pct_computed: report.eligible_percent,
        pct_delta: report.eligible_percent - published.eligible_percent,
    }
}

/// Re-runs every published row against `catalog` and diffs the results.
pub fn reproduce(catalog: &MetricCatalog, published: &[PublishedRow]) -> Table1Diff {
    let space = compose_space(catalog);
    let rows: Vec<RowDiff> = published.iter().map(|p| diff_row(&space, p)).collect();
    Table1Diff {
        max_abs_esi_t_delta: rows.iter().map(|r| r.esi_t_delta.abs()).fold(0.0, f64::max),
        best_matches: rows.iter().filter(|r| r.best_match).count(),
        worst_matches: rows.iter().filter(|r| r.worst_match).count(),
        pct_within_5: rows.iter().filter(|r| r.pct_delta.abs() <= 5.0).count(),
        rows,
    }
}

/// [`reproduce`] with the bundled transcription.
pub fn reproduce_table1(catalog: &MetricCatalog) -> Table1Diff {
    reproduce(catalog, &published_table1())
}
