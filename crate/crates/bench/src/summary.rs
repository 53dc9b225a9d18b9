//! Per-(scenario, algorithm) aggregates over runs.

use std::fmt::Write as _;

use ia_core::ScenarioSpec;

use crate::experiment::{scenario_slug, Algorithm};

#[derive(Debug, Clone, PartialEq)]
pub struct SummaryRow {
    pub scenario: ScenarioSpec,
    pub algorithm: Algorithm,
    pub dimension: usize,
    pub runs: usize,
    pub min_il: f64,
    pub median_il: f64,
    pub rank_pass_rate: f64,
}

impl SummaryRow {
    /// Aggregates `(final IL, rank satisfied)` pairs. Panics on an empty list.
    pub fn from_finals(
        scenario: ScenarioSpec,
        algorithm: Algorithm,
        finals: impl IntoIterator<Item = (f64, bool)>,
    ) -> Self {
        let (mut values, passes): (Vec<f64>, Vec<bool>) = finals.into_iter().unzip();
        assert!(!values.is_empty(), "summary needs at least one run");
        values.sort_by(f64::total_cmp);
        let n = values.len();
        let median_il = if n % 2 == 1 {
            values[n / 2]
        } else {
            0.5 * (values[n / 2 - 1] + values[n / 2])
        };
        let passed = passes.iter().filter(|&&p| p).count();
        Self {
            dimension: scenario.dimension(),
            scenario,
            algorithm,
            runs: n,
            min_il: values[0],
            median_il,
            rank_pass_rate: passed as f64 / n as f64,
        }
    }
}

/// Rows ordered by user count, then algorithm (PSO, CPSO, ABC, CABC).
#[derive(Debug, Clone, PartialEq, Default)]
pub struct SummaryTable {
    rows: Vec<SummaryRow>,
}

pub const SUMMARY_HEADER: &str = "scenario,dimension,algorithm,min_il,median_il,rank_pass_rate";

impl SummaryTable {
    pub fn new(mut rows: Vec<SummaryRow>) -> Self {
        rows.sort_by(|a, b| {
            (a.scenario.users(), scenario_slug(&a.scenario), a.algorithm)
                .cmp(&(b.scenario.users(), scenario_slug(&b.scenario), b.algorithm))
        });
        Self { rows }
    }

    pub fn rows(&self) -> &[SummaryRow] {
        &self.rows
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    /// Machine-readable form with full-precision floats.
    pub fn to_csv(&self) -> String {
        let mut out = String::from(SUMMARY_HEADER);
        out.push('\n');
        for r in &self.rows {
            writeln!(
                out,
                "{},{},{},{},{},{:.2}",
                scenario_slug(&r.scenario),
                r.dimension,
                r.algorithm,
                r.min_il,
                r.median_il,
                r.rank_pass_rate
            )
            .unwrap();
        }
        out
    }

    /// Aligned plain-text table.
    pub fn to_text(&self) -> String {
        let header = ["scenario", "dimension", "algorithm", "runs", "min_il", "median_il", "rank_pass_rate"];
        let cells: Vec<[String; 7]> = self
            .rows
            .iter()
            .map(|r| {
                [
                    r.scenario.to_string(),
                    r.dimension.to_string(),
                    r.algorithm.to_string(),
                    r.runs.to_string(),
                    format!("{:.4e}", r.min_il),
                    format!("{:.4e}", r.median_il),
                    format!("{:.2}", r.rank_pass_rate),
                ]
            })
            .collect();
        let mut widths = header.map(str::len);
        for row in &cells {
            for (w, c) in widths.iter_mut().zip(row) {
                *w = (*w).max(c.len());
            }
        }
        let mut out = String::new();
        let mut line = |fields: Vec<&str>| {
            let padded: Vec<String> = fields
                .iter()
                .zip(widths)
                .enumerate()
                .map(|(i, (f, w))| if i == 0 || i == 2 { format!("{f:<w$}") } else { format!("{f:>w$}") })
                .collect();
            out.push_str(padded.join("  ").trim_end());
            out.push('\n');
        };
        line(header.to_vec());
        for row in &cells {
            line(row.iter().map(String::as_str).collect());
        }
        out
    }
}
