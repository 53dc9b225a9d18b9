//! CSV and text outputs: traces, run records, summaries, channel dumps.

use std::fs;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use ia_core::ScenarioSpec;
use ia_swarm::Trace;

use crate::error::{BenchError, Result};
use crate::experiment::{parse_scenario_slug, scenario_slug, Algorithm, Experiment, RunRecord};
use crate::summary::{SummaryRow, SummaryTable};

pub const TRACE_HEADER: &str = "iteration,best_il,evaluations";
pub const RECORDS_HEADER: &str = "scenario,dimension,algorithm,run,seed,channel_seed,final_il,raw_il,normalized_il,rank_satisfied,ranks,min_singular,evaluations,iterations";
pub const RECORDS_SUFFIX: &str = "_records.csv";

fn write_file(path: &Path, contents: &str) -> Result<()> {
    fs::write(path, contents).map_err(|e| BenchError::io(path, e))
}

fn read_file(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| BenchError::io(path, e))
}

/// One row per trace entry, row 0 being the initial population.
///
/// Floats use Rust's shortest round-trip formatting, so re-parsing yields
/// the exact in-memory values.
pub fn trace_csv(trace: &Trace) -> String {
    let mut out = String::with_capacity(32 * (trace.best_cost.len() + 1));
    out.push_str(TRACE_HEADER);
    out.push('\n');
    for (i, (cost, evals)) in trace.best_cost.iter().zip(&trace.evaluations).enumerate() {
        out.push_str(&format!("{i},{cost},{evals}\n"));
    }
    out
}

pub fn emit_trace(trace: &Trace, path: &Path) -> Result<()> {
    write_file(path, &trace_csv(trace))
}

/// Parses a trace file back into `(best_il, evaluations)` columns.
pub fn read_trace(path: &Path) -> Result<(Vec<f64>, Vec<u64>)> {
    let text = read_file(path)?;
    parse_trace(&text).map_err(|msg| BenchError::Config(format!("{}: {msg}", path.display())))
}

fn parse_trace(text: &str) -> std::result::Result<(Vec<f64>, Vec<u64>), String> {
    let mut lines = text.lines();
    if lines.next() != Some(TRACE_HEADER) {
        return Err("missing trace header".into());
    }
    let mut costs = Vec::new();
    let mut evals = Vec::new();
    for (i, line) in lines.enumerate() {
        let fields: Vec<&str> = line.split(',').collect();
        let [iter, cost, ev] = fields[..] else {
            return Err(format!("line {}: expected 3 fields", i + 2));
        };
        if iter.parse::<usize>() != Ok(i) {
            return Err(format!("line {}: iteration out of sequence", i + 2));
        }
        costs.push(cost.parse().map_err(|_| format!("line {}: bad cost {cost:?}", i + 2))?);
        evals.push(ev.parse().map_err(|_| format!("line {}: bad evaluation count {ev:?}", i + 2))?);
    }
    Ok((costs, evals))
}

fn record_line(scenario: &ScenarioSpec, algorithm: Algorithm, r: &RunRecord) -> String {
    let ranks: Vec<String> = r.rank.per_user_rank.iter().map(usize::to_string).collect();
    let min_singular = r.rank.per_user_smallest_singular.iter().copied().fold(f64::INFINITY, f64::min);
    let normalized = r.normalized_il.map(|v| v.to_string()).unwrap_or_default();
    format!(
        "{},{},{},{},{},{},{},{},{},{},{},{},{},{}",
        scenario_slug(scenario),
        scenario.dimension(),
        algorithm,
        r.run,
        r.seed,
        r.channel_seed,
        r.final_il,
        r.raw_il,
        normalized,
        r.rank.satisfied,
        ranks.join(";"),
        min_singular,
        r.evaluations,
        r.trace.iterations()
    )
}

pub fn records_csv(exp: &Experiment) -> String {
    let mut out = String::from(RECORDS_HEADER);
    out.push('\n');
    for r in &exp.records {
        out.push_str(&record_line(&exp.config.scenario, exp.config.algorithm, r));
        out.push('\n');
    }
    out
}

/// The fields of a records file that summaries need.
#[derive(Debug, Clone, PartialEq)]
pub struct RecordRow {
    pub scenario: ScenarioSpec,
    pub algorithm: Algorithm,
    pub run: usize,
    pub final_il: f64,
    pub rank_satisfied: bool,
}

pub fn parse_records(text: &str) -> std::result::Result<Vec<RecordRow>, String> {
    let mut lines = text.lines();
    if lines.next() != Some(RECORDS_HEADER) {
        return Err("missing records header".into());
    }
    lines
        .enumerate()
        .map(|(i, line)| {
            let f: Vec<&str> = line.split(',').collect();
            if f.len() != 14 {
                return Err(format!("line {}: expected 14 fields, got {}", i + 2, f.len()));
            }
            let scenario = parse_scenario_slug(f[0]).map_err(|e| format!("line {}: {e}", i + 2))?;
            let algorithm = Algorithm::parse(f[2]).ok_or_else(|| format!("line {}: unknown algorithm {:?}", i + 2, f[2]))?;
            Ok(RecordRow {
                scenario,
                algorithm,
                run: f[3].parse().map_err(|_| format!("line {}: bad run index", i + 2))?,
                final_il: f[6].parse().map_err(|_| format!("line {}: bad final_il", i + 2))?,
                rank_satisfied: f[9].parse().map_err(|_| format!("line {}: bad rank flag", i + 2))?,
            })
        })
        .collect()
}

fn write_summary_files(table: &SummaryTable, dir: &Path, stem: &str) -> Result<(PathBuf, PathBuf)> {
    let txt = dir.join(format!("{stem}.txt"));
    let csv = dir.join(format!("{stem}.csv"));
    write_file(&txt, &table.to_text())?;
    write_file(&csv, &table.to_csv())?;
    Ok((txt, csv))
}

/// Writes `<stem>.txt` (aligned) and `<stem>.csv` into `dir`.
pub fn emit_summary(table: &SummaryTable, dir: &Path, stem: &str) -> Result<(PathBuf, PathBuf)> {
    if table.is_empty() {
        return Err(BenchError::Config("summary table is empty".into()));
    }
    fs::create_dir_all(dir).map_err(|e| BenchError::io(dir, e))?;
    write_summary_files(table, dir, stem)
}

pub fn trace_path(dir: &Path, tag: &str, run: usize) -> PathBuf {
    dir.join(format!("{tag}_run{run:02}_trace.csv"))
}

/// Traces, channel dumps, the records file and a per-experiment summary.
pub fn write_experiment(exp: &Experiment, dir: &Path) -> Result<()> {
    fs::create_dir_all(dir).map_err(|e| BenchError::io(dir, e))?;
    let tag = exp.config.tag();
    for r in &exp.records {
        emit_trace(&r.trace, &trace_path(dir, &tag, r.run))?;
    }
    if exp.config.scenario.as_symmetric().is_some() {
        let mut seeds: Vec<u64> = exp.records.iter().map(|r| r.channel_seed).collect();
        seeds.dedup();
        for seed in seeds {
            let path = dir.join(format!("{}_channels_seed{seed}.txt", scenario_slug(&exp.config.scenario)));
            let h = match &exp.config.channels {
                Some(h) => h.clone(),
                None => ia_core::ChannelSet::generate(&exp.config.scenario, seed),
            };
            let file = fs::File::create(&path).map_err(|e| BenchError::io(&path, e))?;
            let mut out = BufWriter::new(file);
            h.write_dump(&mut out).map_err(|e| match e {
                ia_core::IaError::Io(io) => BenchError::io(&path, io),
                other => other.into(),
            })?;
            out.flush().map_err(|e| BenchError::io(&path, e))?;
        }
    }
    write_file(&dir.join(format!("{tag}{RECORDS_SUFFIX}")), &records_csv(exp))?;
    emit_summary(&exp.summary, dir, &format!("{tag}_summary"))?;
    Ok(())
}

/// Builds one summary row per `(scenario, algorithm)` from every
/// `*_records.csv` file in `dir`.
pub fn aggregate_records(dir: &Path) -> Result<SummaryTable> {
    let mut files: Vec<PathBuf> = fs::read_dir(dir)
        .map_err(|e| BenchError::io(dir, e))?
        .filter_map(|entry| entry.ok().map(|e| e.path()))
        .filter(|p| p.file_name().and_then(|n| n.to_str()).is_some_and(|n| n.ends_with(RECORDS_SUFFIX)))
        .collect();
    files.sort();
    let mut groups: Vec<((ScenarioSpec, Algorithm), Vec<(f64, bool)>)> = Vec::new();
    for path in &files {
        let rows = parse_records(&read_file(path)?).map_err(|m| BenchError::Config(format!("{}: {m}", path.display())))?;
        for row in rows {
            let key = (row.scenario.clone(), row.algorithm);
            match groups.iter_mut().find(|(k, _)| *k == key) {
                Some((_, v)) => v.push((row.final_il, row.rank_satisfied)),
                None => groups.push((key, vec![(row.final_il, row.rank_satisfied)])),
            }
        }
    }
    if groups.is_empty() {
        return Err(BenchError::Config(format!("no *{RECORDS_SUFFIX} files in {}", dir.display())));
    }
    Ok(SummaryTable::new(
        groups
            .into_iter()
            .map(|((scenario, algorithm), finals)| SummaryRow::from_finals(scenario, algorithm, finals))
            .collect(),
    ))
}
