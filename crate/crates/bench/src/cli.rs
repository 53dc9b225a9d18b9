//! `ia-bench` command line: `run`, `table`, `oracle`, `check`.

use std::ffi::OsString;
use std::fs;
use std::io::{BufReader, Write};
use std::path::PathBuf;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};
use ia_core::{ChannelSet, ScenarioSpec};

use crate::error::{BenchError, Result};
use crate::experiment::{parse_scenario_slug, run_experiment};
use crate::oracle::verify_closed_form;
use crate::report::{aggregate_records, emit_summary};
use crate::settings::Settings;

#[derive(Debug, Parser)]
#[command(name = "ia-bench", about = "Metaheuristic interference alignment experiments", arg_required_else_help = true)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Run a seeded multi-run experiment.
    Run(Box<RunArgs>),
    /// Summarize every *_records.csv in a directory.
    Table(TableArgs),
    /// Verify the closed-form (2x2,1)^3 alignment solution.
    Oracle(OracleArgs),
    /// Report variable/equation counts and feasibility of a scenario.
    Check(ScenarioArgs),
}

#[derive(Debug, Args)]
struct ScenarioArgs {
    /// Symmetric scenario as MxNxdxK, e.g. 5x5x2x3.
    #[arg(long)]
    scenario: Option<String>,
    #[arg(long = "K")]
    users: Option<usize>,
    #[arg(long = "M")]
    tx: Option<usize>,
    #[arg(long = "N")]
    rx: Option<usize>,
    #[arg(long = "d")]
    streams: Option<usize>,
}

#[derive(Debug, Args)]
struct RunArgs {
    /// key = value configuration file; flags override its entries.
    #[arg(long)]
    config: Option<PathBuf>,
    #[command(flatten)]
    scenario: ScenarioArgs,
    /// pso, cpso, abc or cabc.
    #[arg(long)]
    alg: Option<String>,
    #[arg(long)]
    omega: Option<f64>,
    /// Draw ω = c·U[0,1] per velocity update instead of a fixed ω.
    #[arg(long)]
    c: Option<f64>,
    #[arg(long = "swarm-size")]
    swarm_size: Option<usize>,
    #[arg(long = "sn")]
    food_sources: Option<usize>,
    #[arg(long)]
    limit: Option<u32>,
    /// Iterations (PSO) or cycles (ABC, CPSO, CABC).
    #[arg(long)]
    budget: Option<usize>,
    #[arg(long)]
    runs: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    /// raw or normalized.
    #[arg(long = "objective-mode")]
    objective_mode: Option<String>,
    /// Share one channel realization across runs.
    #[arg(long = "fixed-channel")]
    fixed_channel: bool,
    /// Use the channels in this dump file for every run.
    #[arg(long)]
    channels: Option<PathBuf>,
    #[arg(long)]
    outdir: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct TableArgs {
    /// Directory holding *_records.csv files.
    #[arg(long)]
    dir: PathBuf,
    /// Where to write summary.txt / summary.csv (defaults to --dir).
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct OracleArgs {
    #[arg(long, default_value_t = 20)]
    instances: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

impl ScenarioArgs {
    fn provided(&self) -> bool {
        self.scenario.is_some() || self.users.is_some() || self.tx.is_some() || self.rx.is_some() || self.streams.is_some()
    }

    fn resolve(&self) -> Result<ScenarioSpec> {
        if let Some(slug) = &self.scenario {
            return parse_scenario_slug(slug);
        }
        match (self.users, self.tx, self.rx, self.streams) {
            (Some(k), Some(m), Some(n), Some(d)) => Ok(ScenarioSpec::symmetric(k, m, n, d)?),
            _ => Err(BenchError::Config("give --scenario MxNxdxK or all of --K --M --N --d".into())),
        }
    }
}

fn check(args: &ScenarioArgs, out: &mut dyn Write) -> Result<()> {
    let spec = args.resolve()?;
    let (complex, real) = spec.count_variables();
    let lines = format!(
        "scenario={spec}\nN_v={complex}\nreal_dimension={real}\nN_e={}\nfeasible={}\n",
        spec.count_equations(),
        spec.is_feasible()
    );
    out.write_all(lines.as_bytes()).map_err(|e| BenchError::io("<stdout>", e))
}

fn run(args: &RunArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<()> {
    let mut settings = match &args.config {
        Some(path) => Settings::from_text(&fs::read_to_string(path).map_err(|e| BenchError::io(path, e))?)?,
        None => Settings::default(),
    };
    if args.scenario.provided() {
        let spec = args.scenario.resolve()?;
        settings.set("scenario", crate::experiment::scenario_slug(&spec))?;
    }
    let overrides: [(&str, Option<String>); 11] = [
        ("alg", args.alg.clone()),
        ("omega", args.omega.map(|v| v.to_string())),
        ("c", args.c.map(|v| v.to_string())),
        ("swarm_size", args.swarm_size.map(|v| v.to_string())),
        ("SN", args.food_sources.map(|v| v.to_string())),
        ("limit", args.limit.map(|v| v.to_string())),
        ("budget", args.budget.map(|v| v.to_string())),
        ("runs", args.runs.map(|v| v.to_string())),
        ("seed", args.seed.map(|v| v.to_string())),
        ("objective_mode", args.objective_mode.clone()),
        ("outdir", args.outdir.as_ref().map(|p| p.display().to_string())),
    ];
    for (key, value) in overrides {
        if let Some(v) = value {
            settings.set(key, v)?;
        }
    }
    if args.fixed_channel {
        settings.set("fixed_channel", true)?;
    }
    let mut cfg = settings.to_experiment()?;
    if let Some(path) = &args.channels {
        let file = fs::File::open(path).map_err(|e| BenchError::io(path, e))?;
        cfg.channels = Some(ChannelSet::read_dump(BufReader::new(file)).map_err(|e| match e {
            ia_core::IaError::Io(io) => BenchError::io(path, io),
            other => BenchError::Config(format!("{}: {other}", path.display())),
        })?);
    }
    if !cfg.scenario.is_feasible() {
        writeln!(
            err,
            "warning: {} has N_v = {} < N_e = {}; alignment is not generically feasible",
            cfg.scenario,
            cfg.scenario.count_variables().0,
            cfg.scenario.count_equations()
        )
        .ok();
    }
    let exp = run_experiment(&cfg)?;
    for r in &exp.records {
        writeln!(
            err,
            "run {:>2}: final IL {:.4e}  normalized {}  rank ok {}  evals {}  {:.2?}",
            r.run,
            r.final_il,
            r.normalized_il.map_or("n/a".into(), |v| format!("{v:.4e}")),
            r.rank.satisfied,
            r.evaluations,
            r.wall_time
        )
        .ok();
    }
    out.write_all(exp.summary.to_text().as_bytes()).map_err(|e| BenchError::io("<stdout>", e))
}

fn table(args: &TableArgs, out: &mut dyn Write) -> Result<()> {
    let table = aggregate_records(&args.dir)?;
    let dest = args.out.as_ref().unwrap_or(&args.dir);
    emit_summary(&table, dest, "summary")?;
    out.write_all(table.to_text().as_bytes()).map_err(|e| BenchError::io("<stdout>", e))
}

fn oracle(args: &OracleArgs, out: &mut dyn Write) -> Result<bool> {
    let checks = verify_closed_form(args.instances, args.seed)?;
    let mut all_ok = true;
    let mut text = String::from("channel_seed,closed_form_il,random_il,orders_below,rank_ok,pass\n");
    for c in &checks {
        let pass = c.orders_below_random() >= 12.0 && c.rank_satisfied;
        all_ok &= pass;
        text.push_str(&format!(
            "{},{:e},{:e},{:.1},{},{}\n",
            c.channel_seed,
            c.closed_form_il,
            c.random_il,
            c.orders_below_random(),
            c.rank_satisfied,
            pass
        ));
    }
    text.push_str(if all_ok { "oracle: PASS\n" } else { "oracle: FAIL\n" });
    out.write_all(text.as_bytes()).map_err(|e| BenchError::io("<stdout>", e))?;
    Ok(all_ok)
}

/// Runs the CLI and returns the process exit code: 0 on success, 1 on
/// configuration errors (including bad flags and a failed oracle), 2 on
/// I/O errors.
pub fn main_with<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let rendered = e.render().to_string();
            if code == 0 {
                out.write_all(rendered.as_bytes()).ok();
            } else {
                err.write_all(rendered.as_bytes()).ok();
            }
            return code;
        }
    };
    let result = match &cli.command {
        Command::Check(a) => check(a, out).map(|_| true),
        Command::Run(a) => run(a, out, err).map(|_| true),
        Command::Table(a) => table(a, out).map(|_| true),
        Command::Oracle(a) => oracle(a, out),
    };
    match result {
        Ok(true) => 0,
        Ok(false) => 1,
        Err(e) => {
            writeln!(err, "error: {e}").ok();
            e.exit_code()
        }
    }
}
