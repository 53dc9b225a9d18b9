//! Seeded multi-run experiments of one optimizer on one scenario.

use std::fmt;
use std::path::PathBuf;
use std::time::{Duration, Instant};

use ia_core::{rank_check, BeamformerSet, ChannelSet, DecisionVector, RankDiagnostics, ScenarioSpec, DEFAULT_RANK_TOL};
use ia_swarm::{abc_run, cc_run, pso_run, AbcConfig, CoopConfig, InnerAlgorithm, OmegaMode, PsoConfig, Trace};
use rayon::prelude::*;

use crate::error::{BenchError, Result};
use crate::objective::{LeakageObjective, ObjectiveMode};
use crate::summary::{SummaryRow, SummaryTable};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Algorithm {
    Pso,
    Cpso,
    Abc,
    Cabc,
}

impl Algorithm {
    pub const ALL: [Algorithm; 4] = [Algorithm::Pso, Algorithm::Cpso, Algorithm::Abc, Algorithm::Cabc];

    pub fn name(self) -> &'static str {
        match self {
            Algorithm::Pso => "PSO",
            Algorithm::Cpso => "CPSO",
            Algorithm::Abc => "ABC",
            Algorithm::Cabc => "CABC",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|a| a.name().eq_ignore_ascii_case(s))
    }

    fn is_swarm(self) -> bool {
        matches!(self, Algorithm::Pso | Algorithm::Cpso)
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Optimizer settings. `population` is the swarm size (PSO), the number of
/// food sources (ABC), or the per-coordinate population (CPSO, CABC).
#[derive(Debug, Clone, PartialEq)]
pub struct AlgorithmParams {
    pub omega: f64,
    /// When set, ω is drawn as `c·U[0, 1]` instead of being fixed.
    pub omega_scale: Option<f64>,
    pub population: usize,
    pub limit: u32,
    /// Iterations (PSO) or cycles (ABC, CPSO, CABC).
    pub budget: usize,
}

impl AlgorithmParams {
    /// The published settings; CC budgets default to 200 cycles.
    pub fn defaults(algorithm: Algorithm) -> Self {
        let (omega, population, budget) = match algorithm {
            Algorithm::Pso => (3.0, 100, 5000),
            Algorithm::Cpso => (1e-3, 50, 200),
            Algorithm::Abc => (0.0, 100, 1000),
            Algorithm::Cabc => (0.0, 15, 200),
        };
        Self { omega, omega_scale: None, population, limit: 5, budget }
    }

    fn omega_mode(&self) -> OmegaMode {
        match self.omega_scale {
            Some(c) => OmegaMode::Random { c },
            None => OmegaMode::Fixed(self.omega),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub scenario: ScenarioSpec,
    pub algorithm: Algorithm,
    pub params: AlgorithmParams,
    pub objective_mode: ObjectiveMode,
    pub runs: usize,
    pub master_seed: u64,
    /// Share one channel realization (seeded by the master seed) across runs.
    pub fixed_channel: bool,
    /// Use these channels for every run instead of generating them.
    pub channels: Option<ChannelSet>,
    pub outdir: Option<PathBuf>,
}

impl ExperimentConfig {
    pub fn new(scenario: ScenarioSpec, algorithm: Algorithm) -> Self {
        Self {
            scenario,
            algorithm,
            params: AlgorithmParams::defaults(algorithm),
            objective_mode: ObjectiveMode::Raw,
            runs: 10,
            master_seed: 0,
            fixed_channel: false,
            channels: None,
            outdir: None,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.runs == 0 {
            return Err(BenchError::Config("runs must be >= 1".into()));
        }
        if let Some(h) = &self.channels {
            if h.spec() != &self.scenario {
                return Err(BenchError::Config(format!(
                    "channel file describes {}, experiment uses {}",
                    h.spec(),
                    self.scenario
                )));
            }
        }
        Ok(())
    }

    /// File-name stem such as `5x5x2x3_cabc`.
    pub fn tag(&self) -> String {
        format!("{}_{}", scenario_slug(&self.scenario), self.algorithm.name().to_ascii_lowercase())
    }

    pub fn run_seed(&self, run: usize) -> u64 {
        self.master_seed.wrapping_add(run as u64)
    }

    pub fn channel_seed(&self, run: usize) -> u64 {
        if self.fixed_channel {
            self.master_seed
        } else {
            self.run_seed(run)
        }
    }
}

/// `MxNxdxK` for symmetric scenarios; per-user `MxNxd` joined by `_` otherwise.
pub fn scenario_slug(spec: &ScenarioSpec) -> String {
    match spec.as_symmetric() {
        Some((m, n, d)) => format!("{m}x{n}x{d}x{}", spec.users()),
        None => (0..spec.users())
            .map(|i| format!("{}x{}x{}", spec.tx_antennas()[i], spec.rx_antennas()[i], spec.streams()[i]))
            .collect::<Vec<_>>()
            .join("_"),
    }
}

/// Parses `MxNxdxK`, e.g. `5x5x2x3`.
pub fn parse_scenario_slug(s: &str) -> Result<ScenarioSpec> {
    let parts: Vec<usize> = s
        .split('x')
        .map(|t| t.trim().parse::<usize>())
        .collect::<std::result::Result<_, _>>()
        .map_err(|_| BenchError::Config(format!("scenario must look like MxNxdxK, got {s:?}")))?;
    let [m, n, d, k] = parts[..] else {
        return Err(BenchError::Config(format!("scenario must look like MxNxdxK, got {s:?}")));
    };
    Ok(ScenarioSpec::symmetric(k, m, n, d)?)
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunRecord {
    pub run: usize,
    pub seed: u64,
    pub channel_seed: u64,
    pub trace: Trace,
    /// Last trace entry: the optimized objective (raw or normalized).
    pub final_il: f64,
    pub raw_il: f64,
    /// `None` when the solution has a zero column.
    pub normalized_il: Option<f64>,
    pub rank: RankDiagnostics,
    pub evaluations: u64,
    pub solution: DecisionVector,
    pub wall_time: Duration,
}

impl RunRecord {
    /// Equality on everything except wall time.
    pub fn same_outcome(&self, other: &RunRecord) -> bool {
        RunRecord { wall_time: Duration::ZERO, ..self.clone() } == RunRecord { wall_time: Duration::ZERO, ..other.clone() }
    }
}

#[derive(Debug, Clone)]
pub struct Experiment {
    pub config: ExperimentConfig,
    pub records: Vec<RunRecord>,
    pub summary: SummaryTable,
}

/// Optimizer seed for a run; decorrelated from the channel stream.
fn optimizer_seed(run_seed: u64) -> u64 {
    run_seed ^ 0x9E37_79B9_7F4A_7C15
}

fn run_once(cfg: &ExperimentConfig, run: usize) -> Result<RunRecord> {
    let started = Instant::now();
    let seed = cfg.run_seed(run);
    let channel_seed = cfg.channel_seed(run);
    let channels = match &cfg.channels {
        Some(h) => h.clone(),
        None => ChannelSet::generate(&cfg.scenario, channel_seed),
    };
    let objective = LeakageObjective::new(channels.clone(), cfg.objective_mode);
    let p = &cfg.params;
    let opt_seed = optimizer_seed(seed);
    let trace = match cfg.algorithm {
        Algorithm::Pso => pso_run(&objective, &PsoConfig::new(p.population, p.omega_mode(), p.budget, opt_seed))?,
        Algorithm::Abc => abc_run(&objective, &AbcConfig::new(p.population, p.limit, p.budget, opt_seed))?,
        Algorithm::Cpso | Algorithm::Cabc => {
            let inner = if cfg.algorithm.is_swarm() {
                InnerAlgorithm::Pso { omega: p.omega_mode() }
            } else {
                InnerAlgorithm::Abc { limit: p.limit }
            };
            cc_run(&objective, &CoopConfig::new(inner, p.population, p.budget, opt_seed))?
        }
    };
    let solution = DecisionVector::new(trace.best_position.clone());
    let beamformers = BeamformerSet::decode(solution.as_slice(), &cfg.scenario)?;
    let raw_il = objective.evaluator().leakage(solution.as_slice())?;
    let normalized_il = objective.evaluator().leakage_normalized(solution.as_slice()).ok();
    let rank = rank_check(&channels, &beamformers, DEFAULT_RANK_TOL)?;
    Ok(RunRecord {
        run,
        seed,
        channel_seed,
        final_il: trace.final_cost(),
        evaluations: trace.total_evaluations(),
        trace,
        raw_il,
        normalized_il,
        rank,
        solution,
        wall_time: started.elapsed(),
    })
}

/// Executes all runs (in parallel, merged in run order), builds the
/// summary, and writes outputs when an output directory is configured.
pub fn run_experiment(cfg: &ExperimentConfig) -> Result<Experiment> {
    cfg.validate()?;
    let records = (0..cfg.runs)
        .into_par_iter()
        .map(|run| run_once(cfg, run))
        .collect::<Result<Vec<_>>>()?;
    let row = SummaryRow::from_finals(
        cfg.scenario.clone(),
        cfg.algorithm,
        records.iter().map(|r| (r.final_il, r.rank.satisfied)),
    );
    let experiment = Experiment { config: cfg.clone(), records, summary: SummaryTable::new(vec![row]) };
    if let Some(dir) = &cfg.outdir {
        crate::report::write_experiment(&experiment, dir)?;
    }
    Ok(experiment)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small(algorithm: Algorithm) -> ExperimentConfig {
        let mut cfg = ExperimentConfig::new(ScenarioSpec::symmetric(3, 2, 2, 1).unwrap(), algorithm);
        cfg.runs = 3;
        cfg.params.budget = 5;
        cfg.params.population = 6;
        cfg.master_seed = 11;
        cfg
    }

    #[test]
    fn slugs() {
        let spec = parse_scenario_slug("5x5x2x3").unwrap();
        assert_eq!(spec, ScenarioSpec::symmetric(3, 5, 5, 2).unwrap());
        assert_eq!(scenario_slug(&spec), "5x5x2x3");
        assert!(parse_scenario_slug("5x5x2").is_err());
        assert!(parse_scenario_slug("5x5x6x3").is_err());
        assert!(parse_scenario_slug("axbxcxd").is_err());
    }

    #[test]
    fn algorithm_names() {
        for a in Algorithm::ALL {
            assert_eq!(Algorithm::parse(&a.name().to_lowercase()), Some(a));
        }
        assert_eq!(Algorithm::parse("ga"), None);
    }

    #[test]
    fn algorithm_defaults() {
        let pso = AlgorithmParams::defaults(Algorithm::Pso);
        assert_eq!((pso.omega, pso.population, pso.budget), (3.0, 100, 5000));
        let cpso = AlgorithmParams::defaults(Algorithm::Cpso);
        assert_eq!((cpso.omega, cpso.population), (1e-3, 50));
        let abc = AlgorithmParams::defaults(Algorithm::Abc);
        assert_eq!((abc.population, abc.limit, abc.budget), (100, 5, 1000));
        let cabc = AlgorithmParams::defaults(Algorithm::Cabc);
        assert_eq!((cabc.population, cabc.limit), (15, 5));
    }

    #[test]
    fn zero_budget_passthrough() {
        let mut cfg = small(Algorithm::Pso);
        cfg.runs = 1;
        cfg.params.budget = 0;
        let exp = run_experiment(&cfg).unwrap();
        let rec = &exp.records[0];
        assert_eq!(rec.trace.best_cost.len(), 1);
        assert_eq!(rec.final_il, rec.trace.best_cost[0]);
        assert_eq!(exp.summary.rows()[0].min_il, rec.final_il);
    }

    #[test]
    fn records_are_deterministic_and_complete() {
        for algorithm in Algorithm::ALL {
            let cfg = small(algorithm);
            let a = run_experiment(&cfg).unwrap();
            let b = run_experiment(&cfg).unwrap();
            assert_eq!(a.records.len(), 3);
            for (x, y) in a.records.iter().zip(&b.records) {
                assert!(x.same_outcome(y), "{algorithm}");
                assert_eq!(x.final_il, *x.trace.best_cost.last().unwrap());
                assert!(x.trace.is_non_increasing());
                assert_eq!(x.solution.len(), 24);
                assert_eq!(x.raw_il, x.final_il);
            }
            let row = &a.summary.rows()[0];
            assert_eq!(row.dimension, 24);
            let min = a.records.iter().map(|r| r.final_il).fold(f64::INFINITY, f64::min);
            assert_eq!(row.min_il, min);
        }
    }

    #[test]
    fn fresh_versus_fixed_channels() {
        let mut cfg = small(Algorithm::Abc);
        let fresh: Vec<u64> = run_experiment(&cfg).unwrap().records.iter().map(|r| r.channel_seed).collect();
        assert_eq!(fresh, vec![11, 12, 13]);
        cfg.fixed_channel = true;
        let fixed: Vec<u64> = run_experiment(&cfg).unwrap().records.iter().map(|r| r.channel_seed).collect();
        assert_eq!(fixed, vec![11, 11, 11]);
    }

    #[test]
    fn normalized_mode_reports_normalized_trace() {
        let mut cfg = small(Algorithm::Cabc);
        cfg.objective_mode = ObjectiveMode::Normalized;
        let exp = run_experiment(&cfg).unwrap();
        for r in &exp.records {
            let n = r.normalized_il.unwrap();
            assert!((r.final_il - n).abs() <= 1e-12 * n.max(1e-300));
        }
    }

    #[test]
    fn invalid_configs() {
        let mut cfg = small(Algorithm::Pso);
        cfg.runs = 0;
        assert!(matches!(run_experiment(&cfg), Err(BenchError::Config(_))));
        let mut cfg = small(Algorithm::Pso);
        cfg.params.population = 1;
        assert!(matches!(run_experiment(&cfg), Err(BenchError::Optimizer(_))));
        let mut cfg = small(Algorithm::Pso);
        cfg.channels = Some(ChannelSet::generate(&ScenarioSpec::symmetric(2, 2, 2, 1).unwrap(), 0));
        assert!(matches!(run_experiment(&cfg), Err(BenchError::Config(_))));
    }
}
