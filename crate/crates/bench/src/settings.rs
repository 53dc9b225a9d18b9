//! Experiment settings from a flat `key = value` file plus overrides.
//!
//! Keys: `scenario.K`, `scenario.M`, `scenario.N`, `scenario.d` (or
//! `scenario = MxNxdxK`), `alg`, `omega`, `c`, `swarm_size`, `SN`, `limit`,
//! `budget`, `runs`, `seed`, `objective_mode`, `fixed_channel`, `outdir`.

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::str::FromStr;

use ia_core::config::parse_key_values;
use ia_core::ScenarioSpec;

use crate::error::{BenchError, Result};
use crate::experiment::{parse_scenario_slug, Algorithm, AlgorithmParams, ExperimentConfig};
use crate::objective::ObjectiveMode;

const KNOWN_KEYS: &[&str] = &[
    "scenario", "scenario.K", "scenario.M", "scenario.N", "scenario.d", "alg", "omega", "c", "swarm_size", "SN",
    "limit", "budget", "runs", "seed", "objective_mode", "fixed_channel", "outdir",
];

#[derive(Debug, Clone, Default, PartialEq)]
pub struct Settings {
    values: BTreeMap<String, String>,
}

impl Settings {
    pub fn from_text(text: &str) -> Result<Self> {
        let values = parse_key_values(text).map_err(|e| BenchError::Config(e.to_string()))?;
        let settings = Self { values };
        settings.check_keys()?;
        Ok(settings)
    }

    fn check_keys(&self) -> Result<()> {
        match self.values.keys().find(|k| !KNOWN_KEYS.contains(&k.as_str())) {
            Some(k) => Err(BenchError::Config(format!("unknown config key `{k}`"))),
            None => Ok(()),
        }
    }

    /// Sets `key` (overriding any file value).
    pub fn set(&mut self, key: &str, value: impl ToString) -> Result<()> {
        if !KNOWN_KEYS.contains(&key) {
            return Err(BenchError::Config(format!("unknown config key `{key}`")));
        }
        self.values.insert(key.to_string(), value.to_string());
        Ok(())
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.values.get(key).map(String::as_str)
    }

    fn parsed<T: FromStr>(&self, key: &str) -> Result<Option<T>> {
        self.get(key)
            .map(|raw| {
                raw.parse::<T>()
                    .map_err(|_| BenchError::Config(format!("invalid value for `{key}`: {raw:?}")))
            })
            .transpose()
    }

    fn scenario(&self) -> Result<ScenarioSpec> {
        if let Some(slug) = self.get("scenario") {
            return parse_scenario_slug(slug);
        }
        let dim = |key: &str| -> Result<usize> {
            self.parsed(key)?
                .ok_or_else(|| BenchError::Config(format!("missing `{key}` (or `scenario = MxNxdxK`)")))
        };
        Ok(ScenarioSpec::symmetric(dim("scenario.K")?, dim("scenario.M")?, dim("scenario.N")?, dim("scenario.d")?)?)
    }

    pub fn to_experiment(&self) -> Result<ExperimentConfig> {
        let scenario = self.scenario()?;
        let alg = self.get("alg").ok_or_else(|| BenchError::Config("missing `alg`".into()))?;
        let algorithm =
            Algorithm::parse(alg).ok_or_else(|| BenchError::Config(format!("unknown algorithm {alg:?}")))?;
        let mut cfg = ExperimentConfig::new(scenario, algorithm);
        let defaults = AlgorithmParams::defaults(algorithm);
        let population_key = match algorithm {
            Algorithm::Pso | Algorithm::Cpso => "swarm_size",
            Algorithm::Abc | Algorithm::Cabc => "SN",
        };
        cfg.params = AlgorithmParams {
            omega: self.parsed("omega")?.unwrap_or(defaults.omega),
            omega_scale: self.parsed("c")?,
            population: self.parsed(population_key)?.unwrap_or(defaults.population),
            limit: self.parsed("limit")?.unwrap_or(defaults.limit),
            budget: self.parsed("budget")?.unwrap_or(defaults.budget),
        };
        if let Some(runs) = self.parsed("runs")? {
            cfg.runs = runs;
        }
        if let Some(seed) = self.parsed("seed")? {
            cfg.master_seed = seed;
        }
        if let Some(mode) = self.get("objective_mode") {
            cfg.objective_mode = ObjectiveMode::parse(mode)
                .ok_or_else(|| BenchError::Config(format!("objective_mode must be raw or normalized, got {mode:?}")))?;
        }
        if let Some(flag) = self.parsed("fixed_channel")? {
            cfg.fixed_channel = flag;
        }
        cfg.outdir = self.get("outdir").map(PathBuf::from);
        Ok(cfg)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn full_file() {
        let text = "\
scenario.K = 7
scenario.M = 5
scenario.N = 5
scenario.d = 2
alg = cpso
omega = 0.001
swarm_size = 50
budget = 20
runs = 4
seed = 42
objective_mode = normalized
fixed_channel = true
outdir = out/k7
";
        let cfg = Settings::from_text(text).unwrap().to_experiment().unwrap();
        assert_eq!(cfg.scenario, ScenarioSpec::symmetric(7, 5, 5, 2).unwrap());
        assert_eq!(cfg.algorithm, Algorithm::Cpso);
        assert_eq!(cfg.params.omega, 1e-3);
        assert_eq!(cfg.params.population, 50);
        assert_eq!(cfg.params.budget, 20);
        assert_eq!(cfg.runs, 4);
        assert_eq!(cfg.master_seed, 42);
        assert_eq!(cfg.objective_mode, ObjectiveMode::Normalized);
        assert!(cfg.fixed_channel);
        assert_eq!(cfg.outdir, Some(PathBuf::from("out/k7")));
    }

    #[test]
    fn defaults_and_overrides() {
        let mut s = Settings::from_text("scenario = 5x5x2x3\nalg = cabc\nSN = 20\n").unwrap();
        let cfg = s.to_experiment().unwrap();
        assert_eq!(cfg.params.population, 20);
        assert_eq!(cfg.params.limit, 5);
        assert_eq!(cfg.params.budget, 200);
        assert_eq!(cfg.runs, 10);
        s.set("SN", 15).unwrap();
        s.set("c", 2.0).unwrap();
        let cfg = s.to_experiment().unwrap();
        assert_eq!(cfg.params.population, 15);
        assert_eq!(cfg.params.omega_scale, Some(2.0));
    }

    #[test]
    fn config_errors() {
        assert!(Settings::from_text("bogus = 1").is_err());
        assert!(Settings::from_text("no equals sign").is_err());
        assert!(Settings::default().set("bogus", 1).is_err());
        let bad = |t: &str| Settings::from_text(t).unwrap().to_experiment().is_err();
        assert!(bad("alg = pso"));
        assert!(bad("scenario = 5x5x2x3"));
        assert!(bad("scenario = 5x5x2x3\nalg = sa"));
        assert!(bad("scenario = 5x5x2x3\nalg = pso\nruns = -1"));
        assert!(bad("scenario = 5x5x2x3\nalg = pso\nobjective_mode = weird"));
        assert!(bad("scenario.K = 3\nscenario.M = 5\nalg = pso"));
    }
}
