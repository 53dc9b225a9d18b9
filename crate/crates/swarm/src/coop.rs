//! Cooperative coevolution with one-dimensional subcomponents.
//!
//! Every coordinate of the problem gets its own PSO swarm or ABC colony.
//! Candidates of swarm `j` are scored by writing them into coordinate `j` of
//! the shared context vector and evaluating the full objective.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::abc::Colony;
use crate::error::{Result, SwarmError};
use crate::objective::{Objective, Subproblem};
use crate::pso::{OmegaMode, Swarm};
use crate::trace::Trace;

/// Optimizer used inside every 1-D subcomponent.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum InnerAlgorithm {
    Pso { omega: OmegaMode },
    Abc { limit: u32 },
}

#[derive(Debug, Clone, PartialEq)]
pub struct CoopConfig {
    pub inner: InnerAlgorithm,
    /// Particles (PSO) or food sources (ABC) per subcomponent.
    pub population: usize,
    pub max_cycles: usize,
    pub seed: u64,
    pub target_cost: Option<f64>,
    pub clamp: bool,
}

impl CoopConfig {
    pub fn new(inner: InnerAlgorithm, population: usize, max_cycles: usize, seed: u64) -> Self {
        Self { inner, population, max_cycles, seed, target_cost: None, clamp: false }
    }

    pub fn validate(&self) -> Result<()> {
        if self.population < 2 {
            return Err(SwarmError::InvalidConfig(format!(
                "per-swarm population must be >= 2, got {}",
                self.population
            )));
        }
        match self.inner {
            InnerAlgorithm::Pso { omega: OmegaMode::Fixed(v) | OmegaMode::Random { c: v } } if !(v >= 0.0 && v.is_finite()) => {
                Err(SwarmError::InvalidConfig(format!("omega parameter must be >= 0, got {v}")))
            }
            InnerAlgorithm::Abc { limit: 0 } => Err(SwarmError::InvalidConfig("limit must be >= 1".into())),
            _ => Ok(()),
        }
    }
}

/// Full-dimension incumbent assembled from every subcomponent's best value.
#[derive(Debug, Clone, PartialEq)]
pub struct ContextVector {
    pub values: Vec<f64>,
    pub cost: f64,
}

/// Coordinate `index` of the context vector seen as a 1-D problem.
struct ContextSlot<'a, O: ?Sized> {
    objective: &'a O,
    context: &'a mut ContextVector,
    index: usize,
    scratch: Vec<f64>,
    evaluations: &'a mut u64,
}

impl<'a, O: Objective + ?Sized> ContextSlot<'a, O> {
    fn new(objective: &'a O, context: &'a mut ContextVector, index: usize, evaluations: &'a mut u64) -> Self {
        let scratch = context.values.clone();
        Self { objective, context, index, scratch, evaluations }
    }
}

impl<O: Objective + ?Sized> Subproblem for ContextSlot<'_, O> {
    fn dimension(&self) -> usize {
        1
    }

    fn evaluate(&mut self, x: &[f64]) -> f64 {
        // only coordinate `index` changes during this subcomponent's turn
        self.scratch[self.index] = x[0];
        *self.evaluations += 1;
        self.objective.evaluate(&self.scratch)
    }

    fn best(&self) -> &[f64] {
        std::slice::from_ref(&self.context.values[self.index])
    }

    fn best_cost(&self) -> f64 {
        self.context.cost
    }

    fn offer(&mut self, x: &[f64], cost: f64) -> bool {
        if cost < self.context.cost {
            self.context.values[self.index] = x[0];
            self.context.cost = cost;
            true
        } else {
            false
        }
    }
}

enum Subcomponents {
    Pso(Vec<Swarm>, OmegaMode),
    Abc(Vec<Colony>),
}

/// Stateful cooperative optimizer; [`cc_run`] drives it to completion.
pub struct Cooperative<'a, O: ?Sized> {
    objective: &'a O,
    subcomponents: Subcomponents,
    context: ContextVector,
    rng: ChaCha8Rng,
    evaluations: u64,
    clamp: bool,
}

impl<'a, O: Objective + ?Sized> Cooperative<'a, O> {
    /// Builds all subcomponents, seeds the context with each population's
    /// first member, then evaluates every member in context.
    pub fn new(objective: &'a O, cfg: &CoopConfig) -> Result<Self> {
        cfg.validate()?;
        let n = objective.dimension();
        if n == 0 {
            return Err(SwarmError::InvalidConfig("objective has dimension 0".into()));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
        let bounds = objective.bounds();
        let (subcomponents, seeds): (Subcomponents, Vec<f64>) = match cfg.inner {
            InnerAlgorithm::Pso { omega } => {
                let swarms: Vec<Swarm> = (0..n)
                    .map(|j| Swarm::init(bounds.slice(j), cfg.population, &mut rng))
                    .collect();
                let seeds = swarms.iter().map(|s| s.particles()[0].position[0]).collect();
                (Subcomponents::Pso(swarms, omega), seeds)
            }
            InnerAlgorithm::Abc { limit } => {
                let colonies: Vec<Colony> = (0..n)
                    .map(|j| Colony::init(bounds.slice(j), cfg.population, limit, cfg.clamp, &mut rng))
                    .collect();
                let seeds = colonies.iter().map(|c| c.sources()[0].position[0]).collect();
                (Subcomponents::Abc(colonies), seeds)
            }
        };
        let cost = objective.evaluate(&seeds);
        let mut this = Self {
            objective,
            subcomponents,
            context: ContextVector { values: seeds, cost },
            rng,
            evaluations: 1,
            clamp: cfg.clamp,
        };
        for j in 0..n {
            let mut slot = ContextSlot::new(this.objective, &mut this.context, j, &mut this.evaluations);
            match &mut this.subcomponents {
                Subcomponents::Pso(swarms, _) => swarms[j].evaluate_all(&mut slot),
                Subcomponents::Abc(colonies) => colonies[j].evaluate_all(&mut slot)?,
            }
        }
        Ok(this)
    }

    pub fn context(&self) -> &ContextVector {
        &self.context
    }

    pub fn evaluations(&self) -> u64 {
        self.evaluations
    }

    /// One sweep over subcomponents `0..n` in order, one inner step each.
    pub fn cycle(&mut self) -> Result<()> {
        let n = self.context.values.len();
        for j in 0..n {
            let mut slot = ContextSlot::new(self.objective, &mut self.context, j, &mut self.evaluations);
            match &mut self.subcomponents {
                Subcomponents::Pso(swarms, omega) => swarms[j].step(&mut slot, *omega, self.clamp, &mut self.rng),
                Subcomponents::Abc(colonies) => colonies[j].cycle(&mut slot, &mut self.rng)?,
            }
        }
        Ok(())
    }
}

pub fn cc_run<O: Objective + ?Sized>(objective: &O, cfg: &CoopConfig) -> Result<Trace> {
    let mut coop = Cooperative::new(objective, cfg)?;
    let mut trace = Trace::new();
    trace.record(coop.context.cost, coop.evaluations);
    for _ in 0..cfg.max_cycles {
        if cfg.target_cost.is_some_and(|t| coop.context.cost <= t) {
            break;
        }
        coop.cycle()?;
        trace.record(coop.context.cost, coop.evaluations);
    }
    trace.best_position = coop.context.values.clone();
    Ok(trace)
}
