//! Artificial bee colony.
//!
//! Each cycle runs an employed phase (one neighbourhood move per source), an
//! onlooker phase (`SN` moves on roulette-selected sources) and a scout phase
//! that replaces at most one exhausted source.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Result, SwarmError};
use crate::objective::{Bounds, FullProblem, Objective, Subproblem};
use crate::trace::Trace;

#[derive(Debug, Clone, PartialEq)]
pub struct AbcConfig {
    /// Number of food sources `SN`.
    pub food_sources: usize,
    /// A source is abandoned once its trial counter exceeds this.
    pub limit: u32,
    /// Maximum cycle number `MCN`.
    pub max_cycles: usize,
    pub seed: u64,
    pub target_cost: Option<f64>,
    /// Clamp neighbourhood candidates to the box.
    pub clamp: bool,
}

impl AbcConfig {
    pub fn new(food_sources: usize, limit: u32, max_cycles: usize, seed: u64) -> Self {
        Self { food_sources, limit, max_cycles, seed, target_cost: None, clamp: false }
    }

    pub fn validate(&self) -> Result<()> {
        if self.food_sources < 2 {
            return Err(SwarmError::InvalidConfig(format!(
                "need at least 2 food sources, got {}",
                self.food_sources
            )));
        }
        if self.limit < 1 {
            return Err(SwarmError::InvalidConfig("limit must be >= 1".into()));
        }
        Ok(())
    }
}

/// `1 / (1 + cost)` for non-negative costs.
pub fn fitness_transform(cost: f64) -> Result<f64> {
    if cost >= 0.0 {
        Ok(1.0 / (1.0 + cost))
    } else {
        Err(SwarmError::NegativeCost(cost))
    }
}

/// Onlooker selection probabilities `fit_i / Σ fit_j`.
///
/// Falls back to uniform when every fitness is zero (all costs infinite).
pub fn roulette_probabilities(fitness: &[f64]) -> Vec<f64> {
    let total: f64 = fitness.iter().sum();
    if total > 0.0 {
        fitness.iter().map(|f| f / total).collect()
    } else {
        vec![1.0 / fitness.len() as f64; fitness.len()]
    }
}

fn roulette_pick(probabilities: &[f64], u: f64) -> usize {
    let mut acc = 0.0;
    for (i, p) in probabilities.iter().enumerate() {
        acc += p;
        if u < acc {
            return i;
        }
    }
    probabilities.len() - 1
}

#[derive(Debug, Clone, PartialEq)]
pub struct FoodSource {
    pub position: Vec<f64>,
    pub cost: f64,
    pub fitness: f64,
    pub trials: u32,
}

/// `x` with coordinate `dim` moved to `x_dim + φ (x_dim − partner_dim)`.
pub fn neighbour_candidate(x: &[f64], partner: &[f64], dim: usize, phi: f64) -> Vec<f64> {
    let mut v = x.to_vec();
    v[dim] = x[dim] + phi * (x[dim] - partner[dim]);
    v
}

/// The food sources of one colony plus the probabilities of its last
/// onlooker phase.
#[derive(Debug, Clone)]
pub struct Colony {
    sources: Vec<FoodSource>,
    bounds: Bounds,
    limit: u32,
    clamp: bool,
    last_probabilities: Vec<f64>,
}

impl Colony {
    /// Uniform random sources; costs are +∞ until evaluated.
    pub fn init<R: Rng + ?Sized>(bounds: Bounds, size: usize, limit: u32, clamp: bool, rng: &mut R) -> Self {
        let sources = (0..size)
            .map(|_| FoodSource {
                position: random_point(&bounds, rng),
                cost: f64::INFINITY,
                fitness: 0.0,
                trials: 0,
            })
            .collect();
        Self { sources, bounds, limit, clamp, last_probabilities: Vec::new() }
    }

    pub fn sources(&self) -> &[FoodSource] {
        &self.sources
    }

    pub fn last_probabilities(&self) -> &[f64] {
        &self.last_probabilities
    }

    pub fn evaluate_all<P: Subproblem + ?Sized>(&mut self, problem: &mut P) -> Result<()> {
        for s in &mut self.sources {
            s.cost = problem.evaluate(&s.position);
            s.fitness = fitness_transform(s.cost)?;
            s.trials = 0;
            problem.offer(&s.position, s.cost);
        }
        Ok(())
    }

    fn explore<P: Subproblem + ?Sized, R: Rng + ?Sized>(
        &mut self,
        i: usize,
        problem: &mut P,
        rng: &mut R,
    ) -> Result<()> {
        let n = self.sources.len();
        let dim = rng.random_range(0..self.bounds.dimension());
        let mut partner = rng.random_range(0..n - 1);
        if partner >= i {
            partner += 1;
        }
        let phi = rng.random_range(-1.0..=1.0);
        let mut candidate = neighbour_candidate(&self.sources[i].position, &self.sources[partner].position, dim, phi);
        if self.clamp {
            self.bounds.clamp(&mut candidate);
        }
        let cost = problem.evaluate(&candidate);
        self.greedy_select(i, candidate, cost)?;
        problem.offer(&self.sources[i].position, self.sources[i].cost);
        Ok(())
    }

    /// Keeps the candidate only if it is strictly better than source `i`.
    pub fn greedy_select(&mut self, i: usize, candidate: Vec<f64>, cost: f64) -> Result<bool> {
        let source = &mut self.sources[i];
        if cost < source.cost {
            source.fitness = fitness_transform(cost)?;
            source.position = candidate;
            source.cost = cost;
            source.trials = 0;
            Ok(true)
        } else {
            source.trials += 1;
            Ok(false)
        }
    }

    pub fn employed_phase<P: Subproblem + ?Sized, R: Rng + ?Sized>(&mut self, problem: &mut P, rng: &mut R) -> Result<()> {
        for i in 0..self.sources.len() {
            self.explore(i, problem, rng)?;
        }
        Ok(())
    }

    pub fn onlooker_phase<P: Subproblem + ?Sized, R: Rng + ?Sized>(&mut self, problem: &mut P, rng: &mut R) -> Result<()> {
        let fitness: Vec<f64> = self.sources.iter().map(|s| s.fitness).collect();
        self.last_probabilities = roulette_probabilities(&fitness);
        for _ in 0..self.sources.len() {
            let i = roulette_pick(&self.last_probabilities, rng.random::<f64>());
            self.explore(i, problem, rng)?;
        }
        Ok(())
    }

    /// Replaces the most-tried source above the limit, if any. Returns its index.
    pub fn scout_phase<P: Subproblem + ?Sized, R: Rng + ?Sized>(
        &mut self,
        problem: &mut P,
        rng: &mut R,
    ) -> Result<Option<usize>> {
        let exhausted = self
            .sources
            .iter()
            .enumerate()
            .filter(|(_, s)| s.trials > self.limit)
            // first index wins ties
            .max_by(|a, b| a.1.trials.cmp(&b.1.trials).then(b.0.cmp(&a.0)))
            .map(|(i, _)| i);
        if let Some(i) = exhausted {
            let position = random_point(&self.bounds, rng);
            let cost = problem.evaluate(&position);
            let source = &mut self.sources[i];
            source.fitness = fitness_transform(cost)?;
            source.position = position;
            source.cost = cost;
            source.trials = 0;
            problem.offer(&source.position, cost);
        }
        Ok(exhausted)
    }

    pub fn cycle<P: Subproblem + ?Sized, R: Rng + ?Sized>(&mut self, problem: &mut P, rng: &mut R) -> Result<()> {
        self.employed_phase(problem, rng)?;
        self.onlooker_phase(problem, rng)?;
        self.scout_phase(problem, rng)?;
        Ok(())
    }
}

fn random_point<R: Rng + ?Sized>(bounds: &Bounds, rng: &mut R) -> Vec<f64> {
    (0..bounds.dimension())
        .map(|d| bounds.lower()[d] + rng.random::<f64>() * bounds.width(d))
        .collect()
}

pub fn abc_run<O: Objective + ?Sized>(objective: &O, cfg: &AbcConfig) -> Result<Trace> {
    cfg.validate()?;
    if objective.dimension() == 0 {
        return Err(SwarmError::InvalidConfig("objective has dimension 0".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut problem = FullProblem::new(objective);
    let mut colony = Colony::init(objective.bounds().clone(), cfg.food_sources, cfg.limit, cfg.clamp, &mut rng);
    colony.evaluate_all(&mut problem)?;

    let mut trace = Trace::new();
    trace.record(problem.best_cost(), problem.evaluations());
    for _ in 0..cfg.max_cycles {
        if cfg.target_cost.is_some_and(|t| problem.best_cost() <= t) {
            break;
        }
        colony.cycle(&mut problem, &mut rng)?;
        trace.record(problem.best_cost(), problem.evaluations());
    }
    trace.best_position = problem.best().to_vec();
    Ok(trace)
}
