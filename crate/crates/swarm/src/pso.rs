//! Particle swarm optimization with the single-parameter velocity rule
//!
//! ```text
//! v_id <- ω |p_i'd - p_id| sign(v_id) + r (p_id - x_id) + (1 - r)(p_gd - x_id)
//! x_id <- x_id + v_id
//! ```
//!
//! where `i'` is a random particle, `r ~ U[0, 1]` and `g` the global best.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Result, SwarmError};
use crate::objective::{Bounds, FullProblem, Objective, Subproblem};
use crate::trace::Trace;

/// How ω is chosen for each velocity update.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum OmegaMode {
    Fixed(f64),
    /// `ω = c·r₃`, `r₃ ~ U[0, 1]` drawn once per particle per iteration.
    Random { c: f64 },
}

impl OmegaMode {
    fn sample<R: Rng + ?Sized>(self, rng: &mut R) -> f64 {
        match self {
            OmegaMode::Fixed(w) => w,
            OmegaMode::Random { c } => c * rng.random::<f64>(),
        }
    }

    fn validate(self) -> Result<()> {
        let v = match self {
            OmegaMode::Fixed(w) => w,
            OmegaMode::Random { c } => c,
        };
        if v.is_finite() && v >= 0.0 {
            Ok(())
        } else {
            Err(SwarmError::InvalidConfig(format!("omega parameter must be >= 0, got {v}")))
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PsoConfig {
    pub swarm_size: usize,
    pub omega: OmegaMode,
    pub max_iterations: usize,
    pub seed: u64,
    /// Stop as soon as the best cost reaches this value.
    pub target_cost: Option<f64>,
    /// Clamp in-flight positions to the box.
    pub clamp: bool,
}

impl PsoConfig {
    pub fn new(swarm_size: usize, omega: OmegaMode, max_iterations: usize, seed: u64) -> Self {
        Self { swarm_size, omega, max_iterations, seed, target_cost: None, clamp: false }
    }

    pub fn validate(&self) -> Result<()> {
        if self.swarm_size < 2 {
            return Err(SwarmError::InvalidConfig(format!(
                "swarm size must be >= 2, got {}",
                self.swarm_size
            )));
        }
        self.omega.validate()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Particle {
    pub position: Vec<f64>,
    pub velocity: Vec<f64>,
    pub best: Vec<f64>,
    pub best_cost: f64,
}

/// sign with `sign(0) = +1`.
fn sign(v: f64) -> f64 {
    if v < 0.0 {
        -1.0
    } else {
        1.0
    }
}

/// New velocity for `particle` given the random peer best `peer_best`, the
/// global best `global_best`, the sampled `omega` and one `r` per dimension.
pub fn pso_velocity_update(
    particle: &Particle,
    peer_best: &[f64],
    global_best: &[f64],
    omega: f64,
    r: &[f64],
) -> Result<Vec<f64>> {
    let n = particle.position.len();
    for (name, len) in [
        ("velocity", particle.velocity.len()),
        ("personal best", particle.best.len()),
        ("peer best", peer_best.len()),
        ("global best", global_best.len()),
        ("r", r.len()),
    ] {
        if len != n {
            return Err(SwarmError::DimensionMismatch { what: name, expected: n, got: len });
        }
    }
    Ok((0..n)
        .map(|d| {
            let x = particle.position[d];
            let p = particle.best[d];
            omega * (peer_best[d] - p).abs() * sign(particle.velocity[d])
                + r[d] * (p - x)
                + (1.0 - r[d]) * (global_best[d] - x)
        })
        .collect())
}

/// A population of particles over a box.
#[derive(Debug, Clone)]
pub struct Swarm {
    particles: Vec<Particle>,
    bounds: Bounds,
}

impl Swarm {
    /// Uniform positions in the box; velocities uniform in ±width/10.
    /// Costs stay at +∞ until [`evaluate_all`](Self::evaluate_all).
    pub fn init<R: Rng + ?Sized>(bounds: Bounds, size: usize, rng: &mut R) -> Self {
        let dim = bounds.dimension();
        let particles = (0..size)
            .map(|_| {
                let position: Vec<f64> = (0..dim)
                    .map(|d| bounds.lower()[d] + rng.random::<f64>() * bounds.width(d))
                    .collect();
                let velocity: Vec<f64> = (0..dim)
                    .map(|d| {
                        let span = bounds.width(d) / 10.0;
                        -span + 2.0 * span * rng.random::<f64>()
                    })
                    .collect();
                Particle { best: position.clone(), position, velocity, best_cost: f64::INFINITY }
            })
            .collect();
        Self { particles, bounds }
    }

    pub fn particles(&self) -> &[Particle] {
        &self.particles
    }

    pub fn bounds(&self) -> &Bounds {
        &self.bounds
    }

    /// Evaluates every current position, setting personal bests.
    pub fn evaluate_all<P: Subproblem + ?Sized>(&mut self, problem: &mut P) {
        for p in &mut self.particles {
            let cost = problem.evaluate(&p.position);
            p.best.copy_from_slice(&p.position);
            p.best_cost = cost;
            problem.offer(&p.position, cost);
        }
    }

    /// One synchronous iteration: move every particle, then evaluate and
    /// update personal and global bests on strict improvement.
    pub fn step<P: Subproblem + ?Sized, R: Rng + ?Sized>(
        &mut self,
        problem: &mut P,
        omega: OmegaMode,
        clamp: bool,
        rng: &mut R,
    ) {
        let n = self.particles.len();
        let dim = self.bounds.dimension();
        let global_best = problem.best().to_vec();
        let mut r = vec![0.0; dim];
        let mut velocities = Vec::with_capacity(n);
        for i in 0..n {
            let peer = rng.random_range(0..n);
            let w = omega.sample(rng);
            for rd in r.iter_mut() {
                *rd = rng.random::<f64>();
            }
            let v = pso_velocity_update(&self.particles[i], &self.particles[peer].best, &global_best, w, &r)
                .expect("swarm dimensions are consistent");
            velocities.push(v);
        }
        for (p, v) in self.particles.iter_mut().zip(velocities) {
            for d in 0..dim {
                p.position[d] += v[d];
            }
            p.velocity = v;
            if clamp {
                self.bounds.clamp(&mut p.position);
            }
        }
        for p in &mut self.particles {
            let cost = problem.evaluate(&p.position);
            if cost < p.best_cost {
                p.best.copy_from_slice(&p.position);
                p.best_cost = cost;
            }
            problem.offer(&p.position, cost);
        }
    }
}

/// Runs PSO for `max_iterations` iterations (or until the target cost).
pub fn pso_run<O: Objective + ?Sized>(objective: &O, cfg: &PsoConfig) -> Result<Trace> {
    cfg.validate()?;
    if objective.dimension() == 0 {
        return Err(SwarmError::InvalidConfig("objective has dimension 0".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut problem = FullProblem::new(objective);
    let mut swarm = Swarm::init(objective.bounds().clone(), cfg.swarm_size, &mut rng);
    swarm.evaluate_all(&mut problem);

    let mut trace = Trace::new();
    trace.record(problem.best_cost(), problem.evaluations());
    for _ in 0..cfg.max_iterations {
        if cfg.target_cost.is_some_and(|t| problem.best_cost() <= t) {
            break;
        }
        swarm.step(&mut problem, cfg.omega, cfg.clamp, &mut rng);
        trace.record(problem.best_cost(), problem.evaluations());
    }
    trace.best_position = problem.best().to_vec();
    Ok(trace)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::objective::{Counting, FnObjective};

    fn particle(position: f64, velocity: f64, best: f64) -> Particle {
        Particle { position: vec![position], velocity: vec![velocity], best: vec![best], best_cost: 0.0 }
    }

    #[test]
    fn worked_velocity_example() {
        // 1·|3−1|·(−1) + 0.25·(1−0) + 0.75·(4−0) = −2 + 0.25 + 3
        let p = particle(0.0, -2.0, 1.0);
        let v = pso_velocity_update(&p, &[3.0], &[4.0], 1.0, &[0.25]).unwrap();
        assert_eq!(v, vec![1.25]);
    }

    #[test]
    fn coincident_positions_give_zero_velocity() {
        let p = Particle { position: vec![2.0, -1.0], velocity: vec![0.7, -3.0], best: vec![2.0, -1.0], best_cost: 0.0 };
        let v = pso_velocity_update(&p, &[2.0, -1.0], &[2.0, -1.0], 3.0, &[0.4, 0.9]).unwrap();
        assert_eq!(v, vec![0.0, 0.0]);
    }

    #[test]
    fn pure_cognitive_pull() {
        let p = particle(0.5, 1.0, 2.0);
        let v = pso_velocity_update(&p, &[10.0], &[-7.0], 0.0, &[1.0]).unwrap();
        assert_eq!(v, vec![1.5]);
    }

    #[test]
    fn sign_of_zero_velocity_is_positive() {
        let p = particle(0.0, 0.0, 0.0);
        let v = pso_velocity_update(&p, &[2.0], &[0.0], 1.5, &[0.5]).unwrap();
        assert_eq!(v, vec![3.0]);
        let p = particle(0.0, -0.0, 0.0);
        assert_eq!(pso_velocity_update(&p, &[2.0], &[0.0], 1.5, &[0.5]).unwrap(), vec![3.0]);
    }

    #[test]
    fn velocity_dimension_mismatch() {
        let p = particle(0.0, 0.0, 0.0);
        assert!(matches!(
            pso_velocity_update(&p, &[1.0, 2.0], &[0.0], 1.0, &[0.5]),
            Err(SwarmError::DimensionMismatch { what: "peer best", .. })
        ));
    }

    #[test]
    fn fixed_point_swarm_does_not_move() {
        // every particle sits on the single optimum: all three terms vanish
        let obj = FnObjective::new(Bounds::uniform(2, -1.0, 1.0), |x: &[f64]| x[0] * x[0] + x[1] * x[1]);
        let mut problem = FullProblem::new(&obj);
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let mut swarm = Swarm::init(Bounds::uniform(2, -1.0, 1.0), 4, &mut rng);
        for p in &mut swarm.particles {
            p.position = vec![0.0, 0.0];
        }
        swarm.evaluate_all(&mut problem);
        swarm.step(&mut problem, OmegaMode::Fixed(3.0), false, &mut rng);
        assert!(swarm.particles().iter().all(|p| p.position == vec![0.0, 0.0]));
    }

    #[test]
    fn sphere_1d_converges() {
        let obj = FnObjective::new(Bounds::uniform(1, -1.0, 1.0), |x: &[f64]| x[0] * x[0]);
        for seed in 0..10 {
            let cfg = PsoConfig::new(100, OmegaMode::Fixed(1.0), 200, seed);
            let trace = pso_run(&obj, &cfg).unwrap();
            assert!(trace.final_cost() < 1e-6, "seed {seed}: {}", trace.final_cost());
            assert_eq!(trace.best_cost.len(), 201);
        }
    }

    #[test]
    fn random_omega_mode_runs_and_is_monotone() {
        let obj = FnObjective::new(Bounds::uniform(5, -2.0, 2.0), |x: &[f64]| x.iter().map(|v| v * v).sum());
        let cfg = PsoConfig::new(30, OmegaMode::Random { c: 2.0 }, 100, 3);
        let trace = pso_run(&obj, &cfg).unwrap();
        assert!(trace.is_non_increasing());
        assert!(trace.final_cost() < trace.best_cost[0]);
    }

    #[test]
    fn evaluation_accounting_and_determinism() {
        let obj = Counting::new(FnObjective::new(Bounds::uniform(3, -1.0, 1.0), |x: &[f64]| {
            x.iter().map(|v| (v - 0.3).abs()).sum()
        }));
        let cfg = PsoConfig::new(10, OmegaMode::Fixed(0.5), 25, 9);
        let a = pso_run(&obj, &cfg).unwrap();
        assert_eq!(a.total_evaluations(), obj.count());
        assert_eq!(a.total_evaluations(), 10 + 25 * 10);
        let b = pso_run(&obj, &cfg).unwrap();
        assert_eq!(a, b);
        assert!((obj.evaluate(&a.best_position) - a.final_cost()).abs() == 0.0);
    }

    #[test]
    fn target_cost_stops_early_and_zero_budget_passthrough() {
        let obj = FnObjective::new(Bounds::uniform(1, -1.0, 1.0), |x: &[f64]| x[0] * x[0]);
        let mut cfg = PsoConfig::new(20, OmegaMode::Fixed(1.0), 500, 1);
        cfg.target_cost = Some(1e-3);
        let trace = pso_run(&obj, &cfg).unwrap();
        assert!(trace.iterations() < 500);
        assert!(trace.final_cost() <= 1e-3);

        let zero = pso_run(&obj, &PsoConfig::new(20, OmegaMode::Fixed(1.0), 0, 1)).unwrap();
        assert_eq!(zero.best_cost.len(), 1);
        assert_eq!(zero.total_evaluations(), 20);
    }

    #[test]
    fn invalid_configs() {
        let obj = FnObjective::new(Bounds::uniform(1, -1.0, 1.0), |x: &[f64]| x[0]);
        assert!(pso_run(&obj, &PsoConfig::new(1, OmegaMode::Fixed(1.0), 1, 0)).is_err());
        assert!(pso_run(&obj, &PsoConfig::new(5, OmegaMode::Fixed(-1.0), 1, 0)).is_err());
        assert!(pso_run(&obj, &PsoConfig::new(5, OmegaMode::Random { c: f64::NAN }, 1, 0)).is_err());
    }

    #[test]
    fn clamping_keeps_positions_in_box() {
        let obj = FnObjective::new(Bounds::uniform(2, -1.0, 1.0), |x: &[f64]| -x[0] - x[1]);
        let mut problem = FullProblem::new(&obj);
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let mut swarm = Swarm::init(Bounds::uniform(2, -1.0, 1.0), 10, &mut rng);
        swarm.evaluate_all(&mut problem);
        for _ in 0..20 {
            swarm.step(&mut problem, OmegaMode::Fixed(3.0), true, &mut rng);
            assert!(swarm.particles().iter().all(|p| swarm.bounds().contains(&p.position)));
        }
    }
}
