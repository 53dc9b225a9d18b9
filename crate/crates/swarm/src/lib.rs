//! Derivative-free population optimizers over real boxes: particle swarm
//! optimization, artificial bee colony, and their cooperative-coevolution
//! variants with one swarm per coordinate.
//!
//! Every run is a pure function of its objective and configuration seed.

pub mod abc;
pub mod coop;
pub mod error;
pub mod objective;
pub mod pso;
pub mod trace;

pub use abc::{abc_run, fitness_transform, roulette_probabilities, AbcConfig, Colony, FoodSource};
pub use coop::{cc_run, ContextVector, CoopConfig, Cooperative, InnerAlgorithm};
pub use error::{Result, SwarmError};
pub use objective::{Bounds, Counting, FnObjective, FullProblem, Objective, Subproblem};
pub use pso::{pso_run, pso_velocity_update, OmegaMode, Particle, PsoConfig, Swarm};
pub use trace::Trace;
