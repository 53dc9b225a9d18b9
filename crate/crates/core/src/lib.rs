//! K-user MIMO interference channel: scenarios, channels, beamformers and
//! the interference-leakage objective used for interference alignment.
//!
//! The optimization unknowns (precoders `V_i` and decoders `U_i`) are packed
//! into a flat real [`DecisionVector`] so that derivative-free optimizers can
//! work on them directly.

pub mod beamformer;
pub mod channel;
pub mod config;
pub mod error;
pub mod leakage;
pub mod rank;
pub mod scenario;

pub use beamformer::{BeamformerSet, DecisionVector};
pub use channel::{CMatrix, ChannelSet};
pub use error::{IaError, Result};
pub use leakage::{leakage, leakage_normalized, residuals, LeakageEvaluator, ResidualVector};
pub use rank::{rank_check, RankDiagnostics, DEFAULT_RANK_TOL};
pub use scenario::ScenarioSpec;
