//! The interference-leakage objective seen by the optimizers.

use ia_core::{ChannelSet, LeakageEvaluator};
use ia_swarm::{Bounds, Objective};

/// Half-width of the search box around the origin, per real coordinate.
pub const SEARCH_BOX: f64 = 1.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ObjectiveMode {
    /// Leakage of the beamformers as encoded.
    Raw,
    /// Leakage after unit-normalizing every column; zero columns cost +∞.
    Normalized,
}

impl ObjectiveMode {
    pub fn as_str(self) -> &'static str {
        match self {
            ObjectiveMode::Raw => "raw",
            ObjectiveMode::Normalized => "normalized",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s.to_ascii_lowercase().as_str() {
            "raw" => Some(ObjectiveMode::Raw),
            "normalized" | "normalised" => Some(ObjectiveMode::Normalized),
            _ => None,
        }
    }
}

pub struct LeakageObjective {
    evaluator: LeakageEvaluator,
    bounds: Bounds,
    mode: ObjectiveMode,
}

impl LeakageObjective {
    pub fn new(channels: ChannelSet, mode: ObjectiveMode) -> Self {
        let evaluator = LeakageEvaluator::new(channels);
        let bounds = Bounds::uniform(evaluator.dimension(), -SEARCH_BOX, SEARCH_BOX);
        Self { evaluator, bounds, mode }
    }

    pub fn evaluator(&self) -> &LeakageEvaluator {
        &self.evaluator
    }

    pub fn mode(&self) -> ObjectiveMode {
        self.mode
    }
}

impl Objective for LeakageObjective {
    fn bounds(&self) -> &Bounds {
        &self.bounds
    }

    fn evaluate(&self, x: &[f64]) -> f64 {
        let value = match self.mode {
            ObjectiveMode::Raw => self.evaluator.leakage(x),
            ObjectiveMode::Normalized => self.evaluator.leakage_normalized(x),
        };
        value.unwrap_or(f64::INFINITY)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use ia_core::{leakage, BeamformerSet, ScenarioSpec};
    use rand::SeedableRng;

    #[test]
    fn raw_matches_core_leakage() {
        let spec = ScenarioSpec::symmetric(3, 5, 5, 2).unwrap();
        let h = ChannelSet::generate(&spec, 2);
        let obj = LeakageObjective::new(h.clone(), ObjectiveMode::Raw);
        assert_eq!(obj.dimension(), 120);
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(2);
        let b = BeamformerSet::random(&spec, &mut rng);
        let x = b.encode(&spec).unwrap();
        let want = leakage(&h, &b).unwrap();
        assert!((obj.evaluate(x.as_slice()) - want).abs() <= 1e-12 * want);
    }

    #[test]
    fn normalized_mode_is_scale_free_and_rejects_zero() {
        let spec = ScenarioSpec::symmetric(2, 2, 2, 1).unwrap();
        let obj = LeakageObjective::new(ChannelSet::generate(&spec, 1), ObjectiveMode::Normalized);
        let x: Vec<f64> = (0..16).map(|i| 0.1 * i as f64 + 0.05).collect();
        let half: Vec<f64> = x.iter().map(|v| v * 0.5).collect();
        let (a, b) = (obj.evaluate(&x), obj.evaluate(&half));
        assert!(a.is_finite() && (a - b).abs() <= 1e-12 * a);
        assert_eq!(obj.evaluate(&[0.0; 16]), f64::INFINITY);
    }

    #[test]
    fn mode_names() {
        assert_eq!(ObjectiveMode::parse("RAW"), Some(ObjectiveMode::Raw));
        assert_eq!(ObjectiveMode::parse("normalized"), Some(ObjectiveMode::Normalized));
        assert_eq!(ObjectiveMode::parse("x"), None);
    }
}
