/// Best-so-far history of one optimizer run.
///
/// Entry 0 is the initial population; entry `t` is the state after the
/// `t`-th iteration (PSO), cycle (ABC) or full context sweep (CC).
#[derive(Debug, Clone, PartialEq)]
pub struct Trace {
    pub best_cost: Vec<f64>,
    /// Cumulative objective evaluations at each entry.
    pub evaluations: Vec<u64>,
    pub best_position: Vec<f64>,
}

impl Trace {
    pub(crate) fn new() -> Self {
        Self { best_cost: Vec::new(), evaluations: Vec::new(), best_position: Vec::new() }
    }

    pub(crate) fn record(&mut self, cost: f64, evaluations: u64) {
        self.best_cost.push(cost);
        self.evaluations.push(evaluations);
    }

    pub fn final_cost(&self) -> f64 {
        *self.best_cost.last().expect("trace holds the initial entry")
    }

    pub fn total_evaluations(&self) -> u64 {
        self.evaluations.last().copied().unwrap_or(0)
    }

    /// Number of completed iterations (excluding the initial entry).
    pub fn iterations(&self) -> usize {
        self.best_cost.len().saturating_sub(1)
    }

    pub fn is_non_increasing(&self) -> bool {
        self.best_cost.windows(2).all(|w| w[1] <= w[0])
    }
}
