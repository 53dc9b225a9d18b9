//! Problem description for the K-user MIMO interference channel.

use std::fmt;

use crate::error::{IaError, Result};

/// A `∏(M_i × N_i, d_i)` interference-channel configuration.
///
/// User `i` transmits `streams[i]` streams from `tx_antennas[i]` antennas to
/// its own receiver, which has `rx_antennas[i]` antennas.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScenarioSpec {
    tx_antennas: Vec<usize>,
    rx_antennas: Vec<usize>,
    streams: Vec<usize>,
}

impl ScenarioSpec {
    /// Heterogeneous constructor; all three lists must have the same length.
    pub fn new(tx_antennas: Vec<usize>, rx_antennas: Vec<usize>, streams: Vec<usize>) -> Result<Self> {
        let k = tx_antennas.len();
        if rx_antennas.len() != k || streams.len() != k {
            return Err(IaError::InvalidScenario(format!(
                "per-user lists differ in length ({} / {} / {})",
                k,
                rx_antennas.len(),
                streams.len()
            )));
        }
        if k < 2 {
            return Err(IaError::InvalidScenario(format!("need at least 2 users, got {k}")));
        }
        for i in 0..k {
            let (m, n, d) = (tx_antennas[i], rx_antennas[i], streams[i]);
            if m == 0 || n == 0 {
                return Err(IaError::InvalidScenario(format!("user {i} has zero antennas")));
            }
            if d == 0 || d > m.min(n) {
                return Err(IaError::InvalidScenario(format!(
                    "user {i}: d = {d} must lie in 1..=min(M, N) = {}",
                    m.min(n)
                )));
            }
        }
        Ok(Self { tx_antennas, rx_antennas, streams })
    }

    /// Symmetric `(M × N, d)^K` scenario.
    pub fn symmetric(users: usize, tx: usize, rx: usize, streams: usize) -> Result<Self> {
        Self::new(vec![tx; users], vec![rx; users], vec![streams; users])
    }

    pub fn users(&self) -> usize {
        self.streams.len()
    }

    pub fn tx_antennas(&self) -> &[usize] {
        &self.tx_antennas
    }

    pub fn rx_antennas(&self) -> &[usize] {
        &self.rx_antennas
    }

    pub fn streams(&self) -> &[usize] {
        &self.streams
    }

    /// `(M, N, d)` when every user shares the same configuration.
    pub fn as_symmetric(&self) -> Option<(usize, usize, usize)> {
        let first = (self.tx_antennas[0], self.rx_antennas[0], self.streams[0]);
        (0..self.users())
            .all(|i| (self.tx_antennas[i], self.rx_antennas[i], self.streams[i]) == first)
            .then_some(first)
    }

    /// Number of complex and real decision variables, `N_v` and `2 N_v`.
    pub fn count_variables(&self) -> (usize, usize) {
        let complex: usize = (0..self.users())
            .map(|i| (self.tx_antennas[i] + self.rx_antennas[i]) * self.streams[i])
            .sum();
        (complex, 2 * complex)
    }

    /// Number of scalar alignment equations, `N_e = Σ_{i≠j} d_i d_j`.
    pub fn count_equations(&self) -> usize {
        let total: usize = self.streams.iter().sum();
        let squares: usize = self.streams.iter().map(|d| d * d).sum();
        total * total - squares
    }

    /// Necessary condition `N_v ≥ N_e` for the alignment system to be solvable.
    pub fn is_feasible(&self) -> bool {
        self.count_variables().0 >= self.count_equations()
    }

    /// Length of the real decision vector.
    pub fn dimension(&self) -> usize {
        self.count_variables().1
    }
}

/// Prints `(5x5,2)^3` for symmetric scenarios and the full product otherwise.
impl fmt::Display for ScenarioSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.as_symmetric() {
            Some((m, n, d)) => write!(f, "({m}x{n},{d})^{}", self.users()),
            None => {
                for i in 0..self.users() {
                    if i > 0 {
                        f.write_str("*")?;
                    }
                    write!(f, "({}x{},{})", self.tx_antennas[i], self.rx_antennas[i], self.streams[i])?;
                }
                Ok(())
            }
        }
    }
}
