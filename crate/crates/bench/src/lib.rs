//! Experiment harness for metaheuristic interference alignment: binds the
//! leakage objective to the four optimizers, runs seeded multi-run
//! experiments, writes traces and summaries, and checks a closed-form
//! 3-user solution.

pub mod cli;
pub mod error;
pub mod experiment;
pub mod objective;
pub mod oracle;
pub mod report;
pub mod settings;
pub mod summary;

pub use error::{BenchError, Result};
pub use experiment::{run_experiment, Algorithm, AlgorithmParams, Experiment, ExperimentConfig, RunRecord};
pub use objective::{LeakageObjective, ObjectiveMode};
pub use oracle::{closed_form_3user, verify_closed_form, OracleCheck};
pub use summary::{SummaryRow, SummaryTable};
