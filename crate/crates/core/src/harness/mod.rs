//! Experiment configuration, seeded replications, summaries and CSV output.

mod config;
mod experiment;
mod output;
mod summary;

pub use config::{Algorithm, ExperimentConfig};
pub use experiment::{resolve_objective, run_experiment, PreparedExperiment};
pub use output::{emit_csv, emit_plot_data, emit_summary_csv, points_path, read_run_csv, RunRow, RUN_HEADER};
pub use summary::{summarize, SummaryCurve};
