use std::thread;

use super::config::{Algorithm, ExperimentConfig};
use crate::baselines::{run_addgp, run_full_bo, run_random_search, run_rembo};
use crate::domain::BoxDomain;
use crate::dropout;
use crate::error::{Error, Result};
use crate::objectives::{self, synthetic_separable, LabelSpec, Objective};
use crate::record::{RunRecord, Sense};

/// Builds the objective named in `config`.
pub fn resolve_objective(config: &ExperimentConfig) -> Result<Objective> {
    let cube = |lo: f64, hi: f64| (config.lower.unwrap_or(lo), config.upper.unwrap_or(hi));
    let need_dim = || config.dim.ok_or_else(|| Error::Config(format!("objective `{}` needs `dim`", config.objective)));
    let obj = match config.objective.as_str() {
        "gaussian-mixture" => {
            let (lo, hi) = cube(1.0, 4.0);
            Objective::gaussian_mixture(need_dim()?, config.mu1, config.mu2, lo, hi)?
        }
        "schwefel12" => {
            let (lo, hi) = cube(-1.0, 1.0);
            Objective::schwefel12(need_dim()?, lo, hi)?
        }
        "cascade" => {
            let path = config
                .dataset
                .as_ref()
                .ok_or_else(|| Error::Config("objective `cascade` needs `dataset`".into()))?;
            let spec = LabelSpec {
                column: config.label_column,
                positive: config.positive_label.clone(),
            };
            Objective::cascade(objectives::load_dataset(path, &spec)?)?
        }
        "cascade-synthetic" => Objective::cascade(synthetic_separable(config.rows, need_dim()?, config.data_seed)?)?,
        other => {
            return Err(Error::UnknownName {
                kind: "objective",
                name: other.to_string(),
                available: objectives::objective_names(),
            })
        }
    };
    if let Some(dim) = config.dim {
        if dim != obj.spec().dim() {
            return Err(Error::Config(format!(
                "dim = {dim} but objective `{}` has {} dimensions",
                config.objective,
                obj.spec().dim()
            )));
        }
    }
    Ok(obj)
}

/// A validated experiment with its objective resolved; running it can only
/// fail for runtime reasons.
#[derive(Debug, Clone)]
pub struct PreparedExperiment {
    pub config: ExperimentConfig,
    pub objective: Objective,
}

impl PreparedExperiment {
    pub fn new(config: ExperimentConfig) -> Result<Self> {
        config.validate()?;
        let objective = resolve_objective(&config)?;
        let dim = objective.spec().dim();
        if config.d > dim {
            return Err(Error::Config(format!("d = {} exceeds the problem dimension {dim}", config.d)));
        }
        Ok(Self { config, objective })
    }

    pub fn domain(&self) -> &BoxDomain {
        &self.objective.spec().domain
    }

    pub fn sense(&self) -> Sense {
        self.objective.spec().sense
    }

    /// Replication `i`, reported in the objective's own sense.
    pub fn run_replication(&self, replication: usize) -> Result<RunRecord> {
        let cfg = self.config.dropout_config(replication);
        let f = |x: &[f64]| self.objective.evaluate_max(x);
        let domain = self.domain();
        let iters = self.config.iterations;
        let record = match self.config.algorithm {
            Algorithm::DropoutRandom | Algorithm::DropoutCopy | Algorithm::DropoutMix => {
                dropout::run(f, domain, &cfg, iters)?
            }
            Algorithm::RandomSearch => run_random_search(f, domain, cfg.n_init, iters, cfg.seed)?,
            Algorithm::FullBo => run_full_bo(f, domain, &cfg, iters)?,
            Algorithm::Rembo => run_rembo(f, domain, &cfg, iters)?,
            Algorithm::AddGp => run_addgp(f, domain, &cfg, iters)?,
        };
        Ok(match self.sense() {
            Sense::Maximize => record,
            Sense::Minimize => record.negated(),
        })
    }

    /// All replications, in replication order. With `threads > 1` they are
    /// spread over scoped worker threads; the output is identical.
    pub fn run(&self) -> Result<Vec<RunRecord>> {
        let n = self.config.replications;
        let threads = self.config.threads.min(n).max(1);
        if threads == 1 {
            return (0..n).map(|i| self.run_replication(i)).collect();
        }
        let mut slots: Vec<Option<Result<RunRecord>>> = (0..n).map(|_| None).collect();
        thread::scope(|s| {
            let chunk = n.div_ceil(threads);
            for (c, slot) in slots.chunks_mut(chunk).enumerate() {
                s.spawn(move || {
                    for (k, out) in slot.iter_mut().enumerate() {
                        *out = Some(self.run_replication(c * chunk + k));
                    }
                });
            }
        });
        slots.into_iter().map(|r| r.expect("every replication ran")).collect()
    }
}

/// Validates, resolves and runs `config`.
pub fn run_experiment(config: &ExperimentConfig) -> Result<Vec<RunRecord>> {
    PreparedExperiment::new(config.clone())?.run()
}
