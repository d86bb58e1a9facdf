//! Flat `key = value` experiment configuration.
//!
//! One assignment per line, `#` starts a comment, unknown keys are
//! rejected. Every key is optional except `objective` and `algorithm`.

use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use crate::acquisition::BetaSchedule;
use crate::dropout::{AcquisitionBudget, DropoutConfig, FillInStrategy};
use crate::error::{Error, Result};
use crate::gp::KernelParams;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Algorithm {
    DropoutRandom,
    DropoutCopy,
    DropoutMix,
    RandomSearch,
    FullBo,
    Rembo,
    AddGp,
}

impl Algorithm {
    pub const ALL: [Algorithm; 7] = [
        Algorithm::DropoutRandom,
        Algorithm::DropoutCopy,
        Algorithm::DropoutMix,
        Algorithm::RandomSearch,
        Algorithm::FullBo,
        Algorithm::Rembo,
        Algorithm::AddGp,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Algorithm::DropoutRandom => "dropout-random",
            Algorithm::DropoutCopy => "dropout-copy",
            Algorithm::DropoutMix => "dropout-mix",
            Algorithm::RandomSearch => "random-search",
            Algorithm::FullBo => "full-bo",
            Algorithm::Rembo => "rembo",
            Algorithm::AddGp => "addgp",
        }
    }

    pub fn description(self) -> &'static str {
        match self {
            Algorithm::DropoutRandom => "dropout with uniform random fill-in",
            Algorithm::DropoutCopy => "dropout copying left-out values from the incumbent",
            Algorithm::DropoutMix => "dropout with random fill-in with probability p, else copy",
            Algorithm::RandomSearch => "uniform random sampling",
            Algorithm::FullBo => "full-dimensional GP-UCB with DIRECT",
            Algorithm::Rembo => "GP-UCB in a random d-dimensional linear embedding",
            Algorithm::AddGp => "per-group GP-UCB over disjoint groups of at most d axes",
        }
    }

    pub fn names() -> String {
        Self::ALL.iter().map(|a| a.name()).collect::<Vec<_>>().join(", ")
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Algorithm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|a| a.name() == s)
            .ok_or_else(|| Error::UnknownName {
                kind: "algorithm",
                name: s.to_string(),
                available: Self::names(),
            })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub name: String,
    pub objective: String,
    pub algorithm: Algorithm,
    /// Problem dimension. Cascade objectives default it to the feature count.
    pub dim: Option<usize>,
    pub d: usize,
    pub p: f64,
    pub iterations: usize,
    pub replications: usize,
    pub base_seed: u64,
    pub threads: usize,

    pub mu1: f64,
    pub mu2: f64,
    pub lower: Option<f64>,
    pub upper: Option<f64>,
    pub dataset: Option<PathBuf>,
    pub label_column: i64,
    pub positive_label: String,
    pub rows: usize,
    pub data_seed: u64,

    pub kernel: KernelParams,
    pub noise: f64,
    pub beta: BetaSchedule,
    pub n_init: Option<usize>,
    pub acquisition: AcquisitionBudget,

    pub output: Option<PathBuf>,
}

impl ExperimentConfig {
    pub fn new(objective: &str, algorithm: Algorithm) -> Self {
        Self {
            name: format!("{objective}-{algorithm}"),
            objective: objective.to_string(),
            algorithm,
            dim: None,
            d: 5,
            p: 0.1,
            iterations: 100,
            replications: 20,
            base_seed: 0,
            threads: 1,
            mu1: 2.0,
            mu2: 3.0,
            lower: None,
            upper: None,
            dataset: None,
            label_column: -1,
            positive_label: "1".into(),
            rows: 200,
            data_seed: 0,
            kernel: KernelParams::default(),
            noise: 1e-6,
            beta: BetaSchedule::default(),
            n_init: None,
            acquisition: AcquisitionBudget::default(),
            output: None,
        }
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Config(format!("cannot read {}: {e}", path.display())))?;
        let mut cfg = Self::parse(&text)?;
        // Relative dataset paths resolve against the config file.
        if let (Some(ds), Some(dir)) = (&cfg.dataset, path.parent()) {
            if ds.is_relative() {
                cfg.dataset = Some(dir.join(ds));
            }
        }
        Ok(cfg)
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut pairs = Vec::new();
        for (idx, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| Error::Config(format!("line {}: expected `key = value`", idx + 1)))?;
            pairs.push((idx + 1, k.trim().to_string(), v.trim().to_string()));
        }
        let find = |key: &str| pairs.iter().find(|(_, k, _)| k == key).map(|(_, _, v)| v.as_str());
        let objective = find("objective").ok_or_else(|| Error::Config("missing key `objective`".into()))?;
        let algorithm: Algorithm = find("algorithm")
            .ok_or_else(|| Error::Config("missing key `algorithm`".into()))?
            .parse()?;
        let mut cfg = Self::new(objective, algorithm);
        for (line, key, value) in &pairs {
            cfg.set(key, value).map_err(|e| match e {
                Error::Config(m) => Error::Config(format!("line {line}: {m}")),
                other => other,
            })?;
        }
        Ok(cfg)
    }

    fn set(&mut self, key: &str, value: &str) -> Result<()> {
        fn num<T: FromStr>(key: &str, v: &str) -> Result<T> {
            v.parse().map_err(|_| Error::Config(format!("bad value for `{key}`: '{v}'")))
        }
        match key {
            "objective" | "algorithm" => {}
            "name" => self.name = value.to_string(),
            "dim" => self.dim = Some(num(key, value)?),
            "d" => self.d = num(key, value)?,
            "p" => self.p = num(key, value)?,
            "iterations" => self.iterations = num(key, value)?,
            "replications" => self.replications = num(key, value)?,
            "base_seed" => self.base_seed = num(key, value)?,
            "threads" => self.threads = num(key, value)?,
            "mu1" => self.mu1 = num(key, value)?,
            "mu2" => self.mu2 = num(key, value)?,
            "lower" => self.lower = Some(num(key, value)?),
            "upper" => self.upper = Some(num(key, value)?),
            "dataset" => self.dataset = Some(PathBuf::from(value)),
            "label_column" => self.label_column = num(key, value)?,
            "positive_label" => self.positive_label = value.to_string(),
            "rows" => self.rows = num(key, value)?,
            "data_seed" => self.data_seed = num(key, value)?,
            "lengthscale" => self.kernel.lengthscale = num(key, value)?,
            "signal_variance" => self.kernel.signal_variance = num(key, value)?,
            "noise" => self.noise = num(key, value)?,
            "beta_delta" => self.beta.delta = num(key, value)?,
            "beta_a" => self.beta.a = num(key, value)?,
            "beta_b" => self.beta.b = num(key, value)?,
            "beta_r" => self.beta.r = num(key, value)?,
            "beta_multiplier" => self.beta.multiplier = num(key, value)?,
            "n_init" => self.n_init = Some(num(key, value)?),
            "direct_evals_per_dim" => self.acquisition.evals_per_dim = num(key, value)?,
            "direct_max_iters" => self.acquisition.max_iters = num(key, value)?,
            "direct_epsilon" => self.acquisition.epsilon = num(key, value)?,
            "output" => self.output = Some(PathBuf::from(value)),
            other => return Err(Error::Config(format!("unknown key `{other}`"))),
        }
        Ok(())
    }

    /// Serializes back to the flat format; `parse(to_text())` is the identity.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let mut put = |k: &str, v: String| {
            out.push_str(k);
            out.push_str(" = ");
            out.push_str(&v);
            out.push('\n');
        };
        put("name", self.name.clone());
        put("objective", self.objective.clone());
        put("algorithm", self.algorithm.to_string());
        if let Some(dim) = self.dim {
            put("dim", dim.to_string());
        }
        put("d", self.d.to_string());
        put("p", self.p.to_string());
        put("iterations", self.iterations.to_string());
        put("replications", self.replications.to_string());
        put("base_seed", self.base_seed.to_string());
        put("threads", self.threads.to_string());
        put("mu1", self.mu1.to_string());
        put("mu2", self.mu2.to_string());
        if let Some(v) = self.lower {
            put("lower", v.to_string());
        }
        if let Some(v) = self.upper {
            put("upper", v.to_string());
        }
        if let Some(ds) = &self.dataset {
            put("dataset", ds.display().to_string());
        }
        put("label_column", self.label_column.to_string());
        put("positive_label", self.positive_label.clone());
        put("rows", self.rows.to_string());
        put("data_seed", self.data_seed.to_string());
        put("lengthscale", self.kernel.lengthscale.to_string());
        put("signal_variance", self.kernel.signal_variance.to_string());
        put("noise", self.noise.to_string());
        put("beta_delta", self.beta.delta.to_string());
        put("beta_a", self.beta.a.to_string());
        put("beta_b", self.beta.b.to_string());
        put("beta_r", self.beta.r.to_string());
        put("beta_multiplier", self.beta.multiplier.to_string());
        if let Some(n) = self.n_init {
            put("n_init", n.to_string());
        }
        put("direct_evals_per_dim", self.acquisition.evals_per_dim.to_string());
        put("direct_max_iters", self.acquisition.max_iters.to_string());
        put("direct_epsilon", self.acquisition.epsilon.to_string());
        if let Some(o) = &self.output {
            put("output", o.display().to_string());
        }
        out
    }

    pub fn fill_in(&self) -> FillInStrategy {
        match self.algorithm {
            Algorithm::DropoutRandom => FillInStrategy::Random,
            Algorithm::DropoutMix => FillInStrategy::Mix { p: self.p },
            _ => FillInStrategy::Copy,
        }
    }

    /// Optimizer settings for replication `i` (seed `base_seed + i`).
    pub fn dropout_config(&self, replication: usize) -> DropoutConfig {
        DropoutConfig {
            d: self.d,
            strategy: self.fill_in(),
            beta: self.beta,
            kernel: self.kernel,
            noise: self.noise,
            n_init: self.n_init.unwrap_or(self.d + 1),
            acquisition: self.acquisition,
            seed: self.replication_seed(replication),
        }
    }

    pub fn replication_seed(&self, replication: usize) -> u64 {
        self.base_seed.wrapping_add(replication as u64)
    }

    pub fn validate(&self) -> Result<()> {
        if self.replications == 0 {
            return Err(Error::Config("replications must be >= 1".into()));
        }
        if self.d == 0 {
            return Err(Error::Config("d must be >= 1".into()));
        }
        if !(0.0..=1.0).contains(&self.p) {
            return Err(Error::Config(format!("p must lie in [0,1], got {}", self.p)));
        }
        if self.threads == 0 {
            return Err(Error::Config("threads must be >= 1".into()));
        }
        if self.acquisition.evals_per_dim == 0 || self.acquisition.max_iters == 0 {
            return Err(Error::Config("DIRECT budgets must be >= 1".into()));
        }
        self.kernel.validate().map_err(|e| Error::Config(e.to_string()))?;
        self.beta.validate(self.d).map_err(|e| Error::Config(e.to_string()))?;
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_flat_file() {
        let text = "\
# comment line
objective = schwefel12
algorithm = dropout-mix   # trailing comment
dim = 20
d = 5
p = 0.2
iterations = 30
beta_multiplier = 0.2
direct_evals_per_dim = 100
";
        let c = ExperimentConfig::parse(text).unwrap();
        assert_eq!(c.algorithm, Algorithm::DropoutMix);
        assert_eq!(c.dim, Some(20));
        assert_eq!(c.fill_in(), FillInStrategy::Mix { p: 0.2 });
        assert_eq!(c.beta.multiplier, 0.2);
        assert_eq!(c.acquisition.evals_per_dim, 100);
        assert_eq!(c.dropout_config(3).seed, 3);
        assert_eq!(c.dropout_config(0).n_init, 6);
        assert_eq!(ExperimentConfig::parse(&c.to_text()).unwrap(), c);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(ExperimentConfig::parse("algorithm = full-bo"), Err(Error::Config(_))));
        assert!(matches!(
            ExperimentConfig::parse("objective = x\nalgorithm = nope"),
            Err(Error::UnknownName { .. })
        ));
        assert!(ExperimentConfig::parse("objective = x\nalgorithm = rembo\nfoo = 1").is_err());
        assert!(ExperimentConfig::parse("objective = x\nalgorithm = rembo\nd = two").is_err());
        assert!(ExperimentConfig::parse("objective = x\nalgorithm = rembo\njunk").is_err());
        let mut c = ExperimentConfig::new("schwefel12", Algorithm::FullBo);
        c.replications = 0;
        assert!(c.validate().is_err());
    }
}
