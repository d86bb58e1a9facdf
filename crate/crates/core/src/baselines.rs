//! Comparison methods: uniform random search, full-dimensional GP-UCB,
//! REMBO-style random embeddings and an additive per-group GP-UCB.
//!
//! All of them share the kernel, noise, β schedule, initial-design size and
//! DIRECT budget of a [`DropoutConfig`], and each spends exactly one
//! objective evaluation per iteration.
//!
//! The additive method fits one GP per group against the full objective
//! value rather than a single GP with an additive kernel. It keeps the
//! optimize-disjoint-groups-and-concatenate behavior but is an
//! approximation of the original method.

use rand::seq::SliceRandom;
use rand::Rng;
use rand_distr::StandardNormal;

use crate::domain::BoxDomain;
use crate::dropout::{
    evaluate, propose_subspace_point, run_loop, seeded_rng, ucb_argmax_unit, DropoutConfig, Observation,
    SubspaceSelection,
};
use crate::error::{Error, Result};
use crate::record::{RunRecord, Sense};

pub fn random_search_step<R: Rng + ?Sized>(domain: &BoxDomain, rng: &mut R) -> Vec<f64> {
    domain.sample_uniform(rng)
}

pub fn run_random_search<F>(objective: F, domain: &BoxDomain, n_init: usize, budget: usize, seed: u64) -> Result<RunRecord>
where
    F: Fn(&[f64]) -> f64,
{
    run_loop(&objective, domain, n_init, budget, seed, |_, rng| Ok(random_search_step(domain, rng)))
}

/// GP-UCB over every axis; the dropout proposal with `d = D`.
pub fn full_bo_step(history: &[Observation], domain: &BoxDomain, config: &DropoutConfig, t: usize) -> Result<Vec<f64>> {
    propose_subspace_point(history, &SubspaceSelection::all(domain.dim()), domain, config, t)
}

/// `config.d` only sets the initial-design size through `config.n_init`.
pub fn run_full_bo<F>(objective: F, domain: &BoxDomain, config: &DropoutConfig, budget: usize) -> Result<RunRecord>
where
    F: Fn(&[f64]) -> f64,
{
    config.kernel.validate()?;
    run_loop(&objective, domain, config.n_init, budget, config.seed, |state, _| {
        full_bo_step(state.history(), domain, config, state.iteration() + 1)
    })
}

/// `D × d` matrix of i.i.d. standard normal entries, frozen for a run.
#[derive(Debug, Clone, PartialEq)]
pub struct EmbeddingMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<f64>,
}

impl EmbeddingMatrix {
    pub fn sample<R: Rng + ?Sized>(high_dim: usize, low_dim: usize, rng: &mut R) -> Self {
        let entries = (0..high_dim * low_dim).map(|_| rng.sample(StandardNormal)).collect();
        Self {
            rows: high_dim,
            cols: low_dim,
            entries,
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut entries = vec![0.0; dim * dim];
        for i in 0..dim {
            entries[i * dim + i] = 1.0;
        }
        Self {
            rows: dim,
            cols: dim,
            entries,
        }
    }

    pub fn high_dim(&self) -> usize {
        self.rows
    }

    pub fn low_dim(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.entries[i * self.cols + j]
    }

    pub fn apply(&self, y: &[f64]) -> Vec<f64> {
        self.entries
            .chunks_exact(self.cols)
            .map(|row| row.iter().zip(y).map(|(a, b)| a * b).sum())
            .collect()
    }

    /// Low-dimensional search box `[-√d, √d]^d`.
    pub fn low_box(&self) -> BoxDomain {
        let r = (self.cols as f64).sqrt();
        BoxDomain::cube(self.cols, -r, r).expect("positive radius")
    }

    /// `A·y` clipped to `[-1, 1]^D` and mapped affinely onto `domain`.
    pub fn to_domain(&self, y: &[f64], domain: &BoxDomain) -> Vec<f64> {
        self.apply(y)
            .iter()
            .enumerate()
            .map(|(i, z)| domain.coord_from_unit(i, 0.5 * (z.clamp(-1.0, 1.0) + 1.0)))
            .collect()
    }
}

/// One REMBO iteration; `history_low` holds the low-dimensional points with
/// their observed values.
pub fn rembo_step(
    history_low: &[Observation],
    embedding: &EmbeddingMatrix,
    domain: &BoxDomain,
    config: &DropoutConfig,
    t: usize,
) -> Result<(Vec<f64>, Vec<f64>)> {
    Error::check_dim(embedding.high_dim(), domain.dim())?;
    if history_low.is_empty() {
        return Err(Error::EmptyHistory);
    }
    let low = embedding.low_box();
    let m = embedding.low_dim();
    let inputs: Vec<Vec<f64>> = history_low.iter().map(|o| low.to_unit(&o.x)).collect();
    let targets: Vec<f64> = history_low.iter().map(|o| o.y).collect();
    let beta = config.beta.beta(t, m)?;
    let u = ucb_argmax_unit(
        &inputs,
        &targets,
        config.kernel,
        config.noise,
        beta.max(0.0),
        config.acquisition.direct_config(m),
    )?;
    let y_low = low.from_unit(&u);
    let x_high = embedding.to_domain(&y_low, domain);
    Ok((y_low, x_high))
}

/// REMBO with a `config.d`-dimensional embedding drawn from the run seed.
pub fn run_rembo<F>(objective: F, domain: &BoxDomain, config: &DropoutConfig, budget: usize) -> Result<RunRecord>
where
    F: Fn(&[f64]) -> f64,
{
    config.validate(domain.dim())?;
    let mut rng = seeded_rng(config.seed);
    let embedding = EmbeddingMatrix::sample(domain.dim(), config.d, &mut rng);
    let low = embedding.low_box();
    let mut history = Vec::with_capacity(config.n_init + budget);
    let mut record = RunRecord::new(config.seed, config.n_init, Sense::Maximize);
    for _ in 0..config.n_init {
        let y_low = low.sample_uniform(&mut rng);
        let x = embedding.to_domain(&y_low, domain);
        let y = evaluate(&objective, &x)?;
        history.push(Observation { x: y_low, y });
        record.push(x, y);
    }
    for t in 1..=budget {
        let (y_low, x) = rembo_step(&history, &embedding, domain, config, t)?;
        let y = evaluate(&objective, &x)?;
        history.push(Observation { x: y_low, y });
        record.push(x, y);
    }
    Ok(record)
}

/// Disjoint axis groups covering `0..D`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Partition {
    groups: Vec<Vec<usize>>,
}

impl Partition {
    pub fn new(dim: usize, groups: Vec<Vec<usize>>) -> Result<Self> {
        let mut seen = vec![false; dim];
        for g in &groups {
            if g.is_empty() {
                return Err(Error::InvalidParameter("empty group in partition".into()));
            }
            for &i in g {
                if i >= dim || seen[i] {
                    return Err(Error::InvalidParameter(format!("axis {i} repeated or out of range")));
                }
                seen[i] = true;
            }
        }
        if seen.iter().any(|s| !s) {
            return Err(Error::InvalidParameter("partition does not cover every axis".into()));
        }
        let groups = groups
            .into_iter()
            .map(|mut g| {
                g.sort_unstable();
                g
            })
            .collect();
        Ok(Self { groups })
    }

    /// Uniformly random assignment into groups of at most `group_size` axes.
    pub fn random<R: Rng + ?Sized>(dim: usize, group_size: usize, rng: &mut R) -> Result<Self> {
        if group_size == 0 {
            return Err(Error::InvalidParameter("group size must be >= 1".into()));
        }
        let mut axes: Vec<usize> = (0..dim).collect();
        axes.shuffle(rng);
        Self::new(dim, axes.chunks(group_size).map(|c| c.to_vec()).collect())
    }

    pub fn single(dim: usize) -> Self {
        Self {
            groups: vec![(0..dim).collect()],
        }
    }

    pub fn groups(&self) -> &[Vec<usize>] {
        &self.groups
    }
}

pub fn addgp_step(
    history: &[Observation],
    partition: &Partition,
    domain: &BoxDomain,
    config: &DropoutConfig,
    t: usize,
) -> Result<Vec<f64>> {
    let dim = domain.dim();
    let mut x = vec![0.0; dim];
    for group in partition.groups() {
        let sel = SubspaceSelection::new(dim, group.clone())?;
        let part = propose_subspace_point(history, &sel, domain, config, t)?;
        for (&i, v) in sel.chosen().iter().zip(part) {
            x[i] = v;
        }
    }
    Ok(x)
}

/// Additive GP-UCB with groups of at most `config.d` axes. The partition is
/// drawn after the initial design.
pub fn run_addgp<F>(objective: F, domain: &BoxDomain, config: &DropoutConfig, budget: usize) -> Result<RunRecord>
where
    F: Fn(&[f64]) -> f64,
{
    config.validate(domain.dim())?;
    let mut partition = None;
    run_loop(&objective, domain, config.n_init, budget, config.seed, |state, rng| {
        let p = match &partition {
            Some(p) => p,
            None => partition.insert(Partition::random(domain.dim(), config.d, rng)?),
        };
        addgp_step(state.history(), p, domain, config, state.iteration() + 1)
    })
}
