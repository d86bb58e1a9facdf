//! Dimension-dropout Bayesian optimization.
//!
//! Every iteration picks `d` of the `D` axes uniformly at random, fits a GP
//! on all past observations projected onto those axes, maximizes the
//! subspace UCB with DIRECT, and fills in the remaining `D - d` coordinates
//! with one of three strategies.
//!
//! RNG consumption per iteration is fixed: the axis subset, then one
//! uniform draw for the Mix coin, then one uniform draw per left-out axis.
//! All three strategies consume the same stream, so `Mix { p: 0.0 }`
//! reproduces `Copy` and `Mix { p: 1.0 }` reproduces `Random` exactly.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::acquisition::{ucb_from_moments, BetaSchedule};
use crate::direct::{maximize, DirectConfig};
use crate::domain::BoxDomain;
use crate::error::{Error, Result};
use crate::gp::{GpPosterior, KernelParams};
use crate::record::{RunRecord, Sense};

pub type Rng64 = ChaCha8Rng;

pub fn seeded_rng(seed: u64) -> Rng64 {
    ChaCha8Rng::seed_from_u64(seed)
}

#[derive(Debug, Clone, PartialEq)]
pub struct Observation {
    pub x: Vec<f64>,
    pub y: f64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubspaceSelection {
    chosen: Vec<usize>,
    complement: Vec<usize>,
}

impl SubspaceSelection {
    /// `chosen` must hold distinct axes below `dim`; it is sorted here.
    pub fn new(dim: usize, mut chosen: Vec<usize>) -> Result<Self> {
        chosen.sort_unstable();
        chosen.dedup();
        if chosen.is_empty() || chosen.last().is_some_and(|&i| i >= dim) {
            return Err(Error::InvalidParameter(format!("invalid axis subset {chosen:?} for D={dim}")));
        }
        let complement = (0..dim).filter(|i| chosen.binary_search(i).is_err()).collect();
        Ok(Self { chosen, complement })
    }

    pub fn all(dim: usize) -> Self {
        Self {
            chosen: (0..dim).collect(),
            complement: Vec::new(),
        }
    }

    pub fn chosen(&self) -> &[usize] {
        &self.chosen
    }

    pub fn complement(&self) -> &[usize] {
        &self.complement
    }

    pub fn dim(&self) -> usize {
        self.chosen.len() + self.complement.len()
    }
}

/// Draws `d` distinct axes out of `dim` uniformly without replacement.
pub fn select_dimensions<R: Rng + ?Sized>(dim: usize, d: usize, rng: &mut R) -> Result<SubspaceSelection> {
    if d == 0 || d > dim {
        return Err(Error::InvalidParameter(format!("need 1 <= d <= D, got d={d}, D={dim}")));
    }
    let chosen = rand::seq::index::sample(rng, dim, d).into_vec();
    SubspaceSelection::new(dim, chosen)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum FillInStrategy {
    Random,
    Copy,
    /// Random with probability `p`, otherwise Copy; one coin per iteration.
    Mix { p: f64 },
}

impl FillInStrategy {
    pub fn validate(&self) -> Result<()> {
        match *self {
            FillInStrategy::Mix { p } if !(0.0..=1.0).contains(&p) => {
                Err(Error::InvalidParameter(format!("mix probability must lie in [0,1], got {p}")))
            }
            _ => Ok(()),
        }
    }
}

/// Acquisition-maximization budget: DIRECT gets `evals_per_dim · m`
/// evaluations for an `m`-dimensional acquisition.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AcquisitionBudget {
    pub evals_per_dim: usize,
    pub max_iters: usize,
    pub epsilon: f64,
}

impl Default for AcquisitionBudget {
    fn default() -> Self {
        let d = DirectConfig::default();
        Self {
            evals_per_dim: 2000,
            max_iters: d.max_iters,
            epsilon: d.epsilon,
        }
    }
}

impl AcquisitionBudget {
    pub fn direct_config(&self, m: usize) -> DirectConfig {
        DirectConfig {
            max_evals: self.evals_per_dim.saturating_mul(m).max(1),
            max_iters: self.max_iters,
            epsilon: self.epsilon,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct DropoutConfig {
    pub d: usize,
    pub strategy: FillInStrategy,
    pub beta: BetaSchedule,
    pub kernel: KernelParams,
    pub noise: f64,
    pub n_init: usize,
    pub acquisition: AcquisitionBudget,
    pub seed: u64,
}

impl DropoutConfig {
    /// Defaults: `d + 1` initial points, SE lengthscale 0.1 on the unit
    /// cube, noise `1e-6`, β multiplier 1.
    pub fn new(d: usize, strategy: FillInStrategy) -> Self {
        Self {
            d,
            strategy,
            beta: BetaSchedule::default(),
            kernel: KernelParams::default(),
            noise: 1e-6,
            n_init: d + 1,
            acquisition: AcquisitionBudget::default(),
            seed: 0,
        }
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn validate(&self, dim: usize) -> Result<()> {
        if self.d == 0 || self.d > dim {
            return Err(Error::InvalidParameter(format!("need 1 <= d <= D, got d={}, D={dim}", self.d)));
        }
        if self.n_init == 0 {
            return Err(Error::InvalidParameter("n_init must be >= 1".into()));
        }
        self.strategy.validate()?;
        self.kernel.validate()?;
        self.beta.validate(self.d)?;
        Ok(())
    }
}

/// Append-only optimization history with the incumbent tracked.
#[derive(Debug, Clone, Default)]
pub struct OptState {
    history: Vec<Observation>,
    best_index: Option<usize>,
    iteration: usize,
}

impl OptState {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn history(&self) -> &[Observation] {
        &self.history
    }

    /// Ties keep the earliest observation.
    pub fn best(&self) -> Option<&Observation> {
        self.best_index.map(|i| &self.history[i])
    }

    pub fn best_index(&self) -> Option<usize> {
        self.best_index
    }

    /// Number of completed post-initialization iterations.
    pub fn iteration(&self) -> usize {
        self.iteration
    }

    pub fn push_initial(&mut self, x: Vec<f64>, y: f64) {
        self.append(x, y);
    }

    pub fn push_iteration(&mut self, x: Vec<f64>, y: f64) {
        self.append(x, y);
        self.iteration += 1;
    }

    fn append(&mut self, x: Vec<f64>, y: f64) {
        let idx = self.history.len();
        if self.best().is_none_or(|b| y > b.y) {
            self.best_index = Some(idx);
        }
        self.history.push(Observation { x, y });
    }
}

/// Coordinates of every observation on the chosen axes, with its full `y`.
pub fn project_history(history: &[Observation], sel: &SubspaceSelection) -> (Vec<Vec<f64>>, Vec<f64>) {
    let inputs = history
        .iter()
        .map(|o| sel.chosen.iter().map(|&i| o.x[i]).collect())
        .collect();
    let targets = history.iter().map(|o| o.y).collect();
    (inputs, targets)
}

/// Zero-mean, unit-variance targets. A single observation is returned as is;
/// zero spread keeps the scale at 1.
pub(crate) fn standardize(y: &[f64]) -> Vec<f64> {
    if y.len() < 2 {
        return y.to_vec();
    }
    let n = y.len() as f64;
    let mean = y.iter().sum::<f64>() / n;
    let var = y.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (n - 1.0);
    let scale = if var > 0.0 && var.is_finite() { var.sqrt() } else { 1.0 };
    y.iter().map(|v| (v - mean) / scale).collect()
}

/// Shared surrogate step: fit a GP on unit-cube inputs and return the UCB
/// maximizer over `[0, 1]^m` found by DIRECT.
pub(crate) fn ucb_argmax_unit(
    inputs: &[Vec<f64>],
    targets: &[f64],
    kernel: KernelParams,
    noise: f64,
    beta: f64,
    direct: DirectConfig,
) -> Result<Vec<f64>> {
    let m = inputs.first().ok_or(Error::EmptyTrainingSet)?.len();
    let gp = GpPosterior::fit(inputs, &standardize(targets), kernel, noise)?;
    let unit = BoxDomain::unit(m);
    let mut gp_error = None;
    let acq = |u: &[f64]| match gp.predict(u) {
        Ok((mean, var)) => ucb_from_moments(mean, var, beta),
        Err(e) => {
            gp_error.get_or_insert(e);
            f64::NAN
        }
    };
    match maximize(acq, &unit, direct) {
        Ok(out) => Ok(out.argmax),
        Err(e) => Err(gp_error.unwrap_or(e)),
    }
}

/// Maximizes the subspace UCB for iteration `t`. Returns the proposal on the
/// chosen axes, in domain coordinates and in `sel.chosen()` order.
pub fn propose_subspace_point(
    history: &[Observation],
    sel: &SubspaceSelection,
    domain: &BoxDomain,
    config: &DropoutConfig,
    t: usize,
) -> Result<Vec<f64>> {
    if history.is_empty() {
        return Err(Error::EmptyHistory);
    }
    let (raw, targets) = project_history(history, sel);
    let inputs: Vec<Vec<f64>> = raw
        .iter()
        .map(|p| p.iter().zip(&sel.chosen).map(|(v, &i)| domain.coord_to_unit(i, *v)).collect())
        .collect();
    let m = sel.chosen.len();
    let beta = config.beta.beta(t, m)?;
    if beta < 0.0 {
        return Err(Error::InvalidParameter(format!("beta schedule is negative ({beta}) at t={t}")));
    }
    let u = ucb_argmax_unit(
        &inputs,
        &targets,
        config.kernel,
        config.noise,
        beta,
        config.acquisition.direct_config(m),
    )?;
    Ok(u.iter().zip(&sel.chosen).map(|(v, &i)| domain.coord_from_unit(i, *v)).collect())
}

/// Values for the left-out axes, in `sel.complement()` order.
pub fn fill_in<R: Rng + ?Sized>(
    sel: &SubspaceSelection,
    state: &OptState,
    domain: &BoxDomain,
    strategy: &FillInStrategy,
    rng: &mut R,
) -> Result<Vec<f64>> {
    let coin: f64 = rng.random();
    let random: Vec<f64> = sel
        .complement
        .iter()
        .map(|&i| domain.coord_from_unit(i, rng.random::<f64>()))
        .collect();
    let use_random = match *strategy {
        FillInStrategy::Random => true,
        FillInStrategy::Copy => false,
        FillInStrategy::Mix { p } => coin < p,
    };
    if use_random {
        return Ok(random);
    }
    let best = state.best().ok_or(Error::EmptyHistory)?;
    Ok(sel.complement.iter().map(|&i| best.x[i]).collect())
}

/// One proposal of the dropout loop, before the objective is queried.
#[derive(Debug, Clone, PartialEq)]
pub struct StepProposal {
    pub x: Vec<f64>,
    pub selection: SubspaceSelection,
    pub subspace_point: Vec<f64>,
    pub fill: Vec<f64>,
}

pub fn step<R: Rng + ?Sized>(
    state: &OptState,
    domain: &BoxDomain,
    config: &DropoutConfig,
    rng: &mut R,
) -> Result<StepProposal> {
    let dim = domain.dim();
    let t = state.iteration() + 1;
    let selection = select_dimensions(dim, config.d, rng)?;
    let subspace_point = propose_subspace_point(state.history(), &selection, domain, config, t)?;
    let fill = fill_in(&selection, state, domain, &config.strategy, rng)?;

    let mut x = vec![0.0; dim];
    for (&i, &v) in selection.chosen.iter().zip(&subspace_point) {
        x[i] = v;
    }
    for (&i, &v) in selection.complement.iter().zip(&fill) {
        x[i] = v;
    }
    Ok(StepProposal {
        x,
        selection,
        subspace_point,
        fill,
    })
}

pub(crate) fn evaluate<F: Fn(&[f64]) -> f64>(objective: &F, x: &[f64]) -> Result<f64> {
    let y = objective(x);
    if y.is_finite() {
        Ok(y)
    } else {
        Err(Error::NonFiniteObjective { point: x.to_vec(), value: y })
    }
}

/// Draws `n_init` uniform points, then repeatedly asks `propose` for the
/// next query. Shared by the dropout loop and the full-dimensional
/// baselines so that every method spends `n_init + budget` evaluations.
pub(crate) fn run_loop<F, P>(
    objective: &F,
    domain: &BoxDomain,
    n_init: usize,
    budget: usize,
    seed: u64,
    mut propose: P,
) -> Result<RunRecord>
where
    F: Fn(&[f64]) -> f64,
    P: FnMut(&OptState, &mut Rng64) -> Result<Vec<f64>>,
{
    let mut rng = seeded_rng(seed);
    let mut state = OptState::new();
    let mut record = RunRecord::new(seed, n_init, Sense::Maximize);
    for _ in 0..n_init {
        let x = domain.sample_uniform(&mut rng);
        let y = evaluate(objective, &x)?;
        state.push_initial(x.clone(), y);
        record.push(x, y);
    }
    for _ in 0..budget {
        let x = propose(&state, &mut rng)?;
        let y = evaluate(objective, &x)?;
        state.push_iteration(x.clone(), y);
        record.push(x, y);
    }
    Ok(record)
}

/// Runs the dropout loop for `budget` iterations after the initial design.
/// The record is in the maximization sense.
pub fn run<F>(objective: F, domain: &BoxDomain, config: &DropoutConfig, budget: usize) -> Result<RunRecord>
where
    F: Fn(&[f64]) -> f64,
{
    config.validate(domain.dim())?;
    run_loop(&objective, domain, config.n_init, budget, config.seed, |state, rng| {
        step(state, domain, config, rng).map(|p| p.x)
    })
}
