//! High-dimensional Bayesian optimization by dimension dropout.
//!
//! Each iteration optimizes a GP-UCB acquisition over a random subset of
//! `d` out of `D` axes with DIRECT and fills in the remaining coordinates
//! by random sampling, by copying the incumbent, or by a Bernoulli mix of
//! the two. The crate also ships the comparison baselines, the benchmark
//! objectives, and a reproducible multi-replication harness.
//!
//! ```no_run
//! use dropout_bo::{dropout, objectives::Objective, DropoutConfig, FillInStrategy};
//!
//! let f = Objective::gaussian_mixture(20, 2.0, 3.0, 1.0, 4.0).unwrap();
//! let cfg = DropoutConfig::new(5, FillInStrategy::Mix { p: 0.1 }).with_seed(7);
//! let rec = dropout::run(|x: &[f64]| f.evaluate(x), &f.spec().domain, &cfg, 100).unwrap();
//! println!("best = {:?}", rec.final_best());
//! ```

pub mod acquisition;
pub mod baselines;
pub mod direct;
pub mod domain;
pub mod dropout;
pub mod error;
pub mod gp;
pub mod harness;
pub mod objectives;
pub mod record;
pub mod regret;

pub use acquisition::BetaSchedule;
pub use domain::BoxDomain;
pub use dropout::{AcquisitionBudget, DropoutConfig, FillInStrategy};
pub use error::{Error, Result};
pub use gp::{GpPosterior, KernelParams};
pub use record::{RunRecord, Sense};
