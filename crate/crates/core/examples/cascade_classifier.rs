//! Tune the stump thresholds of a boosted cascade for training accuracy.
//!
//! With a CSV path argument the last column is the label and `1` marks the
//! positive class; without one a synthetic separable dataset is generated.

use dropout_bo::baselines::run_random_search;
use dropout_bo::objectives::{load_dataset, synthetic_separable, LabelSpec, Objective};
use dropout_bo::{dropout, DropoutConfig, FillInStrategy};

fn main() -> dropout_bo::Result<()> {
    let data = match std::env::args().nth(1) {
        Some(path) => load_dataset(&path, &LabelSpec { column: -1, positive: "1".into() })?,
        None => synthetic_separable(200, 20, 7)?,
    };
    println!("{} rows, {} features", data.len(), data.features());
    let f = Objective::cascade(data)?;
    let domain = &f.spec().domain;
    let d = 5.min(domain.dim());

    let mut cfg = DropoutConfig::new(d, FillInStrategy::Mix { p: 0.1 }).with_seed(3);
    cfg.acquisition.evals_per_dim = 300;
    let bo = dropout::run(|x: &[f64]| f.evaluate(x), domain, &cfg, 100)?;
    let rs = run_random_search(|x: &[f64]| f.evaluate(x), domain, cfg.n_init, 100, cfg.seed)?;
    println!("dropout-mix training accuracy   {:.3}", bo.final_best().unwrap());
    println!("random search training accuracy {:.3}", rs.final_best().unwrap());
    Ok(())
}
