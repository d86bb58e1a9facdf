//! Dropout-Copy next to full-dimensional BO, REMBO, the additive baseline and
//! random search on a 10-d Gaussian mixture.

use dropout_bo::baselines::{run_addgp, run_full_bo, run_random_search, run_rembo};
use dropout_bo::objectives::Objective;
use dropout_bo::{dropout, DropoutConfig, FillInStrategy, RunRecord};

fn main() -> dropout_bo::Result<()> {
    let iters = 60;
    let f = Objective::gaussian_mixture(10, 2.0, 3.0, 1.0, 4.0)?;
    let domain = &f.spec().domain;
    let obj = |x: &[f64]| f.evaluate(x);
    let mut cfg = DropoutConfig::new(3, FillInStrategy::Copy).with_seed(11);
    cfg.acquisition.evals_per_dim = 300;

    let runs: Vec<(&str, RunRecord)> = vec![
        ("dropout-copy", dropout::run(obj, domain, &cfg, iters)?),
        ("full-bo", run_full_bo(obj, domain, &cfg, iters)?),
        ("rembo", run_rembo(obj, domain, &cfg, iters)?),
        ("addgp", run_addgp(obj, domain, &cfg, iters)?),
        ("random-search", run_random_search(obj, domain, cfg.n_init, iters, cfg.seed)?),
    ];
    let (_, v_star) = f.spec().known_optimum.clone().unwrap();
    println!("optimum {v_star:.4e}; {} initial points + {iters} iterations each", cfg.n_init);
    for (name, rec) in &runs {
        let best = rec.iteration_best();
        println!(
            "{name:<14} after 10: {:.3e}  after {iters}: {:.3e}",
            best[9],
            best[best.len() - 1]
        );
    }
    Ok(())
}
