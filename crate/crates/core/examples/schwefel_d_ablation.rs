//! Effect of the subspace size d on Schwefel 1.2 in 20 dimensions with copy
//! fill-in. Larger d converges faster.

use dropout_bo::objectives::Objective;
use dropout_bo::{dropout, DropoutConfig, FillInStrategy};

fn main() -> dropout_bo::Result<()> {
    let iters: usize = std::env::args().nth(1).and_then(|a| a.parse().ok()).unwrap_or(100);
    let f = Objective::schwefel12(20, -1.0, 1.0)?;
    let seeds = 3;
    for d in [1, 2, 5, 10] {
        let mut total = 0.0;
        for seed in 0..seeds {
            let mut cfg = DropoutConfig::new(d, FillInStrategy::Copy).with_seed(seed);
            cfg.acquisition.evals_per_dim = 300;
            // The core maximizes, so feed it the negated objective.
            let rec = dropout::run(|x: &[f64]| f.evaluate_max(x), &f.spec().domain, &cfg, iters)?.negated();
            total += rec.final_best().unwrap();
        }
        println!("d = {d:>2}: mean best after {iters} iterations {:.4}", total / seeds as f64);
    }
    Ok(())
}
