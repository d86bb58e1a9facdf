//! Dropout-Mix over a range of p. p = 0 is copy fill-in and p = 1 is random
//! fill-in, so the two ends reproduce those strategies exactly.

use dropout_bo::objectives::Objective;
use dropout_bo::{dropout, DropoutConfig, FillInStrategy};

fn main() -> dropout_bo::Result<()> {
    let iters = 100;
    let f = Objective::schwefel12(20, -1.0, 1.0)?;
    let run = |strategy, seed| -> dropout_bo::Result<_> {
        let mut cfg = DropoutConfig::new(5, strategy).with_seed(seed);
        cfg.acquisition.evals_per_dim = 300;
        Ok(dropout::run(|x: &[f64]| f.evaluate_max(x), &f.spec().domain, &cfg, iters)?.negated())
    };
    for p in [0.0, 0.1, 0.5, 1.0] {
        let bests: Vec<f64> = (0..3)
            .map(|seed| run(FillInStrategy::Mix { p }, seed).map(|r| r.final_best().unwrap()))
            .collect::<Result<_, _>>()?;
        println!("p = {p:.1}: {bests:.4?}");
    }
    let copy = run(FillInStrategy::Copy, 0)?;
    let mix0 = run(FillInStrategy::Mix { p: 0.0 }, 0)?;
    println!("Mix(0) and Copy share every point: {}", copy.points == mix0.points);
    Ok(())
}
