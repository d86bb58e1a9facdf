//! The three fill-in strategies against random search on the 20-d Gaussian
//! mixture.
//!
//! Usage: `cargo run --release --example dropout_gaussian_mixture [iters] [seeds]`

use dropout_bo::baselines::run_random_search;
use dropout_bo::objectives::Objective;
use dropout_bo::{dropout, DropoutConfig, FillInStrategy};

fn main() -> dropout_bo::Result<()> {
    let mut args = std::env::args().skip(1);
    let iters: usize = args.next().and_then(|a| a.parse().ok()).unwrap_or(100);
    let seeds: u64 = args.next().and_then(|a| a.parse().ok()).unwrap_or(3);

    let f = Objective::gaussian_mixture(20, 2.0, 3.0, 1.0, 4.0)?;
    let domain = &f.spec().domain;
    let (_, v_star) = f.spec().known_optimum.clone().unwrap();
    println!("D = 20, d = 5, {iters} iterations; optimum {v_star:.4e}");

    let strategies = [
        ("dropout-random", FillInStrategy::Random),
        ("dropout-copy", FillInStrategy::Copy),
        ("dropout-mix(0.1)", FillInStrategy::Mix { p: 0.1 }),
    ];
    for seed in 0..seeds {
        let mut line = format!("seed {seed}:");
        for (name, strategy) in strategies {
            let mut cfg = DropoutConfig::new(5, strategy).with_seed(seed);
            cfg.acquisition.evals_per_dim = 300;
            let rec = dropout::run(|x: &[f64]| f.evaluate(x), domain, &cfg, iters)?;
            line += &format!("  {name} {:.3e}", rec.final_best().unwrap());
        }
        let rs = run_random_search(|x: &[f64]| f.evaluate(x), domain, 6, iters, seed)?;
        line += &format!("  random-search {:.3e}", rs.final_best().unwrap());
        println!("{line}");
    }
    Ok(())
}
