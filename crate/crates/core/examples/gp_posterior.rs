//! Fit a GP to a handful of samples of a 1-d function and print the
//! posterior band on a grid.

use dropout_bo::{GpPosterior, KernelParams};

fn main() -> dropout_bo::Result<()> {
    let f = |x: f64| (6.0 * x).sin() + 0.3 * x;
    let xs = [0.05, 0.2, 0.45, 0.5, 0.8, 0.95];
    let inputs: Vec<Vec<f64>> = xs.iter().map(|&x| vec![x]).collect();
    let targets: Vec<f64> = xs.iter().map(|&x| f(x)).collect();

    let gp = GpPosterior::fit(&inputs, &targets, KernelParams::new(0.15, 1.0)?, 1e-6)?;
    println!("jitter used: {:e}", gp.jitter());
    println!("{:>6} {:>10} {:>10} {:>10}", "x", "f(x)", "mean", "sd");
    for k in 0..=20 {
        let x = k as f64 / 20.0;
        let (m, v) = gp.predict(&[x])?;
        println!("{x:>6.2} {:>10.4} {m:>10.4} {:>10.4}", f(x), v.sqrt());
    }
    Ok(())
}
