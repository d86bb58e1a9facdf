//! The exploration schedule, the Lipschitz gap of the left-out axes, and the
//! regret of a short run against the known optimum.

use dropout_bo::objectives::Objective;
use dropout_bo::regret::{regret_curve, RegretDiagnostics};
use dropout_bo::{dropout, BetaSchedule, DropoutConfig, FillInStrategy};

fn main() -> dropout_bo::Result<()> {
    let sched = BetaSchedule::default();
    println!("{:>5} {:>10} {:>10} {:>10}", "t", "beta", "L", "sigma gap");
    for t in [1, 10, 100, 1000] {
        let diag = RegretDiagnostics::at(&sched, 20, 5, t)?;
        println!("{t:>5} {:>10.4} {:>10.4} {:>10.4}", sched.beta(t, 5)?, diag.lipschitz, diag.sigma_gap);
    }

    let f = Objective::gaussian_mixture(4, 2.0, 3.0, 1.0, 4.0)?;
    let (_, f_star) = f.spec().known_optimum.clone().unwrap();
    let mut cfg = DropoutConfig::new(2, FillInStrategy::Copy).with_seed(5);
    cfg.acquisition.evals_per_dim = 300;
    let rec = dropout::run(|x: &[f64]| f.evaluate(x), &f.spec().domain, &cfg, 40)?;
    let (inst, cum) = regret_curve(&rec, f_star)?;
    for t in [0, 9, 19, 39] {
        println!("t = {:>2}: r_t = {:.4e}  R_t / t = {:.4e}", t + 1, inst[t], cum[t] / (t + 1) as f64);
    }
    Ok(())
}
