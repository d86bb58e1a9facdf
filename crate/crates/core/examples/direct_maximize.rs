//! DIRECT on the 2-d Gaussian mixture over [1, 4]^2 at increasing budgets.

use dropout_bo::direct::{maximize, DirectConfig};
use dropout_bo::objectives::Objective;

fn main() -> dropout_bo::Result<()> {
    let f = Objective::gaussian_mixture(2, 2.0, 3.0, 1.0, 4.0)?;
    let (x_star, v_star) = f.spec().known_optimum.clone().expect("mixture optimum is known");
    println!("optimum {v_star:.8} at {x_star:.4?}");
    for budget in [50, 100, 500, 2000] {
        let out = maximize(|x| f.evaluate(x), &f.spec().domain, DirectConfig::with_max_evals(budget))?;
        println!(
            "budget {budget:>5}: {:>4} evals, {:>3} iterations, best {:.8} (gap {:.2e}) at {:.4?}",
            out.evals_used,
            out.iterations,
            out.max_value,
            v_star - out.max_value,
            out.argmax
        );
    }
    Ok(())
}
