//! Solves D^α u = -u, u(0) = 1 with both Grünwald-Letnikov schemes and
//! reports the observed convergence order.

use mlrelax::fracsolve::{convergence_study, solve_relaxation, Scheme};
use mlrelax::{Alpha, Result};

fn main() -> Result<()> {
    let alpha = Alpha::new(0.5)?;
    let run = solve_relaxation(alpha, 0.01, 5.0, Scheme::CaputoGl)?;
    for (i, ((t, u), e)) in run.trajectory.iter().zip(&run.analytic).enumerate() {
        if i % 100 == 0 {
            println!("t = {t:.2}  u = {u:.8}  e = {e:.8}");
        }
    }
    println!("max |u - e| = {:.3e}", run.max_abs_err);

    for scheme in [Scheme::CaputoGl, Scheme::RlGl] {
        println!("{}:", scheme.as_str());
        for row in convergence_study(alpha, &[0.02, 0.01, 0.005], 5.0, scheme)? {
            match row.observed_order {
                Some(p) => println!("  h = {:<6} err = {:.3e}  order = {p:.3}", row.h, row.max_abs_err),
                None => println!("  h = {:<6} err = {:.3e}", row.h, row.max_abs_err),
            }
        }
    }
    Ok(())
}
