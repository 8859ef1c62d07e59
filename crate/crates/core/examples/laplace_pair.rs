//! Checks ∫ e^{-st} e_α(t) dt against s^{α-1} / (s^α + 1).

use mlrelax::{laplace_check, Alpha, Result, Tolerance};

fn main() -> Result<()> {
    let tol = Tolerance::new(1e-12, 0.0)?;
    for a in [0.25, 0.5, 0.75] {
        for s in [0.5, 1.0, 2.0, 10.0] {
            let p = laplace_check(Alpha::new(a)?, s, tol)?;
            println!(
                "alpha = {a:<4} s = {s:<4} lhs = {:.15} rhs = {:.15} rel = {:.1e}",
                p.lhs,
                p.rhs,
                p.rel_diff()
            );
        }
    }
    Ok(())
}
