//! Evaluates e_α(t) with each method and shows which one `eval_auto` picks.
//!
//! cargo run --release --example eval_methods

use mlrelax::{eval_asymptotic, eval_auto, eval_series, eval_spectral, Alpha, Result, Tolerance};

fn show(label: &str, r: Result<mlrelax::EvalResult>) {
    match r {
        Ok(r) => println!("  {label:<10} {:.16e}  err {:.1e}  ({})", r.value, r.err_est, r.method),
        Err(e) => println!("  {label:<10} {e}"),
    }
}

fn main() -> Result<()> {
    let tol = Tolerance::default();
    for a in [0.25, 0.5, 0.9] {
        let alpha = Alpha::new(a)?;
        for t in [0.01, 1.0, 30.0, 1e4] {
            println!("alpha = {a}, t = {t}");
            show("series", eval_series(alpha, t, tol));
            show("asymptotic", eval_asymptotic(alpha, t));
            show("spectral", eval_spectral(alpha, t, tol));
            show("auto", eval_auto(alpha, t, tol));
        }
    }
    Ok(())
}
