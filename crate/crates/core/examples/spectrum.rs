//! Samples the relaxation spectrum and checks its normalisation.

use mlrelax::spectra::{kernel_freq, kernel_normalization, kernel_peak, kernel_time};
use mlrelax::{Alpha, Result, Tolerance};

fn main() -> Result<()> {
    for a in [0.25, 0.5, 0.75, 0.9] {
        let alpha = Alpha::new(a)?;
        let total = kernel_normalization(alpha, Tolerance::default())?;
        let peak = kernel_peak(alpha);
        if peak < 1.0 {
            println!("alpha = {a}: ∫K = {total:.15}, denominator minimal at r = {peak:.4}");
        } else {
            println!("alpha = {a}: ∫K = {total:.15}, denominator monotone");
        }
        for r in [0.01, 0.1, 0.5, 1.0, 2.0, 10.0] {
            println!(
                "  r = {r:<5} K = {:.6e}  H(τ = r) = {:.6e}",
                kernel_freq(alpha, r)?,
                kernel_time(alpha, r)?
            );
        }
    }
    Ok(())
}
