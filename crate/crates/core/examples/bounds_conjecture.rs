//! Scans g_α ≤ e_α ≤ f_α over eleven decades for several α.

use mlrelax::approx::bounds_scan;
use mlrelax::{Alpha, GridSpec, Result, Tolerance};

fn main() -> Result<()> {
    let grid = GridSpec::figure_decades(2001);
    let tol = Tolerance::new(1e-10, 1e-12)?;
    for a in [0.1, 0.25, 0.5, 0.75, 0.9, 0.99] {
        let report = bounds_scan(Alpha::new(a)?, &grid, tol)?;
        println!(
            "alpha = {a:<5} points = {} violations = {} worst gap = {:.3e} skipped = {}",
            report.points.len(),
            report.violations(),
            report.worst_signed_gap,
            report.skipped.len()
        );
    }
    Ok(())
}
