//! Compares the four closed-form approximants with e_α and prints the
//! ranges where each is within 1%.

use mlrelax::approx::{crossing_points, validity_ranges, Approximant, DEFAULT_THRESHOLD};
use mlrelax::{eval_auto, Alpha, GridSpec, Result, Tolerance};

fn main() -> Result<()> {
    let alpha = Alpha::new(0.75)?;
    let tol = Tolerance::default();
    println!(
        "{:>8} {:>12} {:>12} {:>12} {:>12} {:>12}",
        "t", "e", "stretched", "power", "pade_small", "pade_large"
    );
    for t in [1e-3, 0.1, 1.0, 10.0, 1e3] {
        let e = eval_auto(alpha, t, tol)?.value;
        print!("{t:>8} {e:>12.6e}");
        for a in Approximant::ALL {
            print!(" {:>12.6e}", a.eval(alpha, t)?);
        }
        println!();
    }

    let grid = GridSpec::figure_decades(201);
    for a in Approximant::ALL {
        let v = validity_ranges(alpha, a, &grid, DEFAULT_THRESHOLD)?;
        println!("{a}: {:?}", v.intervals);
    }
    println!("power law crosses e at {:?}", crossing_points(alpha, &grid)?);
    Ok(())
}
