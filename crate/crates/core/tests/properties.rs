mod common;

use mlrelax::approx::{pade_large, pade_small, power_law, power_law_reflected, rel_error_abs, stretched_exp};
use mlrelax::fracsolve::{solve_relaxation, Scheme};
use mlrelax::spectra::{kernel_freq, kernel_time, kernel_time_closed_form};
use mlrelax::{eval_asymptotic, eval_auto, eval_series, eval_spectral, gamma_real, recip_gamma, Alpha, Tolerance};
use proptest::prelude::*;

fn alpha(a: f64) -> Alpha {
    Alpha::new(a).unwrap()
}

#[test]
fn erfc_oracle_against_high_precision_values() {
    // exp(t) erfc(√t), 30 digits.
    for (t, v) in [
        (1.0, 0.427_583_576_155_807),
        (25.0, 0.110_704_637_733_068_63),
        (400.0, 0.028_174_348_741_051_32),
    ] {
        assert!((common::e_half(t) / v - 1.0).abs() < 1e-14);
    }
}

#[test]
fn values_decrease_along_grids() {
    let ts = common::log_points(1e-5, 1e5, 400);
    for k in [10, 25, 50, 75, 90, 99] {
        let a = alpha(f64::from(k) / 100.0);
        let e: Vec<f64> = ts
            .iter()
            .map(|&t| eval_auto(a, t, Tolerance::default()).unwrap().value)
            .collect();
        assert!(e.windows(2).all(|w| w[1] < w[0]), "alpha = {}", a);
    }
}

#[test]
fn stretched_exp_under_power_law_at_the_extremes() {
    for a in [0.25, 0.5, 0.75, 0.9] {
        let a = alpha(a);
        for t in [1e-5, 1e5] {
            assert!(stretched_exp(a, t).unwrap() <= power_law(a, t).unwrap());
        }
    }
}

#[test]
fn asymptotic_equivalence_at_both_ends() {
    let tol = Tolerance::default();
    for a in [0.25, 0.5, 0.75, 0.9] {
        let a = alpha(a);
        let err = |f: fn(Alpha, f64) -> mlrelax::Result<f64>, t: f64| {
            rel_error_abs(f(a, t).unwrap(), &eval_auto(a, t, tol).unwrap()).unwrap()
        };
        let small: Vec<f64> = common::log_points(1e-5, 1e-2, 31)
            .iter()
            .map(|&t| err(stretched_exp, t))
            .collect();
        assert!(small.windows(2).all(|w| w[0] <= w[1]), "alpha = {a}");
        let large: Vec<f64> = common::log_points(1e2, 1e5, 31)
            .iter()
            .map(|&t| err(power_law, t))
            .collect();
        assert!(large.windows(2).all(|w| w[0] >= w[1]), "alpha = {a}");
    }
}

#[test]
fn discrete_solutions_are_positive_and_non_increasing() {
    for a in [0.1, 0.3, 0.6, 0.9] {
        for h in [0.05, 0.01] {
            for scheme in [Scheme::CaputoGl, Scheme::RlGl] {
                let run = solve_relaxation(alpha(a), h, 3.0, scheme).unwrap();
                assert!(run.trajectory.windows(2).all(|w| w[1].1 <= w[0].1 && w[1].1 > 0.0));
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn values_lie_in_the_unit_interval(a in 0.05f64..1.0, lt in -5.0f64..5.0) {
        let e = eval_auto(alpha(a), 10f64.powf(lt), Tolerance::default()).unwrap();
        prop_assert!(e.value > 0.0 && e.value <= 1.0);
    }

    #[test]
    fn series_and_spectral_agree(a in 0.1f64..0.95, x in 0.05f64..1.0) {
        let al = alpha(a);
        let t = x.powf(1.0 / a);
        let tol = Tolerance::new(1e-12, 0.0).unwrap();
        let s = eval_series(al, t, tol).unwrap().value;
        let q = eval_spectral(al, t, tol).unwrap().value;
        prop_assert!((s / q - 1.0).abs() < 1e-10);
    }

    #[test]
    fn asymptotic_error_estimate_covers_the_truth(a in 0.1f64..0.9, x in 15.0f64..200.0) {
        let al = alpha(a);
        let t = x.powf(1.0 / a);
        if let Ok(r) = eval_asymptotic(al, t) {
            let q = eval_spectral(al, t, Tolerance::new(1e-13, 0.0).unwrap()).unwrap();
            prop_assert!((r.value - q.value).abs() <= r.err_est + q.err_est);
        }
    }

    #[test]
    fn sandwich_bounds(a in 0.05f64..0.995, lt in -5.0f64..5.0) {
        let al = alpha(a);
        let t = 10f64.powf(lt);
        let e = eval_auto(al, t, Tolerance::default()).unwrap();
        let g = pade_large(al, t).unwrap();
        let f = pade_small(al, t).unwrap();
        prop_assert!(g <= f);
        prop_assert!(g <= e.value + e.err_est + 1e-12);
        prop_assert!(e.value <= f + e.err_est + 1e-12);
    }

    #[test]
    fn pade_forms_decrease(a in 0.05f64..0.99, t in 0.0f64..1e4, dt in 1e-3f64..10.0) {
        let al = alpha(a);
        for p in [pade_small, pade_large] {
            let (u, v) = (p(al, t).unwrap(), p(al, t + dt).unwrap());
            prop_assert!(v <= u && v > 0.0 && u <= 1.0);
        }
    }

    #[test]
    fn power_law_forms_agree(a in 0.05f64..0.95, t in 1e-3f64..1e3) {
        let al = alpha(a);
        let (p, q) = (power_law(al, t).unwrap(), power_law_reflected(al, t).unwrap());
        prop_assert!((p / q - 1.0).abs() < 1e-13);
    }

    #[test]
    fn time_spectrum_is_the_frequency_spectrum(a in 0.05f64..0.99, lx in -4.0f64..4.0) {
        let al = alpha(a);
        let x = 10f64.powf(lx);
        let h = kernel_time(al, x).unwrap();
        prop_assert!((h / kernel_time_closed_form(al, x).unwrap() - 1.0).abs() < 1e-12);
        prop_assert!((h / kernel_freq(al, x).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn gamma_and_its_reciprocal(x in -20.0f64..50.0) {
        prop_assume!((x - x.round()).abs() > 1e-6 || x > 0.0);
        let g = gamma_real(x).unwrap();
        prop_assert!((g * recip_gamma(x) - 1.0).abs() < 1e-12);
    }
}
