//! Command-line front end.
//!
//! Every command writes CSV with a fixed header to `--out` (or stdout) and a
//! short human summary to stderr. Numbers are printed with 17 significant
//! digits. Exit codes: 0 success, 1 bounds violation, 2 usage or domain error.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;

use crate::approx::{self, Approximant, Orientation};
use crate::error::{domain, Error, Result};
use crate::fracsolve::{self, Scheme};
use crate::grid::{GridSpec, Spacing};
use crate::mlfun;
use crate::spectra::{self, Domain};
use crate::types::{Alpha, EvalResult, Tolerance};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VIOLATION: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

const FIGURE_ALPHAS: [f64; 5] = [0.25, 0.5, 0.75, 0.9, 0.99];
const SPECTRUM_ALPHAS: [f64; 4] = [0.25, 0.5, 0.75, 0.9];
const FIG2_ALPHAS: [f64; 5] = [0.25, 0.5, 0.75, 0.9, 1.0];

#[derive(Debug, Parser)]
#[command(
    name = "mlrelax",
    version,
    about = "Mittag-Leffler relaxation function e_α(t) = E_α(-t^α)"
)]
pub struct Cli {
    /// Relative tolerance for e_α evaluations.
    #[arg(long, global = true, env = "MLRELAX_TOL")]
    pub tol: Option<f64>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args, Default)]
pub struct GridArgs {
    #[arg(long, allow_negative_numbers = true)]
    pub grid_lo: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub grid_hi: Option<f64>,
    #[arg(long)]
    pub grid_n: Option<usize>,
    /// Logarithmic spacing; `--grid-log false` forces linear.
    #[arg(long, num_args = 0..=1, default_missing_value = "true")]
    pub grid_log: Option<bool>,
}

impl GridArgs {
    fn resolve(&self, default: GridSpec) -> Result<GridSpec> {
        let spacing = match self.grid_log {
            Some(true) => Spacing::Log,
            Some(false) => Spacing::Linear,
            None => default.spacing,
        };
        GridSpec::new(
            self.grid_lo.unwrap_or(default.lo),
            self.grid_hi.unwrap_or(default.hi),
            self.grid_n.unwrap_or(default.count),
            spacing,
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    Auto,
    Series,
    Asymptotic,
    Spectral,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum DomainArg {
    Frequency,
    Time,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SchemeArg {
    CaputoGl,
    RlGl,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ApproximantArg {
    StretchedExp,
    PowerLaw,
    PadeSmall,
    PadeLarge,
}

impl From<ApproximantArg> for Approximant {
    fn from(a: ApproximantArg) -> Self {
        match a {
            ApproximantArg::StretchedExp => Approximant::StretchedExp,
            ApproximantArg::PowerLaw => Approximant::PowerLaw,
            ApproximantArg::PadeSmall => Approximant::PadeSmall,
            ApproximantArg::PadeLarge => Approximant::PadeLarge,
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate e_α(t) at one point.
    Eval {
        #[arg(long, allow_negative_numbers = true)]
        alpha: f64,
        #[arg(long, allow_negative_numbers = true)]
        t: f64,
        #[arg(long, value_enum, default_value = "auto")]
        method: MethodArg,
    },
    /// Sample the frequency spectrum K_α(r) or the time spectrum H_α(τ).
    Spectrum {
        #[arg(long, allow_negative_numbers = true)]
        alpha: f64,
        #[arg(long, value_enum, default_value = "frequency")]
        domain: DomainArg,
        #[command(flatten)]
        grid: GridArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Write the datasets behind figures 1-12 as fig01.csv .. fig12.csv.
    Figures {
        /// Single figure to write; all of them when omitted.
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=12))]
        which: Option<u8>,
        #[arg(long, default_value = ".")]
        outdir: PathBuf,
        /// Points per curve on the 1e-5..1e5 figures.
        #[arg(long, default_value_t = 1001)]
        grid_n: usize,
    },
    /// Scan g_α <= e_α <= f_α; exits 1 on any violation.
    BoundsScan {
        #[arg(long, value_delimiter = ',', default_values_t = FIGURE_ALPHAS)]
        alpha: Vec<f64>,
        /// Absolute slack added to each evaluator error estimate.
        #[arg(long, default_value_t = 1e-12)]
        abs_tol: f64,
        #[command(flatten)]
        grid: GridArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Time-step fractional relaxation and compare with e_α.
    Solve {
        #[arg(long, allow_negative_numbers = true)]
        alpha: f64,
        #[arg(long, default_value_t = 1e-3)]
        h: f64,
        #[arg(long, default_value_t = 5.0)]
        horizon: f64,
        #[arg(long, value_enum, default_value = "caputo-gl")]
        scheme: SchemeArg,
        /// Also run h/2 and h/4 and report observed orders.
        #[arg(long)]
        richardson: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Intervals where an approximant is within a relative-error threshold.
    Validity {
        #[arg(long, allow_negative_numbers = true)]
        alpha: f64,
        /// One approximant; all applicable ones when omitted.
        #[arg(long, value_enum)]
        approximant: Option<ApproximantArg>,
        #[arg(long, default_value_t = approx::DEFAULT_THRESHOLD)]
        threshold: f64,
        #[command(flatten)]
        grid: GridArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check the Laplace pair of e_α at a real s > 0.
    Laplace {
        #[arg(long, allow_negative_numbers = true)]
        alpha: f64,
        #[arg(long, default_value_t = 1.0)]
        s: f64,
    },
}

/// CSV number format: 17 significant digits, locale independent.
pub fn fmt_num(x: f64) -> String {
    format!("{x:.16e}")
}

fn csv_row(cells: &[f64]) -> String {
    let mut line = cells.iter().map(|&x| fmt_num(x)).collect::<Vec<_>>().join(",");
    line.push('\n');
    line
}

/// Outcome of a command: its exit code once the CSV is delivered.
enum Outcome {
    Ok,
    Violation,
}

struct Io<'a> {
    stdout: &'a mut dyn Write,
    stderr: &'a mut dyn Write,
}

impl Io<'_> {
    fn emit(&mut self, out: Option<&Path>, csv: &str) -> Result<()> {
        match out {
            Some(path) => fs::write(path, csv).map_err(|e| domain(format!("cannot write {}: {e}", path.display()))),
            None => self
                .stdout
                .write_all(csv.as_bytes())
                .map_err(|e| domain(format!("cannot write to stdout: {e}"))),
        }
    }

    fn note(&mut self, msg: &str) {
        let _ = writeln!(self.stderr, "{msg}");
    }
}

/// Parses `args` (including the program name) and runs the command.
/// Returns the process exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let rendered = e.render().to_string();
            let _ = if e.use_stderr() {
                stderr.write_all(rendered.as_bytes())
            } else {
                stdout.write_all(rendered.as_bytes())
            };
            return code;
        }
    };
    let mut io = Io { stdout, stderr };
    match dispatch(cli, &mut io) {
        Ok(Outcome::Ok) => EXIT_OK,
        Ok(Outcome::Violation) => EXIT_VIOLATION,
        Err(e) => {
            io.note(&format!("error: {e}"));
            EXIT_USAGE
        }
    }
}

fn dispatch(cli: Cli, io: &mut Io<'_>) -> Result<Outcome> {
    let rel = cli.tol.unwrap_or(Tolerance::default().rel());
    let tol = Tolerance::new(rel, 0.0)?;
    match cli.command {
        Command::Eval { alpha, t, method } => cmd_eval(io, Alpha::new(alpha)?, t, method, tol),
        Command::Spectrum {
            alpha,
            domain,
            grid,
            out,
        } => cmd_spectrum(io, Alpha::new(alpha)?, domain, &grid, out.as_deref()),
        Command::Figures { which, outdir, grid_n } => cmd_figures(io, which, &outdir, grid_n, tol),
        Command::BoundsScan {
            alpha,
            abs_tol,
            grid,
            out,
        } => cmd_bounds_scan(io, &alpha, Tolerance::new(rel, abs_tol)?, &grid, out.as_deref()),
        Command::Solve {
            alpha,
            h,
            horizon,
            scheme,
            richardson,
            out,
        } => {
            let scheme = match scheme {
                SchemeArg::CaputoGl => Scheme::CaputoGl,
                SchemeArg::RlGl => Scheme::RlGl,
            };
            cmd_solve(io, Alpha::new(alpha)?, h, horizon, scheme, richardson, out.as_deref())
        }
        Command::Validity {
            alpha,
            approximant,
            threshold,
            grid,
            out,
        } => cmd_validity(
            io,
            Alpha::new(alpha)?,
            approximant.map(Into::into),
            threshold,
            &grid,
            out.as_deref(),
        ),
        Command::Laplace { alpha, s } => cmd_laplace(io, Alpha::new(alpha)?, s, tol),
    }
}

fn cmd_eval(io: &mut Io<'_>, alpha: Alpha, t: f64, method: MethodArg, tol: Tolerance) -> Result<Outcome> {
    let r: EvalResult = match method {
        MethodArg::Auto => mlfun::eval_auto(alpha, t, tol)?,
        MethodArg::Series => mlfun::eval_series(alpha, t, tol)?,
        MethodArg::Asymptotic => mlfun::eval_asymptotic(alpha, t)?,
        MethodArg::Spectral => mlfun::eval_spectral(alpha, t, tol)?,
    };
    let line = format!("{},{},{}\n", fmt_num(r.value), fmt_num(r.err_est), r.method);
    io.emit(None, &line)?;
    if !r.within(&tol) {
        io.note("warning: error estimate exceeds the requested tolerance");
    }
    Ok(Outcome::Ok)
}

fn spectrum_default() -> GridSpec {
    GridSpec {
        lo: 0.01,
        hi: 2.0,
        count: 200,
        spacing: Spacing::Linear,
    }
}

fn cmd_spectrum(
    io: &mut Io<'_>,
    alpha: Alpha,
    which: DomainArg,
    grid: &GridArgs,
    out: Option<&Path>,
) -> Result<Outcome> {
    alpha.require_fractional("the spectrum")?;
    let grid = grid.resolve(spectrum_default())?;
    let which = match which {
        DomainArg::Frequency => Domain::Frequency,
        DomainArg::Time => Domain::Time,
    };
    let mut csv = String::from("abscissa,density\n");
    for p in spectra::sample(alpha, &grid, which)? {
        csv.push_str(&csv_row(&[p.abscissa, p.density]));
    }
    io.emit(out, &csv)?;
    io.note(&format!(
        "{} spectrum, alpha = {alpha}, {} points",
        which_name(which),
        grid.count
    ));
    Ok(Outcome::Ok)
}

fn which_name(d: Domain) -> &'static str {
    match d {
        Domain::Frequency => "frequency",
        Domain::Time => "time",
    }
}

fn alpha_label(a: f64) -> String {
    format!("{a}")
}

/// Builds the CSV of one figure.
pub fn figure_csv(id: u8, grid_n: usize, tol: Tolerance) -> Result<String> {
    let mut csv = String::new();
    match id {
        1 => {
            let grid = spectrum_default().points()?;
            let alphas: Vec<Alpha> = SPECTRUM_ALPHAS.iter().map(|&a| Alpha::new(a)).collect::<Result<_>>()?;
            let _ = writeln!(
                csv,
                "r,{}",
                SPECTRUM_ALPHAS
                    .iter()
                    .map(|a| format!("K_{}", alpha_label(*a)))
                    .collect::<Vec<_>>()
                    .join(",")
            );
            for r in grid {
                let mut row = vec![r];
                for &a in &alphas {
                    row.push(spectra::kernel_freq(a, r)?);
                }
                csv.push_str(&csv_row(&row));
            }
        }
        2 => {
            let grid = GridSpec::linear(0.0, 15.0, 301)?.points()?;
            let alphas: Vec<Alpha> = FIG2_ALPHAS.iter().map(|&a| Alpha::new(a)).collect::<Result<_>>()?;
            let _ = writeln!(
                csv,
                "t,{}",
                FIG2_ALPHAS
                    .iter()
                    .map(|a| format!("e_{}", alpha_label(*a)))
                    .collect::<Vec<_>>()
                    .join(",")
            );
            let rows: Vec<Vec<f64>> = grid
                .par_iter()
                .map(|&t| {
                    let mut row = vec![t];
                    for &a in &alphas {
                        row.push(mlfun::eval_auto(a, t, tol)?.value);
                    }
                    Ok(row)
                })
                .collect::<Result<_>>()?;
            rows.iter().for_each(|r| csv.push_str(&csv_row(r)));
        }
        3..=7 => {
            let alpha = Alpha::new(FIGURE_ALPHAS[usize::from(id - 3)])?;
            let grid = GridSpec::figure_decades(grid_n).points()?;
            csv.push_str("t,e,e0,einf,relerr_e0,relerr_einf\n");
            let rows: Vec<[f64; 6]> = grid
                .par_iter()
                .map(|&t| {
                    let e = mlfun::eval_auto(alpha, t, tol)?;
                    let e0 = approx::stretched_exp(alpha, t)?;
                    let einf = approx::power_law(alpha, t)?;
                    Ok([
                        t,
                        e.value,
                        e0,
                        einf,
                        approx::rel_error_abs(e0, &e)?,
                        approx::rel_error_abs(einf, &e)?,
                    ])
                })
                .collect::<Result<_>>()?;
            rows.iter().for_each(|r| csv.push_str(&csv_row(r)));
        }
        8..=12 => {
            let alpha = Alpha::new(FIGURE_ALPHAS[usize::from(id - 8)])?;
            let grid = GridSpec::figure_decades(grid_n).points()?;
            csv.push_str("t,e,f,g,relerr_f,relerr_g\n");
            let rows: Vec<[f64; 6]> = grid
                .par_iter()
                .map(|&t| {
                    let e = mlfun::eval_auto(alpha, t, tol)?;
                    let f = approx::pade_small(alpha, t)?;
                    let g = approx::pade_large(alpha, t)?;
                    Ok([
                        t,
                        e.value,
                        f,
                        g,
                        approx::rel_error_signed(f, &e, Orientation::ApproxMinusExact)?,
                        approx::rel_error_signed(g, &e, Orientation::ExactMinusApprox)?,
                    ])
                })
                .collect::<Result<_>>()?;
            rows.iter().for_each(|r| csv.push_str(&csv_row(r)));
        }
        _ => return Err(domain(format!("unknown figure {id}; expected 1..=12"))),
    }
    Ok(csv)
}

fn cmd_figures(io: &mut Io<'_>, which: Option<u8>, outdir: &Path, grid_n: usize, tol: Tolerance) -> Result<Outcome> {
    fs::create_dir_all(outdir).map_err(|e| domain(format!("cannot create {}: {e}", outdir.display())))?;
    let ids: Vec<u8> = match which {
        Some(id) => vec![id],
        None => (1..=12).collect(),
    };
    for id in ids {
        let csv = figure_csv(id, grid_n, tol)?;
        let path = outdir.join(format!("fig{id:02}.csv"));
        io.emit(Some(&path), &csv)?;
        io.note(&format!("wrote {}", path.display()));
    }
    Ok(Outcome::Ok)
}

fn cmd_bounds_scan(
    io: &mut Io<'_>,
    alphas: &[f64],
    tol: Tolerance,
    grid: &GridArgs,
    out: Option<&Path>,
) -> Result<Outcome> {
    let grid = grid.resolve(GridSpec::figure_decades(1001))?;
    if grid.lo <= 0.0 {
        return Err(Error::InvalidGrid(
            "the bounds scan runs over t > 0; t = 0 is the trivial equality".into(),
        ));
    }
    let alphas: Vec<Alpha> = alphas.iter().map(|&a| Alpha::new(a)).collect::<Result<_>>()?;
    for a in &alphas {
        a.require_fractional("the bounds scan")?;
    }
    let mut csv = String::from("alpha,points,skipped,violations_lower,violations_upper,worst_signed_gap\n");
    let mut total = 0;
    for alpha in alphas {
        let r = approx::bounds_scan(alpha, &grid, tol)?;
        let _ = writeln!(
            csv,
            "{},{},{},{},{},{}",
            fmt_num(alpha.value()),
            r.points.len(),
            r.skipped.len(),
            r.violations_lower,
            r.violations_upper,
            fmt_num(r.worst_signed_gap)
        );
        io.note(&format!(
            "alpha = {alpha}: {} points, {} skipped, {} lower / {} upper violations, worst signed gap {:.3e}",
            r.points.len(),
            r.skipped.len(),
            r.violations_lower,
            r.violations_upper,
            r.worst_signed_gap
        ));
        total += r.violations();
    }
    io.emit(out, &csv)?;
    Ok(if total == 0 { Outcome::Ok } else { Outcome::Violation })
}

fn cmd_solve(
    io: &mut Io<'_>,
    alpha: Alpha,
    h: f64,
    horizon: f64,
    scheme: Scheme,
    richardson: bool,
    out: Option<&Path>,
) -> Result<Outcome> {
    let run = fracsolve::solve_relaxation(alpha, h, horizon, scheme)?;
    let mut csv = String::from("t,u_numeric,u_analytic,abs_err\n");
    for (&(t, u), &e) in run.trajectory.iter().zip(&run.analytic) {
        csv.push_str(&csv_row(&[t, u, e, (u - e).abs()]));
    }
    io.emit(out, &csv)?;
    io.note(&format!(
        "{} alpha = {alpha} h = {h} horizon = {horizon}: max_abs_err = {:.6e}",
        scheme.as_str(),
        run.max_abs_err
    ));
    if richardson {
        let rows = fracsolve::convergence_study(alpha, &[h, h / 2.0, h / 4.0], horizon, scheme)?;
        for r in rows.iter().skip(1) {
            io.note(&format!(
                "h = {:e}: max_abs_err = {:.6e}, observed order = {:.4}",
                r.h,
                r.max_abs_err,
                r.observed_order.unwrap_or(f64::NAN)
            ));
        }
    }
    Ok(Outcome::Ok)
}

fn cmd_validity(
    io: &mut Io<'_>,
    alpha: Alpha,
    which: Option<Approximant>,
    threshold: f64,
    grid: &GridArgs,
    out: Option<&Path>,
) -> Result<Outcome> {
    let grid = grid.resolve(GridSpec::figure_decades(1001))?;
    let list: Vec<Approximant> = match which {
        Some(a) => vec![a],
        None => Approximant::ALL
            .into_iter()
            .filter(|a| !alpha.is_one() || matches!(a, Approximant::StretchedExp | Approximant::PadeSmall))
            .collect(),
    };
    let mut csv = String::from("approximant,t_lo,t_hi\n");
    for a in list {
        let v = approx::validity_ranges(alpha, a, &grid, threshold)?;
        for (lo, hi) in &v.intervals {
            let _ = writeln!(csv, "{a},{},{}", fmt_num(*lo), fmt_num(*hi));
        }
        io.note(&format!(
            "{a}: {} interval(s) with relative error <= {threshold}",
            v.intervals.len()
        ));
    }
    io.emit(out, &csv)?;
    Ok(Outcome::Ok)
}

fn cmd_laplace(io: &mut Io<'_>, alpha: Alpha, s: f64, tol: Tolerance) -> Result<Outcome> {
    let p = mlfun::laplace_check(alpha, s, tol)?;
    let csv = format!("s,lhs,rhs,rel_diff\n{}", csv_row(&[s, p.lhs, p.rhs, p.rel_diff()]));
    io.emit(None, &csv)?;
    Ok(Outcome::Ok)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run(
            std::iter::once("mlrelax").chain(args.iter().copied()),
            &mut out,
            &mut err,
        );
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn number_format() {
        assert_eq!(fmt_num(0.1), "1.0000000000000001e-1");
        assert_eq!(fmt_num(1.0), "1.0000000000000000e0");
        assert_eq!(fmt_num(-2.5e-300), "-2.5000000000000000e-300");
    }

    #[test]
    fn grid_flag_resolution() {
        let args = GridArgs {
            grid_log: Some(false),
            grid_n: Some(5),
            ..Default::default()
        };
        let g = args.resolve(GridSpec::figure_decades(11)).unwrap();
        assert_eq!(g.spacing, Spacing::Linear);
        assert_eq!((g.lo, g.hi, g.count), (1e-5, 1e5, 5));
        let g = GridArgs::default().resolve(spectrum_default()).unwrap();
        assert_eq!(g, spectrum_default());
    }

    #[test]
    fn eval_command() {
        let (code, out, _) = call(&["eval", "--alpha", "1", "--t", "0"]);
        assert_eq!(code, 0);
        assert!(out.starts_with("1.0000000000000000e0,"), "{out}");
        let (code, _, err) = call(&["eval", "--alpha", "0.5", "--t", "1", "--method", "asymptotic"]);
        assert_eq!(code, 2);
        assert!(err.contains("diverg"), "{err}");
        let (code, _, err) = call(&["eval", "--alpha", "1.5", "--t", "1"]);
        assert_eq!(code, 2);
        assert!(err.contains("alpha"), "{err}");
        let (code, _, _) = call(&["eval", "--alpha", "0.5", "--t", "1", "--tol", "1"]);
        assert_eq!(code, 2);
    }

    #[test]
    fn usage_errors() {
        assert_eq!(call(&["figures", "--which", "13"]).0, 2);
        assert_eq!(call(&["frobnicate"]).0, 2);
        assert_eq!(call(&["--help"]).0, 0);
        assert_eq!(call(&["spectrum", "--alpha", "1"]).0, 2);
        let (code, _, err) = call(&[
            "bounds-scan",
            "--alpha",
            "0.5",
            "--grid-lo",
            "0",
            "--grid-log",
            "false",
            "--grid-n",
            "5",
        ]);
        assert_eq!(code, 2);
        assert!(err.contains("t > 0"), "{err}");
    }

    #[test]
    fn laplace_command() {
        let (code, out, _) = call(&["laplace", "--alpha", "0.5", "--s", "1"]);
        assert_eq!(code, 0);
        let row: Vec<f64> = out
            .lines()
            .nth(1)
            .unwrap()
            .split(',')
            .map(|x| x.parse().unwrap())
            .collect();
        assert_eq!(row[2], 0.5);
        assert!(row[3] < 1e-8);
    }
}
