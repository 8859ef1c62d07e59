mod common;

use std::f64::consts::PI;
use std::process::{Command, Output};

fn mlrelax(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mlrelax"))
        .args(args)
        .env_remove("MLRELAX_TOL")
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn rows(csv: &str) -> Vec<Vec<f64>> {
    csv.lines()
        .skip(1)
        .map(|l| l.split(',').map(|x| x.parse().unwrap()).collect())
        .collect()
}

#[test]
fn eval_matches_the_erfc_oracle() {
    let o = mlrelax(&["eval", "--alpha", "0.5", "--t", "1"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    let fields: Vec<&str> = out.trim().split(',').collect();
    assert_eq!(fields.len(), 3);
    let v: f64 = fields[0].parse().unwrap();
    assert!((v / common::e_half(1.0) - 1.0).abs() < 1e-9);
    assert_eq!(fields[2], "series");
}

#[test]
fn eval_edge_cases_and_exit_codes() {
    let o = mlrelax(&["eval", "--alpha", "1", "--t", "0"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).split(',').next().unwrap().parse::<f64>().unwrap(), 1.0);

    let o = mlrelax(&["eval", "--alpha", "0.5", "--t", "1", "--method", "asymptotic"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("diverg"));

    let o = mlrelax(&["eval", "--alpha", "0.5", "--t", "-1"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("t must be"));

    assert_eq!(mlrelax(&["eval", "--alpha", "0.5"]).status.code(), Some(2));
}

#[test]
fn tolerance_flag_beats_environment() {
    let bin = env!("CARGO_BIN_EXE_mlrelax");
    let bad_env = Command::new(bin)
        .args(["eval", "--alpha", "0.5", "--t", "2"])
        .env("MLRELAX_TOL", "0.5")
        .output()
        .unwrap();
    assert_eq!(bad_env.status.code(), Some(2), "env tolerance is read and validated");
    let flag = Command::new(bin)
        .args(["eval", "--alpha", "0.5", "--t", "2", "--tol", "1e-12"])
        .env("MLRELAX_TOL", "0.5")
        .output()
        .unwrap();
    assert_eq!(flag.status.code(), Some(0), "flag overrides env");
}

#[test]
fn spectrum_rows() {
    let o = mlrelax(&[
        "spectrum",
        "--alpha",
        "0.5",
        "--grid-lo",
        "0.5",
        "--grid-hi",
        "1.5",
        "--grid-n",
        "3",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.starts_with("abscissa,density\n"));
    let r = rows(&out);
    assert_eq!(r[1][0], 1.0);
    assert!((r[1][1] - 1.0 / (2.0 * PI)).abs() < 1e-15);

    // Default grid: non-negative everywhere.
    let r = rows(&stdout(&mlrelax(&["spectrum", "--alpha", "0.5"])));
    assert_eq!(r.len(), 200);
    assert!(r.iter().all(|x| x[1] >= 0.0));

    // Near α = 1 the density concentrates around r = 1.
    let r = rows(&stdout(&mlrelax(&["spectrum", "--alpha", "0.9", "--grid-lo", "0.5"])));
    let peak = r.iter().max_by(|a, b| a[1].total_cmp(&b[1])).unwrap()[0];
    assert!((peak - 1.0).abs() < 0.1, "{peak}");

    assert_eq!(mlrelax(&["spectrum", "--alpha", "1"]).status.code(), Some(2));
}

#[test]
fn output_is_deterministic() {
    let args = [
        "spectrum",
        "--alpha",
        "0.75",
        "--grid-log",
        "--grid-lo",
        "1e-3",
        "--grid-hi",
        "1e3",
    ];
    assert_eq!(mlrelax(&args).stdout, mlrelax(&args).stdout);
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    let read = || std::fs::read(dir.path().join("fig09.csv")).unwrap();
    assert!(mlrelax(&["figures", "--which", "9", "--grid-n", "101", "--outdir", d])
        .status
        .success());
    let first = read();
    assert!(mlrelax(&["figures", "--which", "9", "--grid-n", "101", "--outdir", d])
        .status
        .success());
    assert_eq!(first, read());
    assert!(!first.contains(&b'\r'));
}

#[test]
fn figures() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    assert!(mlrelax(&["figures", "--which", "2", "--outdir", d]).status.success());
    let csv = std::fs::read_to_string(dir.path().join("fig02.csv")).unwrap();
    assert!(csv.starts_with("t,e_0.25,e_0.5,e_0.75,e_0.9,e_1\n"));
    let r = rows(&csv);
    assert_eq!(r.len(), 301);
    assert_eq!(r.last().unwrap()[0], 15.0);
    for row in &r {
        assert!((row[5] - (-row[0]).exp()).abs() <= 1e-15);
    }

    assert!(mlrelax(&["figures", "--which", "1", "--outdir", d]).status.success());
    let csv = std::fs::read_to_string(dir.path().join("fig01.csv")).unwrap();
    assert!(csv.starts_with("r,K_0.25,K_0.5,K_0.75,K_0.9\n"));

    // The relative error of e^∞ changes sign left of t = 1 for α = 0.75.
    assert!(mlrelax(&["figures", "--which", "5", "--grid-n", "201", "--outdir", d])
        .status
        .success());
    let r = rows(&std::fs::read_to_string(dir.path().join("fig05.csv")).unwrap());
    let signs: Vec<f64> = r
        .iter()
        .filter(|x| x[0] < 1.0)
        .map(|x| (x[3] - x[1]).signum())
        .collect();
    assert!(signs.windows(2).any(|w| w[0] != w[1]));

    assert_eq!(mlrelax(&["figures", "--which", "0"]).status.code(), Some(2));
    assert_eq!(mlrelax(&["figures", "--which", "13"]).status.code(), Some(2));
}

#[test]
fn bounds_scan() {
    let o = mlrelax(&["bounds-scan", "--alpha", "0.5", "--grid-n", "101"]);
    assert_eq!(o.status.code(), Some(0));
    let r = rows(&stdout(&o));
    assert_eq!(r.len(), 1);
    assert_eq!(r[0][1], 101.0);
    assert_eq!(&r[0][2..5], &[0.0, 0.0, 0.0]);
    assert!(r[0][5] < 0.0);

    let o = mlrelax(&["bounds-scan", "--alpha", "0.5", "--grid-lo", "0", "--grid-log", "false"]);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(mlrelax(&["bounds-scan", "--alpha", "0.5,1"]).status.code(), Some(2));
}

#[test]
fn solve() {
    let o = mlrelax(&["solve", "--alpha", "1", "--h", "1e-2", "--horizon", "1"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.starts_with("t,u_numeric,u_analytic,abs_err\n"));
    let r = rows(&out);
    assert_eq!(r.len(), 101);
    assert!(r.iter().all(|x| x[3] < 1e-2));
    assert!(stderr(&o).contains("max_abs_err"));

    let o = mlrelax(&[
        "solve",
        "--alpha",
        "0.5",
        "--h",
        "1e-2",
        "--horizon",
        "1",
        "--richardson",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stderr(&o).matches("observed order").count(), 2);

    assert_eq!(
        mlrelax(&["solve", "--alpha", "0.5", "--h", "0.5", "--horizon", "1"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn solve_schemes_agree() {
    let run = |scheme: &str| {
        rows(&stdout(&mlrelax(&[
            "solve",
            "--alpha",
            "0.75",
            "--h",
            "1e-2",
            "--horizon",
            "2",
            "--scheme",
            scheme,
        ])))
    };
    let (c, r) = (run("caputo-gl"), run("rl-gl"));
    let max_err = |x: &[Vec<f64>]| x.iter().map(|row| row[3]).fold(0.0, f64::max);
    let gap = c.iter().zip(&r).map(|(a, b)| (a[1] - b[1]).abs()).fold(0.0, f64::max);
    assert!(gap <= max_err(&c) + max_err(&r));
}

#[test]
fn validity_and_laplace() {
    let o = mlrelax(&[
        "validity",
        "--alpha",
        "0.9",
        "--approximant",
        "pade-large",
        "--grid-n",
        "201",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.starts_with("approximant,t_lo,t_hi\n"));
    assert!(out.lines().skip(1).count() >= 2);

    let o = mlrelax(&["validity", "--alpha", "1", "--grid-n", "51"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(!stdout(&o).contains("power_law"));

    let o = mlrelax(&["laplace", "--alpha", "0.25", "--s", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let r = rows(&stdout(&o));
    assert!((r[0][2] - 0.271_606_808_431_472_45).abs() < 1e-15);
    assert!(r[0][3] < 1e-7);
    assert_eq!(
        mlrelax(&["laplace", "--alpha", "0.5", "--s", "0"]).status.code(),
        Some(2)
    );
}

#[test]
fn out_flag_writes_a_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("k.csv");
    let o = mlrelax(&["spectrum", "--alpha", "0.25", "--out", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    assert!(std::fs::read_to_string(path).unwrap().starts_with("abscissa,density\n"));
}
