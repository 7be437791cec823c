mod common;

use std::process::{Command, Output};

use common::{params, st};
use roadwidth::riemann::{sample, solve};

fn bin(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_roadwidth"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

/// Lines of the table following `# name`, up to the next comment.
fn table<'a>(text: &'a str, name: &str) -> Vec<&'a str> {
    text.lines()
        .skip_while(|l| *l != format!("# {name}"))
        .skip(2)
        .take_while(|l| !l.starts_with('#'))
        .collect()
}

fn floats(line: &str) -> Vec<f64> {
    line.split(',').map(|v| v.parse().unwrap()).collect()
}

#[test]
fn usage_errors_exit_with_two() {
    assert_eq!(bin(&[]).status.code(), Some(2));
    assert_eq!(bin(&["solve", "--no-such-flag"]).status.code(), Some(2));
    let bad = bin(&["solve", "--gamma", "2", "--left", "1,-0.5,2", "--right", "1,1,3"]);
    assert_eq!(bad.status.code(), Some(2));
    let missing = bin(&["solve", "--gamma", "2", "--left", "1,0.5,2"]);
    assert_eq!(missing.status.code(), Some(2));
    let vacuum = bin(&["solve", "--gamma", "2", "--left", "1,0,2", "--right", "1,1,3"]);
    assert_eq!(vacuum.status.code(), Some(2));
}

#[test]
fn solve_reports_case_and_pattern() {
    let args = ["solve", "--gamma", "2", "--left", "1.5,0.5,2", "--right", "0.75,1,3"];
    let o = bin(&args);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("# case C1_1\n"));
    assert!(text.contains("# pattern S0+S+J\n"));
    assert!(text.contains("# validation pass"));
    assert_eq!(stdout(&bin(&args)), text, "output is deterministic");
}

#[test]
fn solve_output_round_trips_to_the_library() {
    let o = bin(&["solve", "--gamma", "1.5", "--left", "4,1,2", "--right", "0.6,3,2.5", "--xi-samples", "101"]);
    let text = stdout(&o);
    let p = params(1.5);
    let sol = solve(&st(4.0, 1.0, 2.0), &st(0.6, 3.0, 2.5), &p).unwrap();
    let waves = table(&text, "waves");
    assert_eq!(waves.len(), sol.waves.len());
    for (line, w) in waves.iter().zip(&sol.waves) {
        let (kind, rest) = line.split_once(',').unwrap();
        assert_eq!(kind, w.kind.symbol());
        let v = floats(rest);
        let expected = [w.xi_lo, w.xi_hi, w.left.u, w.left.rho, w.left.a, w.right.u, w.right.rho, w.right.a];
        for (a, b) in v.iter().zip(expected) {
            assert!((a - b).abs() <= 1e-11 * b.abs().max(1.0), "{line}");
        }
    }
    let profile = table(&text, "profile");
    assert_eq!(profile.len(), 101);
    for line in profile {
        let v = floats(line);
        let s = sample(&sol, v[0], &p);
        for (a, b) in v[1..].iter().zip([s.u, s.rho, s.a]) {
            assert!((a - b).abs() <= 1e-11 * b.abs().max(1.0), "{line}");
        }
    }
}

#[test]
fn curves_prints_three_tables() {
    let o = bin(&["curves", "--gamma", "2", "--left", "1.5,0.5,2", "--a-target", "3"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    for name in ["rarefaction", "shock", "stationary"] {
        assert!(!table(&text, name).is_empty(), "{name}");
    }
    assert!(!text.contains("# composite"));
    let o = bin(&["curves", "--gamma", "2", "--left", "1.5,0.5,2", "--a-target", "3", "--composite"]);
    assert!(stdout(&o).contains("# composite"));
}

#[test]
fn simulate_writes_one_row_per_cell() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("ex3.csv");
    let o = bin(&["simulate", "--example", "3", "--out", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let text = std::fs::read_to_string(&path).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("x,a,rho,u,rho_exact,u_exact"));
    let rows: Vec<Vec<f64>> = lines.map(floats).collect();
    assert_eq!(rows.len(), 2000);
    // 12 significant digits: x = (j + 1/2) dx survives the round trip
    for (j, r) in rows.iter().enumerate() {
        let x = (j as f64 + 0.5) * 0.01;
        assert!((r[0] - x).abs() <= 1e-12 * x.max(1.0));
        assert!(r[2] > 0.0 && r[3] >= 0.0);
    }
}

#[test]
fn scenario_file_runs_like_the_builtin_example() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("ex4.toml");
    std::fs::write(
        &path,
        r#"
name = "file-example-4"
gamma = 3.25
t_end = 1.0
x0 = 6.0
expected_pattern = "S0+R+J"

[grid]
x_lo = 0.0
x_hi = 20.0
n = 2000

[width]
breakpoints = [[6.0, 2.0], [6.0, 3.5]]

[[state]]
x_start = 0.0
u = 3.0
rho = 0.75

[[state]]
x_start = 6.0
u = 8.0
rho = 0.5
"#,
    )
    .unwrap();
    let from_file = bin(&["compare", "--scenario", path.to_str().unwrap()]);
    let builtin = bin(&["compare", "--example", "4"]);
    assert_eq!(from_file.status.code(), Some(0));
    assert_eq!(builtin.status.code(), Some(0));
    let strip = |o: &Output| stdout(o).split_once(": ").unwrap().1.to_string();
    assert_eq!(strip(&from_file), strip(&builtin));
    assert!(strip(&builtin).starts_with("PASS case=C1_3_Vacuum"));
}

#[test]
fn malformed_scenario_file_is_a_usage_error() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.toml");
    std::fs::write(&path, "name = \"x\"\ngamma = 2\n").unwrap();
    let o = bin(&["simulate", "--scenario", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn examples_lists_all_nine() {
    let o = bin(&["examples"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert_eq!(text.lines().count(), 10);
    assert!(text.lines().nth(5).unwrap().starts_with("example-5,1.5,"));
}
