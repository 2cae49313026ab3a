use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use tempfile::TempDir;

fn bpodc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bpodc"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

fn data_rows(csv: &str) -> Vec<&str> {
    csv.lines()
        .filter(|l| !l.starts_with('#'))
        .skip(1)
        .collect()
}

const COVERAGE: &str = "problem = coverage\n\
                        random_vertices = 12\n\
                        random_edge_prob = 0.2\n\
                        graph_seed = 3\n\
                        schedule_initial = 6\n\
                        algorithms = bpodc,bpodc-cold,pomc,eamc,gga,agga\n\
                        t_initial = 0.5\n\
                        t_change = 0.25\n";

#[test]
fn zero_changes_gives_one_row_per_algorithm() {
    let dir = TempDir::new().unwrap();
    let cfg = write(dir.path(), "c.cfg", COVERAGE);
    let out = dir.path().join("out");
    let o = bpodc(&[
        "run",
        "--quiet",
        "--config",
        &cfg,
        "--out",
        out.to_str().unwrap(),
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let csv = fs::read_to_string(out.join("runs.csv")).unwrap();
    assert!(csv.contains("# config_sha256="));
    assert!(csv.contains("# master_seed=0"));
    assert!(csv.lines().any(|l| l
        == "run_id,algorithm,seed,change_index,budget,evals_used,best_f,best_cost,archive_size"));
    assert_eq!(data_rows(&csv).len(), 6);
    let summary = fs::read_to_string(out.join("summary.csv")).unwrap();
    assert_eq!(data_rows(&summary).len(), 6);
}

#[test]
fn runs_are_byte_identical_across_invocations_and_job_counts() {
    let dir = TempDir::new().unwrap();
    let text = format!(
        "{COVERAGE}repeats = 3\nschedule_changes = 5\nschedule_delta = 2\n\
         schedule_low = 2\nschedule_high = 10\nseed = 11\n"
    );
    let cfg = write(dir.path(), "c.cfg", &text);
    let mut outputs = Vec::new();
    for (name, jobs) in [("a", "1"), ("b", "1"), ("c", "4")] {
        let out = dir.path().join(name);
        let o = bpodc(&[
            "run",
            "--quiet",
            "--config",
            &cfg,
            "--out",
            out.to_str().unwrap(),
            "--jobs",
            jobs,
        ]);
        assert!(o.status.success());
        outputs.push(fs::read(out.join("runs.csv")).unwrap());
    }
    assert_eq!(outputs[0], outputs[1]);
    assert_eq!(outputs[0], outputs[2]);
    let csv = String::from_utf8(outputs[0].clone()).unwrap();
    assert_eq!(data_rows(&csv).len(), 6 * 3 * 6);
}

#[test]
fn seed_flag_overrides_config() {
    let dir = TempDir::new().unwrap();
    let cfg = write(dir.path(), "c.cfg", COVERAGE);
    let a = dir.path().join("a");
    let b = dir.path().join("b");
    for (out, seed) in [(&a, "1"), (&b, "2")] {
        let o = bpodc(&[
            "run",
            "--quiet",
            "--config",
            &cfg,
            "--out",
            out.to_str().unwrap(),
            "--seed",
            seed,
        ]);
        assert!(o.status.success());
    }
    let a = fs::read_to_string(a.join("runs.csv")).unwrap();
    let b = fs::read_to_string(b.join("runs.csv")).unwrap();
    assert!(a.contains("# master_seed=1"));
    assert_ne!(a, b);
}

#[test]
fn missing_graph_file_exits_3_and_names_path() {
    let dir = TempDir::new().unwrap();
    let cfg = write(
        dir.path(),
        "c.cfg",
        "problem = influence\ngraph = no_such_graph.txt\nschedule_initial = 10\n",
    );
    let o = bpodc(&[
        "run",
        "--config",
        &cfg,
        "--out",
        dir.path().to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).contains("no_such_graph.txt"));
}

#[test]
fn bad_config_exits_2() {
    let dir = TempDir::new().unwrap();
    let cfg = write(
        dir.path(),
        "c.cfg",
        "problem = coverage\nfrobnicate = yes\n",
    );
    assert_eq!(bpodc(&["run", "--config", &cfg]).status.code(), Some(2));
}

#[test]
fn influence_run_from_edge_list() {
    let dir = TempDir::new().unwrap();
    write(
        dir.path(),
        "g.txt",
        "# toy\n1 2\n2 3\n3 1\n3 4\n4 5\n5 6\n6 4\n",
    );
    let cfg = write(
        dir.path(),
        "c.cfg",
        "problem = influence\ngraph = g.txt\nedge_probability = 0.3\nn_simulations = 50\n\
         schedule_initial = 8\nschedule_changes = 3\nschedule_delta = 2\nschedule_low = 4\n\
         schedule_high = 12\nalgorithms = bpodc,gga\nrepeats = 2\n",
    );
    let out = dir.path().join("o");
    let o = bpodc(&[
        "run",
        "--quiet",
        "--config",
        &cfg,
        "--out",
        out.to_str().unwrap(),
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let csv = fs::read_to_string(out.join("runs.csv")).unwrap();
    let rows = data_rows(&csv);
    assert_eq!(rows.len(), 2 * 2 * 4);
    for row in rows {
        let cols: Vec<&str> = row.split(',').collect();
        assert_eq!(cols.len(), 9);
        let budget: f64 = cols[4].parse().unwrap();
        let cost: f64 = cols[7].parse().unwrap();
        assert!(cost <= budget);
    }
}

#[test]
fn schedule_file_has_header_plus_one_line_per_change() {
    let dir = TempDir::new().unwrap();
    let path = dir.path().join("s.txt");
    let o = bpodc(&[
        "schedule",
        "--initial",
        "300",
        "--changes",
        "100",
        "--delta",
        "10",
        "--low",
        "100",
        "--high",
        "500",
        "--seed",
        "5",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(o.status.success());
    let text = fs::read_to_string(&path).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 101);
    assert!(lines[0].starts_with("initial 300"));
    for l in &lines[1..] {
        let b: f64 = l.parse().unwrap();
        assert!((100.0..=500.0).contains(&b));
    }
    let csv = fs::read_to_string(dir.path().join("s_cumulative.csv")).unwrap();
    assert_eq!(csv.lines().count(), 102);

    // a run configured with the written file replays exactly these budgets
    let cfg = write(
        dir.path(),
        "c.cfg",
        "problem = coverage\nrandom_vertices = 8\nrandom_edge_prob = 0.3\nschedule_file = s.txt\n\
         algorithms = gga\ncost_model = unit\n",
    );
    let out = dir.path().join("o");
    assert!(bpodc(&[
        "run",
        "--quiet",
        "--config",
        &cfg,
        "--out",
        out.to_str().unwrap()
    ])
    .status
    .success());
    let runs = fs::read_to_string(out.join("runs.csv")).unwrap();
    let budgets: Vec<f64> = data_rows(&runs)
        .iter()
        .map(|r| r.split(',').nth(4).unwrap().parse().unwrap())
        .collect();
    let expected: Vec<f64> = std::iter::once(300.0)
        .chain(lines[1..].iter().map(|l| l.parse().unwrap()))
        .collect();
    assert_eq!(budgets, expected);
}

#[test]
fn zero_delta_schedule_is_constant() {
    let dir = TempDir::new().unwrap();
    let path = dir.path().join("s.txt");
    let o = bpodc(&[
        "schedule",
        "--initial",
        "42",
        "--changes",
        "7",
        "--delta",
        "0",
        "--low",
        "0",
        "--high",
        "100",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(o.status.success());
    let text = fs::read_to_string(&path).unwrap();
    for l in text.lines().skip(1) {
        assert_eq!(l.parse::<f64>().unwrap(), 42.0);
    }
}

#[test]
fn invalid_schedule_bounds_exit_2() {
    let dir = TempDir::new().unwrap();
    let path = dir.path().join("s.txt");
    let o = bpodc(&[
        "schedule",
        "--initial",
        "600",
        "--changes",
        "3",
        "--delta",
        "1",
        "--low",
        "100",
        "--high",
        "500",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(2));
}

fn toy_sets(dir: &Path) -> String {
    write(dir, "toy.sets", "1 0 1\n1 1 2\n1 3\n");
    write(
        dir,
        "toy.cfg",
        "problem = coverage\nsets = toy.sets\nschedule_initial = 2\n",
    )
}

fn stdout(o: &Output) -> String {
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn oracle_opt_on_three_set_toy() {
    let dir = TempDir::new().unwrap();
    let cfg = toy_sets(dir.path());
    let two = stdout(&bpodc(&[
        "oracle", "opt", "--config", &cfg, "--budget", "2",
    ]));
    assert!(two.lines().any(|l| l == "opt=3"), "{two}");
    assert!(two.lines().any(|l| l == "enumerated=8"));
    let three = stdout(&bpodc(&[
        "oracle", "opt", "--config", &cfg, "--budget", "3",
    ]));
    assert!(three.lines().any(|l| l == "opt=4"));
    assert!(three.lines().any(|l| l == "subset=0,1,2"));
}

#[test]
fn oracle_alpha_on_coverage_is_one() {
    let dir = TempDir::new().unwrap();
    let cfg = toy_sets(dir.path());
    let out = stdout(&bpodc(&["oracle", "alpha", "--config", &cfg]));
    assert_eq!(out.trim(), "alpha_f=1.0");
}

#[test]
fn oracle_cost_quantities() {
    let dir = TempDir::new().unwrap();
    let cfg = toy_sets(dir.path());
    let out = stdout(&bpodc(&[
        "oracle", "cost", "--config", &cfg, "--budget", "2",
    ]));
    assert!(out.contains("delta_c=1.0"));
    assert!(out.contains("kappa_c=0.0"));
    assert!(out.contains("k_b=2"));
}

#[test]
fn oracle_ic_exact_values() {
    let dir = TempDir::new().unwrap();
    write(dir.path(), "g.txt", "0 1\n");
    let cfg = write(
        dir.path(),
        "c.cfg",
        "problem = influence\ngraph = g.txt\nedge_probability = 0.5\nschedule_initial = 1\n",
    );
    let out = stdout(&bpodc(&["oracle", "ic", "--config", &cfg, "--seeds", "0"]));
    assert!(out.lines().any(|l| l == "expectation=1.5"), "{out}");
    assert!(out.lines().any(|l| l == "variance=0.25"));
}

#[test]
fn oracle_oversize_instance_exits_4() {
    let dir = TempDir::new().unwrap();
    let cfg = write(
        dir.path(),
        "c.cfg",
        "problem = coverage\nrandom_vertices = 30\nrandom_edge_prob = 0.1\nschedule_initial = 5\n",
    );
    assert_eq!(
        bpodc(&["oracle", "opt", "--config", &cfg, "--budget", "5"])
            .status
            .code(),
        Some(4)
    );
    assert_eq!(
        bpodc(&["oracle", "alpha", "--config", &cfg]).status.code(),
        Some(4)
    );
}
