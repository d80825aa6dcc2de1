use std::path::{Path, PathBuf};
use std::process::Command;

use googlerank::cli::{run, EXIT_INPUT, EXIT_NOT_CONVERGED, EXIT_OK};
use tempfile::TempDir;

struct Run {
    code: i32,
    out: String,
    err: String,
}

fn pagerank(args: &[&str]) -> Run {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv: Vec<&str> = std::iter::once("pagerank")
        .chain(args.iter().copied())
        .collect();
    let code = run(argv, &mut out, &mut err);
    Run {
        code,
        out: String::from_utf8(out).unwrap(),
        err: String::from_utf8(err).unwrap(),
    }
}

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let p = dir.path().join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn csv_rows(text: &str) -> Vec<Vec<String>> {
    text.lines()
        .skip(1)
        .map(|l| l.split(',').map(str::to_owned).collect())
        .collect()
}

#[test]
fn rank_two_cycle_defaults() {
    let dir = TempDir::new().unwrap();
    let g = write(&dir, "g.txt", "0 1\n1 0\n");
    let r = pagerank(&["rank", "--input", s(&g)]);
    assert_eq!(r.code, EXIT_OK, "{}", r.err);
    assert_eq!(r.out, "0,0.5\n1,0.5\n");
}

#[test]
fn rank_rejects_alpha_one() {
    let dir = TempDir::new().unwrap();
    let g = write(&dir, "g.txt", "0 1\n1 0\n");
    let r = pagerank(&["rank", "--input", s(&g), "--alpha", "1.0"]);
    assert_eq!(r.code, EXIT_INPUT);
    assert!(r.out.is_empty());
    assert!(r.err.contains("alpha"));
}

#[test]
fn rank_max_iters_exhaustion() {
    let dir = TempDir::new().unwrap();
    let g = write(&dir, "g.txt", "0 1\n1 2\n2 3\n3 4\n");
    let r = pagerank(&[
        "rank",
        "--input",
        s(&g),
        "--max-iters",
        "1",
        "--format",
        "json",
    ]);
    assert_eq!(r.code, EXIT_NOT_CONVERGED);
    let v: serde_json::Value = serde_json::from_str(&r.out).unwrap();
    assert_eq!(v["converged"], false);
    assert_eq!(v["scores"].as_array().unwrap().len(), 5);
}

#[test]
fn rank_input_errors() {
    let dir = TempDir::new().unwrap();
    let missing = dir.path().join("nope.txt");
    assert_eq!(pagerank(&["rank", "--input", s(&missing)]).code, EXIT_INPUT);
    let bad = write(&dir, "bad.txt", "0 1\n1 x\n");
    let r = pagerank(&["rank", "--input", s(&bad)]);
    assert_eq!(r.code, EXIT_INPUT);
    assert!(r.err.contains("line 2"), "{}", r.err);
    let g = write(&dir, "g.txt", "0 1\n1 0\n");
    let v = write(&dir, "v.txt", "0.7\n0.7\n");
    assert_eq!(
        pagerank(&["rank", "--input", s(&g), "--v-file", s(&v)]).code,
        EXIT_INPUT
    );
    let short = write(&dir, "short.txt", "1.0\n");
    assert_eq!(
        pagerank(&["rank", "--input", s(&g), "--v-file", s(&short)]).code,
        EXIT_INPUT
    );
}

#[test]
fn rank_personalized_to_file() {
    let dir = TempDir::new().unwrap();
    let g = write(&dir, "g.txt", "# nodes: 3\n0 1\n1 0\n");
    let v = write(&dir, "v.txt", "0\n0\n1\n");
    let out = dir.path().join("out.tsv");
    let r = pagerank(&[
        "rank",
        "--input",
        s(&g),
        "--v-file",
        s(&v),
        "--dangling",
        "personalization",
        "--format",
        "tsv",
        "--output",
        s(&out),
    ]);
    assert_eq!(r.code, EXIT_OK, "{}", r.err);
    assert!(r.out.is_empty());
    let text = std::fs::read_to_string(&out).unwrap();
    let scores: Vec<(usize, f64)> = text
        .lines()
        .map(|l| {
            let (a, b) = l.split_once('\t').unwrap();
            (a.parse().unwrap(), b.parse().unwrap())
        })
        .collect();
    assert_eq!(scores.len(), 3);
    let total: f64 = scores.iter().map(|x| x.1).sum();
    assert!((total - 1.0).abs() < 1e-12);
}

#[test]
fn verify_random_trials_pass() {
    let r = pagerank(&[
        "verify", "--n", "10", "--trials", "20", "--alpha", "0.85", "--seed", "1",
    ]);
    assert_eq!(r.code, EXIT_OK, "{}{}", r.out, r.err);
    let rows = csv_rows(&r.out);
    assert_eq!(rows.len(), 20);
    assert!(rows.iter().all(|row| row.last().unwrap() == "true"));
    let seeds: Vec<u64> = rows.iter().map(|row| row[1].parse().unwrap()).collect();
    assert_eq!(seeds, (1..=20).collect::<Vec<u64>>());
    assert!(r.err.contains("20/20"));
}

#[test]
fn verify_identity_fixture_reports_alpha() {
    let dir = TempDir::new().unwrap();
    let g = write(&dir, "identity.txt", "0 0\n1 1\n");
    let r = pagerank(&[
        "verify",
        "--n",
        "2",
        "--trials",
        "1",
        "--alpha",
        "0.85",
        "--input",
        s(&g),
        "--format",
        "json",
    ]);
    assert_eq!(r.code, EXIT_OK, "{}", r.err);
    let v: serde_json::Value = serde_json::from_str(&r.out).unwrap();
    let trial = &v["trials"][0];
    assert!((trial["lambda2_a"].as_f64().unwrap() - 0.85).abs() < 1e-10);
    assert_eq!(trial["passed"], true);
}

#[test]
fn verify_refuses_large_n() {
    let r = pagerank(&["verify", "--n", "5000", "--trials", "1"]);
    assert_eq!(r.code, EXIT_INPUT);
    assert!(r.out.is_empty());
}

#[test]
fn sweep_ten_cycle() {
    let dir = TempDir::new().unwrap();
    let edges: String = (0..10).map(|i| format!("{i} {}\n", (i + 1) % 10)).collect();
    let g = write(&dir, "cycle.txt", &edges);
    let v: String = (1..=10).map(|i| format!("{}\n", i as f64 / 55.0)).collect();
    let v = write(&dir, "v.txt", &v);
    let r = pagerank(&[
        "sweep",
        "--input",
        s(&g),
        "--v-file",
        s(&v),
        "--alpha-min",
        "0.5",
        "--alpha-max",
        "0.9",
        "--steps",
        "3",
    ]);
    assert_eq!(r.code, EXIT_OK, "{}", r.err);
    assert!(r
        .out
        .starts_with("alpha,iterations,estimated_rate,predicted_rate\n"));
    let rows = csv_rows(&r.out);
    assert_eq!(rows.len(), 3);
    for (row, alpha) in rows.iter().zip([0.5, 0.7, 0.9]) {
        assert_eq!(row[0].parse::<f64>().unwrap(), alpha);
        let est: f64 = row[2].parse().unwrap();
        let pred: f64 = row[3].parse().unwrap();
        assert!((est - alpha).abs() <= 0.05 * alpha, "{row:?}");
        assert!((pred - alpha).abs() <= 1e-8, "{row:?}");
    }
}

#[test]
fn sweep_identity_rate_is_exact() {
    let dir = TempDir::new().unwrap();
    let g = write(&dir, "identity.txt", "0 0\n1 1\n2 2\n3 3\n");
    let v = write(&dir, "v.txt", "0.4\n0.3\n0.2\n0.1\n");
    let r = pagerank(&[
        "sweep",
        "--input",
        s(&g),
        "--v-file",
        s(&v),
        "--alpha-min",
        "0.3",
        "--alpha-max",
        "0.9",
        "--steps",
        "4",
    ]);
    assert_eq!(r.code, EXIT_OK, "{}", r.err);
    for row in csv_rows(&r.out) {
        let alpha: f64 = row[0].parse().unwrap();
        let est: f64 = row[2].parse().unwrap();
        assert!((est - alpha).abs() <= 1e-10, "{row:?}");
    }
}

#[test]
fn sweep_empty_grid_is_usage_error() {
    let r = pagerank(&["sweep", "--steps", "0"]);
    assert_eq!(r.code, EXIT_INPUT);
    let r = pagerank(&["sweep", "--alpha-min", "0"]);
    assert_eq!(r.code, EXIT_INPUT);
}

#[test]
fn sweep_random_instance() {
    let r = pagerank(&[
        "sweep", "--n", "20", "--seed", "4", "--steps", "2", "--format", "json",
    ]);
    assert_eq!(r.code, EXIT_OK, "{}", r.err);
    let v: serde_json::Value = serde_json::from_str(&r.out).unwrap();
    assert_eq!(v.as_array().unwrap().len(), 2);
}

#[test]
fn help_exits_zero() {
    let r = pagerank(&["--help"]);
    assert_eq!(r.code, EXIT_OK);
    assert!(r.out.contains("rank"));
    let r = pagerank(&["rank", "--help"]);
    assert!(r.out.contains("--max-iters") && r.out.contains("--v-file"));
}

#[test]
fn binary_streams_and_exit_codes() {
    let dir = TempDir::new().unwrap();
    let g = write(&dir, "g.txt", "0 1\n1 0\n");
    let bin = env!("CARGO_BIN_EXE_pagerank");
    let ok = Command::new(bin)
        .args(["rank", "--input", s(&g)])
        .output()
        .unwrap();
    assert_eq!(ok.status.code(), Some(0));
    assert_eq!(String::from_utf8(ok.stdout).unwrap(), "0,0.5\n1,0.5\n");
    assert!(!ok.stderr.is_empty());
    let bad = Command::new(bin)
        .args(["rank", "--input", s(&g), "--alpha", "1.0"])
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(1));
    assert!(bad.stdout.is_empty());
}
