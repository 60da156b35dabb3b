use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use ogp_cli::record::{read_csv, CSV_HEADER};

fn ogp(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ogp")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn write_config(dir: &Path, name: &str, text: &str) -> PathBuf {
    let p = dir.join(name);
    fs::write(&p, text).unwrap();
    p
}

fn run(cfg: &Path, out: &Path, workers: &str) -> PathBuf {
    let o = ogp(&["run", "--config", cfg.to_str().unwrap(), "--out", out.to_str().unwrap(), "--workers", workers]);
    assert!(o.status.success(), "{}", stderr(&o));
    PathBuf::from(stdout(&o).trim())
}

fn files_in(dir: &Path) -> Vec<String> {
    let mut v: Vec<String> = fs::read_dir(dir)
        .map(|it| it.map(|e| e.unwrap().file_name().to_string_lossy().into_owned()).collect())
        .unwrap_or_default();
    v.sort();
    v
}

#[test]
fn gen_regular_k4() {
    let o = ogp(&["gen", "regular", "n=4", "d=3", "seed=1"]);
    assert!(o.status.success());
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("4 6"));
    let edges: Vec<(usize, usize)> = lines
        .map(|l| {
            let (u, v) = l.split_once(' ').unwrap();
            (u.parse().unwrap(), v.parse().unwrap())
        })
        .collect();
    let mut k4 = vec![];
    for u in 0..4 {
        for v in u + 1..4 {
            k4.push((u, v));
        }
    }
    let mut sorted = edges.clone();
    sorted.sort();
    assert_eq!(sorted, k4);
}

#[test]
fn gen_parity_error_exits_2() {
    let o = ogp(&["gen", "regular", "n=5", "d=3"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("parity"));
    assert!(stdout(&o).is_empty());
}

#[test]
fn gen_pspin_writes_ten_sorted_tuples() {
    let tmp = tempfile::tempdir().unwrap();
    let path = tmp.path().join("j.txt");
    let o = ogp(&["gen", "pspin", "n=4", "p=2", "seed=1", "--out", path.to_str().unwrap()]);
    assert!(o.status.success(), "{}", stderr(&o));
    let text = fs::read_to_string(&path).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("4 2"));
    let tuples: Vec<(usize, usize)> = lines
        .map(|l| {
            let f: Vec<&str> = l.split_whitespace().collect();
            assert_eq!(f.len(), 3);
            f[2].parse::<f64>().unwrap();
            (f[0].parse().unwrap(), f[1].parse().unwrap())
        })
        .collect();
    // multisets of size 2 from 4 symbols: C(4,2) + 4
    assert_eq!(tuples.len(), 10);
    assert!(tuples.iter().all(|(i, j)| i <= j && *j < 4));
    assert!(tuples.windows(2).all(|w| w[0] < w[1]));
}

#[test]
fn gen_is_seeded() {
    let a = stdout(&ogp(&["gen", "er", "n=50", "d=3", "seed=9"]));
    let b = stdout(&ogp(&["--seed", "9", "gen", "er", "n=50", "d=3"]));
    let c = stdout(&ogp(&["gen", "er", "n=50", "d=3", "seed=10"]));
    assert_eq!(a, b);
    assert_ne!(a, c);
}

#[test]
fn gen_rejects_unknown_keys_and_kinds() {
    assert_eq!(ogp(&["gen", "regular", "n=4", "deg=3"]).status.code(), Some(2));
    assert_eq!(ogp(&["gen", "tree", "n=4"]).status.code(), Some(2));
    assert_eq!(ogp(&["gen", "hypergraph", "n=10", "d=2", "k=1"]).status.code(), Some(2));
}

#[test]
fn run_parity_config_is_a_validation_error() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = write_config(tmp.path(), "bad.cfg", "kind=greedy-ratio\nn=101\nd=3\ntrials=2\n");
    let out = tmp.path().join("out");
    let o = ogp(&["run", "--config", cfg.to_str().unwrap(), "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("parity"), "{}", stderr(&o));
    assert!(!out.exists());
}

#[test]
fn run_rejects_misspelled_keys_and_unknown_kinds() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = write_config(tmp.path(), "a.cfg", "kind=greedy-ratio\nn=100\nd=3\ntrails=2\n");
    let o = ogp(&["run", "--config", cfg.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("trails"));
    let cfg = write_config(tmp.path(), "b.cfg", "kind=annealing\n");
    assert_eq!(ogp(&["run", "--config", cfg.to_str().unwrap()]).status.code(), Some(2));
    let missing = tmp.path().join("missing.cfg");
    assert_eq!(ogp(&["run", "--config", missing.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn unwritable_output_is_a_runtime_error() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = write_config(tmp.path(), "a.cfg", "kind=greedy-ratio\nn=100\nd=3\ntrials=2\n");
    let blocker = tmp.path().join("file");
    fs::write(&blocker, "x").unwrap();
    let o = ogp(&["run", "--config", cfg.to_str().unwrap(), "--out", blocker.join("sub").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(3), "{}", stderr(&o));
}

#[test]
fn small_overlap_probe_writes_csv_and_svg() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = write_config(tmp.path(), "p.cfg", "kind=overlap-probe\nn=16\nd=3\ntheta=0.9\nsampler=exact\nseed=2\n");
    let out = tmp.path().join("out");
    let csv = run(&cfg, &out, "2");
    let svg = csv.with_extension("svg");
    let doc = fs::read_to_string(&svg).unwrap();
    assert!(doc.starts_with("<svg") && doc.trim_end().ends_with("</svg>"));
    let rows = read_csv(&csv).unwrap();
    assert!(!rows.is_empty());
    assert!(rows.iter().all(|r| r.experiment_id == "overlap-probe" && r.seed == "2"));
    let total: f64 = rows.iter().filter(|r| r.metric.starts_with("bin_count")).map(|r| r.value.parse::<f64>().unwrap()).sum();
    assert!(total >= 1.0);
}

#[test]
fn csv_header_is_fixed() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = write_config(tmp.path(), "a.cfg", "kind=greedy-ratio\nn=200\nd=4\ntrials=3\nseed=5\n");
    let csv = run(&cfg, tmp.path(), "1");
    let text = fs::read_to_string(&csv).unwrap();
    assert_eq!(text.lines().next().unwrap(), CSV_HEADER.join(","));
    assert_eq!(text.lines().count(), 1 + 3);
}

fn body(csv: &Path) -> Vec<Vec<String>> {
    read_csv(csv)
        .unwrap()
        .into_iter()
        .map(|r| vec![r.format_version, r.experiment_id, r.params, r.seed, r.trial, r.metric, r.value])
        .collect()
}

#[test]
fn greedy_run_twice_has_identical_bodies() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = write_config(tmp.path(), "g.cfg", "kind=greedy-ratio\nn=10000\nd=20\ntrials=6\nseed=7\n");
    let a = run(&cfg, &tmp.path().join("a"), "1");
    let b = run(&cfg, &tmp.path().join("b"), "4");
    assert_eq!(body(&a), body(&b));
    assert_eq!(a.file_name(), b.file_name());
}

#[test]
fn config_echo_replays_and_seed_flag_overrides() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = write_config(tmp.path(), "d.cfg", "kind=density\nn=3000\nd=5\ntrials=4\nalgorithm=random-priority\n");
    let a = run(&cfg, &tmp.path().join("a"), "2");
    let echo = a.with_extension("config");
    let b = run(&echo, &tmp.path().join("b"), "1");
    assert_eq!(body(&a), body(&b));

    let o = ogp(&[
        "--seed",
        "99",
        "run",
        "--config",
        echo.to_str().unwrap(),
        "--out",
        tmp.path().join("c").to_str().unwrap(),
    ]);
    assert!(o.status.success());
    let c = PathBuf::from(stdout(&o).trim());
    assert!(c.file_name().unwrap().to_str().unwrap().starts_with("density-s99-"));
    assert_ne!(body(&a), body(&c));
}

#[test]
fn ogp_scan_accepts_a_probe_config_and_theta_grid() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = write_config(tmp.path(), "p.cfg", "kind=overlap-probe\nn=12\nd=3\ntheta=1\nsampler=exact\n");
    let out = tmp.path().join("out");
    let o = ogp(&["ogp-scan", "--config", cfg.to_str().unwrap(), "--thetas", "0.7,0.85,1", "--out", out.to_str().unwrap()]);
    assert!(o.status.success(), "{}", stderr(&o));
    let svgs = files_in(&out).into_iter().filter(|f| f.ends_with(".svg")).count();
    assert_eq!(svgs, 3);
    let bad = write_config(tmp.path(), "g.cfg", "kind=greedy-ratio\nn=100\nd=3\n");
    assert_eq!(ogp(&["ogp-scan", "--config", bad.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn rules_lists_the_library() {
    let o = ogp(&["rules"]);
    assert!(o.status.success());
    let text = stdout(&o);
    for id in ["identity", "label-broadcast", "neighbor-sum", "neighbor-min", "threshold", "priority-greedy"] {
        assert!(text.contains(id), "{id} missing");
    }
}

#[test]
fn report_on_empty_directory() {
    let tmp = tempfile::tempdir().unwrap();
    let o = ogp(&["report", tmp.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("no records"));
}

#[test]
fn report_on_missing_directory_is_a_validation_error() {
    let tmp = tempfile::tempdir().unwrap();
    let o = ogp(&["report", tmp.path().join("nope").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn report_single_greedy_record() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = write_config(tmp.path(), "g.cfg", "kind=greedy-ratio\nn=2000\nd=8\ntrials=5\nseed=1\n");
    let out = tmp.path().join("out");
    let csv = run(&cfg, &out, "1");
    let o = ogp(&["report", out.to_str().unwrap()]);
    assert!(o.status.success());
    let text = stdout(&o);
    let id = csv.file_stem().unwrap().to_str().unwrap();
    let rows: Vec<&str> = text.lines().filter(|l| l.contains(id)).collect();
    assert_eq!(rows.len(), 1, "{text}");

    // mean and ratio recomputed from the per-trial CSV values
    let vals: Vec<f64> = read_csv(&csv).unwrap().iter().map(|r| r.value.parse().unwrap()).collect();
    let mean = vals.iter().sum::<f64>() / vals.len() as f64;
    let ratio = mean / (2.0 * 8f64.ln() / 8.0);
    assert!(rows[0].contains(&format!("{mean:.6}")), "{}", rows[0]);
    assert!(rows[0].contains(&format!("{ratio:.4}")), "{}", rows[0]);
    assert!(text.contains("stderr") && text.contains("ratio"));
}

#[test]
fn report_mixed_valid_and_corrupt() {
    let tmp = tempfile::tempdir().unwrap();
    let out = tmp.path().join("out");
    let good = run(&write_config(tmp.path(), "g.cfg", "kind=greedy-ratio\nn=500\nd=4\ntrials=3\n"), &out, "1");
    let scaling = run(
        &write_config(tmp.path(), "s.cfg", "kind=maxcut-scaling\nk=2\nn=400\ndegrees=4,8\ntrials=3\n"),
        &out,
        "1",
    );
    fs::write(out.join("broken.summary"), "this is not a record\n").unwrap();
    fs::write(out.join("orphan.csv"), "a,b\n1,2\n").unwrap();
    let bad_csv = out.join("badcsv.summary");
    fs::copy(good.with_extension("summary"), &bad_csv).unwrap();
    fs::write(out.join("badcsv.csv"), format!("{}\n1,x,y,0,0,m,notanumber,t\n", CSV_HEADER.join(","))).unwrap();

    let o = ogp(&["report", out.to_str().unwrap()]);
    assert!(o.status.success(), "{}", stderr(&o));
    let text = stdout(&o);
    assert!(text.contains(good.file_stem().unwrap().to_str().unwrap()));
    assert!(text.contains(scaling.file_stem().unwrap().to_str().unwrap()));
    assert!(text.contains("sqrt(d)"));
    let broken = text.split("== unreadable records").nth(1).expect("unreadable section");
    assert!(broken.contains("broken.summary"));
    assert!(broken.contains("orphan.csv"));
    assert!(broken.contains("badcsv.summary"));
}
