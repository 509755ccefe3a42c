use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

use quartic_fermat::obstruction::VerdictReport;
use serde_json::Value;

const SAMPLES: &[(&str, &[&str])] = &[
    ("help", &["--help"]),
    ("newforms_table", &["newforms", "table", "--verify"]),
    ("frey_trace", &["frey", "trace", "--variant", "BA", "--A", "0", "--B", "1", "--q", "11"]),
    ("a3_table", &["a3-table"]),
    ("verdict_theorem1", &["verdict", "theorem1", "--p", "19"]),
    ("verdict_range", &["verdict", "theorem1", "--range", "2", "60"]),
    ("verdict_first_case", &["verdict", "first-case", "--p", "19"]),
    ("analyze_q", &["analyze-q", "--p", "7", "--q", "197"]),
    ("two_squares", &["two-squares", "5525", "--all"]),
    ("search", &["search", "--max-ab", "60", "--primes", "5,7,11,13"]),
    ("side_claims", &["side-claims", "--max-ab", "40"]),
];

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_quartic-fermat")).args(args).output().expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = run(args);
    assert_eq!(out.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn golden_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(format!("{name}.txt"))
}

#[test]
fn golden_outputs() {
    let update = std::env::var_os("UPDATE_GOLDEN").is_some();
    for (name, args) in SAMPLES {
        let got = stdout(args);
        let path = golden_path(name);
        if update {
            fs::write(&path, &got).unwrap();
            continue;
        }
        let want = fs::read_to_string(&path).unwrap_or_else(|_| panic!("missing {}", path.display()));
        assert_eq!(got, want, "output of {args:?} differs from {}", path.display());
    }
}

#[test]
fn help_lists_every_subcommand() {
    let help = stdout(&["--help"]);
    for sub in ["newforms", "frey", "a3-table", "verdict", "analyze-q", "two-squares", "search", "side-claims"] {
        assert!(help.contains(sub), "{sub} missing from help");
    }
    assert!(stdout(&["verdict", "--help"]).contains("first-case"));
    assert!(stdout(&["newforms", "table", "--help"]).contains("--max-prime"));
}

#[test]
fn json_round_trip_is_idempotent() {
    for (name, args) in SAMPLES.iter().filter(|(n, _)| *n != "help") {
        let mut with_json = vec!["--json"];
        with_json.extend_from_slice(args);
        let text = stdout(&with_json);
        let value: Value = serde_json::from_str(&text).unwrap_or_else(|e| panic!("{name}: {e}"));
        let again = serde_json::to_string_pretty(&value).unwrap();
        assert_eq!(again, text.trim_end(), "{name}");
        let reparsed: Value = serde_json::from_str(&again).unwrap();
        assert_eq!(reparsed, value);
    }
}

#[test]
fn verdict_json_is_a_report() {
    for target in ["theorem1", "first-case"] {
        let text = stdout(&["--json", "verdict", target, "--p", "19"]);
        let report = VerdictReport::from_json(&text).unwrap();
        assert_eq!(report.to_json(), text.trim_end());
        assert!(report.all_computed_hold());
    }
}

#[test]
fn documented_examples() {
    assert!(stdout(&["verdict", "theorem1", "--p", "19"]).trim_end().ends_with("Eliminated"));
    assert!(stdout(&["analyze-q", "--p", "7", "--q", "197"]).contains("PlusOneBranchShape"));
    let table = stdout(&["newforms", "table", "--verify"]);
    assert_eq!(table.lines().filter(|l| l.ends_with("(ok)")).count(), 6);
    let v: Value = serde_json::from_str(&stdout(&["--json", "frey", "trace", "--variant", "BA", "--A", "0", "--B", "1", "--q", "3"])).unwrap();
    assert_eq!(v["trace"]["irr"], 2);
    assert_eq!(v["trace"]["rat"], 0);
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        &["frobnicate"][..],
        &["search", "--max-ab", "10"],
        &["search", "--max-ab", "10", "--primes", "5", "--bogus"],
        &["two-squares", "twelve"],
        &["verdict", "theorem1"],
        &["verdict", "theorem1", "--p", "19", "--range", "2", "5"],
        &["newforms", "table", "--max-prime", "30"],
        &["analyze-q", "--p", "5", "--q", "13"],
        &["analyze-q", "--p", "7", "--q", "19"],
        &["frey", "trace", "--variant", "AB", "--A", "2", "--B", "4", "--q", "3"],
        &["frey", "trace", "--variant", "AB", "--A", "1", "--B", "1", "--q", "2"],
        &["frey", "trace", "--variant", "XY", "--A", "1", "--B", "1", "--q", "3"],
    ] {
        assert_eq!(run(args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn negative_parameters_are_accepted() {
    let out = stdout(&["frey", "trace", "--variant", "AB", "--A", "-3", "--B", "2", "--q", "7"]);
    assert!(out.contains("(A, B) = (-3, 2)"));
}

#[test]
fn cache_does_not_change_results() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("counts.txt");
    let cache_arg = cache.to_str().unwrap();
    let commands: [&[&str]; 4] = [
        &["--json", "newforms", "table", "--verify", "--max-prime", "31"],
        &["--json", "verdict", "theorem1", "--p", "19"],
        &["--json", "a3-table"],
        &["--json", "frey", "trace", "--variant", "AB", "--A", "5", "--B", "2", "--q", "29"],
    ];
    for args in commands {
        let direct = stdout(args);
        let mut cached = vec!["--cache", cache_arg];
        cached.extend_from_slice(args);
        let cold = stdout(&cached);
        let warm = stdout(&cached);
        assert_eq!(direct, cold, "{args:?}");
        assert_eq!(direct, warm, "{args:?}");
    }
    let records = fs::read_to_string(&cache).unwrap();
    assert!(records.lines().count() > 10);
    for line in records.lines() {
        let parts: Vec<&str> = line.split(' ').collect();
        assert_eq!(parts.len(), 3, "{line}");
        assert_eq!(parts[0].len(), 32);
        parts[1].parse::<u64>().unwrap();
        parts[2].parse::<u64>().unwrap();
    }
}

#[test]
fn tampered_cache_fails_verification() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("counts.txt");
    let cache_arg = cache.to_str().unwrap();
    stdout(&["--cache", cache_arg, "newforms", "table", "--verify"]);
    let shifted: String = fs::read_to_string(&cache)
        .unwrap()
        .lines()
        .map(|l| {
            let mut parts: Vec<String> = l.split(' ').map(String::from).collect();
            parts[2] = (parts[2].parse::<u64>().unwrap() + 2).to_string();
            parts.join(" ") + "\n"
        })
        .collect();
    fs::write(&cache, shifted).unwrap();
    let out = run(&["--cache", cache_arg, "newforms", "table", "--verify"]);
    assert_eq!(out.status.code(), Some(1), "{}", String::from_utf8_lossy(&out.stderr));
}

#[test]
fn malformed_cache_is_a_usage_error() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("counts.txt");
    fs::write(&cache, "not a record\n").unwrap();
    let out = run(&["--cache", cache.to_str().unwrap(), "a3-table"]);
    assert_eq!(out.status.code(), Some(2));
}
