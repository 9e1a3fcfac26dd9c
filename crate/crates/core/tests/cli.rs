use std::path::{Path, PathBuf};
use std::process::Command;

use ftscheck::cli::{self, EXIT_ERROR, EXIT_SAT, EXIT_VIOL};
use serde_json::Value;

fn vending() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("models/vending.fts")
}

fn run(args: &[&str]) -> (String, String, i32) {
    cli::run(std::iter::once("ftscheck").chain(args.iter().copied()))
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn generated(dir: &Path, name: &str, gen_args: &[&str]) -> PathBuf {
    let mut args = vec!["gen"];
    args.extend_from_slice(gen_args);
    let (model, _, code) = run(&args);
    assert_eq!(code, 0);
    let file = dir.join(name);
    std::fs::write(&file, model).unwrap();
    file
}

#[test]
fn check_vending_reports_partition() {
    let (out, err, code) = run(&["check", path(&vending()), "A[!r U r]"]);
    assert_eq!(code, EXIT_VIOL, "{err}");
    assert!(out.contains("viol  {c}  [c & !f]\n"), "{out}");
    assert!(out.contains("sat   {}, {f}, {c,f}\n"), "{out}");
    assert!(out.contains("satisfied: 3  violated: 1"), "{out}");
}

#[test]
fn check_true_is_one_call() {
    let (out, _, code) = run(&["check", path(&vending()), "true", "--stats"]);
    assert_eq!(code, EXIT_SAT);
    assert!(out.contains("calls: 1 "), "{out}");
}

#[test]
fn check_mn10_call_count() {
    let dir = tempfile::tempdir().unwrap();
    let model = generated(dir.path(), "mn_10.fts", &["mn", "10"]);
    let (out, _, code) = run(&["check", path(&model), "AF x_ge_1", "--stats"]);
    assert_eq!(code, EXIT_VIOL);
    assert!(out.contains("calls: 21  splits: 10  levels: 11 "), "{out}");
}

#[test]
fn structured_report() {
    let vm = vending();
    let args = ["check", path(&vm), "A[!r U r]", "--report", "structured"];
    let (out, _, code) = run(&args);
    assert_eq!(code, EXIT_VIOL);
    assert_eq!(run(&args).0, out, "output is deterministic");
    let doc: Value = serde_json::from_str(&out).unwrap();
    let verdicts = doc["verdicts"].as_array().unwrap();
    assert_eq!(verdicts.len(), 2);
    assert_eq!(verdicts[0]["verdict"], "viol");
    assert_eq!(verdicts[0]["configs"], serde_json::json!([["c"]]));
    assert_eq!(verdicts[0]["formula"], "c & !f");
    assert_eq!(verdicts[1]["verdict"], "sat");
    assert_eq!(verdicts[1]["configs"], serde_json::json!([[], ["f"], ["c", "f"]]));
    assert!(verdicts[1].get("formula").is_none());
    assert_eq!(doc["stats"]["calls"], 5);
    assert!(doc["stats"].get("elapsed_ms").is_none());

    let (timed, _, _) = run(&["check", path(&vending()), "A[!r U r]", "--report", "structured", "--stats"]);
    let doc: Value = serde_json::from_str(&timed).unwrap();
    assert!(doc["stats"]["elapsed_ms"].is_number());
}

#[test]
fn no_reuse_same_verdicts() {
    let (a, _, ca) = run(&["check", path(&vending()), "A[!r U r]"]);
    let (b, _, cb) = run(&["check", path(&vending()), "A[!r U r]", "--no-reuse", "--audit-reuse"]);
    assert_eq!((a, ca), (b, cb));
}

#[test]
fn dot_dir_per_iteration() {
    let dir = tempfile::tempdir().unwrap();
    let dots = dir.path().join("dots");
    let (_, _, code) = run(&["check", path(&vending()), "E[!r U r]", "--dot-dir", path(&dots)]);
    assert_eq!(code, EXIT_SAT);
    assert_eq!(std::fs::read_dir(&dots).unwrap().count(), 3);
}

#[test]
fn oracle_table() {
    let (out, _, code) = run(&["oracle", path(&vending()), "E[!r U r]"]);
    assert_eq!(code, 0);
    let rows: Vec<&str> = out.lines().skip(1).collect();
    assert_eq!(rows.len(), 4);
    assert!(rows.iter().all(|r| r.ends_with("tt")));
    let (out, _, _) = run(&["oracle", path(&vending()), "A[!r U r]"]);
    assert_eq!(out, "config  verdict\n{}      tt\n{c}     ff\n{f}     tt\n{c,f}   tt\n");
}

#[test]
fn oracle_agrees_with_check_on_random_model() {
    let dir = tempfile::tempdir().unwrap();
    let model = generated(dir.path(), "r.fts", &["random", "--seed", "11", "--states", "5", "--features", "3"]);
    for formula in ["AG EF p", "A[p U q]", "EX (p & E[q V p])"] {
        let (table, _, _) = run(&["oracle", path(&model), formula]);
        let (report, _, _) = run(&["check", path(&model), formula, "--report", "structured"]);
        let doc: Value = serde_json::from_str(&report).unwrap();
        let mut expanded = Vec::new();
        for v in doc["verdicts"].as_array().unwrap() {
            let tt = v["verdict"] == "sat";
            for k in v["configs"].as_array().unwrap() {
                let names: Vec<&str> = k.as_array().unwrap().iter().map(|n| n.as_str().unwrap()).collect();
                expanded.push((format!("{{{}}}", names.join(",")), tt));
            }
        }
        for line in table.lines().skip(1) {
            let mut parts = line.split_whitespace();
            let (k, v) = (parts.next().unwrap(), parts.next().unwrap() == "tt");
            assert!(expanded.contains(&(k.to_string(), v)), "{formula}: {line}");
        }
        assert_eq!(expanded.len(), table.lines().count() - 1);
    }
}

#[test]
fn game_dot_export() {
    let dir = tempfile::tempdir().unwrap();
    let dot = dir.path().join("g.dot");
    let (out, _, code) = run(&["game", path(&vending()), "A[!r U r]", path(&dot)]);
    assert_eq!(code, 0);
    assert_eq!(out, "18 nodes, 20 edges, result Indefinite\n");
    let text = std::fs::read_to_string(&dot).unwrap();
    let line = |label: &str| text.lines().find(|l| l.contains(&format!("label=\"{label}\""))).unwrap().to_string();
    assert!(line("(s0, A[!r U r])").contains("fillcolor=white"));
    assert!(line("(s0, A[!r U r])").contains("peripheries=2"));
    assert!(line("(s2, r)").contains("fillcolor=green"));

    let (out, _, _) = run(&["game", path(&vending()), "r", path(&dot)]);
    assert!(out.starts_with("1 nodes, 0 edges"), "{out}");

    let (_, err, code) = run(&["game", path(&vending()), "r", path(&dir.path().join("missing/g.dot"))]);
    assert_eq!(code, EXIT_ERROR);
    assert!(err.starts_with("error:"));
}

#[test]
fn input_errors_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.fts");
    std::fs::write(&bad, "features: c;\nstates: s0*;\ntrans: s0 -a[d]-> s0;\n").unwrap();
    let (_, err, code) = run(&["check", path(&bad), "true"]);
    assert_eq!(code, EXIT_ERROR);
    assert!(err.contains("line 3"), "{err}");

    let (_, err, code) = run(&["check", path(&vending()), "A[r U"]);
    assert_eq!(code, EXIT_ERROR);
    assert!(err.contains("syntax error"), "{err}");

    let (_, _, code) = run(&["oracle", path(&vending()), ""]);
    assert_eq!(code, EXIT_ERROR);
    let (_, _, code) = run(&["check", path(&dir.path().join("nope.fts")), "true"]);
    assert_eq!(code, EXIT_ERROR);
    let (_, _, code) = run(&["check"]);
    assert_eq!(code, EXIT_ERROR);

    let no_init = dir.path().join("noinit.fts");
    std::fs::write(&no_init, "states: s0;\ntrans: s0 -a-> s0;\n").unwrap();
    let (_, err, code) = run(&["check", path(&no_init), "true"]);
    assert_eq!(code, EXIT_ERROR);
    assert!(err.contains("initial"), "{err}");
}

#[test]
fn bundled_model_matches_generator() {
    let (generated, _, _) = run(&["gen", "vending"]);
    let bundled = cli::load_model(&vending()).unwrap();
    assert_eq!(cli::parse_model(&generated).unwrap(), bundled);
    assert_eq!(bundled.ts.states.len(), 3);
    assert_eq!(bundled.ts.transitions.len(), 5);
}

#[test]
fn bench_table() {
    let (out, _, code) = run(&["bench", "--n", "2,3", "--compare-reuse"]);
    assert_eq!(code, 0);
    let rows: Vec<&str> = out.lines().collect();
    assert_eq!(rows.len(), 5);
    assert!(rows[1].starts_with("M_2    A[true U x_ge_0]      1 "), "{out}");
    let (csv, _, _) = run(&["bench", "--n", "2", "--csv"]);
    assert!(csv.starts_with("model,formula,calls,"));
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_ftscheck");
    let status = |args: &[&str]| Command::new(bin).args(args).output().unwrap();
    let out = status(&["check", path(&vending()), "E[!r U r]"]);
    assert_eq!(out.status.code(), Some(EXIT_SAT));
    let out = status(&["check", path(&vending()), "A[!r U r]"]);
    assert_eq!(out.status.code(), Some(EXIT_VIOL));
    assert!(String::from_utf8(out.stdout).unwrap().contains("viol  {c}"));
    let out = status(&["check", path(&vending()), "A[[r"]);
    assert_eq!(out.status.code(), Some(EXIT_ERROR));
    assert!(!out.stderr.is_empty());
}
