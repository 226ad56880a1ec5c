//! The `gridfloer` binary: golden outputs, exit codes and determinism.

mod common;

use std::process::{Command, Output};

use common::corpus_path;

fn gridfloer(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gridfloer"))
        .args(args)
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

#[test]
fn hat_of_the_trefoil() {
    let o = gridfloer(&["hfk-hat", &corpus_path("trefoil.grid"), "--format", "tsv"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "m\ts\trank\n0\t-1\t1\n1\t0\t1\n2\t1\t1\n");
}

#[test]
fn trace_of_the_hopf_link() {
    let o = gridfloer(&["trace", &corpus_path("hopf.grid"), "--format", "tsv"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(
        stdout(&o),
        "components\t2\ncrossings\t2\nwrithe\t-2\nalexander\tt^1 - 1\ncrossing\t2\t1\t-1\ncrossing\t1\t2\t-1\n"
    );
}

#[test]
fn minus_tower_of_the_unknot() {
    let o = gridfloer(&[
        "hfk-minus",
        &corpus_path("unknot.grid"),
        "--window",
        "-6:0,-3:0",
        "--format",
        "tsv",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(
        stdout(&o),
        "m\ts\trank\n-6\t-3\t1\n-4\t-2\t1\n-2\t-1\t1\n0\t0\t1\n"
    );
}

#[test]
fn euler_of_the_figure_eight() {
    let o = gridfloer(&["euler", &corpus_path("figure_eight.grid")]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("alexander: t^2 - 3t^1 + 1"));
    assert!(stdout(&o).contains("PASS euler.oracle"));
}

#[test]
fn shared_cell_is_named() {
    let o = gridfloer(&["validate", &corpus_path("bad_shared_cell.grid")]);
    assert_eq!(o.status.code(), Some(1));
    assert!(
        stderr(&o).contains("share the cell at column 2, row 2"),
        "{}",
        stderr(&o)
    );
}

#[test]
fn signs_on_a_small_grid() {
    let o = gridfloer(&["validate", "--signs", &corpus_path("hopf.grid")]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("PASS signs.d2-over-Z"));
    let o = gridfloer(&["validate", "--signs", &corpus_path("figure_eight.grid")]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("FAIL signs.axioms"));
}

#[test]
fn trefoil_skein_report_passes() {
    let o = gridfloer(&[
        "skein-report",
        &corpus_path("trefoil.skein"),
        "--window",
        "-8:2,-4:4",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(!stdout(&o).contains("FAIL"));
}

#[test]
fn hopf_skein_report_names_the_failing_sequences() {
    let o = gridfloer(&[
        "skein-report",
        &corpus_path("hopf.skein"),
        "--format",
        "tsv",
    ]);
    assert_eq!(o.status.code(), Some(1));
    let out = stdout(&o);
    let failing: Vec<&str> = out
        .lines()
        .filter(|l| l.ends_with("\tFAIL"))
        .map(|l| l.split('\t').next().unwrap())
        .collect();
    assert!(!failing.is_empty());
    assert!(
        failing.iter().all(|c| *c == "hat-les" || *c == "minus-les"),
        "{failing:?}"
    );
}

#[test]
fn tsv_reports_follow_the_schema() {
    for args in [
        vec!["skein-validate", "hopf.skein"],
        vec!["skein-report", "trefoil.skein"],
        vec!["corpus-check"],
    ] {
        let mut full: Vec<String> = args.iter().map(|a| a.to_string()).collect();
        if full.len() > 1 {
            full[1] = corpus_path(&full[1]);
        }
        full.extend(["--format".into(), "tsv".into()]);
        let refs: Vec<&str> = full.iter().map(String::as_str).collect();
        let out = stdout(&gridfloer(&refs));
        let mut lines = out.lines();
        assert_eq!(lines.next(), Some("check\tbigrading\tlhs\trhs\tverdict"));
        for l in lines {
            let cols: Vec<&str> = l.split('\t').collect();
            assert_eq!(cols.len(), 5, "{l}");
            assert!(cols[4] == "PASS" || cols[4] == "FAIL", "{l}");
        }
    }
}

#[test]
fn output_is_stable_across_runs_and_threads() {
    let hopf = corpus_path("hopf.skein");
    let figure_eight = corpus_path("figure_eight.grid");
    for args in [
        vec!["skein-report", hopf.as_str(), "--format", "tsv"],
        vec!["hfk-minus", figure_eight.as_str(), "--window", "-4:2,-2:2"],
        vec!["corpus-check"],
    ] {
        let runs: Vec<String> = ["1", "3", "8", "8"]
            .iter()
            .map(|k| {
                let mut a = args.clone();
                a.extend(["--threads", k]);
                stdout(&gridfloer(&a))
            })
            .collect();
        assert!(runs.windows(2).all(|w| w[0] == w[1]), "{args:?}");
    }
}

#[test]
fn corpus_check_passes_and_catches_a_corrupted_entry() {
    let o = gridfloer(&["corpus-check"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));

    let dir = tempfile::tempdir().unwrap();
    for entry in std::fs::read_dir(corpus_path("")).unwrap() {
        let p = entry.unwrap().path();
        std::fs::copy(&p, dir.path().join(p.file_name().unwrap())).unwrap();
    }
    let manifest = dir.path().join("manifest.txt");
    let text = std::fs::read_to_string(&manifest).unwrap();
    let broken = text.replacen(
        "alexander=1,-1,1 @table\n# left-handed",
        "alexander=1,-1,2 @table\n# left-handed",
        1,
    );
    assert_ne!(text, broken);
    std::fs::write(&manifest, broken).unwrap();
    let o = gridfloer(&["corpus-check", "--corpus", dir.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(
        stdout(&o).contains("corpus: FAIL in trefoil\n"),
        "{}",
        stdout(&o)
    );

    std::fs::remove_file(dir.path().join("hopf.grid")).unwrap();
    let o = gridfloer(&["corpus-check", "--corpus", dir.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("hopf.grid"));
}

#[test]
fn usage_errors() {
    assert_eq!(gridfloer(&["frobnicate"]).status.code(), Some(2));
    let o = gridfloer(&["hfk-minus", &corpus_path("unknot.grid"), "--window", "0:1"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("window"));
    let o = gridfloer(&["hfk-hat", "/no/such.grid"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("cannot read"));
    assert_eq!(gridfloer(&["--help"]).status.code(), Some(0));
}
