use assert_cmd::Command;
use serde_json::Value;

fn run(args: &[&str]) -> String {
    let out = Command::cargo_bin("butterfly-bst")
        .unwrap()
        .args(args)
        .output()
        .unwrap();
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

#[test]
fn reruns_are_byte_identical() {
    for args in [
        &["fig8", "--n", "4", "--trials", "300"][..],
        &["theorem2-diff", "--n", "50", "--m", "2", "--trials", "50"],
        &[
            "gepp-check",
            "--n",
            "2",
            "--trials",
            "500",
            "--format",
            "json",
        ],
        &["law-hist", "--law", "lis", "--n", "3", "--trials", "500"],
    ] {
        assert_eq!(run(args), run(args), "{args:?}");
    }
}

#[test]
fn seed_changes_output() {
    let a = run(&["fig8", "--n", "4", "--trials", "300", "--seed", "1"]);
    let b = run(&["fig8", "--n", "4", "--trials", "300", "--seed", "2"]);
    assert_ne!(a, b);
}

#[test]
fn csv_sections_carry_meta() {
    let out = run(&["fig8", "--n", "3", "--trials", "100", "--seed", "5"]);
    let meta: Vec<&str> = out.lines().filter(|l| l.starts_with('#')).collect();
    assert_eq!(meta.len(), 2);
    for m in meta {
        assert!(m.contains("subcommand=fig8"));
        assert!(m.contains("seed=5"));
        assert!(m.contains("trials=100"));
    }
}

#[test]
fn height_count_rows() {
    let out = run(&["table1", "--n", "10"]);
    let rows: Vec<&str> = out.lines().skip(2).collect();
    assert_eq!(rows.len(), 6);
    assert!(rows.contains(&"0,1023,2,2,true"));
    assert!(rows.contains(&"5,62,252,252,true"));
    assert!(rows.iter().all(|r| r.ends_with(",true")));
}

#[test]
fn json_shape() {
    let out = run(&[
        "pmf",
        "--law",
        "simple-height",
        "--n",
        "4",
        "--format",
        "json",
    ]);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["meta"]["subcommand"], "pmf");
    let pmf = &v["sections"]["pmf"];
    let probs = pmf["probability"].as_array().unwrap();
    assert_eq!(probs.len(), 3);
    let total: f64 = probs.iter().map(|p| p.as_f64().unwrap()).sum();
    assert!((total - 1.0).abs() < 1e-12);
    assert_eq!(pmf["value"].as_array().unwrap().len(), probs.len());
}

#[test]
fn out_file_matches_stdout() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("b.csv");
    let stdout = run(&["bounds", "--n-max", "6"]);
    run(&["bounds", "--n-max", "6", "--out", path.to_str().unwrap()]);
    assert_eq!(std::fs::read_to_string(path).unwrap(), stdout);
    assert!(stdout.contains("\n2,2.5,5/2,2.5,"));
}

#[test]
fn tree_of_a_word() {
    let out = run(&["tree", "--perm", "2,1,4,3"]);
    assert!(out.contains("\n\"2,1,4,3\",2,1,1,true,true\n"), "{out}");
}

#[test]
fn degenerate_conjecture_cells_are_flagged() {
    let out = run(&["explore-conjecture", "--grid", "1x4", "--trials", "10"]);
    let row = out.lines().nth(2).unwrap();
    assert!(row.starts_with("1,4,"));
    assert!(row.contains(",,false,"));
}

#[test]
fn bad_input_fails() {
    for args in [
        &["tree", "--perm", "1,1"][..],
        &["explore-conjecture", "--grid", "3y3"],
        &["tree", "--kind", "simple", "--shape", "0a1"],
    ] {
        Command::cargo_bin("butterfly-bst")
            .unwrap()
            .args(args)
            .assert()
            .failure();
    }
}
