use std::path::Path;

use cyclocert::cyclonum::conductor;
use cyclocert::expr::evaluate;
use cyclocert_cli::report::{rows_from_csv, rows_to_csv};
use cyclocert_cli::{run, ReportDocument, ReportRow, EXIT_FAILED, EXIT_OK, EXIT_USAGE};
use proptest::prelude::*;

/// Runs the CLI with output redirected to a file; returns (code, output).
fn run_to_file(args: &[&str]) -> (i32, String) {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("out");
    let code = run_with_out(args, &out);
    let text = std::fs::read_to_string(&out).unwrap_or_default();
    (code, text)
}

fn run_with_out(args: &[&str], out: &Path) -> i32 {
    let mut argv = vec!["cyclocert".to_string()];
    argv.extend(args.iter().map(|s| s.to_string()));
    argv.push("--out".into());
    argv.push(out.display().to_string());
    run(argv)
}

#[test]
fn conductor_of_a_real_pentagon_sum() {
    let (code, out) = run_to_file(&["conductor", "z(5,1)+z(5,4)"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(out.lines().next(), Some("5"));
    assert!(out.contains("{1, 4}"), "{out}");
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(run_to_file(&["check", "gl2", "--q", "6"]).0, EXIT_USAGE);
    assert_eq!(run_to_file(&["conductor", "z(0,1)"]).0, EXIT_USAGE);
    assert_eq!(run_to_file(&["conductor", "1 +"]).0, EXIT_USAGE);
    assert_eq!(
        run_to_file(&["check", "gl2", "--q", "5", "--family", "Nope"]).0,
        EXIT_USAGE
    );
    assert_eq!(
        run_to_file(&["check", "gl2", "--q", "5", "--params", "9,9"]).0,
        EXIT_USAGE
    );
    assert_eq!(
        run_to_file(&["check", "suzuki", "--exponent", "2", "--exponent-max", "1"]).0,
        EXIT_USAGE
    );
    assert_eq!(
        run_to_file(&["vansum-table", "--max-terms", "8"]).0,
        EXIT_USAGE
    );
    assert_eq!(run_to_file(&["frobnicate"]).0, EXIT_USAGE);
    assert_eq!(
        run_to_file(&["--jobs", "0", "conductor", "1"]).0,
        EXIT_USAGE
    );
    assert_eq!(run(["cyclocert", "--help"]), EXIT_OK);
}

#[test]
fn sl2_q7_passes_and_json_round_trips() {
    let (code, out) = run_to_file(&["check", "sl2", "--q", "7", "--format", "json"]);
    assert_eq!(code, EXIT_OK);
    let doc = ReportDocument::from_json(&out).unwrap();
    assert_eq!(doc.reports.len(), 11);
    assert!(doc.reports.iter().all(|r| r.pass));
    assert_eq!(doc.summary.failed, 0);
    assert_eq!(doc.summary.max_conductor, 8);
    assert_eq!(doc.to_json().unwrap(), out);
    assert!(doc.metadata.timestamp.is_none() && doc.summary.wall_time_secs.is_none());
}

#[test]
fn witness_values_reparse_to_the_reported_conductor() {
    let (code, out) = run_to_file(&["check", "gl2", "--q", "9", "--format", "json"]);
    assert_eq!(code, EXIT_OK);
    let doc = ReportDocument::from_json(&out).unwrap();
    assert_eq!(doc.reports.len(), 80);
    for r in &doc.reports {
        let v = evaluate(r.witness_value.as_deref().unwrap()).unwrap();
        assert_eq!(conductor(&v), r.conductor, "{r:?}");
    }
}

#[test]
fn csv_and_json_agree() {
    let args = ["check", "gl2", "--q", "2", "--q-max", "8"];
    let (c1, json) = run_to_file(&[&args[..], &["--format", "json"]].concat());
    let (c2, csv) = run_to_file(&[&args[..], &["--format", "csv"]].concat());
    assert_eq!((c1, c2), (EXIT_OK, EXIT_OK));
    let doc = ReportDocument::from_json(&json).unwrap();
    assert_eq!(doc.metadata.q_values, [2, 3, 4, 5, 7, 8]);
    assert_eq!(rows_from_csv(&csv).unwrap(), doc.reports);
}

#[test]
fn repeated_runs_are_byte_identical() {
    for args in [
        &["check", "suzuki", "--exponent", "1", "--format", "json"][..],
        &["check", "gl2", "--q", "11", "--format", "csv"],
        &[
            "--seed",
            "9",
            "props",
            "--samples",
            "20",
            "--max-modulus",
            "20",
            "--q-max",
            "5",
        ],
        &["vansum-table", "--max-terms", "5", "--format", "json"],
    ] {
        let (c1, a) = run_to_file(args);
        let (c2, b) = run_to_file(args);
        let (c3, c) = run_to_file(&[args, &["--jobs", "1"]].concat());
        assert_eq!((c1, c2, c3), (EXIT_OK, EXIT_OK, EXIT_OK), "{args:?}");
        assert!(!a.is_empty());
        assert_eq!(a, b, "{args:?}");
        assert_eq!(a, c, "{args:?}");
    }
}

#[test]
fn timing_is_opt_in() {
    let (_, out) = run_to_file(&["--timing", "check", "sl2", "--q", "3", "--format", "json"]);
    let doc = ReportDocument::from_json(&out).unwrap();
    assert!(doc.metadata.timestamp.is_some());
    assert!(doc.summary.wall_time_secs.is_some());
}

#[test]
fn selection_filters() {
    let (code, out) = run_to_file(&[
        "check", "gl2", "--q", "5", "--family", "x", "--params", "0,1", "--format", "json",
    ]);
    assert_eq!(code, EXIT_OK);
    let doc = ReportDocument::from_json(&out).unwrap();
    assert_eq!(doc.reports.len(), 1);
    let r = &doc.reports[0];
    assert_eq!(
        (r.family.as_str(), r.params.as_slice(), r.conductor),
        ("X", &[0, 1][..], 4)
    );
    assert_eq!(r.case_label.as_deref(), Some("I"));
}

#[test]
fn other_subcommands() {
    let (code, out) = run_to_file(&["minrep", "z(5,1)+z(5,4)"]);
    assert_eq!(
        (code, out.as_str()),
        (EXIT_OK, "2 terms: z(5,1) + z(5,4)\n")
    );
    let (code, out) = run_to_file(&["minrep", "3", "--max-k", "2"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.starts_with("no sum of at most 2 roots"), "{out}");
    let (code, out) = run_to_file(&["vansum-table", "--max-terms", "7"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("4: none"));
    assert_eq!(out.lines().count(), 8);
    let (code, out) = run_to_file(&[
        "subset-probe",
        "--cap",
        "2",
        "sl2",
        "--q",
        "2",
        "--q-max",
        "13",
    ]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("0 over cap 2"), "{out}");
    let (code, _) = run_to_file(&["subset-probe", "--cap", "0", "gl2", "--q", "5"]);
    assert_eq!(code, EXIT_FAILED);
}

fn row() -> impl Strategy<Value = ReportRow> {
    let text = "[a-z0-9(),;*+ -]{0,12}";
    (
        (
            "[A-Za-z0-9]{1,8}",
            2u64..1000,
            "[A-Za-z]{1,8}",
            prop::collection::vec(-50i64..50, 0..3),
        ),
        ("[q0-9()+/-]{1,8}", 1u64..10_000),
        (
            prop::option::of("[a-z]=[0-9]{1,3}"),
            prop::option::of(text),
            prop::option::of("[A-Za-z-]{1,10}"),
        ),
        (any::<bool>(), "[0-9>]{1,3}", any::<bool>()),
    )
        .prop_map(
            |(
                (group, q, family, params),
                (degree_formula, conductor),
                (wl, wv, case),
                (g, s, p),
            )| {
                ReportRow {
                    group,
                    q,
                    family,
                    params,
                    degree_formula,
                    conductor,
                    witness_label: wl,
                    witness_value: wv.filter(|v| !v.is_empty()),
                    case_label: case,
                    field_generated: g,
                    subset_size: s,
                    pass: p,
                }
            },
        )
}

proptest! {
    #[test]
    fn rows_survive_json_and_csv(rows in prop::collection::vec(row(), 0..6)) {
        let json = serde_json::to_string(&rows).unwrap();
        let back: Vec<ReportRow> = serde_json::from_str(&json).unwrap();
        prop_assert_eq!(&back, &rows);
        prop_assert_eq!(rows_from_csv(&rows_to_csv(&rows).unwrap()).unwrap(), rows);
    }
}
