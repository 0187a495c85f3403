use std::path::Path;
use std::process::{Command, Output};

use wfcm_cli::commands::{self, ScenarioSource, SolverOptions, TableSource};
use wfcm_cli::formats::{read_table, ResultFile};
use wfcm_core::clustering::Scheme;

fn wfcm(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_wfcm"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn opts(scheme: Scheme) -> SolverOptions {
    SolverOptions {
        scheme,
        clusters: 3,
        fuzzifier: 1.5,
        epsilon: 1e-5,
        max_iter: 100,
        restarts: 2,
        seed: 7,
    }
}

#[test]
fn every_preset_and_scheme_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    for k in 1..=3 {
        let data = dir.path().join(format!("s{k}"));
        commands::generate(&ScenarioSource::Preset(k), 3, &data).unwrap();
        let table_path = data.join("table.json");
        let table = read_table(&table_path).unwrap();
        assert_eq!(table.n_objects(), 300);
        for scheme in Scheme::ALL {
            let out = data.join(scheme.name());
            let src = TableSource::File(table_path.clone());
            let file = commands::fit(&src, &opts(scheme), &out).unwrap();
            let text = std::fs::read_to_string(out.join("result.json")).unwrap();
            let reread: ResultFile = serde_json::from_str(&text).unwrap();
            let result = reread.to_result(&table).unwrap();
            assert_eq!(result.partition.as_slice().len(), 900);
            assert_eq!(result.scheme, scheme);
            assert_eq!(file.memberships, reread.memberships);
            assert_eq!(result.weights.is_some(), scheme.is_adaptive());
            assert!(result.max_constraint_violation <= 1e-9);
            commands::validate(
                &src,
                &out.join("result.json"),
                Some(&data.join("labels.csv")),
                &out,
            )
            .unwrap();
            for f in [
                "memberships.csv",
                "internal.csv",
                "dispersion.csv",
                "external.csv",
            ] {
                assert!(out.join(f).is_file(), "{k} {scheme}: missing {f}");
            }
        }
    }
}

#[test]
fn binary_pipeline_and_reports() {
    let dir = tempfile::tempdir().unwrap();
    let data = dir.path().join("data");
    let fit = dir.path().join("fit");
    let val = dir.path().join("val");
    let o = wfcm(&[
        "generate",
        "--scenario",
        "3",
        "--seed",
        "1",
        "--out",
        s(&data),
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let sse = std::fs::read_to_string(data.join("sse_report.csv")).unwrap();
    assert!(sse.lines().any(|l| l.starts_with("QPI")));

    let table = data.join("table.json");
    let o = wfcm(&[
        "fit",
        "--in",
        s(&table),
        "--scheme",
        "pi-e",
        "--c",
        "3",
        "--restarts",
        "3",
        "--out",
        s(&fit),
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let memberships = std::fs::read_to_string(fit.join("memberships.csv")).unwrap();
    assert_eq!(memberships.lines().next().unwrap(), "object,u1,u2,u3,label");
    assert_eq!(memberships.lines().count(), 301);

    // no labels: internal report only
    let result = fit.join("result.json");
    let o = wfcm(&[
        "validate",
        "--in",
        s(&table),
        "--result",
        s(&result),
        "--out",
        s(&val),
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(val.join("internal.csv").is_file());
    assert!(val.join("dispersion.csv").is_file());
    assert!(!val.join("external.csv").exists());
    let internal = std::fs::read_to_string(val.join("internal.csv")).unwrap();
    assert!(internal.starts_with("PC,PE,MPC,XB,Sil,QPI"));

    let labels = data.join("labels.csv");
    let o = wfcm(&[
        "validate",
        "--in",
        s(&table),
        "--result",
        s(&result),
        "--labels",
        s(&labels),
        "--out",
        s(&val),
    ]);
    assert!(o.status.success());
    let external = std::fs::read_to_string(val.join("external.csv")).unwrap();
    assert_eq!(external.lines().count(), 3);

    let o = wfcm(&[
        "scan",
        "--scenario",
        "1",
        "--seed",
        "2",
        "--c-range",
        "2..4",
        "--restarts",
        "1",
        "--out",
        s(&val),
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let scan = std::fs::read_to_string(val.join("scan.csv")).unwrap();
    assert_eq!(scan.lines().count(), 4);
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let out = s(dir.path());
    let code = |args: &[&str]| wfcm(args).status.code();
    assert_eq!(
        code(&["generate", "--scenario", "9", "--out", out]),
        Some(1)
    );
    assert_eq!(
        code(&[
            "fit",
            "--scenario",
            "1",
            "--scheme",
            "pi-z",
            "--c",
            "3",
            "--out",
            out
        ]),
        Some(1)
    );
    assert_eq!(
        code(&["fit", "--scenario", "1", "--c", "1", "--out", out]),
        Some(1)
    );
    assert_eq!(
        code(&[
            "fit",
            "--in",
            "/nonexistent/table.json",
            "--c",
            "2",
            "--out",
            out
        ]),
        Some(2)
    );
    assert_eq!(
        code(&["scan", "--scenario", "1", "--c-range", "5..2", "--out", out]),
        Some(1)
    );
    assert_eq!(code(&["--help"]), Some(0));

    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, "{\"variables\": [\"x\"], \"objects\": 3}").unwrap();
    assert_eq!(
        code(&["fit", "--in", s(&bad), "--c", "2", "--out", out]),
        Some(2)
    );
}

#[test]
fn histogram_csv_input_clusters() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("hist.csv");
    let mut text = String::from("object,variable,edges,probs\n");
    for k in 0..10 {
        let base = if k < 5 { 0.0 } else { 50.0 } + k as f64 * 0.1;
        for (v, width) in [("age", 10.0), ("income", 3.0)] {
            text.push_str(&format!(
                "o{k},{v},{};{};{},0.3;0.7\n",
                base,
                base + width,
                base + 2.0 * width
            ));
        }
    }
    std::fs::write(&csv, text).unwrap();
    let out = dir.path().join("fit");
    let o = wfcm(&[
        "fit",
        "--in",
        s(&csv),
        "--scheme",
        "pi-c",
        "--c",
        "2",
        "--restarts",
        "4",
        "--out",
        s(&out),
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let r: ResultFile =
        serde_json::from_str(&std::fs::read_to_string(out.join("result.json")).unwrap()).unwrap();
    assert_eq!(r.variables, vec!["age", "income"]);
    assert!(r.labels[..5].iter().all(|&l| l == r.labels[0]));
    assert!(r.labels[5..].iter().all(|&l| l == r.labels[5]));
    assert_ne!(r.labels[0], r.labels[5]);
}
