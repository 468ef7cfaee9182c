use std::process::{Command, Output};

fn qkernel(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qkernel"))
        .args(args)
        .env_remove("QKERNEL_PRECISION_BITS")
        .output()
        .expect("spawn qkernel")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).expect("utf-8")
}

fn json(o: &Output) -> serde_json::Value {
    serde_json::from_slice(&o.stdout).expect("json output")
}

#[test]
fn enumerate_prints_table_row() {
    let o = qkernel(&["enumerate", "--model", "B", "--terms", "11", "--method", "naive"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "B: 1, 2, 6, 20, 70, 254, 942, 3550, 13532, 52030, 201386\n");
    let fast = qkernel(&["enumerate", "--model", "A", "--terms", "11", "--method", "fast"]);
    assert_eq!(stdout(&fast), "A: 1, 1, 3, 7, 21, 55, 165, 457, 1371, 3909, 11727\n");
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        &["enumerate", "--model", "Z"][..],
        &["frobnicate"],
        &["enumerate", "--model", "A", "--method", "quick"],
        &["singularities", "--model", "A", "--n", "5..2"],
        &["enumerate", "--model", "A", "--format", "svg"],
        &["bench", "--model", "A", "--n", "10,0"],
    ] {
        let o = qkernel(args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(o.stdout.is_empty(), "{args:?}");
    }
}

#[test]
fn json_counts_are_strings() {
    let o = qkernel(&["enumerate", "--model", "C", "--terms", "32", "--format", "json"]);
    assert!(o.status.success());
    let v = json(&o);
    assert_eq!(v["schema_version"], 1);
    let counts = v["results"][0]["counts"].as_array().unwrap();
    assert_eq!(counts.len(), 32);
    assert!(counts.iter().all(|c| c.is_string()));
    let last: u128 = counts[31].as_str().unwrap().parse().unwrap();
    assert!(last > u64::MAX as u128);
}

#[test]
fn all_models_csv() {
    let o = qkernel(&[
        "enumerate",
        "--model",
        "all",
        "--terms",
        "3",
        "--format",
        "csv",
        "--seed-check",
    ]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.starts_with("model,n,count\n"));
    assert_eq!(text.lines().count(), 1 + 5 * 3);
    assert!(text.contains("E,2,7\n"));
}

#[test]
fn kappa_text_and_json() {
    let o = qkernel(&["kappa", "--model", "C", "--digits", "12"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("kappa = 0.382201258554"), "{}", stdout(&o));

    let o = qkernel(&["kappa", "--model", "E", "--digits", "6", "--format", "json"]);
    let v = json(&o);
    let est: f64 = v["results"][0]["estimate"].as_str().unwrap().parse().unwrap();
    assert!((est - 0.2636).abs() < 5e-4);
    assert_eq!(v["results"][0]["rigorous"], false);
}

#[test]
fn precision_env_override() {
    let run = |bits: &str| {
        Command::new(env!("CARGO_BIN_EXE_qkernel"))
            .args(["kappa", "--model", "A", "--digits", "8", "--format", "json"])
            .env("QKERNEL_PRECISION_BITS", bits)
            .output()
            .unwrap()
    };
    let o = run("300");
    assert!(o.status.success());
    assert_eq!(json(&o)["results"][0]["precision_bits"], 300);
    assert_eq!(run("lots").status.code(), Some(2));
}

#[test]
fn singularities_t_plane_csv() {
    let o = qkernel(&[
        "singularities",
        "--model",
        "C",
        "--n",
        "20",
        "--plane",
        "t",
        "--format",
        "csv",
    ]);
    assert!(o.status.success());
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("re,im,n,family,plane"));
    let rows: Vec<&str> = lines.collect();
    assert!(!rows.is_empty());
    for row in rows {
        let f: Vec<&str> = row.split(',').collect();
        assert_eq!(&f[2..], ["20", "sigma", "t"]);
        let (re, im): (f64, f64) = (f[0].parse().unwrap(), f[1].parse().unwrap());
        assert!(re.hypot(im) >= 0.5 - 1e-12);
    }
}

#[test]
fn output_is_deterministic_and_writes_files() {
    let args = ["singularities", "--model", "A", "--n", "3..5", "--format", "svg"];
    let a = qkernel(&args);
    let b = qkernel(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    assert!(stdout(&a).starts_with("<svg"));

    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("e.json");
    let p = path.to_str().unwrap();
    let o = qkernel(&[
        "enumerate",
        "--model",
        "E",
        "--terms",
        "5",
        "--format",
        "json",
        "--output",
        p,
    ]);
    assert!(o.status.success() && o.stdout.is_empty());
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["results"][0]["counts"][4], "91");

    let bad = dir.path().join("missing/dir/out.csv");
    let o = qkernel(&["enumerate", "--model", "A", "--output", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn verify_all_passes() {
    let o = qkernel(&["verify", "--model", "all", "--terms", "50"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("10/10 checks passed"));
}

#[test]
fn bench_reports_rows_and_slopes() {
    let o = qkernel(&[
        "bench",
        "--model",
        "D",
        "--n",
        "10,20",
        "--method",
        "fast,naive",
        "--format",
        "json",
    ]);
    assert!(o.status.success());
    let v = json(&o);
    assert_eq!(v["rows"].as_array().unwrap().len(), 4);
    assert_eq!(v["loglog_slopes"].as_array().unwrap().len(), 2);
}
