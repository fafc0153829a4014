use serde_json::Value;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn expr(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../expressions").join(format!("{name}.json"))
}

fn lfd(args: &[&str], out: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lfd")).args(args).arg("--out").arg(out).output().unwrap()
}

fn read_json(path: &Path) -> Value {
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

fn validate(schema: &str, doc: &Value) {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("schemas").join(format!("{schema}.schema.json"));
    let compiled = jsonschema::JSONSchema::compile(&read_json(&path)).unwrap();
    let msgs: Vec<String> = match compiled.validate(doc) {
        Ok(()) => return,
        Err(errors) => errors.map(|e| format!("{} at {}", e, e.instance_path)).collect(),
    };
    panic!("{schema}: {msgs:?}");
}

#[test]
fn every_output_matches_its_schema() {
    let dir = tempfile::tempdir().unwrap();
    let z1 = expr("zeta1");
    let z1 = z1.to_str().unwrap();
    let runs: [&[&str]; 7] = [
        &["analyze", z1, "--T", "50"],
        &["zeros", z1, "--t1", "14", "--t2", "40", "--plot-data"],
        &["count", z1, "--T", "40"],
        &["cluster", z1, "--delta", "0.1,0.5", "--t1", "14", "--t2", "40"],
        &["audit", z1, "--n-from", "150", "--n-to", "152"],
        &["fecheck", z1, "--t", "20,40"],
        &["verify", z1, "--T", "40"],
    ];
    for args in runs {
        let o = lfd(args, dir.path());
        assert!(o.status.success(), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
        validate(args[0], &read_json(&dir.path().join(format!("{}.json", args[0]))));
    }
    assert!(dir.path().join("zeros.dat").exists());
    assert!(!dir.path().join("count.dat").exists());

    let o = lfd(&["verify", z1, "--T", "40", "--slack", "0.01"], dir.path());
    assert_eq!(o.status.code(), Some(1));
    let err: Value = serde_json::from_slice(&o.stderr).unwrap();
    validate("error", &err);
    assert_eq!(err["error"]["kind"], "SlackExceeded");
}

#[test]
fn usage_errors_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let write = |name: &str, text: &str| {
        let p = dir.path().join(name);
        std::fs::write(&p, text).unwrap();
        p.to_str().unwrap().to_string()
    };
    let malformed = write("bad.json", "{\"lfunctions\": [\n");
    let unknown = write(
        "unknown.json",
        r#"{"lfunctions": [], "monomials": [{"coeff": [1, 0], "factors": [{"lfunc": "x", "deriv": 0, "exp": 1}]}]}"#,
    );
    let imprimitive = write(
        "imprimitive.json",
        r#"{"lfunctions": [{"id": "c", "kind": "dirichlet", "modulus": 4, "characterIndex": 1}],
            "monomials": [{"coeff": [1, 0], "factors": [{"lfunc": "c", "deriv": 0, "exp": 1}]}]}"#,
    );
    for (path, kind) in [(&malformed, "Parse"), (&unknown, "UnknownLFunction"), (&imprimitive, "NotPrimitive")] {
        let o = lfd(&["analyze", path], dir.path());
        assert_eq!(o.status.code(), Some(2), "{path}");
        let err: Value = serde_json::from_slice(&o.stderr).unwrap();
        assert_eq!(err["error"]["kind"], kind);
    }
    let z = expr("zeta");
    let z = z.to_str().unwrap();
    assert_eq!(lfd(&["count", z], dir.path()).status.code(), Some(2));
    assert_eq!(lfd(&["count", z, "--T", "abc"], dir.path()).status.code(), Some(2));
    assert_eq!(lfd(&["frobnicate", z], dir.path()).status.code(), Some(2));
    assert_eq!(lfd(&["count", z, "--T", "5000"], dir.path()).status.code(), Some(2));
    let zero = write("zero.json", r#"{"lfunctions": [], "monomials": [{"coeff": [0, 0], "factors": []}]}"#);
    assert_eq!(lfd(&["analyze", &zero], dir.path()).status.code(), Some(2));

    let o = lfd(&["analyze", expr("cancelling").to_str().unwrap()], dir.path());
    assert!(o.status.success());
    assert!(String::from_utf8_lossy(&o.stdout).contains("WARNING"));
    assert_eq!(read_json(&dir.path().join("analyze.json"))["result"]["profile"]["assumptionSatisfied"], false);
}

#[test]
fn analyze_table_for_the_derivative() {
    let dir = tempfile::tempdir().unwrap();
    let o = lfd(&["analyze", expr("zeta1").to_str().unwrap()], dir.path());
    let text = String::from_utf8(o.stdout).unwrap();
    for row in ["degRk      1", "degDer     1", "nF         2"] {
        assert!(text.contains(row), "{text}");
    }
}

#[test]
fn documented_command_examples() {
    let dir = tempfile::tempdir().unwrap();
    assert!(lfd(&["count", expr("zeta").to_str().unwrap(), "--T", "100"], dir.path()).status.success());
    assert_eq!(read_json(&dir.path().join("count.json"))["result"]["empirical"], 29);

    let z1 = expr("zeta1");
    assert!(lfd(&["cluster", z1.to_str().unwrap(), "--delta", "0.25", "--T", "100"], dir.path()).status.success());
    let c = read_json(&dir.path().join("cluster.json"));
    assert_eq!(c["result"]["reports"][0]["nMinus"], 0);

    let o = lfd(&["verify", z1.to_str().unwrap(), "--T", "100", "--slack", "5"], dir.path());
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn config_file_supplies_defaults() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.toml");
    let out = dir.path().join("artifacts");
    std::fs::write(
        &cfg,
        format!(
            "expression = {:?}\nout = {:?}\nT = 30.0\nseed = 3\n",
            expr("zeta").to_str().unwrap(),
            out.to_str().unwrap()
        ),
    )
    .unwrap();
    let run = |extra: &[&str]| {
        Command::new(env!("CARGO_BIN_EXE_lfd")).arg("count").arg("--config").arg(&cfg).args(extra).output().unwrap()
    };
    assert!(run(&[]).status.success());
    let doc = read_json(&out.join("count.json"));
    assert_eq!((doc["result"]["empirical"].as_i64(), doc["parameters"]["seed"].as_u64()), (Some(3), Some(3)));
    assert!(run(&["--T", "50"]).status.success());
    assert_eq!(read_json(&out.join("count.json"))["result"]["empirical"], 10);

    std::fs::write(&cfg, "tee = 3\n").unwrap();
    assert_eq!(run(&[]).status.code(), Some(2));
}

fn snapshot(dir: &Path) -> Vec<(String, Vec<u8>)> {
    let mut files: Vec<_> = std::fs::read_dir(dir)
        .unwrap()
        .map(|e| {
            let e = e.unwrap();
            (e.file_name().into_string().unwrap(), std::fs::read(e.path()).unwrap())
        })
        .collect();
    files.sort();
    files
}

#[test]
fn outputs_are_byte_identical_across_runs_and_widths() {
    let z = expr("zeta1_zeta");
    let z = z.to_str().unwrap();
    let pipeline = |jobs: &str| {
        let dir = tempfile::tempdir().unwrap();
        for args in [
            vec!["count", z, "--T", "60"],
            vec!["zeros", z, "--t1", "10", "--t2", "45"],
            vec!["cluster", z, "--delta", "0.1,0.25", "--t1", "10", "--t2", "45"],
            vec!["verify", z, "--T", "60"],
        ] {
            let mut a = args.clone();
            a.extend(["--jobs", jobs, "--seed", "11", "--plot-data"]);
            assert!(lfd(&a, dir.path()).status.success());
        }
        snapshot(dir.path())
    };
    let one = pipeline("1");
    assert_eq!(one.len(), 12);
    assert_eq!(one, pipeline("1"));
    assert_eq!(one, pipeline("8"));
}
