use period_landscape::cli::{run, EXIT_CAP, EXIT_MISMATCH, EXIT_OK, EXIT_USAGE};
use period_landscape::landscape::{enumerate_landscape, Limits, Spectrum};
use period_landscape::polynomial::Recurrence;
use serde_json::Value;

fn call(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("period-landscape").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn json(args: &[&str]) -> (i32, Value) {
    let (code, out, err) = call(args);
    let v = serde_json::from_str(&out).unwrap_or_else(|e| panic!("{e}: {out} {err}"));
    (code, v)
}

#[test]
fn landscape_spectrum_round_trips() {
    let (code, v) = json(&["landscape", "fib", "4", "--digits"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(v["command"], "landscape");
    let result = &v["results"][0];
    let spectrum: Spectrum = serde_json::from_value(result["spectrum"].clone()).unwrap();
    let direct = enumerate_landscape(&Recurrence::fibonacci(), 4, false, &Limits::default()).unwrap();
    assert_eq!(&spectrum, direct.spectrum());
    assert_eq!(spectrum.to_string(), "{1:1, 3:1, 6:2}");
    assert_eq!(result["digits"], serde_json::json!(["0", "022", "011231", "033213"]));
    assert_eq!(result["cycles"][1], serde_json::json!([0, 2, 2]));
}

#[test]
fn landscape_examples() {
    let (_, v) = json(&["landscape", "phi:5", "10"]);
    assert_eq!(v["results"][0]["total_cycles"], 2004);
    assert_eq!(v["results"][0]["spectrum"], serde_json::json!([{"length": 1, "count": 5}, {"length": 5, "count": 1999}]));
    let (_, v) = json(&["landscape", "fib", "1"]);
    assert_eq!(v["results"][0]["spectrum"], serde_json::json!([{"length": 1, "count": 1}]));
}

#[test]
fn identical_runs_are_byte_identical() {
    for args in [
        &["minima", "--samples", "20000", "--seed", "5", "--recurrence", "both"][..],
        &["verify", "fib_prime", "--p-max", "60", "--jobs", "3"],
        &["landscape", "parity", "1..6", "--format", "csv"],
    ] {
        let a = call(args);
        let b = call(args);
        assert_eq!(a, b);
    }
    // Thread count does not change results.
    let one = call(&["verify", "pow", "--n", "4", "--m", "1..12", "--jobs", "1"]);
    let four = call(&["verify", "pow", "--n", "4", "--m", "1..12", "--jobs", "4"]);
    assert_eq!(one, four);
}

#[test]
fn verify_examples_exit_zero() {
    let (code, v) = json(&["verify", "phi_p", "--p", "5", "--m", "1..12"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(v["results"].as_array().unwrap().len(), 12);
    assert!(v["results"].as_array().unwrap().iter().all(|r| r["status"] == "matched"));

    let (code, v) = json(&["verify", "fib_prime", "--p-max", "200"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(v["results"].as_array().unwrap().len(), 46);

    let (code, v) = json(&["verify", "weights", "--m", "6"]);
    assert_eq!(code, EXIT_OK);
    let ds: Vec<u64> = v["results"].as_array().unwrap().iter().map(|r| r["d"].as_u64().unwrap()).collect();
    assert_eq!(ds, vec![1, 2, 3, 6]);
    assert!(v["results"].as_array().unwrap().iter().all(|r| r["status"] == "conserved"));
    assert_eq!(v["results"][1]["groups"][0]["base_weight"], "1/4");
    assert_eq!(v["results"][1]["groups"][1]["base_weight"], "3/4");

    for args in [
        &["verify", "phi_pj", "--p", "2", "--j", "2", "--m", "1..20"][..],
        &["verify", "self_similarity", "--p-max", "13"],
        &["verify", "chiral", "--m", "1..12"],
        &["verify", "chiral", "--poly", "1,0,0,-1,0,0,-1", "--m", "1..4"],
    ] {
        let (code, out, err) = call(args);
        assert_eq!(code, EXIT_OK, "{args:?}\n{out}\n{err}");
    }
}

#[test]
fn uncovered_case_is_a_status_in_verify_and_a_usage_error_in_predict() {
    let (code, v) = json(&["verify", "phi_2p", "--p", "3", "--m", "1..6"]);
    assert_eq!(code, EXIT_OK);
    let r5 = &v["results"][4];
    assert_eq!(r5["status"], "uncovered");
    assert_eq!(r5["observed"], serde_json::json!([{"length": 1, "count": 1}, {"length": 6, "count": 4}]));

    let (code, _, err) = call(&["predict", "phi_2p", "--p", "3", "--m", "5"]);
    assert_eq!(code, EXIT_USAGE);
    assert!(err.contains("no prediction available"));

    let (code, v) = json(&["predict", "phi_2p", "--p", "3", "--m", "4"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(v["results"][0]["prediction"]["total"], 4);
}

#[test]
fn cap_exhaustion_exits_three() {
    let (code, _, err) = call(&["landscape", "pow:6", "10", "--state-cap", "1000"]);
    assert_eq!(code, EXIT_CAP);
    assert!(err.contains("exceeds the cap"));
    let (code, v) = json(&["verify", "phi_p", "--p", "7", "--m", "2..5", "--state-cap", "5000"]);
    assert_eq!(code, EXIT_CAP);
    assert_eq!(v["results"][0]["status"], "matched");
    assert_eq!(v["results"][3]["status"], "cap_exceeded");
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        &["landscape", "fib", "0"][..],
        &["landscape", "2,1,1", "4"],
        &["landscape", "phi:3", "6..2"],
        &["landscape", "1,a", "4"],
        &["predict", "phi_p", "--p", "4", "--m", "3"],
        &["predict", "phi_pj", "--p", "3", "--m", "3"],
        &["verify", "phi_p", "--p", "5"],
        &["classify"],
        &["weights", "--m", "6", "--d", "4"],
        &["minima", "--samples", "0"],
        &["frobnicate"],
        &["--config", "/nonexistent.toml", "pisano", "3"],
    ] {
        let (code, _, err) = call(args);
        assert_eq!(code, EXIT_USAGE, "{args:?}");
        assert!(!err.is_empty());
    }
    // x^2 + 2x + 2 gives a non-invertible shift modulo 4.
    let (code, _, _) = call(&["landscape", "1,2,2", "4"]);
    assert_eq!(code, EXIT_USAGE);
}

#[test]
fn minima_tables() {
    let (code, v) = json(&["minima", "--samples", "1", "--seed", "1"]);
    assert_eq!(code, EXIT_MISMATCH);
    assert_eq!(v["results"][0]["rows"].as_array().unwrap().len(), 14);

    let (code, v) = json(&["minima", "--samples", "200000", "--seed", "42", "--range", "-3..4"]);
    assert_eq!(code, EXIT_OK, "{v}");

    let (code, v) = json(&["minima", "--analytic-only", "--range", "-40..41"]);
    assert_eq!(code, EXIT_OK);
    let a = &v["results"][0]["analytic"];
    assert_eq!(a["n_max"], 40);
    assert_eq!(a["p0"], 0.25);
    assert!(a["max_symmetry_gap"].as_f64().unwrap() <= 1e-12);
    assert_eq!(v["results"][0]["rows"].as_array().unwrap().len(), 82);

    let (code, out, _) = call(&["minima", "--samples", "1000", "--mode", "box", "--box-size", "50", "--format", "csv"]);
    assert!(code == EXIT_OK || code == EXIT_MISMATCH);
    assert!(out.starts_with("recurrence,n,analytic,empirical,std_error\n"));
}

#[test]
fn pisano_table() {
    let (code, out, _) = call(&["pisano", "1..6", "--format", "csv"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(out, "m,period\n1,1\n2,3\n3,8\n4,6\n5,20\n6,24\n");
    let (_, out, _) = call(&["pisano", "10", "--format", "text"]);
    assert_eq!(out, "pi(10) = 60\n");
}

#[test]
fn output_file_and_config() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("out.json");
    let cfg = dir.path().join("run.toml");
    std::fs::write(&cfg, "rng_seed = 11\nstate_cap = 4096\n").unwrap();
    let (code, stdout, _) = call(&["--config", cfg.to_str().unwrap(), "--output", out.to_str().unwrap(), "pisano", "7"]);
    assert_eq!(code, EXIT_OK);
    assert!(stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(v["config"]["rng_seed"], 11);
    assert_eq!(v["config"]["state_cap"], 4096);
    assert_eq!(v["results"][0]["period"], 16);
}

#[test]
fn classify_reports_labels() {
    let (code, v) = json(&["classify", "--p", "11"]);
    assert_eq!(code, EXIT_OK);
    let r = &v["results"][0];
    assert_eq!(r["class_label"], "B2");
    assert_eq!(r["alpha"], 1);
    assert_eq!(r["pisano"], 10);
    let (_, v) = json(&["classify", "--p", "5"]);
    assert_eq!(v["results"][0]["status"], "special");
}
