//! Command-line behaviour: reports, exit codes and determinism.

use std::path::{Path, PathBuf};

use birkhoff::cli::{
    main_with_args, EXIT_OK, EXIT_PARSE, EXIT_RANK, EXIT_RESIDUAL, EXIT_SMALL_DIVISOR,
};
use serde_json::Value;

fn data(name: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("data").join(name).display().to_string()
}

fn scratch(tag: &str) -> PathBuf {
    let dir = Path::new(env!("CARGO_TARGET_TMPDIR")).join("cli");
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(tag)
}

fn write_doc(tag: &str, doc: &Value) -> String {
    let p = scratch(tag);
    std::fs::write(&p, doc.to_string()).unwrap();
    p.display().to_string()
}

/// Run the CLI with `--output` pointing at a scratch file; returns the exit code and report.
fn run(tag: &str, args: &[&str]) -> (i32, Value, String) {
    let out = scratch(&format!("{tag}.out.json"));
    let mut argv = vec!["birkhoff".to_string()];
    argv.extend(args.iter().map(|s| s.to_string()));
    argv.push("--output".into());
    argv.push(out.display().to_string());
    let code = main_with_args(argv);
    let text = std::fs::read_to_string(&out).unwrap_or_default();
    let v = serde_json::from_str(&text).unwrap_or(Value::Null);
    (code, v, text)
}

#[test]
fn roundtrip_cubic_potential() {
    for mode in ["classical", "quantum"] {
        let (code, v, _) = run(
            &format!("rt_{mode}"),
            &["roundtrip", "--input", &data("cubic_potential.json"), "--mode", mode, "--order", "6"],
        );
        assert_eq!(code, EXIT_OK, "{v}");
        assert_eq!(v["status"], "ok");
        assert!(v["max_rel_error"].as_f64().unwrap() <= 1e-8);
    }
}

#[test]
fn roundtrip_general_and_periodic() {
    for file in ["quartic_well.json", "periodic_cubic.json"] {
        let (code, v, _) = run(file, &["roundtrip", "--input", &data(file), "--order", "4"]);
        assert_eq!(code, EXIT_OK, "{file}: {v}");
        assert!(v["max_rel_error"].as_f64().unwrap() <= 1e-8);
    }
}

#[test]
fn frequencies_from_spectrum_file() {
    let (code, v, _) = run("freqs", &["freqs", "--input", &data("spectrum.json")]);
    assert_eq!(code, EXIT_OK);
    let want = [1.0, 2f64.sqrt(), 3f64.sqrt()];
    let got: Vec<f64> = v["theta"].as_array().unwrap().iter().map(|x| x.as_f64().unwrap()).collect();
    for (a, b) in got.iter().zip(want) {
        assert!((a - b).abs() <= 1e-9);
    }
}

#[test]
fn harmonic_input_has_no_generators() {
    let (code, v, _) = run("harm", &["bnf", "--input", &data("harmonic.json")]);
    assert_eq!(code, EXIT_OK);
    assert!(v["generators"].as_array().unwrap().iter().all(|g| g["terms"].as_array().unwrap().is_empty()));
}

#[test]
fn reports_are_byte_identical() {
    let args = ["bnf", "--input", &data("quartic_well.json"), "--mode", "quantum"];
    let (_, _, a) = run("det_a", &args);
    let (_, _, b) = run("det_b", &args);
    assert!(!a.is_empty());
    assert_eq!(a, b);
}

#[test]
fn every_subcommand_succeeds_on_sample_data() {
    let jobs: [(&str, &str); 8] = [
        ("fermi", "hessian.json"),
        ("fermi", "cubic_potential.json"),
        ("fermi", "loop.json"),
        ("bnf", "periodic_cubic.json"),
        ("avg", "quartic_well.json"),
        ("melem", "quartic_well.json"),
        ("freqs", "spectrum.json"),
        ("roundtrip", "quartic_well.json"),
    ];
    for (i, (cmd, file)) in jobs.iter().enumerate() {
        let (code, v, _) = run(&format!("all_{i}"), &[cmd, "--input", &data(file)]);
        assert_eq!(code, EXIT_OK, "{cmd} {file}: {v}");
    }
}

#[test]
fn parse_errors() {
    let bad = write_doc("unknown_field.json", &serde_json::json!({"schema": 1, "theta": [1.0], "bogus": 1}));
    let (code, v, _) = run("parse_a", &["bnf", "--input", &bad]);
    assert_eq!(code, EXIT_PARSE);
    assert_eq!(v["error"]["exit_code"], EXIT_PARSE);
    assert_eq!(v["error"]["kind"], "parse");
    let (code, _, _) = run("parse_b", &["bnf", "--input", &data("harmonic.json"), "--mode", "semiclassical"]);
    assert_eq!(code, EXIT_PARSE);
    let garbled = scratch("garbled.json");
    std::fs::write(&garbled, "{ not json").unwrap();
    let (code, _, _) = run("parse_c", &["bnf", "--input", &garbled.display().to_string()]);
    assert_eq!(code, EXIT_PARSE);
}

#[test]
fn resonance_is_a_small_divisor() {
    // theta = (1, 2) with z1^2 zbar2 is exactly resonant.
    let doc = serde_json::json!({
        "schema": 1, "setting": "well", "theta": [1.0, 2.0],
        "terms": [
            {"p": 0, "j": [2, 0], "k": [0, 1], "re": 0.1},
            {"p": 0, "j": [0, 1], "k": [2, 0], "re": 0.1}
        ],
        "caps": {"order": 4}
    });
    let path = write_doc("resonant.json", &doc);
    let (code, v, _) = run("resonant", &["bnf", "--input", &path]);
    assert_eq!(code, EXIT_SMALL_DIVISOR, "{v}");
}

#[test]
fn missing_averages_are_rank_deficient() {
    let (code, avg, _) = run("avg_for_rank", &["avg", "--input", &data("quartic_well.json"), "--order", "4"]);
    assert_eq!(code, EXIT_OK);
    let averages = avg["averages"].as_array().unwrap();
    let doc = serde_json::json!({
        "schema": 1, "setting": "well", "theta": [1.0], "inverse": "general",
        "normal_form": avg["normal_form"]["h"],
        "averages": [averages[0].clone()],
        "caps": {"order": 4}
    });
    let path = write_doc("rank.json", &doc);
    let (code, v, _) = run("rank", &["invert", "--input", &path]);
    assert_eq!(code, EXIT_RANK, "{v}");
}

#[test]
fn failed_roundtrip_is_a_residual_failure() {
    // A tolerance below rounding level cannot be met.
    let (code, v, _) = run(
        "resid",
        &["roundtrip", "--input", &data("quartic_well.json"), "--order", "6", "--tol", "1e-300"],
    );
    assert_eq!(code, EXIT_RESIDUAL, "{v}");
}
