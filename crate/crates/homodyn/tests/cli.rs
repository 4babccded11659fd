use serde_json::Value;
use std::process::{Command, Output};

fn homodyn(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_homodyn"))
        .args(args)
        .env_remove("HOMODYN_CELL_BUDGET")
        .output()
        .expect("binary runs")
}

fn code(args: &[&str]) -> i32 {
    homodyn(args).status.code().unwrap()
}

fn json(args: &[&str]) -> Value {
    let mut v = vec!["--format", "json"];
    v.extend_from_slice(args);
    let out = homodyn(&v);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn exit_codes() {
    let cases: &[(&[&str], i32)] = &[
        (&["analyze", "--p", "3", "--map", "0,1,1,1"], 0),
        (&["analyze", "--p", "3", "--map", "1,0,0,1"], 3),
        (&["analyze", "--p", "3", "--map", "2,0,0,2"], 3),
        (&["analyze", "--p", "4", "--map", "0,1,1,1"], 2),
        (&["analyze", "--p", "3", "--map", "1,2,2,4"], 2),
        (&["analyze", "--p", "3", "--map", "0,x,1,1"], 2),
        (&["analyze", "--p", "3", "--map", "0,1,1"], 2),
        (&["--threads", "2", "analyze", "--p", "3", "--map", "0,1,1,1"], 2),
        (&["--budget", "1000", "decompose", "--p", "7", "--map", "7,-4,-2,-3", "--level", "6"], 4),
        (&["verify", "--p", "3", "--map", "0,1,1,1", "--level", "3"], 0),
        (&["verify", "--p", "2", "--map", "0,1,1,1", "--level", "4"], 0),
        (&["measure", "--p", "3", "--map", "0,1,1,1", "--cell", "0,3"], 2),
    ];
    for (args, want) in cases {
        assert_eq!(code(args), *want, "{args:?}");
    }
}

#[test]
fn budget_from_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_homodyn"))
        .args(["decompose", "--p", "7", "--map", "7,-4,-2,-3", "--level", "6"])
        .env("HOMODYN_CELL_BUDGET", "1000")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(4));
    assert!(out.stdout.is_empty());
    assert!(String::from_utf8_lossy(&out.stderr).contains("budget"));
}

#[test]
fn reports_match_schema() {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/schema/report.v1.json");
    let schema: Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    let validator = jsonschema::validator_for(&schema).unwrap();
    // (p, map, has an atlas)
    let maps = [
        ("3", "0,1,1,1", true),
        ("2", "0,1,1,1", true),
        ("3", "3,-1,1,1", true),
        ("3", "2,0,1,1", true),
        ("2", "2,0,1,1", false),
        ("5", "1,3,1,-1", false),
        ("5", "-5,1,0,-5", true),
        ("3", "1,0,0,-1", false),
        ("3", "3,5,1,4", true),
    ];
    for (p, m, atlas) in maps {
        let mut runs = vec![vec!["analyze", "--p", p, "--map", m]];
        if atlas {
            runs.push(vec!["analyze", "--p", p, "--map", m, "--level", "4"]);
            runs.push(vec!["decompose", "--p", p, "--map", m, "--level", "5"]);
        }
        for args in runs {
            let v = json(&args);
            let errors: Vec<String> = validator.iter_errors(&v).map(|e| e.to_string()).collect();
            assert!(errors.is_empty(), "{args:?}: {errors:?}");
        }
    }
}

#[test]
fn output_is_byte_identical_across_runs() {
    let dir = std::env::temp_dir().join(format!("homodyn-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let file = dir.join("report.json");
    let f = file.to_str().unwrap();
    for args in [
        vec!["--format", "json", "--json", f, "decompose", "--p", "2", "--map", "0,1,1,1", "--level", "4"],
        vec!["--json", f, "orbit", "--p", "3", "--map", "0,1,1,1", "--steps", "20", "--levels", "1,2"],
        vec!["--json", f, "verify", "--p", "3", "--map", "2,0,1,1", "--level", "4"],
    ] {
        let a = homodyn(&args);
        let saved = std::fs::read(&file).unwrap();
        let b = homodyn(&args);
        assert_eq!(a.status.code(), Some(0), "{args:?}");
        assert_eq!(a.stdout, b.stdout, "{args:?}");
        assert_eq!(saved, std::fs::read(&file).unwrap(), "{args:?}");
        if args[0] == "--format" {
            assert_eq!(a.stdout, saved);
        }
    }
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn sigma_of_zp_is_three_quarters() {
    let out = homodyn(&["measure", "--p", "3", "--map", "0,1,1,1", "--kind", "sigma:0", "--cell", "0,1"]);
    assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), "3/4");
    let out = homodyn(&["measure", "--p", "3", "--map", "0,1,1,1", "--kind", "sigma:0", "--cell", "0,1", "--complement"]);
    assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), "1/4");
    let v = json(&["measure", "--p", "3", "--map", "0,1,1,1", "--kind", "mu_bar", "--cell", "0,1"]);
    assert_eq!(v["value"], serde_json::json!({"num": "1", "den": "2"}));
}

#[test]
fn orbit_lists_exact_iterates() {
    let out = homodyn(&["orbit", "--p", "2", "--map", "0,1,1,1", "--x0", "0", "--steps", "5"]);
    let text = String::from_utf8_lossy(&out.stdout);
    let pts: Vec<&str> = text.lines().filter_map(|l| l.split_whitespace().nth(1)).collect();
    assert_eq!(&pts[..6], ["0", "1", "1/2", "2/3", "3/5", "5/8"]);
}

#[test]
fn errors_go_to_stderr_only() {
    let out = homodyn(&["analyze", "--p", "9", "--map", "0,1,1,1"]);
    assert!(out.stdout.is_empty());
    assert!(String::from_utf8_lossy(&out.stderr).starts_with("error:"));
}
