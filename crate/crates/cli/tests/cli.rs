use std::process::Command;

use serde_json::Value;
use tm_cli::{run, Report, DISCLAIMER};

fn tm(args: &str) -> tm_cli::Output {
    run(std::iter::once("tm").chain(args.split_whitespace()))
}

fn report(args: &str) -> (i32, Report) {
    let out = tm(&format!("{args} --json"));
    let report = Report::from_json(&out.stdout).unwrap_or_else(|e| panic!("{args}: {e}\n{}", out.stderr));
    (out.code, report)
}

/// One invocation per command, with the exit code each should give.
const INVOCATIONS: &[(&str, i32)] = &[
    ("prefix --length 64", 0),
    ("prefix --length 33 --complement", 0),
    ("letter --n 13", 0),
    ("occurrences --factor 010 --bound 100", 0),
    ("occurrences --factor 11 --bound 1", 1),
    ("classify --factor 010", 0),
    ("classify --factor 0110", 0),
    ("ending-pattern --factor 010 --bound 4096", 0),
    ("ending-pattern --factor 00 --bound 4096", 0),
    ("witness summable --factor 010 -k 2 --bound 4096", 0),
    ("witness summable --factor 010 -k 3 --bound 4096", 1),
    ("witness summable --factor 11 -k 2 --bound 1024", 1),
    ("witness ip --factor 0110 --max-terms 6", 0),
    ("witness fsbig --factor 100 -k 2", 0),
    ("lemma zero-sum --set 4,9,13,21,30", 0),
    ("lemma support -r 5 -i 3 -k 7", 0),
    ("partition tm1 --bound 256 --probe-bound 4096 -k 2", 0),
    ("partition tm1 --bound 256 --probe-bound 20 -k 3", 1),
    ("partition ternary --bound 2187 --max-cell 4", 0),
    ("search weak-schur -c 2 -k 2 --max-m 12", 0),
    ("search weak-schur -c 2 -k 2 --max-m 8", 1),
    ("search block-family -m 4 -k 3 --coloring constant", 0),
    ("search block-family -m 2 -k 2 --coloring min-parity", 1),
    ("search fs-demo --ys 1,2,4,8 --cells residue --modulus 3 -k 2", 0),
];

#[test]
fn documented_examples_through_the_binary() {
    let bin = env!("CARGO_BIN_EXE_tm");
    let out = Command::new(bin).args(["classify", "--factor", "010"]).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), "TwoNotThreeSummable");

    let out = Command::new(bin)
        .args(["witness", "summable", "--factor", "010", "-k", "3", "--bound", "4096"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stdout).starts_with("no 3-term witness"));

    let out = Command::new(bin).args(["prefix", "--length", "16"]).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), "0110100110010110");
}

#[test]
fn documented_examples_as_reports() {
    let (code, r) = report("classify --factor 010");
    assert_eq!(code, 0);
    assert_eq!(r.result["class"], "TwoNotThreeSummable");
    assert_eq!(r.result["tau_power"], 0);

    let (code, r) = report("witness summable --factor 010 -k 3 --bound 4096");
    assert_eq!(code, 1);
    assert_eq!(r.result["witness"], Value::Null);
    assert!(r.bounded);

    let (_, r) = report("witness summable --factor 010 -k 2 --bound 100");
    assert_eq!(r.result["witness"], serde_json::json!([3, 15]));

    let (_, r) = report("prefix --length 16");
    assert_eq!(r.result["word"], "0110100110010110");
}

#[test]
fn non_factors_and_bad_arguments_are_usage_errors() {
    for args in [
        "classify --factor 000",
        "classify --factor 11111",
        "classify --factor 012",
        "occurrences --factor 010101 --bound 100",
        "witness summable --factor 010 -k 0",
        "witness ip --factor 010",
        "witness fsbig --factor 0110 -k 1",
        "ending-pattern --factor 0110",
        "lemma zero-sum --set 1,1,2",
        "lemma support -r 4 -i 0 -k 5",
        "search weak-schur -c 4 -k 2",
        "search fs-demo --ys 1,2,3 -k 2",
        "prefix --length 4 --csv",
        "frobnicate",
        "classify",
    ] {
        let out = tm(args);
        assert_eq!(out.code, 2, "{args}: {}", out.stderr);
        assert!(out.stdout.is_empty(), "{args}");
        assert!(!out.stderr.is_empty(), "{args}");
    }
    assert!(tm("classify --factor 000").stderr.contains("not a factor"));
}

#[test]
fn exit_codes_and_json_round_trip() {
    for &(args, code) in INVOCATIONS {
        let out = tm(&format!("{args} --json"));
        assert_eq!(out.code, code, "{args}: {}", out.stderr);
        let r = Report::from_json(&out.stdout).unwrap();
        assert_eq!(Report::from_json(&r.to_json()).unwrap(), r, "{args}");
        assert_eq!(r.to_json() + "\n", out.stdout, "{args}");
        assert_eq!(r.version, env!("CARGO_PKG_VERSION"));
        assert_eq!(r.violations, 0, "{args}");
        assert!(args.starts_with(&r.command), "{args} vs {}", r.command);
    }
}

#[test]
fn schema_is_stable() {
    let (_, r) = report("letter --n 19");
    let v: Value = serde_json::to_value(&r).unwrap();
    let mut keys: Vec<&str> = v.as_object().unwrap().keys().map(String::as_str).collect();
    keys.sort_unstable();
    assert_eq!(keys, ["bounded", "checked", "command", "params", "result", "version", "violations"]);
    assert_eq!(r.result["support"], serde_json::json!([0, 1, 4]));
    assert_eq!(r.params["n"], 19);
}

#[test]
fn bounded_results_carry_the_disclaimer() {
    for &(args, _) in INVOCATIONS {
        let (_, r) = report(args);
        let disclaimer = r.result.get("disclaimer").and_then(Value::as_str);
        if r.bounded {
            assert_eq!(disclaimer, Some(DISCLAIMER), "{args}");
        } else {
            assert_eq!(disclaimer, None, "{args}");
        }
    }
    for args in ["witness summable --factor 010 -k 3", "search weak-schur -c 2 -k 2", "partition tm1 --bound 64"] {
        assert!(report(args).1.bounded, "{args}");
    }
}

#[test]
fn output_is_deterministic() {
    for &(args, _) in INVOCATIONS {
        assert_eq!(tm(&format!("{args} --json")).stdout, tm(&format!("{args} --json")).stdout, "{args}");
        assert_eq!(tm(args).stdout, tm(args).stdout, "{args}");
    }
}

#[test]
fn csv_lists_positions() {
    let out = tm("occurrences --factor 101 --bound 100 --csv");
    assert_eq!(out.code, 0);
    let lines: Vec<&str> = out.stdout.lines().collect();
    assert_eq!(lines[0], "position");
    let positions: Vec<u64> = lines[1..].iter().map(|l| l.parse().unwrap()).collect();
    for p in [35, 47, 82] {
        assert!(positions.contains(&p));
    }
    assert!(tm("occurrences --factor 101 --bound 100 --csv --json").code == 2);
}

fn verify(report: &Report) -> tm_cli::Output {
    let file = tempfile::NamedTempFile::new().unwrap();
    std::fs::write(file.path(), report.to_json()).unwrap();
    tm(&format!("verify --report {}", file.path().display()))
}

#[test]
fn every_report_re_validates() {
    for &(args, _) in INVOCATIONS {
        let (_, r) = report(args);
        let out = verify(&r);
        assert_eq!(out.code, 0, "{args}: {}", out.stdout);
        assert!(out.stdout.ends_with("valid\n"), "{args}: {}", out.stdout);
    }
}

#[test]
fn tampered_reports_fail_verification() {
    let tamper = |args: &str, edit: &dyn Fn(&mut Value)| {
        let (_, mut r) = report(args);
        edit(&mut r.result);
        let out = verify(&r);
        assert_eq!(out.code, 3, "{args}: {}", out.stdout);
        let (code, v) = {
            let file = tempfile::NamedTempFile::new().unwrap();
            std::fs::write(file.path(), r.to_json()).unwrap();
            let out = tm(&format!("verify --report {} --json", file.path().display()));
            (out.code, Report::from_json(&out.stdout).unwrap())
        };
        assert_eq!(code, 3);
        assert_eq!(v.result["valid"], false);
        assert!(v.violations > 0);
    };
    tamper("prefix --length 8", &|r| r["word"] = "01101000".into());
    tamper("letter --n 13", &|r| r["letter"] = 0.into());
    tamper("occurrences --factor 010 --bound 100", &|r| r["positions"][0] = 4.into());
    tamper("occurrences --factor 010 --bound 100", &|r| {
        r["positions"].as_array_mut().unwrap().pop();
        r["count"] = (r["count"].as_u64().unwrap() - 1).into();
    });
    tamper("classify --factor 010", &|r| r["class"] = "NotTwoSummable".into());
    tamper("ending-pattern --factor 010 --bound 1024", &|r| r["pattern"]["k"] = 1.into());
    tamper("witness summable --factor 010 -k 2 --bound 100", &|r| r["witness"] = serde_json::json!([3, 16]));
    tamper("witness summable --factor 010 -k 3 --bound 4096", &|r| r["witness"] = serde_json::json!([3, 15, 48]));
    tamper("witness summable --factor 11 -k 2 --bound 1024", &|r| r["k"] = 1.into());
    tamper("witness ip --factor 01", &|r| r["witness"][0] = 7.into());
    tamper("witness fsbig --factor 1 -k 1", &|r| r["witness"][0] = 8.into());
    tamper("lemma zero-sum --set 4,9,13", &|r| r["subset"] = serde_json::json!([4]));
    tamper("lemma support -r 5 -i 3 -k 7", &|r| r["support_size"] = 6.into());
    tamper("partition tm1 --bound 256 --probe-bound 4096 -k 2", &|r| r["a1_witness"] = serde_json::json!([2, 8]));
    tamper("partition ternary --bound 2187 --max-cell 4", &|r| r["d_size"] = 1.into());
    tamper("search weak-schur -c 2 -k 2 --max-m 12", &|r| r["certificate"][0] = 1.into());
    tamper("search weak-schur -c 2 -k 2 --max-m 12", &|r| r["threshold"] = 10.into());
    tamper("search block-family -m 4 -k 3 --coloring min-parity", &|r| r["family"] = serde_json::json!([[1], [2]]));
    tamper("search fs-demo --ys 1,2,4,8 -k 2", &|r| r["demo"]["cell"] = 1.into());
}

#[test]
fn verify_rejects_unreadable_input() {
    let file = tempfile::NamedTempFile::new().unwrap();
    std::fs::write(file.path(), "{\"command\": \"prefix\"}").unwrap();
    assert_eq!(tm(&format!("verify --report {}", file.path().display())).code, 2);
    assert_eq!(tm("verify --report /nonexistent/report.json").code, 2);

    let (_, mut r) = report("letter --n 3");
    r.command = "verify".into();
    assert_eq!(verify(&r).code, 2);
}

#[test]
fn help_and_version_succeed() {
    let out = tm("--help");
    assert_eq!(out.code, 0);
    assert!(out.stdout.contains("witness"));
    assert_eq!(tm("--version").code, 0);
}
