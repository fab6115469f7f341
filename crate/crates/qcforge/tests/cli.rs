use std::fs;
use std::process::{Command, Output};

fn qcforge(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qcforge")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn codec_commands() {
    let o = qcforge(&["decode-gen", "--q", "2", "53"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("coefficients (x^0 first): 10111"));
    let o = qcforge(&["encode-gen", "--q", "2", "10111"]);
    assert_eq!(stdout(&o).trim(), "53");
    let o = qcforge(&["encode-gen", "--q", "4", "1ab"]);
    assert_eq!(stdout(&o).trim(), "1ab");
}

#[test]
fn bad_input_exits_with_2() {
    assert_eq!(qcforge(&["decode-gen", "--q", "2", "59"]).status.code(), Some(2));
    assert_eq!(qcforge(&["decode-gen", "--q", "6", "1"]).status.code(), Some(2));
    assert_eq!(qcforge(&["verify", "/nonexistent.records"]).status.code(), Some(2));
    assert_eq!(qcforge(&["reproduce", "8"]).status.code(), Some(2));
}

#[test]
fn cosets_and_partition() {
    let o = qcforge(&["cosets", "--q", "2", "--n", "14"]);
    let out = stdout(&o);
    assert!(out.contains("n = 14 = 7 * 2^1"));
    assert!(out.contains("{1,2,4}") && out.contains("{3,5,6}"));
    let o = qcforge(&["partition", "--q", "2", "--n", "7"]);
    let out = stdout(&o);
    assert!(out.contains("5 classes, 4 proper nonzero"));
    assert!(out.contains("(full space)"));
}

#[test]
fn verify_reports_and_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let good = dir.path().join("good.records");
    let bad = dir.path().join("bad.records");
    let record = |d: usize| {
        format!(
            "{{\"q\":2,\"n\":14,\"k\":3,\"d\":{d},\"d_exactness_flag\":\"claimed\",\"properties\":[],\
             \"provenance_kind\":\"qc\",\"m\":7,\"ell\":2,\"g_encoded\":\"53\",\"fs_encoded\":[\"1\",\"1\"],\
             \"cx_components\":null,\"modification\":null,\"seed\":null,\"timestamp\":null}}\n"
        )
    };
    fs::write(&good, record(8)).unwrap();
    fs::write(&bad, record(7)).unwrap();

    let report = dir.path().join("report.jsonl");
    let o = qcforge(&["verify", good.to_str().unwrap(), "--report-out", report.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("confirmed 1"));
    assert!(fs::read_to_string(&report).unwrap().contains("\"outcome\":\"confirmed\""));

    let o = qcforge(&["verify", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1), "{}", stdout(&o));
    assert!(stdout(&o).contains("parameter-mismatch 1"));
}

#[test]
fn search_appends_to_the_ledger() {
    let dir = tempfile::tempdir().unwrap();
    let targets = dir.path().join("targets.records");
    let mut text = String::from("# qcforge-records v1\n");
    for k in 1..=6 {
        text.push_str(&format!(
            "{{\"q\":2,\"n\":14,\"k\":{k},\"d\":2,\"d_exactness_flag\":\"claimed\",\"properties\":[],\
             \"provenance_kind\":\"params_only\",\"m\":null,\"ell\":null,\"g_encoded\":null,\"fs_encoded\":[],\
             \"cx_components\":null,\"modification\":null,\"seed\":null,\"timestamp\":null}}\n"
        ));
    }
    fs::write(&targets, text).unwrap();
    let config = dir.path().join("search.conf");
    fs::write(
        &config,
        "field = 2\nm = 7\nell = 2\nsamples = 10\nseed = 1\ntarget_file = targets.records\nledger = out.records\n",
    )
    .unwrap();
    let o = qcforge(&["--threads", "2", "search", "--config", config.to_str().unwrap()]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let ledger = fs::read_to_string(dir.path().join("out.records")).unwrap();
    assert!(ledger.starts_with("# qcforge-records v1\n"));
    assert!(ledger.lines().count() > 1);
    assert!(stdout(&o).contains("m=7"));

    let again = qcforge(&["search", "--config", config.to_str().unwrap()]);
    assert!(again.status.success());
    assert!(stdout(&again).contains(" 0 appended"));
}

#[test]
fn modify_prints_the_new_parameters() {
    let o = qcforge(&["modify", "--record", "t4-143-19-75-q4", "--method", "shorten", "--positions", "141-143"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(stdout(&o).contains("-> [140,18,"), "{}", stdout(&o));
}
