use std::process::{Command, Output};

use serde_json::Value;

fn endoclass(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_endoclass"))
        .args(args)
        .env_remove("ENDOCLASS_MAX_Q")
        .output()
        .expect("binary runs")
}

fn json_of(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn verify_f2() {
    let out = endoclass(&["verify", "--field", "F2"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json_of(&out);
    assert_eq!(v["verdict"], "pass");
    assert_eq!(v["class_count"], 3);
    let table = String::from_utf8(out.stderr).unwrap();
    assert!(table.contains("F2: 3 classes, 3 predicted, verdict pass"));
}

#[test]
fn output_does_not_depend_on_jobs() {
    for args in [
        vec!["verify", "--field", "F7"],
        vec!["classes", "--field", "F4"],
        vec!["equiv", "--field", "F9", "--relation", "sim5", "--reps"],
        vec!["enumerate", "--field", "F3", "--type", "II1"],
    ] {
        let one = endoclass(&[&["--jobs", "1"], args.as_slice()].concat());
        let four = endoclass(&[&["--jobs", "4"], args.as_slice()].concat());
        assert_eq!(one.status.code(), Some(0), "{args:?}");
        assert_eq!(one.stdout, four.stdout, "{args:?}");
    }
}

#[test]
fn enumerate_tsv() {
    let out = endoclass(&["enumerate", "--field", "F4", "--type", "II1", "--subclass", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("p\tq\ta\tb\tc\td\ttype\tsubclass"));
    let rows: Vec<&str> = lines.collect();
    assert_eq!(rows.len(), 9);
    assert!(rows.iter().all(|r| r.split('\t').count() == 8 && r.ends_with("\tII1\t3")));
}

#[test]
fn iso_exit_codes() {
    let same = endoclass(&["iso", "--field", "F5", "--lhs", "[0,1,1,0,-1,2]", "--rhs", "[0,1,1,0,-1,2]"]);
    assert_eq!(same.status.code(), Some(0));
    assert_eq!(json_of(&same)["witness"], serde_json::json!([["1", "0"], ["0", "1"]]));
    let apart = endoclass(&["iso", "--field", "F5", "--lhs", "[0,1,1,0,-1,2]", "--rhs", "[0,4,-4,-4,4,0]"]);
    assert_eq!(apart.status.code(), Some(1));
    assert_eq!(json_of(&apart)["isomorphic"], false);
}

#[test]
fn equiv_reps_f7() {
    let out = endoclass(&["equiv", "--field", "F7", "--relation", "sim1", "--reps"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json_of(&out)["classes"], serde_json::json!({"1": ["1", "2", "4"], "3": ["3", "5", "6"]}));
}

#[test]
fn text_table() {
    let out = endoclass(&["--format", "text", "table", "--field", "F5", "--algebra", "[0,1,1,0,-1,2]"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "( f      e )\n( -e+2f  f )\n");
}

#[test]
fn usage_errors() {
    for args in [
        vec!["bogus"],
        vec!["verify"],
        vec!["verify", "--field", "F6"],
        vec!["enumerate", "--field", "F3", "--subclass", "5"],
        vec!["equiv", "--field", "Q", "--relation", "sim2", "--reps"],
        vec!["verify", "--field", "F5", "--unknown"],
    ] {
        let out = endoclass(&args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(!out.stderr.is_empty(), "{args:?}");
    }
}

#[test]
fn field_guard_and_override() {
    let big = endoclass(&["verify", "--field", "F64"]);
    assert_eq!(big.status.code(), Some(2));
    let allowed = Command::new(env!("CARGO_BIN_EXE_endoclass"))
        .args(["verify", "--field", "F3"])
        .env("ENDOCLASS_MAX_Q", "2")
        .output()
        .unwrap();
    assert_eq!(allowed.status.code(), Some(2));
}
