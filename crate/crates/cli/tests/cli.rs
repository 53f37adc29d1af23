use std::fs;
use std::process::{Command, Output};

use serde_json::Value;

fn lpdecode(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lpdecode")).args(args).env_remove("LPDECODE_SEED").output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("valid JSON")
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

fn csv_rows(out: &Output) -> Vec<Vec<String>> {
    let mut r = csv::Reader::from_reader(out.stdout.as_slice());
    let header: Vec<String> = r.headers().unwrap().iter().map(String::from).collect();
    let mut rows = vec![header];
    rows.extend(r.records().map(|rec| rec.unwrap().iter().map(String::from).collect()));
    rows
}

fn column(rows: &[Vec<String>], name: &str) -> Vec<String> {
    let i = rows[0].iter().position(|h| h == name).unwrap_or_else(|| panic!("no column {name}"));
    rows[1..].iter().map(|r| r[i].clone()).collect()
}

#[test]
fn certify_nsp_on_files() {
    let dir = tempfile::tempdir().unwrap();
    let dense = dir.path().join("hrep.txt");
    fs::write(&dense, "1 1 0\n0 1 1\n").unwrap();
    let out = lpdecode(&["certify-nsp", "--matrix", dense.to_str().unwrap(), "--k", "1", "--c", "1", "--strict"]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let v = json(&out);
    assert_eq!(v["verdict"], "holds");
    assert_eq!(v["k"], 1);

    let alist = dir.path().join("h3.alist");
    fs::write(&alist, "3 1\n1 3\n1 1 1\n3\n1\n1\n1\n1 2 3\n").unwrap();
    let out = lpdecode(&["certify-nsp", "--matrix", alist.to_str().unwrap(), "--k", "1", "--c", "1", "--strict"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["verdict"], "fails");
    assert_eq!(v["certificate"]["lhs"], v["certificate"]["rhs"]);

    let out =
        lpdecode(&["certify-nsp", "--matrix", dense.to_str().unwrap(), "--format", "alist", "--k", "1", "--c", "1"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn pseudoweight_hand_values() {
    let out = lpdecode(&["pseudoweight", "--vector", "2,1,1"]);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v["awgnc"], "8/3");
    assert_eq!(v["bsc"], "2");
    assert_eq!(v["bsc_prime"], 2);
    assert_eq!(v["bec"], 3);
    assert_eq!(v["maxfrac"], "2");

    let out = lpdecode(&["pseudoweight", "--vector", "1,-1"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn min_pseudoweight_of_corpus_matrices() {
    let out = lpdecode(&["min-pseudoweight", "--matrix", "corpus:hrep"]);
    assert!(out.status.success());
    let v = json(&out);
    for kind in ["awgnc", "bsc", "bsc_prime", "bec", "maxfrac"] {
        assert_eq!(v[kind]["value"], "3", "{kind}");
    }
    let out = lpdecode(&["min-pseudoweight", "--matrix", "corpus:i3", "--kind", "bsc"]);
    assert_eq!(json(&out)["bsc"]["status"], "cone trivial");
    let out = lpdecode(&["min-pseudoweight", "--matrix", "corpus:array_ldpc20"]);
    assert!(out.status.success());
    assert_eq!(json(&out)["maxfrac"]["value"], "14/3");
}

#[test]
fn decoders() {
    let out = lpdecode(&["decode-cs", "--matrix", "corpus:hamming74", "--signal", "0,0,-3/2,0,0,0,0"]);
    let v = json(&out);
    assert_eq!(v["status"], "success");
    assert_eq!(v["recovered"], true);

    let out = lpdecode(&["decode-cs", "--matrix", "corpus:hrep", "--syndrome", "1,1", "--decoder", "opt", "--k", "1"]);
    let v = json(&out);
    assert_eq!(v["estimate"], serde_json::json!(["0", "1", "0"]));

    let out = lpdecode(&["decode-cc", "--matrix", "corpus:hrep", "--received", "0,1,0"]);
    let v = json(&out);
    assert_eq!(v["lpd"]["status"], "success");
    assert_eq!(v["lpd"]["estimate"], serde_json::json!(["0", "0", "0"]));
    assert_eq!(v["mld"]["objective"], v["lpd"]["objective"]);

    let out = lpdecode(&[
        "decode-cc",
        "--matrix",
        "corpus:hamming74",
        "--channel",
        "bsc:0.1",
        "--trials",
        "40",
        "--seed",
        "3",
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let rows = csv_rows(&out);
    assert_eq!(rows.len(), 41);
    assert!(column(&rows, "violated").iter().all(|v| v == "false"));
}

#[test]
fn bridge_check() {
    let out = lpdecode(&["bridge-check", "--matrix", "corpus:hrep", "--vector", "1,-1,1"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["membership"]["verdict"], "member");
    assert_eq!(v["omega"], serde_json::json!(["1", "1", "1"]));

    let out = lpdecode(&["bridge-check", "--matrix", "corpus:hrep", "--vector", "1,1,1"]);
    assert_eq!(out.status.code(), Some(1));

    let out = lpdecode(&["bridge-check", "--matrix", "corpus:sparse12", "--trials", "50"]);
    assert_eq!(out.status.code(), Some(0));
    let rows = csv_rows(&out);
    assert_eq!(rows.len(), 51);
    assert!(column(&rows, "member").iter().all(|v| v == "true"));
}

#[test]
fn translate_on_hrep() {
    let out = lpdecode(&["translate", "--matrix", "corpus:hrep", "--k", "1", "--trials", "100", "--seed", "7"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stderr(&out).contains("100/100 point-wise implications satisfied"), "{}", stderr(&out));
    assert_eq!(csv_rows(&out).len(), 101);
}

#[test]
fn guarantee_runs_and_skips() {
    let out = lpdecode(&["guarantee", "--matrix", "corpus:sparse10", "--k", "1", "--trials", "30", "--seed", "5"]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let rows = csv_rows(&out);
    assert_eq!(rows.len(), 91);
    assert!(column(&rows, "violated").iter().all(|v| v == "false"));
    assert_eq!(column(&rows, "pair").iter().filter(|p| *p == "l2_l1").count(), 30);

    // Hrep has minimum AWGNC pseudo-weight 3, short of 4k.
    let out = lpdecode(&["guarantee", "--matrix", "corpus:hrep", "--k", "1", "--norm", "l2l1", "--trials", "5"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stderr(&out).contains("skipped"));

    let out =
        lpdecode(&["guarantee", "--matrix", "corpus:hrep", "--k", "1", "--norm", "l1l1", "--c", "3", "--trials", "5"]);
    assert!(stderr(&out).contains("skipped"));
    let out = lpdecode(&[
        "guarantee",
        "--matrix",
        "corpus:hrep",
        "--k",
        "1",
        "--norm",
        "l1l1",
        "--c",
        "3/2",
        "--trials",
        "5",
    ]);
    assert_eq!(csv_rows(&out).len(), 6);
}

#[test]
fn peel_equivalence() {
    let out = lpdecode(&["peel-equiv", "--trials", "300", "--seed", "11"]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let rows = csv_rows(&out);
    assert!(column(&rows, "agree").iter().all(|v| v == "true"));
    let out =
        lpdecode(&["peel-equiv", "--matrix", "corpus:hamming74", "--k", "3", "--trials", "50", "--out-format", "json"]);
    let v = json(&out);
    assert_eq!(v.as_array().unwrap().len(), 50);
}

#[test]
fn identical_seeds_give_identical_bytes() {
    let dir = tempfile::tempdir().unwrap();
    let run = |name: &str, seed_flag: bool| {
        let path = dir.path().join(name);
        let mut cmd = Command::new(env!("CARGO_BIN_EXE_lpdecode"));
        cmd.args(["decode-cc", "--matrix", "corpus:sparse10", "--channel", "awgnc:0.8", "--trials", "60"]);
        cmd.args(["--out", path.to_str().unwrap()]);
        if seed_flag {
            cmd.args(["--seed", "42"]).env_remove("LPDECODE_SEED");
        } else {
            cmd.env("LPDECODE_SEED", "42");
        }
        assert!(cmd.output().unwrap().status.success());
        fs::read(path).unwrap()
    };
    let a = run("a.csv", true);
    let b = run("b.csv", true);
    let c = run("c.csv", false);
    assert_eq!(a, b);
    assert_eq!(a, c);
    let other = lpdecode(&[
        "decode-cc",
        "--matrix",
        "corpus:sparse10",
        "--channel",
        "awgnc:0.8",
        "--trials",
        "60",
        "--seed",
        "43",
    ]);
    assert_ne!(other.stdout, a);
}

#[test]
fn usage_errors_exit_one() {
    for args in [
        &["certify-nsp", "--matrix", "corpus:hrep", "--c", "1"][..],
        &["translate", "--matrix", "corpus:hrep"],
        &["translate", "--matrix", "corpus:nope", "--k", "1"],
        &["translate", "--matrix", "corpus:hrep", "--k", "1", "--trials", "0"],
        &["decode-cc", "--matrix", "corpus:hrep", "--channel", "bsc:0.7"],
        &["nonsense"],
    ] {
        assert_eq!(lpdecode(args).status.code(), Some(1), "{args:?}");
    }
    assert_eq!(lpdecode(&["--help"]).status.code(), Some(0));
}
