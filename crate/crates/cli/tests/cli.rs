use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn lpw(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lpw")).args(args).env_remove("LPW_LEVEL_CAP").output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn scripts() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../core/scripts")
}

fn script(name: &str) -> String {
    scripts().join(name).to_string_lossy().into_owned()
}

#[test]
fn check_accepts_bundled_script() {
    let o = lpw(&["check", &script("thm4_3.lpw"), "--registry", &script("empty.reg")]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("accepted"));
}

#[test]
fn check_reports_first_failing_line() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("broken.lpw");
    fs::write(&path, "1: A -> B -> A ; axiom LP1\n2: B ; mp 1 1\n").unwrap();
    let o = lpw(&["check", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("line 2"), "{}", stdout(&o));
}

#[test]
fn check_missing_file_and_parse_error_exit_2() {
    assert_eq!(lpw(&["check", "/definitely/not/here.lpw"]).status.code(), Some(2));
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.lpw");
    fs::write(&path, "1: A -> ; hyp\n").unwrap();
    assert_eq!(lpw(&["check", path.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn json_report_is_stable() {
    let args = ["check", &script("nonexplosion.lpw"), "--registry", &script("p1.reg"), "--json"];
    let (a, b) = (lpw(&args), lpw(&args));
    assert_eq!(a.stdout, b.stdout);
    let v: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["verdict"], "accepted");
    assert_eq!(v["explosion_used"], false);
    assert_eq!(v["schema_usage"]["LP9"], 1);
    for key in ["verdict", "first_failure", "schema_usage", "explosion_used", "hypotheses"] {
        assert!(v.get(key).is_some(), "{key}");
    }
}

#[test]
fn expand_examples() {
    let o = lpw(&["expand", "--mode", "incons", "--level", "0", "P"]);
    assert_eq!(stdout(&o).trim(), "P & !P");
    let o = lpw(&["expand", "--mode", "cons", "--level", "0", "P"]);
    assert_eq!(stdout(&o).trim(), "!(P & !P)");
    assert_eq!(lpw(&["expand", "--mode", "cons", "--level", "w", "P"]).status.code(), Some(2));
    assert_eq!(lpw(&["expand", "--mode", "cons", "--level", "0", "P &"]).status.code(), Some(2));
}

#[test]
fn expand_respects_level_cap_variable() {
    let o = Command::new(env!("CARGO_BIN_EXE_lpw"))
        .args(["expand", "--mode", "incons", "--level", "3", "P"])
        .env("LPW_LEVEL_CAP", "2")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn search_examples() {
    let o = lpw(&["search", "--goal", "A -> A", "--depth", "5"]);
    assert_eq!(o.status.code(), Some(0));
    let proof = stdout(&o);
    assert_eq!(proof.lines().filter(|l| !l.trim().is_empty()).count(), 5);

    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("found.lpw");
    fs::write(&path, &proof).unwrap();
    assert_eq!(lpw(&["check", path.to_str().unwrap()]).status.code(), Some(0));

    assert_eq!(lpw(&["search", "--goal", "A", "--depth", "3", "--axioms", "LP1"]).status.code(), Some(1));
    let o = lpw(&["search", "--goal", "P | !P", "--depth", "1", "--registry", &script("p1.reg"), "--axioms", "LP12"]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(lpw(&["search", "--goal", "P |", "--depth", "1"]).status.code(), Some(2));
}

#[test]
fn search_output_rechecks_with_registry_and_hypotheses() {
    let dir = tempfile::tempdir().unwrap();
    let reg = dir.path().join("r.reg");
    fs::write(&reg, "P 1\n").unwrap();
    let o = lpw(&["search", "--goal", "!P", "--depth", "3", "--registry", reg.to_str().unwrap(), "--hyp", "P & !P"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let path = dir.path().join("found.lpw");
    fs::write(&path, stdout(&o)).unwrap();
    assert_eq!(lpw(&["check", path.to_str().unwrap(), "--registry", reg.to_str().unwrap()]).status.code(), Some(0));
}

#[test]
fn demo_examples() {
    let o = lpw(&["demo", "thm4_3"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    for step in ["(1)", "(2)", "(3)"] {
        assert!(text.lines().any(|l| l.contains(step) && l.contains("checked")), "{text}");
    }
    assert_eq!(lpw(&["demo", "thm4_1:2"]).status.code(), Some(0));
    let o = lpw(&["demo", "nonexplosion"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("not derivable"));
    assert_eq!(lpw(&["demo", "bogus"]).status.code(), Some(2));
}

#[test]
fn parse_and_instantiate() {
    let o = lpw(&["parse", "--classify", "A -> (B -> A)"]);
    assert_eq!(stdout(&o), "A -> B -> A\naxiom LP1\n");
    let o = lpw(&["instantiate", "LP4", "--bind", "A=P", "--bind", "B=Q"]);
    assert_eq!(stdout(&o).trim(), "P & Q -> P");
    let o = lpw(&["instantiate", "LP15", "--bind", "A=Q", "--bind", "B=P", "--registry", &script("p1.reg")]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(lpw(&["instantiate", "LP4", "--bind", "A=P"]).status.code(), Some(2));
}

#[test]
fn profile_flag_restricts_schemata() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("comp.lpw");
    fs::write(&path, "1: exists y. forall x. x in y <-> !(x in x) ; comp !(x in x)\n").unwrap();
    assert_eq!(lpw(&["check", path.to_str().unwrap()]).status.code(), Some(0));
    assert_eq!(lpw(&["--profile", "lpomega", "check", path.to_str().unwrap()]).status.code(), Some(1));
}
