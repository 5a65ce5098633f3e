use std::process::Command;

use fskein::cli::{run, EXIT_DOMAIN, EXIT_OK, EXIT_UNKNOWN, EXIT_USAGE};

fn call(args: &[&str]) -> (i32, String, String) {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let argv = std::iter::once("fskein").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn first_line(args: &[&str]) -> String {
    let (code, out, err) = call(args);
    assert_eq!(code, EXIT_OK, "{args:?}: {err}");
    out.lines().next().unwrap_or_default().to_string()
}

#[test]
fn documented_examples() {
    assert_eq!(first_line(&["abelianize", "--preset", "higman:4"]), "Z^2");
    assert_eq!(first_line(&["is-identity", "--preset", "cleary:2", "frac(a1 a2 ; id ; b1 b1)"]), "equal");
    assert_eq!(first_line(&["germ", "--preset", "mirror-cleary:2", "--end", "o"]), "Gr<a,b | a a = b>");
    assert_eq!(first_line(&["germ", "--preset", "cleary:2", "--end", "omega"]), "Gr<a,b | a a = b>");
}

#[test]
fn machine_reports_name_the_engine() {
    let (code, out, _) = call(&["abelianize", "--preset", "cleary:3", "--machine"]);
    assert_eq!(code, EXIT_OK);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines[0], "verb=abelianize");
    assert_eq!(lines[1], "result=Z/3");
    assert!(lines.contains(&"engine=cleary-nf"));
    assert!(lines.iter().any(|l| l.starts_with("budget=")));
    assert_eq!(lines.last(), Some(&"exit=0"));
}

#[test]
fn reports_are_reproducible() {
    let args = ["multiply", "--preset", "cleary:2", "random:5", "random:3", "--seed", "11", "--machine"];
    assert_eq!(call(&args), call(&args));
}

#[test]
fn arithmetic_verbs() {
    assert_eq!(first_line(&["parse", "--preset", "cleary:2", "b1"]), "frac(a1 b1 ; (1 2 3) ; a1 a2)");
    assert_eq!(first_line(&["multiply", "--preset", "cleary:2", "b1", "b1^-1"]), "frac(I ; (1) ; I)");
    assert_eq!(first_line(&["inverse", "--preset", "free:1", "a1"]), "frac(a1 a2 ; (1 2 3) ; a1 a1)");
    assert_eq!(first_line(&["check-relation", "--preset", "higman:3", "tau3", "a2 tau4"]), "equal");
    assert_eq!(first_line(&["in-k", "--preset", "free:1", "[a1, a2]"]), "equal");
    assert_eq!(first_line(&["act", "--preset", "free:2", "b1", "a1 a2@2"]), "a1 b1@2");
    assert_eq!(first_line(&["act", "--preset", "free:1", "--beta", "a1@2", "o"]), "a1@2");
}

#[test]
fn family_verbs() {
    assert_eq!(first_line(&["phi", "--preset", "higman:3", "a1 b2"]), "z1 z4");
    assert_eq!(first_line(&["phi", "--preset", "higman:3", "z1 z4"]), "a[1,2] b[2,3]");
    assert_eq!(first_line(&["goodify", "--preset", "cleary:2", "b1 b1"]), "a1 a2");
    let (code, out, _) = call(&["snf", "--preset", "cleary:2", "frac(b1 b1 ; id ; a1 a1)"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("a_tree: a1 a1"), "{out}");
    assert_eq!(first_line(&["scan-cancel", "--preset", "cleary:2", "--depth", "3"]), "pass");
    assert_eq!(first_line(&["kernel-witness", "--preset", "cleary:2"]), "none");
    assert_eq!(first_line(&["kernel-witness", "--preset", "mono:a=a1a2,b=b1b2"]), "frac(a1 ; (1 2) ; b1)");
    assert_eq!(first_line(&["scan-quotient", "--preset", "mono:a=a1a2,b=b1b2"]), "2");
    assert_eq!(first_line(&["support", "--preset", "free:1", "a2", "--depth", "0"]), "3");
}

#[test]
fn exit_codes() {
    assert_eq!(call(&["frobnicate"]).0, EXIT_USAGE);
    assert_eq!(call(&["abelianize", "--preset", "nonsense:1"]).0, EXIT_DOMAIN);
    assert_eq!(call(&["inverse", "--preset", "cleary:2", "frac(a1 ; id ; a1 a1)"]).0, EXIT_DOMAIN);
    assert_eq!(call(&["goodify", "--preset", "free:2", "a1"]).0, EXIT_DOMAIN);
    // a presentation without a decision procedure and a tiny budget
    let dir = std::env::temp_dir().join(format!("fskein-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let file = dir.join("p.fs");
    std::fs::write(&file, "colors: a b c\nrel: a1 b1 = b1 c2\nrel: b1 b1 = c1 c1\n").unwrap();
    let (code, out, _) = call(&[
        "is-identity",
        "--presentation",
        file.to_str().unwrap(),
        "--budget",
        "3",
        "frac(a1 a1 ; id ; c1 c1)",
    ]);
    assert_eq!(code, EXIT_UNKNOWN, "{out}");
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn binary_exit_status() {
    let bin = env!("CARGO_BIN_EXE_fskein");
    let ok = Command::new(bin).args(["abelianize", "--preset", "higman:5"]).output().unwrap();
    assert_eq!(ok.status.code(), Some(EXIT_OK));
    assert_eq!(String::from_utf8_lossy(&ok.stdout).lines().next(), Some("Z^3"));
    let bad = Command::new(bin).args(["multiply"]).output().unwrap();
    assert_eq!(bad.status.code(), Some(EXIT_USAGE));
}
