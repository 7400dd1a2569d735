use std::path::PathBuf;
use std::process::{Command, Output};

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data").join(name)
}

fn rsol(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rsol")).args(args).output().expect("run rsol")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

const SINGLETONS: &str = "∀x∃X∀y(X(y)<->x=y)";

#[test]
fn singleton_sentence_under_orbits() {
    let two = data("two.json");
    let o = rsol(&["eval", "--structure", two.to_str().unwrap(), "--theta", "dsl", "--oracle", "orbits", "--sentence", SINGLETONS]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "false");

    let o = rsol(&["eval", "--structure", two.to_str().unwrap(), "--theta", "weak-so", "--oracle", "bounded", "--bound", "1", "--sentence", SINGLETONS]);
    assert_eq!(stdout(&o).trim(), "true");

    let o = rsol(&["eval", "--structure", two.to_str().unwrap(), "--oracle", "full", "--sentence", SINGLETONS, "--expect", "false"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn self_implication_is_accepted() {
    let p = data("self_impl.prf");
    let o = rsol(&["prove-check", "--proof", p.to_str().unwrap(), "--spot", "3"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("accepted"));
    assert!(stdout(&o).contains("4 instances accepted"));
}

#[test]
fn deduction_writes_a_checked_proof() {
    let dir = tempfile::tempdir().unwrap();
    let src = dir.path().join("mp.prf");
    std::fs::write(
        &src,
        "signature: P0/1,c0\nsigma: ∀x0 P0(x0)\n1. (∀x0 P0(x0)) → P0(c0) ; Q1\n2. ∀x0 P0(x0) ; premise 1\n3. P0(c0) ; MP 1 2\n",
    )
    .unwrap();
    let out = dir.path().join("deduced.prf");
    let o = rsol(&[
        "prove-check",
        "--proof",
        src.to_str().unwrap(),
        "--deduce",
        "∀x0 P0(x0)",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let o = rsol(&["--json", "prove-check", "--proof", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(stdout(&o).lines().next().unwrap()).unwrap();
    assert_eq!(v["conclusion"], "(∀x0 P0(x0)) → P0(c0)");
}

#[test]
fn sigma_file_supplies_premises() {
    let dir = tempfile::tempdir().unwrap();
    let src = dir.path().join("p.prf");
    std::fs::write(&src, "signature: P0/1\n1. ∀x0 P0(x0) ; premise 1\n").unwrap();
    let o = rsol(&["prove-check", "--proof", src.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    let sigma = data("premises.sigma");
    let o = rsol(&["prove-check", "--proof", src.to_str().unwrap(), "--sigma", sigma.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn atoms_entry_gets_a_principal_decision() {
    let o = rsol(&["rs", "--algebra", "fincof", "--family", "atoms", "--avoid", "0", "--steps", "50"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("entry atoms: witness 0 = {0}"), "{text}");
    assert!(text.contains("generated by {0}"));
}

#[test]
fn cofinite_ultrafilter_is_reported_incompatible() {
    let fam = data("fincof.family");
    let o = rsol(&["--json", "rs", "--algebra", "fincof", "--family", fam.to_str().unwrap(), "--cofinite"]);
    assert_eq!(o.status.code(), Some(0));
    let cof: Vec<serde_json::Value> = stdout(&o)
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .filter(|v: &serde_json::Value| v["check"] == "cofinite")
        .collect();
    assert_eq!(cof.len(), 3);
    assert!(cof[0]["verdict"].as_str().unwrap().starts_with("Incompatible"));
}

#[test]
fn powerset_family_file() {
    let fam = data("powerset3.family");
    let o = rsol(&["rs", "--algebra", "powerset:3", "--family", fam.to_str().unwrap(), "--avoid", "{0}"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("ultrafilter: true"));
}

#[test]
fn budget_from_environment() {
    let o = Command::new(env!("CARGO_BIN_EXE_rsol"))
        .args(["rs", "--algebra", "fincof", "--family", "atoms"])
        .env("RSOL_BUDGET", "many")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn exit_codes() {
    assert_eq!(rsol(&["parse", "P0(x0", "--signature", "P0/1"]).status.code(), Some(2));
    assert_eq!(rsol(&["eval", "--structure", "/nonexistent.json", "--sentence", "⊤"]).status.code(), Some(5));
    let two = data("two.json");
    let free = rsol(&["eval", "--structure", two.to_str().unwrap(), "--sentence", "x0 = x0"]);
    assert_eq!(free.status.code(), Some(3));
    assert_eq!(rsol(&["suite", "weakso"]).status.code(), Some(0));
    let dir = tempfile::tempdir().unwrap();
    let open = dir.path().join("open.prf");
    std::fs::write(&open, "signature: P0/1\nsigma: P0(x0)\n1. P0(x0) ; premise 1\n").unwrap();
    assert_eq!(rsol(&["prove-check", "--proof", open.to_str().unwrap()]).status.code(), Some(3));
}

#[test]
fn orbits_and_reduce() {
    let path = data("path3.json");
    let o = rsol(&["--json", "orbits", "--structure", path.to_str().unwrap()]);
    let v: serde_json::Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert_eq!(v["automorphisms"], 1);
    assert_eq!(v["definable"], 8);
    let o = rsol(&["reduce", "--structure", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("blocks: [[0], [1], [2]]"));
}

#[test]
fn compare_so_and_lemma_check() {
    let path = data("path3.json");
    let p = path.to_str().unwrap();
    let o = rsol(&["compare-so", "--structure", p, "--sentence", "∃X0 ∀x0 (X0(x0) ↔ ¬P0(x0))", "--sentence", SINGLETONS]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert_eq!(stdout(&o).matches("agree").count(), 2);
    for item in ["iii", "iv", "v", "vi"] {
        let o = rsol(&["lemma-check", "--structure", p, "--theta", "dsl", "--formula", "X0(x0) ∧ P0(x1)", "--item", item, "--var", "X0"]);
        assert_eq!(o.status.code(), Some(0), "{item}: {}", stdout(&o));
    }
}

#[test]
fn suite_output_is_deterministic() {
    let a = rsol(&["--json", "suite", "lemma-reg", "--seed", "9"]);
    let b = rsol(&["--json", "suite", "lemma-reg", "--seed", "9"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    assert!(stdout(&a).lines().all(|l| serde_json::from_str::<serde_json::Value>(l).is_ok()));
}
