use rsol::corpus::{corpus, unused_lines, uses_omega};
use rsol::formats::{load_theta, parse_custom_family, parse_regular_family, parse_sigma, parse_structure, structure_json, split_top};
use rsol::prf::{parse_proof_file, print_proof_file};
use rsol::Failure;
use rsol_core::boolean::{FinCof, FinCofSet, PowerSet};
use rsol_core::calculus::{check_proof, Kernel};
use rsol_core::formulas::Signature;
use rsol_core::theta::ThetaFamily;

#[test]
fn structure_json_round_trip() {
    let text = r#"{
        "domain_size": 3,
        "predicates": {"P0": [[0], [2]], "P1": [[0, 1]]},
        "functions": {"f0": [1, 2, 0]},
        "constants": {"c0": 2}
    }"#;
    let s = parse_structure(text).unwrap();
    assert_eq!(s.size(), 3);
    assert_eq!(s.signature().to_string(), "P0/1,P1/2,f0/1,c0");
    assert_eq!(parse_structure(&structure_json(&s)).unwrap(), s);
}

#[test]
fn structure_errors() {
    assert!(matches!(parse_structure("{"), Err(Failure::Parse(_))));
    let out_of_range = r#"{"domain_size": 2, "predicates": {"P0": [[5]]}}"#;
    assert!(parse_structure(out_of_range).is_err());
    let gap = r#"{"domain_size": 2, "predicates": {"P1": [[0]]}}"#;
    assert!(parse_structure(gap).is_err());
}

#[test]
fn corpus_files_print_and_parse_back() {
    for e in corpus() {
        let text = print_proof_file(&e.file);
        let back = parse_proof_file(&text, None).unwrap_or_else(|err| panic!("{}: {err}\n{text}", e.name));
        assert_eq!(back, e.file, "{}", e.name);
    }
}

#[test]
fn corpus_is_accepted_without_dead_lines() {
    let c = corpus();
    assert!(c.len() >= 20);
    assert!(c.iter().filter(|e| uses_omega(&e.file.proof)).count() >= 3);
    for e in &c {
        let fam = load_theta(e.theta(), &e.file.signature).unwrap();
        let k = Kernel::new(fam.as_ref());
        assert!(check_proof(&k, &e.file.proof).is_ok(), "{}", e.name);
        assert_eq!(unused_lines(&e.file.proof), vec![], "{}", e.name);
    }
}

#[test]
fn proof_file_errors_name_the_line() {
    let bad = "signature: P0/1\n1. P0(c0) ; MP 1 2\n";
    assert!(parse_proof_file(bad, None).unwrap_err().to_string().contains("line 2"));
    let skipped = "signature: P0/1,c0\n2. P0(c0) ; premise 1\n";
    assert!(parse_proof_file(skipped, None).is_err());
    let open = "signature: P0/1,c0\ntemplate t over n {\n";
    assert!(parse_proof_file(open, None).is_err());
}

#[test]
fn custom_family_file() {
    let sig: Signature = "P0/1".parse().unwrap();
    let fam = parse_custom_family("mine", "# slots | params | formula\nx0 | | P0(x0)\nx0 | x1 | x0 = x1\n", &sig).unwrap();
    assert_eq!(fam.name(), "mine");
    assert_eq!(fam.finite_members().map(|m| m.len()), Some(2));
    assert!(parse_custom_family("bad", "x0 | P0(x0)\n", &sig).is_err());
}

#[test]
fn sigma_lines() {
    let sig: Signature = "P0/1".parse().unwrap();
    let fs = parse_sigma("# premises\n∀x0 P0(x0)\n\n∃x0 P0(x0)\n", &sig).unwrap();
    assert_eq!(fs.len(), 2);
}

#[test]
fn regular_family_file() {
    let p = PowerSet::new(3).unwrap();
    let text = "join : {0,1,2} : {0}, {1}, {2}\nmeet : {} : {0,1}, {1,2}\n";
    let es = parse_regular_family(text, |s| p.parse(s), |_| None).unwrap();
    assert_eq!(es.len(), 2);
    assert!(es.iter().all(|e| e.is_finite()));
    assert!(parse_regular_family("join : {9} : {0}\n", |s| p.parse(s), |_| None).is_err());

    let parse = |s: &str| FinCofSet::parse(s);
    let es = parse_regular_family("join : ~{} : atoms\n", parse, FinCof::generator).unwrap();
    assert_eq!(es[0].generator_name(), Some("atoms"));
    assert_eq!(es[0].member(3), Some(FinCofSet::finite([3])));
}

#[test]
fn top_level_split_respects_braces() {
    assert_eq!(split_top("{0,1}, {2}, ~{3,4}"), vec!["{0,1}", "{2}", "~{3,4}"]);
}
