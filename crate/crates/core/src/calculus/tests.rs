use alloc::string::ToString;
use alloc::vec;
use alloc::vec::Vec;

use super::*;
use crate::formulas::{parse, parse_schematic, FoVar, Formula, Signature, SoVar};
use crate::theta::{Custom, Enumerated, ThetaFamily, WeakSo};

fn sig() -> Signature {
    "P0/1,P1/1,c0".parse().unwrap()
}

fn f(s: &str) -> Formula {
    parse(s, &sig()).unwrap()
}

fn fs(s: &str) -> Formula {
    parse_schematic(s, &sig()).unwrap()
}

fn ax(s: &str, schema: Schema) -> Line {
    Line::new(f(s), Justification::Axiom(schema))
}

#[test]
fn recognizes_second_order_axioms() {
    let w = WeakSo::new(&sig(), 1);
    let r = |s: &str| recognize_axiom(&w, &f(s));
    assert_eq!(r("∀y0 ∃X0 ∀x0 (X0(x0) ↔ x0 = y0)"), Some(Schema::A1(Some(0))));
    assert_eq!(r("∀y0,y1 ∃X0 ∀x0 (X0(x0) ↔ x0 = y0 ∨ x0 = y1)"), Some(Schema::A1(Some(1))));
    assert_eq!(r("∃X0 ∀x0 (X0(x0) ↔ P0(x0))"), None);
    assert_eq!(r("∀X0 ∀X1 ((∀x0 (X0(x0) ↔ X1(x0))) ↔ X0 = X1)"), Some(Schema::A2));
    assert_eq!(r("∀X0 ∀X1 (X0 = X1 → (X0(c0) ∧ X0(x3) → X1(c0) ∧ X0(x3)))"), Some(Schema::A3));
    assert_eq!(r("(∀X0 X0(x0)) → X0(x0)"), Some(Schema::A4));
    assert_eq!(r("(∀X0 (X0(x0) ∨ P0(x1))) → X1(x0) ∨ P0(x1)"), Some(Schema::A4));
    // X1 would be captured.
    assert_eq!(r("(∀X0 ∀X1 (X0(x0) → X1(x0))) → ∀X1 (X1(x0) → X1(x0))"), None);
    assert_eq!(r("(∀X0 (P0(c0) → X0(x0))) → (P0(c0) → ∀X0 X0(x0))"), Some(Schema::A5));
    assert_eq!(r("(∀X0 (X0(x0) → X0(x0))) → (X0(x0) → ∀X0 X0(x0))"), None);
    assert_eq!(r("(∀X0 P1(x0) ∧ X0(x0)) → ∀x5 (P1(x0) ∧ x0 = x5)"), Some(Schema::A6(0)));
    assert_eq!(
        r("(∀X0 P1(x0) ∧ X0(x0)) → ∀x5,x6 (P1(x0) ∧ (x0 = x5 ∨ x0 = x6))"),
        Some(Schema::A6(1))
    );
}

#[test]
fn recognizes_first_order_base() {
    let w = WeakSo::new(&sig(), 1);
    let r = |s: &str| recognize_axiom(&w, &f(s));
    assert_eq!(r("P0(x0) → (P1(c0) → P0(x0))"), Some(Schema::Pl1));
    assert_eq!(
        r("(P0(x0) → (P1(x0) → P0(c0))) → ((P0(x0) → P1(x0)) → (P0(x0) → P0(c0)))"),
        Some(Schema::Pl2)
    );
    assert_eq!(r("(¬P1(x0) → ¬P0(x0)) → (P0(x0) → P1(x0))"), Some(Schema::Pl3));
    assert_eq!(r("P0(x0) ∧ P1(x0) → P1(x0)"), Some(Schema::And2));
    assert_eq!(r("P0(x0) → (P1(x0) → P0(x0) ∧ P1(x0))"), Some(Schema::And3));
    assert_eq!(r("(∀x0 P0(x0)) → P0(c0)"), Some(Schema::Q1));
    assert_eq!(r("(∀x0 ∃x1 x0 ≠ x1) → ∃x2 x1 ≠ x2"), Some(Schema::Q1));
    assert_eq!(r("(∀x0 (P1(c0) → P0(x0))) → (P1(c0) → ∀x0 P0(x0))"), Some(Schema::Q2));
    assert_eq!(r("(∀x0 (P1(x0) → P0(x0))) → (P1(x0) → ∀x0 P0(x0))"), None);
    assert_eq!(r("c0 = c0"), Some(Schema::Eq1));
    assert_eq!(r("x0 = c0 → (P0(x0) ∧ P1(x0) → P0(c0) ∧ P1(x0))"), Some(Schema::Eq2));
    assert_eq!(r("x0 = c0 → ((∀x0 P0(x0)) → ∀x0 P0(c0))"), None);
    assert_eq!(r("P0(x0) → P1(x0)"), None);

    let noeq = WeakSo::new(&"P0/1,noeq".parse().unwrap(), 1);
    let g = parse("x0 = x0", &sig()).unwrap();
    assert!(!matches_schema(&noeq, &g, Schema::Eq1));
}

#[test]
fn modus_ponens_and_references() {
    let w = WeakSo::new(&sig(), 1);
    let k = Kernel::new(&w);
    let mut p = Proof {
        sigma: vec![f("∀x0 P0(x0)"), f("(∀x0 P0(x0)) → P1(c0)")],
        lines: vec![
            Line::new(f("∀x0 P0(x0)"), Justification::Premise(0)),
            Line::new(f("(∀x0 P0(x0)) → P1(c0)"), Justification::Premise(1)),
            Line::new(f("P1(c0)"), Justification::Mp(1, 0)),
        ],
        templates: vec![],
        goal: Some(f("P1(c0)")),
    };
    assert_eq!(check_proof(&k, &p), Ok(()));
    p.lines[2].just = Justification::Mp(1, 2);
    let err = check_proof(&k, &p).unwrap_err();
    assert_eq!(err.line, 2);
    assert_eq!(err.reason, Reason::ForwardReference(2));
    assert!(err.to_string().contains("forward reference"));
    p.lines[2].just = Justification::Mp(0, 1);
    assert_eq!(check_proof(&k, &p).unwrap_err().reason, Reason::MpMismatch);
    p.lines[2].just = Justification::Mp(1, 0);
    p.goal = Some(f("P0(c0)"));
    assert_eq!(check_proof(&k, &p).unwrap_err().reason, Reason::GoalMismatch);
    p.goal = None;
    p.sigma[0] = f("P0(x0)");
    assert_eq!(check_proof(&k, &p).unwrap_err().reason, Reason::PremiseNotSentence(0));
}

fn self_implication() -> Proof {
    let phi = "∀x0 (X0(x0) → X0(x0))";
    Proof {
        sigma: vec![],
        lines: vec![Line::new(
            f(&alloc::format!("(∀X0 {phi}) → ∀X0 {phi}")),
            Justification::R3("t".into()),
        )],
        templates: vec![OmegaTemplate {
            id: "t".into(),
            var: SoVar::new(0, 1),
            lines: vec![Line::new(
                fs(&alloc::format!("(∀X0 {phi}) → [X0 := θ_n]({phi})")),
                Justification::A6n,
            )],
        }],
        goal: None,
    }
}

#[test]
fn omega_rule_self_implication() {
    let w = WeakSo::new(&sig(), 1);
    let k = Kernel::new(&w);
    let p = self_implication();
    assert_eq!(check_proof(&k, &p), Ok(()));
    assert_eq!(spot_check_template(&k, &[], &p.templates[0], 10), Ok(11));
    assert_eq!(spot_check_template(&k, &[], &p.templates[0], 0), Ok(1));

    let mut bad = p.clone();
    bad.lines[0].formula = f("(∀X0 ∀x0 (X0(x0) → X0(x0))) → ∀X0 ∀x0 X0(x0)");
    assert_eq!(check_proof(&k, &bad).unwrap_err().reason, Reason::R3Mismatch("t".into()));
    let mut missing = p.clone();
    missing.templates.clear();
    assert_eq!(check_proof(&k, &missing).unwrap_err().reason, Reason::UnknownTemplate("t".into()));
    let mut outside = p.clone();
    outside.lines[0].just = Justification::A6n;
    assert!(check_proof(&k, &outside).is_err());

    let wrong_arity = WeakSo::new(&sig(), 2);
    let err = check_proof(&Kernel::new(&wrong_arity), &p).unwrap_err();
    assert_eq!(err.reason, Reason::UnsupportedArity(1));
}

#[test]
fn non_uniform_templates() {
    let w = WeakSo::new(&sig(), 1);
    let k = Kernel::new(&w);
    // Valid only when θ_n is an equality with x0 on the left.
    let t = OmegaTemplate {
        id: "eq".into(),
        var: SoVar::new(0, 1),
        lines: vec![Line::new(
            fs("(∀x0 ∀x1 (x0 = x1 → x0 = x1)) → [X0 := θ_n](X0(x0) → X0(x0))"),
            Justification::Axiom(Schema::Q1),
        )],
    };
    let err = check_template(&k, &[], &t).unwrap_err();
    assert_eq!(err.reason, Reason::NotAnInstance(Schema::Q1));

    // Members 0..6 are P0, member 7 is P1.
    let mut members: Vec<(Formula, Vec<FoVar>, Vec<FoVar>)> = (0..7).map(|_| (f("P0(x0)"), vec![FoVar(0)], vec![])).collect();
    members.push((f("P1(x0)"), vec![FoVar(0)], vec![]));
    let c = Custom::new("seven", &sig(), members).unwrap();
    let kc = Kernel::new(&c);
    let t = OmegaTemplate {
        id: "q".into(),
        var: SoVar::new(0, 1),
        lines: vec![Line::new(fs("(∀x0 P0(x0)) → [X0 := θ_n](X0(x0))"), Justification::Axiom(Schema::Q1))],
    };
    assert!(check_template(&kc, &[], &t).is_err());
    assert_eq!(spot_check_template(&kc, &[], &t, 6), Ok(7));
    let err = spot_check_template(&kc, &[], &t, 10).unwrap_err();
    assert!(matches!(err.reason, Reason::Instance { n: 7, .. }), "{err}");
}

#[test]
fn template_table_order_is_irrelevant() {
    let w = WeakSo::new(&sig(), 1);
    let k = Kernel::new(&w);
    let mut p = self_implication();
    let mut other = p.templates[0].clone();
    other.id = "u".into();
    p.templates.insert(0, other);
    assert_eq!(check_proof(&k, &p), Ok(()));
    p.templates.reverse();
    assert_eq!(check_proof(&k, &p), Ok(()));
    p.templates[1].id = "t".into();
    assert!(matches!(check_proof(&k, &p).unwrap_err().reason, Reason::DuplicateTemplate(_)));
}

#[test]
fn deduction_examples() {
    let w = WeakSo::new(&sig(), 1);
    let k = Kernel::new(&w);
    let phi = f("∀x0 P0(x0)");
    let single = Proof {
        sigma: vec![phi.clone()],
        lines: vec![Line::new(phi.clone(), Justification::Premise(0))],
        templates: vec![],
        goal: Some(phi.clone()),
    };
    let d = apply_deduction(&k, &single, &phi).unwrap();
    assert!(d.sigma.is_empty());
    assert_eq!(check_proof(&k, &d), Ok(()));
    assert_eq!(d.conclusion().unwrap().normalize(), Formula::imp_prim(phi.normalize(), phi.normalize()));

    let mp = Proof {
        sigma: vec![phi.clone(), f("(∀x0 P0(x0)) → P1(c0)")],
        lines: vec![
            Line::new(phi.clone(), Justification::Premise(0)),
            Line::new(f("(∀x0 P0(x0)) → P1(c0)"), Justification::Premise(1)),
            Line::new(f("P1(c0)"), Justification::Mp(1, 0)),
        ],
        templates: vec![],
        goal: None,
    };
    let d = apply_deduction(&k, &mp, &phi).unwrap();
    assert_eq!(d.sigma, vec![f("(∀x0 P0(x0)) → P1(c0)")]);
    assert_eq!(check_proof(&k, &d), Ok(()));

    assert_eq!(apply_deduction(&k, &mp, &f("P0(x0)")), Err(DeductionError::NotSentence));
}

#[test]
fn deduction_through_generalization_and_omega() {
    let w = WeakSo::new(&sig(), 1);
    let k = Kernel::new(&w);
    let psi = "∀X0 ∀x0 (X0(x0) → X0(x0))";
    let p = Proof {
        sigma: vec![f("∀x0 P0(x0)"), f(psi)],
        lines: vec![
            ax("(∀x0 P0(x0)) → P0(x1)", Schema::Q1),
            Line::new(f("∀x0 P0(x0)"), Justification::Premise(0)),
            Line::new(f("P0(x1)"), Justification::Mp(0, 1)),
            Line::new(f("∀x1 P0(x1)"), Justification::GenFo(2, FoVar(1))),
            Line::new(f(&alloc::format!("({psi}) → {psi}")), Justification::R3("t".into())),
            Line::new(f(psi), Justification::Premise(1)),
            Line::new(f(psi), Justification::Mp(4, 5)),
        ],
        templates: vec![OmegaTemplate {
            id: "t".into(),
            var: SoVar::new(0, 1),
            lines: vec![
                Line::new(f(psi), Justification::Premise(1)),
                Line::new(
                    fs("(∀X0 ∀x0 (X0(x0) → X0(x0))) → [X0 := θ_n](∀x0 (X0(x0) → X0(x0)))"),
                    Justification::A6n,
                ),
                Line::new(fs("[X0 := θ_n](∀x0 (X0(x0) → X0(x0)))"), Justification::Mp(1, 0)),
                Line::new(
                    fs(&alloc::format!("[X0 := θ_n](∀x0 (X0(x0) → X0(x0))) → (({psi}) → [X0 := θ_n](∀x0 (X0(x0) → X0(x0))))")),
                    Justification::Axiom(Schema::Pl1),
                ),
                Line::new(
                    fs(&alloc::format!("({psi}) → [X0 := θ_n](∀x0 (X0(x0) → X0(x0)))")),
                    Justification::Mp(3, 2),
                ),
            ],
        }],
        goal: None,
    };
    assert_eq!(check_proof(&k, &p), Ok(()));
    for discharged in [f("∀x0 P0(x0)"), f(psi)] {
        let d = apply_deduction(&k, &p, &discharged).unwrap();
        assert_eq!(check_proof(&k, &d), Ok(()), "discharging {discharged}");
        assert_eq!(d.sigma.len(), 1);
        let want = Formula::imp_prim(discharged.normalize(), f(psi).normalize());
        assert!(crate::formulas::alpha_eq(&d.conclusion().unwrap().normalize(), &want));
        for t in &d.templates {
            assert_eq!(spot_check_template(&k, &d.sigma, t, 3), Ok(4));
        }
    }
    let both = apply_deduction(&k, &apply_deduction(&k, &p, &f(psi)).unwrap(), &f("∀x0 P0(x0)")).unwrap();
    assert!(both.sigma.is_empty());
    assert_eq!(check_proof(&k, &both), Ok(()));
}

#[test]
fn dsl_family_instances() {
    let s: Signature = "P0/1".parse().unwrap();
    let dsl = Enumerated::dsl(&s);
    let m = dsl.member(1, 0).unwrap();
    let line = Formula::implies(
        Formula::forall_so(SoVar::new(0, 1), parse("X0(x0)", &s).unwrap()),
        m.instantiate(&parse("X0(x0)", &s).unwrap(), SoVar::new(0, 1)).unwrap(),
    );
    assert!(matches_schema(&dsl, &line, Schema::A6(0)));
    assert_eq!(recognize_axiom(&dsl, &line), Some(Schema::A6(0)));
    assert!(recognize_axiom(&dsl, &m.comprehension(0)).is_some_and(|a| matches!(a, Schema::A1(_))));
}

#[test]
fn schema_names_round_trip() {
    for s in Schema::FIRST_ORDER.into_iter().chain([
        Schema::A1(None),
        Schema::A1(Some(3)),
        Schema::A2,
        Schema::A3,
        Schema::A4,
        Schema::A5,
        Schema::A6(2),
    ]) {
        assert_eq!(Schema::parse(&s.to_string()), Some(s));
    }
    assert_eq!(Schema::parse("A6"), None);
    assert_eq!(Schema::parse("PL4"), None);
}
