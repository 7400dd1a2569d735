//! A corpus of accepted proofs, including omega-rule templates and
//! deduction-transformed proofs.

use std::collections::BTreeSet;

use rsol_core::calculus::{apply_deduction, Builder, Justification, Kernel, Line, OmegaTemplate, Proof, Schema};
use rsol_core::formulas::{parse, FoVar, Formula, Signature, SoVar};

use crate::formats::load_theta;
use crate::prf::{parse_proof_file, ProofFile};

#[derive(Clone, Debug)]
pub struct Entry {
    pub name: String,
    pub file: ProofFile,
}

impl Entry {
    pub fn theta(&self) -> &str {
        self.file.theta.as_deref().unwrap_or("weak-so")
    }
}

struct Ctx {
    sig: Signature,
}

impl Ctx {
    fn new(sig: &str) -> Self {
        Ctx {
            sig: sig.parse().expect("corpus signature"),
        }
    }

    fn f(&self, s: &str) -> Formula {
        parse(s, &self.sig).unwrap_or_else(|e| panic!("corpus formula {s}: {e}"))
    }

    fn entry(&self, name: &str, theta: &str, sigma: Vec<Formula>, b: Builder, templates: Vec<OmegaTemplate>) -> Entry {
        let goal = b.lines.last().map(|l| l.formula.clone());
        Entry {
            name: name.into(),
            file: ProofFile {
                signature: self.sig.clone(),
                theta: Some(theta.into()),
                proof: Proof {
                    sigma,
                    lines: b.lines,
                    templates,
                    goal,
                },
            },
        }
    }
}

fn imp(a: Formula, b: Formula) -> Formula {
    Formula::implies(a, b)
}

fn x(i: u32) -> SoVar {
    SoVar::new(i, 1)
}

fn inst(v: SoVar, phi: &Formula) -> Formula {
    Formula::Inst(v, Box::new(phi.clone()))
}

fn instantiation() -> Entry {
    let c = Ctx::new("P0/1,c0");
    let mut b = Builder::new();
    let q = b.axiom(c.f("(∀x0 P0(x0)) → P0(c0)"), Schema::Q1);
    let p = b.push(c.f("∀x0 P0(x0)"), Justification::Premise(0));
    b.mp(q, p);
    c.entry("instantiation", "weak-so", vec![c.f("∀x0 P0(x0)")], b, vec![])
}

fn reflexivity() -> Entry {
    let c = Ctx::new("P0/1,c0");
    let mut b = Builder::new();
    b.refl(&c.f("P0(c0)"));
    c.entry("reflexivity", "weak-so", vec![], b, vec![])
}

fn syllogism() -> Entry {
    let c = Ctx::new("P0/1,P1/1,P2/1");
    let s1 = c.f("∀x0 (P0(x0) → P1(x0))");
    let s2 = c.f("∀x0 (P1(x0) → P2(x0))");
    let mut b = Builder::new();
    let q1 = b.axiom(c.f("(∀x0 (P0(x0) → P1(x0))) → (P0(x1) → P1(x1))"), Schema::Q1);
    let p1 = b.push(s1.clone(), Justification::Premise(0));
    let m1 = b.mp(q1, p1);
    let q2 = b.axiom(c.f("(∀x0 (P1(x0) → P2(x0))) → (P1(x1) → P2(x1))"), Schema::Q1);
    let p2 = b.push(s2.clone(), Justification::Premise(1));
    let m2 = b.mp(q2, p2);
    let s = b.syllogism(m1, m2);
    b.gen_fo(s, FoVar(1));
    c.entry("syllogism", "dsl", vec![s1, s2], b, vec![])
}

fn double_negation() -> Entry {
    let c = Ctx::new("P0/1,c0");
    let p = c.f("P0(c0)");
    let n = |k: usize| (0..k).fold(p.clone(), |acc, _| Formula::not(acc));
    let mut b = Builder::new();
    let l1 = b.axiom(imp(n(2), imp(n(4), n(2))), Schema::Pl1);
    let l2 = b.axiom(imp(imp(n(4), n(2)), imp(n(1), n(3))), Schema::Pl3);
    let l3 = b.axiom(imp(imp(n(1), n(3)), imp(n(2), n(0))), Schema::Pl3);
    let s1 = b.syllogism(l1, l2);
    let s2 = b.syllogism(s1, l3);
    let r = b.refl(&n(2));
    b.distribute(s2, r);
    c.entry("double-negation", "weak-so", vec![], b, vec![])
}

fn equality_reflexive() -> Entry {
    let c = Ctx::new("");
    let mut b = Builder::new();
    let e = b.axiom(c.f("x0 = x0"), Schema::Eq1);
    b.gen_fo(e, FoVar(0));
    c.entry("equality-reflexive", "weak-so", vec![], b, vec![])
}

fn equality_symmetric() -> Entry {
    let c = Ctx::new("");
    let mut b = Builder::new();
    let e2 = b.axiom(c.f("x0 = x1 → (x0 = x0 → x1 = x0)"), Schema::Eq2);
    let e1 = b.axiom(c.f("x0 = x0"), Schema::Eq1);
    let w = b.weaken(&c.f("x0 = x1"), e1);
    let d = b.distribute(e2, w);
    let g = b.gen_fo(d, FoVar(1));
    b.gen_fo(g, FoVar(0));
    c.entry("equality-symmetric", "weak-so", vec![], b, vec![])
}

fn leibniz() -> Entry {
    let c = Ctx::new("P0/1,c0");
    let mut b = Builder::new();
    let e = b.axiom(c.f("x0 = c0 → (P0(x0) → P0(c0))"), Schema::Eq2);
    b.gen_fo(e, FoVar(0));
    c.entry("leibniz", "all-fo", vec![], b, vec![])
}

fn so_instantiation() -> Entry {
    let c = Ctx::new("P0/1,c0");
    let mut b = Builder::new();
    let a = b.axiom(c.f("(∀X0 X0(c0)) → X1(c0)"), Schema::A4);
    b.gen_so(a, x(1));
    c.entry("so-instantiation", "weak-so", vec![], b, vec![])
}

fn extensionality() -> Entry {
    let c = Ctx::new("P0/1");
    let mut b = Builder::new();
    let a = b.axiom(c.f("∀X0 ∀X1 ((∀x0 (X0(x0) ↔ X1(x0))) ↔ X0 = X1)"), Schema::A2);
    let i1 = b.axiom(
        c.f("(∀X0 ∀X1 ((∀x0 (X0(x0) ↔ X1(x0))) ↔ X0 = X1)) → ∀X1 ((∀x0 (X2(x0) ↔ X1(x0))) ↔ X2 = X1)"),
        Schema::A4,
    );
    let m = b.mp(i1, a);
    let i2 = b.axiom(
        c.f("(∀X1 ((∀x0 (X2(x0) ↔ X1(x0))) ↔ X2 = X1)) → ((∀x0 (X2(x0) ↔ X3(x0))) ↔ X2 = X3)"),
        Schema::A4,
    );
    b.mp(i2, m);
    c.entry("extensionality", "dsl", vec![], b, vec![])
}

fn comprehension() -> Entry {
    let c = Ctx::new("P0/1,c0");
    let ax = c.f("∀x1 ∃X0 ∀x0 (X0(x0) ↔ x0 = x1)");
    let mut b = Builder::new();
    let a = b.axiom(ax.clone(), Schema::A1(Some(0)));
    let q = b.axiom(imp(ax, c.f("∃X0 ∀x0 (X0(x0) ↔ x0 = c0)")), Schema::Q1);
    b.mp(q, a);
    c.entry("comprehension", "weak-so", vec![], b, vec![])
}

fn comprehension_dsl() -> Entry {
    let c = Ctx::new("P0/1");
    let mut b = Builder::new();
    b.axiom(c.f("∃X0 ∀x0 (X0(x0) ↔ P0(x0))"), Schema::A1(None));
    c.entry("comprehension-dsl", "dsl", vec![], b, vec![])
}

fn member_instance() -> Entry {
    let c = Ctx::new("P0/1");
    let sigma = c.f("∀X0 ∀x0 (X0(x0) → P0(x0))");
    let fam = load_theta("dsl", &c.sig).expect("builtin");
    let phi = c.f("∀x0 (X0(x0) → P0(x0))");
    let m = fam.member(1, 0).expect("dsl member");
    let mut b = Builder::new();
    let a = b.axiom(
        imp(sigma.clone(), m.instantiate(&phi, x(0)).expect("instantiation")),
        Schema::A6(0),
    );
    let p = b.push(sigma.clone(), Justification::Premise(0));
    b.mp(a, p);
    c.entry("member-instance", "dsl", vec![sigma], b, vec![])
}

fn substitutivity() -> Entry {
    let c = Ctx::new("P0/1,c0");
    let a3 = c.f("∀X0 ∀X1 (X0 = X1 → (X0(c0) → X1(c0)))");
    let mut b = Builder::new();
    let a = b.axiom(a3.clone(), Schema::A3);
    let i = b.axiom(imp(a3, c.f("∀X1 (X2 = X1 → (X2(c0) → X1(c0)))")), Schema::A4);
    b.mp(i, a);
    c.entry("substitutivity", "weak-so", vec![], b, vec![])
}

fn so_generalization() -> Entry {
    let c = Ctx::new("P0/1,c0");
    let mut b = Builder::new();
    let a = b.axiom(c.f("P0(c0) → (X0(c0) → P0(c0))"), Schema::Pl1);
    let g = b.gen_so(a, x(0));
    let h = b.axiom(
        c.f("(∀X0 (P0(c0) → (X0(c0) → P0(c0)))) → (P0(c0) → ∀X0 (X0(c0) → P0(c0)))"),
        Schema::A5,
    );
    b.mp(h, g);
    c.entry("so-generalization", "weak-so", vec![], b, vec![])
}

fn conjunction() -> Entry {
    let c = Ctx::new("P0/1,P1/1,c0");
    let mut b = Builder::new();
    let a = b.axiom(c.f("P0(c0) → (P1(c0) → P0(c0) ∧ P1(c0))"), Schema::And3);
    let p0 = b.push(c.f("P0(c0)"), Justification::Premise(0));
    let m = b.mp(a, p0);
    let p1 = b.push(c.f("P1(c0)"), Justification::Premise(1));
    b.mp(m, p1);
    c.entry("conjunction", "weak-so", vec![c.f("P0(c0)"), c.f("P1(c0)")], b, vec![])
}

fn conjunction_swap() -> Entry {
    let c = Ctx::new("P0/1,P1/1,c0");
    let mut b = Builder::new();
    let a2 = b.axiom(c.f("P0(c0) ∧ P1(c0) → P1(c0)"), Schema::And2);
    let a3 = b.axiom(c.f("P1(c0) → (P0(c0) → P1(c0) ∧ P0(c0))"), Schema::And3);
    let s = b.syllogism(a2, a3);
    let a1 = b.axiom(c.f("P0(c0) ∧ P1(c0) → P0(c0)"), Schema::And1);
    b.distribute(s, a1);
    c.entry("conjunction-swap", "dsl", vec![], b, vec![])
}

fn self_implication() -> Entry {
    let file = parse_proof_file(include_str!("../data/self_impl.prf"), None).expect("bundled proof");
    Entry {
        name: "omega-self-implication".into(),
        file,
    }
}

const REFL_BODY: &str = "∀x0 (X0(x0) → X0(x0))";

fn omega_premise() -> Entry {
    let c = Ctx::new("P0/1,c0");
    let phi = c.f(REFL_BODY);
    let psi = Formula::forall_so(x(0), phi.clone());
    let mut t = Builder::new();
    let p = t.push(psi.clone(), Justification::Premise(0));
    let a = t.push(imp(psi.clone(), inst(x(0), &phi)), Justification::A6n);
    let m = t.mp(a, p);
    t.weaken(&psi, m);
    let template = OmegaTemplate {
        id: "t".into(),
        var: x(0),
        lines: t.lines,
    };
    let mut b = Builder::new();
    let r = b.push(imp(psi.clone(), psi.clone()), Justification::R3("t".into()));
    let p = b.push(psi.clone(), Justification::Premise(0));
    b.mp(r, p);
    c.entry("omega-premise", "weak-so", vec![psi], b, vec![template])
}

fn omega_conjunction() -> Entry {
    let c = Ctx::new("P0/1,c0");
    let phi = c.f(REFL_BODY);
    let all = Formula::forall_so(x(0), phi.clone());
    let psi = Formula::and(all.clone(), c.f("P0(c0)"));
    let mut t = Builder::new();
    let a1 = t.axiom(imp(psi.clone(), all.clone()), Schema::And1);
    let a6 = t.push(imp(all.clone(), inst(x(0), &phi)), Justification::A6n);
    t.syllogism(a1, a6);
    let template = OmegaTemplate {
        id: "conj".into(),
        var: x(0),
        lines: t.lines,
    };
    let mut b = Builder::new();
    b.push(imp(psi, all), Justification::R3("conj".into()));
    c.entry("omega-conjunction", "dsl", vec![], b, vec![template])
}

fn omega_parameter() -> Entry {
    let c = Ctx::new("P0/1");
    let phi = c.f("X0(x1) → X0(x1)");
    let all = Formula::forall_so(x(0), phi.clone());
    let psi = Formula::forall(FoVar(1), all.clone());
    let mut t = Builder::new();
    let q = t.axiom(imp(psi.clone(), all.clone()), Schema::Q1);
    let a6 = t.push(imp(all.clone(), inst(x(0), &phi)), Justification::A6n);
    t.syllogism(q, a6);
    let template = OmegaTemplate {
        id: "q".into(),
        var: x(0),
        lines: t.lines,
    };
    let mut b = Builder::new();
    let r = b.push(imp(psi, all), Justification::R3("q".into()));
    b.gen_fo(r, FoVar(1));
    c.entry("omega-parameter", "weak-so", vec![], b, vec![template])
}

/// Discharges the first premise of `e`.
fn discharged(e: &Entry) -> Entry {
    let fam = load_theta(e.theta(), &e.file.signature).expect("corpus family");
    let k = Kernel::new(fam.as_ref());
    let phi = e.file.proof.sigma[0].clone();
    let proof = apply_deduction(&k, &e.file.proof, &phi).unwrap_or_else(|err| panic!("{}: {err}", e.name));
    Entry {
        name: format!("{}-deduced", e.name),
        file: ProofFile {
            proof,
            ..e.file.clone()
        },
    }
}

pub fn corpus() -> Vec<Entry> {
    let mut out = vec![
        instantiation(),
        reflexivity(),
        syllogism(),
        double_negation(),
        equality_reflexive(),
        equality_symmetric(),
        leibniz(),
        so_instantiation(),
        extensionality(),
        comprehension(),
        comprehension_dsl(),
        member_instance(),
        substitutivity(),
        so_generalization(),
        conjunction(),
        conjunction_swap(),
        self_implication(),
        omega_premise(),
        omega_conjunction(),
        omega_parameter(),
    ];
    let deduced: Vec<Entry> = ["instantiation", "syllogism", "conjunction", "member-instance", "omega-premise"]
        .iter()
        .map(|n| discharged(out.iter().find(|e| e.name == *n).expect("corpus entry")))
        .collect();
    out.extend(deduced);
    out
}

pub fn uses_omega(p: &Proof) -> bool {
    p.lines.iter().any(|l| matches!(l.just, Justification::R3(_)))
}

fn unused(lines: &[Line]) -> Vec<usize> {
    let mut used = BTreeSet::new();
    used.insert(lines.len().saturating_sub(1));
    for l in lines {
        match l.just {
            Justification::Mp(i, j) => {
                used.insert(i);
                used.insert(j);
            }
            Justification::GenFo(i, _) | Justification::GenSo(i, _) => {
                used.insert(i);
            }
            _ => {}
        }
    }
    (0..lines.len()).filter(|i| !used.contains(i)).collect()
}

/// Lines no later step cites, other than the last line of each list, as
/// `(template id, line)`.
pub fn unused_lines(p: &Proof) -> Vec<(Option<String>, usize)> {
    let mut out: Vec<(Option<String>, usize)> = unused(&p.lines).into_iter().map(|i| (None, i)).collect();
    for t in &p.templates {
        out.extend(unused(&t.lines).into_iter().map(|i| (Some(t.id.clone()), i)));
    }
    out
}
