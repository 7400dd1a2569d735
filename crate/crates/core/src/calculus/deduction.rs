use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;

use super::{check_proof, DeductionError, Justification, Kernel, Line, OmegaTemplate, Proof, Schema};
use crate::formulas::{alpha_eq, Formula, SoVar};

/// `a → b`, split from sugared or primitive form.
fn split_imp(f: &Formula) -> (Formula, Formula) {
    match f {
        Formula::Implies(a, b) => ((**a).clone(), (**b).clone()),
        _ => {
            let g = f.normalize();
            let (a, b) = g.as_imp().expect("an implication");
            (a.clone(), b.clone())
        }
    }
}

fn imp(a: Formula, b: Formula) -> Formula {
    Formula::implies(a, b)
}

/// Appends lines and derived propositional steps. The step helpers assume
/// the cited lines have the stated shapes and panic otherwise.
#[derive(Clone, Debug, Default)]
pub struct Builder {
    pub lines: Vec<Line>,
}

impl Builder {
    pub fn new() -> Self {
        Builder::default()
    }

    pub fn push(&mut self, formula: Formula, just: Justification) -> usize {
        self.lines.push(Line::new(formula, just));
        self.lines.len() - 1
    }

    pub fn formula(&self, i: usize) -> &Formula {
        &self.lines[i].formula
    }

    pub fn axiom(&mut self, formula: Formula, schema: Schema) -> usize {
        self.push(formula, Justification::Axiom(schema))
    }

    /// From `a → b` at `i` and `a` at `j`, derives `b`.
    pub fn mp(&mut self, i: usize, j: usize) -> usize {
        let (_, b) = split_imp(self.formula(i));
        self.push(b, Justification::Mp(i, j))
    }

    pub fn gen_fo(&mut self, i: usize, x: crate::formulas::FoVar) -> usize {
        let f = Formula::forall(x, self.formula(i).clone());
        self.push(f, Justification::GenFo(i, x))
    }

    pub fn gen_so(&mut self, i: usize, v: SoVar) -> usize {
        let f = Formula::forall_so(v, self.formula(i).clone());
        self.push(f, Justification::GenSo(i, v))
    }

    /// `φ → φ`.
    pub fn refl(&mut self, phi: &Formula) -> usize {
        let p = phi.clone();
        let pp = imp(p.clone(), p.clone());
        let a = self.axiom(imp(p.clone(), imp(pp.clone(), p.clone())), Schema::Pl1);
        let b = self.axiom(
            imp(
                imp(p.clone(), imp(pp.clone(), p.clone())),
                imp(imp(p.clone(), pp.clone()), pp.clone()),
            ),
            Schema::Pl2,
        );
        let c = self.mp(b, a);
        let d = self.axiom(imp(p.clone(), pp), Schema::Pl1);
        self.mp(c, d)
    }

    /// From `γ` at `i`, derives `φ → γ`.
    pub fn weaken(&mut self, phi: &Formula, i: usize) -> usize {
        let g = self.formula(i).clone();
        let a = self.axiom(imp(g.clone(), imp(phi.clone(), g)), Schema::Pl1);
        self.mp(a, i)
    }

    /// From `φ → (a → b)` at `i` and `φ → a` at `j`, derives `φ → b`.
    pub fn distribute(&mut self, i: usize, j: usize) -> usize {
        let (phi, ab) = split_imp(self.formula(i));
        let (a, b) = split_imp(&ab);
        let ax = self.axiom(
            imp(
                imp(phi.clone(), imp(a.clone(), b.clone())),
                imp(imp(phi.clone(), a), imp(phi, b)),
            ),
            Schema::Pl2,
        );
        let k = self.mp(ax, i);
        self.mp(k, j)
    }

    /// From `a → b` at `i` and `b → c` at `j`, derives `a → c`.
    pub fn syllogism(&mut self, i: usize, j: usize) -> usize {
        let (a, _) = split_imp(self.formula(i));
        let w = self.weaken(&a, j);
        self.distribute(w, i)
    }

    /// From `φ → (χ → ι)` at `i`, derives `φ ∧ χ → ι`.
    pub fn import(&mut self, i: usize) -> usize {
        let (phi, rest) = split_imp(self.formula(i));
        let (chi, _) = split_imp(&rest);
        let both = Formula::and(phi.clone(), chi.clone());
        let left = self.axiom(imp(both.clone(), phi), Schema::And1);
        let s = self.syllogism(left, i);
        let right = self.axiom(imp(both, chi), Schema::And2);
        self.distribute(s, right)
    }

    /// From `φ ∧ χ → ι` at `i`, derives `φ → (χ → ι)`.
    pub fn export(&mut self, i: usize) -> usize {
        let (both, iota) = split_imp(self.formula(i));
        let Formula::And(phi, chi) = both.normalize() else {
            panic!("a conjunction")
        };
        let (phi, chi) = (*phi, *chi);
        let pair = self.axiom(
            imp(phi, imp(chi.clone(), both.clone())),
            Schema::And3,
        );
        let w = self.weaken(&chi, i);
        let ax = self.axiom(
            imp(
                imp(chi.clone(), imp(both.clone(), iota.clone())),
                imp(imp(chi.clone(), both), imp(chi, iota)),
            ),
            Schema::Pl2,
        );
        let d = self.mp(ax, w);
        self.syllogism(pair, d)
    }
}

struct Deduce<'p> {
    phi: &'p Formula,
    premise: BTreeMap<usize, Option<usize>>,
    templates: &'p [OmegaTemplate],
    done: BTreeMap<String, OmegaTemplate>,
}

impl Deduce<'_> {
    /// Appends `φ → γ` for every line `γ`; returns the new positions.
    fn lines(&mut self, b: &mut Builder, lines: &[Line]) -> Vec<usize> {
        let mut map: Vec<usize> = Vec::with_capacity(lines.len());
        for line in lines {
            let at = match &line.just {
                Justification::Premise(j) => match self.premise[j] {
                    None => b.refl(self.phi),
                    Some(k) => {
                        let i = b.push(line.formula.clone(), Justification::Premise(k));
                        b.weaken(self.phi, i)
                    }
                },
                Justification::Axiom(_) | Justification::A6n => {
                    let i = b.push(line.formula.clone(), line.just.clone());
                    b.weaken(self.phi, i)
                }
                Justification::Mp(i, j) => b.distribute(map[*i], map[*j]),
                Justification::GenFo(i, x) => {
                    let g = b.gen_fo(map[*i], *x);
                    let (phi, body) = split_imp(b.formula(map[*i]));
                    let q2 = b.axiom(
                        imp(b.formula(g).clone(), imp(phi, Formula::forall(*x, body))),
                        Schema::Q2,
                    );
                    b.mp(q2, g)
                }
                Justification::GenSo(i, v) => {
                    let g = b.gen_so(map[*i], *v);
                    let (phi, body) = split_imp(b.formula(map[*i]));
                    let a5 = b.axiom(
                        imp(b.formula(g).clone(), imp(phi, Formula::forall_so(*v, body))),
                        Schema::A5,
                    );
                    b.mp(a5, g)
                }
                Justification::R3(id) => {
                    self.template(id);
                    let conclusion = self.done[id].conclusion().expect("checked template");
                    let r = b.push(conclusion, Justification::R3(id.clone()));
                    b.export(r)
                }
            };
            map.push(at);
        }
        map
    }

    /// `φ ∧ χ → [V := θ_n](σ)` from `χ → [V := θ_n](σ)`.
    fn template(&mut self, id: &str) {
        if self.done.contains_key(id) {
            return;
        }
        let t = self.templates.iter().find(|t| t.id == id).expect("checked template");
        let mut b = Builder::new();
        let map = self.lines(&mut b, &t.lines);
        b.import(*map.last().expect("nonempty template"));
        self.done.insert(
            t.id.clone(),
            OmegaTemplate {
                id: t.id.clone(),
                var: t.var,
                lines: b.lines,
            },
        );
    }
}

/// Turns a proof from `Σ ∪ {φ}` into a proof of `φ → ψ` from `Σ`. Every
/// premise alpha-equivalent to `φ` is discharged.
pub fn apply_deduction(k: &Kernel<'_>, p: &Proof, phi: &Formula) -> Result<Proof, DeductionError> {
    if !phi.is_sentence() {
        return Err(DeductionError::NotSentence);
    }
    check_proof(k, p).map_err(DeductionError::Rejected)?;
    let target = phi.normalize();
    let mut sigma = Vec::new();
    let mut premise = BTreeMap::new();
    for (j, s) in p.sigma.iter().enumerate() {
        if alpha_eq(&s.normalize(), &target) {
            premise.insert(j, None);
        } else {
            premise.insert(j, Some(sigma.len()));
            sigma.push(s.clone());
        }
    }
    let mut d = Deduce {
        phi,
        premise,
        templates: &p.templates,
        done: BTreeMap::new(),
    };
    let ids: Vec<String> = p.templates.iter().map(|t| t.id.clone()).collect();
    ids.iter().for_each(|id| d.template(id));
    let mut b = Builder::new();
    d.lines(&mut b, &p.lines);
    Ok(Proof {
        sigma,
        lines: b.lines,
        templates: ids.iter().map(|id| d.done[id].clone()).collect(),
        goal: p.goal.as_ref().map(|g| imp(phi.clone(), g.clone())),
    })
}
