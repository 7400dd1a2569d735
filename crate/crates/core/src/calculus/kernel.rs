use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;

use super::{matches_schema, Justification, Line, OmegaTemplate, Proof, Reason, Rejection, Schema};
use crate::formulas::{alpha_eq, Formula, FormulaError, Signature, SoVar};
use crate::theta::{ThetaFamily, ThetaMember};

/// The checking context: the family fixing `K`, and its signature.
#[derive(Clone, Copy)]
pub struct Kernel<'a> {
    pub family: &'a dyn ThetaFamily,
}

impl<'a> Kernel<'a> {
    pub fn new(family: &'a dyn ThetaFamily) -> Self {
        Kernel { family }
    }

    pub fn signature(&self) -> &Signature {
        self.family.signature()
    }
}

enum Scope<'s> {
    Main(&'s BTreeMap<&'s str, (&'s OmegaTemplate, Result<(), Rejection>)>),
    Template(SoVar),
}

fn reject(template: &Option<String>, line: usize, reason: Reason) -> Rejection {
    Rejection {
        template: template.clone(),
        line,
        reason,
    }
}

fn check_sigma(k: &Kernel<'_>, sigma: &[Formula]) -> Result<(), Rejection> {
    for (i, s) in sigma.iter().enumerate() {
        k.signature()
            .check(s, false)
            .map_err(|e| reject(&None, 0, e.into()))?;
        if !s.is_sentence() {
            return Err(reject(&None, 0, Reason::PremiseNotSentence(i)));
        }
    }
    Ok(())
}

fn foreign_inst(f: &Formula, v: SoVar) -> bool {
    let mut bad = false;
    f.visit(&mut |g| {
        if let Formula::Inst(w, _) = g {
            bad |= *w != v;
        }
    });
    bad
}

fn references(j: &Justification) -> Vec<usize> {
    match j {
        Justification::Mp(a, b) => alloc::vec![*a, *b],
        Justification::GenFo(a, _) | Justification::GenSo(a, _) => alloc::vec![*a],
        _ => Vec::new(),
    }
}

fn check_lines(
    k: &Kernel<'_>,
    sigma: &[Formula],
    lines: &[Line],
    scope: &Scope<'_>,
    name: &Option<String>,
) -> Result<Vec<Formula>, Rejection> {
    let schematic = matches!(scope, Scope::Template(_));
    let mut norm: Vec<Formula> = Vec::with_capacity(lines.len());
    for (i, line) in lines.iter().enumerate() {
        let fail = |reason| reject(name, i, reason);
        k.signature()
            .check(&line.formula, schematic)
            .map_err(|e| fail(e.into()))?;
        if let Scope::Template(v) = scope {
            if foreign_inst(&line.formula, *v) {
                return Err(fail(Reason::ForeignSchematic(*v)));
            }
        }
        if let Some(r) = references(&line.just).into_iter().find(|r| *r >= i) {
            return Err(fail(Reason::ForwardReference(r)));
        }
        let g = line.formula.normalize();
        let ok = match &line.just {
            Justification::Premise(j) => {
                let s = sigma.get(*j).ok_or_else(|| fail(Reason::NoSuchPremise(*j)))?;
                if !alpha_eq(&s.normalize(), &g) {
                    return Err(fail(Reason::PremiseMismatch(*j)));
                }
                true
            }
            Justification::Axiom(s) => {
                if !matches_schema(k.family, &line.formula, *s) {
                    return Err(fail(Reason::NotAnInstance(*s)));
                }
                true
            }
            Justification::A6n => {
                let Scope::Template(v) = scope else {
                    return Err(fail(Reason::SchematicOutsideTemplate));
                };
                let shape = g.as_imp().and_then(|(l, r)| match (l, r) {
                    (Formula::ForallSo(w, a), Formula::Inst(u, b)) => Some(w == v && u == v && alpha_eq(a, b)),
                    _ => None,
                });
                if shape != Some(true) {
                    return Err(fail(Reason::NotAnInstance(Schema::A6(0))));
                }
                true
            }
            Justification::Mp(a, b) => norm[*a]
                .as_imp()
                .is_some_and(|(x, y)| alpha_eq(x, &norm[*b]) && alpha_eq(y, &g)),
            Justification::GenFo(a, x) => matches!(&g, Formula::Forall(y, body) if y == x && alpha_eq(body, &norm[*a])),
            Justification::GenSo(a, v) => matches!(&g, Formula::ForallSo(w, body) if w == v && alpha_eq(body, &norm[*a])),
            Justification::R3(id) => {
                let Scope::Main(templates) = scope else {
                    return Err(fail(Reason::NestedR3));
                };
                let (t, verdict) = templates
                    .get(id.as_str())
                    .ok_or_else(|| fail(Reason::UnknownTemplate(id.clone())))?;
                verdict.clone()?;
                let concl = t.conclusion().ok_or_else(|| fail(Reason::TemplateRejected(id.clone())))?;
                if !alpha_eq(&concl, &g) {
                    return Err(fail(Reason::R3Mismatch(id.clone())));
                }
                true
            }
        };
        if !ok {
            return Err(fail(match line.just {
                Justification::Mp(..) => Reason::MpMismatch,
                _ => Reason::GenMismatch,
            }));
        }
        norm.push(g);
    }
    Ok(norm)
}

/// Checks every line of `p`. Templates are checked independently of their
/// order in the table; a cited template must be accepted.
pub fn check_proof(k: &Kernel<'_>, p: &Proof) -> Result<(), Rejection> {
    check_sigma(k, &p.sigma)?;
    let mut table = BTreeMap::new();
    for t in &p.templates {
        let verdict = check_template(k, &p.sigma, t);
        if table.insert(t.id.as_str(), (t, verdict)).is_some() {
            return Err(reject(&Some(t.id.clone()), 0, Reason::DuplicateTemplate(t.id.clone())));
        }
    }
    if p.lines.is_empty() {
        return Err(reject(&None, 0, Reason::Empty));
    }
    let norm = check_lines(k, &p.sigma, &p.lines, &Scope::Main(&table), &None)?;
    if let Some(goal) = &p.goal {
        let last = norm.len() - 1;
        if !alpha_eq(&goal.normalize(), &norm[last]) {
            return Err(reject(&None, last, Reason::GoalMismatch));
        }
    }
    Ok(())
}

/// Checks a template uniformly in `n`: the schematic node is an opaque atom,
/// so every step that checks is valid for each member of the family.
pub fn check_template(k: &Kernel<'_>, sigma: &[Formula], t: &OmegaTemplate) -> Result<(), Rejection> {
    let name = Some(t.id.clone());
    if !k.family.supports_arity(t.var.arity) {
        return Err(reject(&name, 0, Reason::UnsupportedArity(t.var.arity)));
    }
    if t.lines.is_empty() {
        return Err(reject(&name, 0, Reason::Empty));
    }
    check_lines(k, sigma, &t.lines, &Scope::Template(t.var), &name)?;
    if t.target().is_none() {
        return Err(reject(&name, t.lines.len() - 1, Reason::BadTarget));
    }
    Ok(())
}

fn instantiate(f: &Formula, m: &ThetaMember) -> Result<Formula, FormulaError> {
    use Formula::*;
    let b = |g: &Formula| instantiate(g, m).map(alloc::boxed::Box::new);
    Ok(match f {
        Pred(..) | Eq(..) | Apply(..) | SoEq(..) => f.clone(),
        Not(a) => Not(b(a)?),
        And(x, y) => And(b(x)?, b(y)?),
        Or(x, y) => Or(b(x)?, b(y)?),
        Implies(x, y) => Implies(b(x)?, b(y)?),
        Iff(x, y) => Iff(b(x)?, b(y)?),
        Forall(v, a) => Forall(*v, b(a)?),
        Exists(v, a) => Exists(*v, b(a)?),
        ForallSo(v, a) => ForallSo(*v, b(a)?),
        ExistsSo(v, a) => ExistsSo(*v, b(a)?),
        Inst(v, a) => m.instantiate(&instantiate(a, m)?, *v)?,
    })
}

/// The concrete lines of `t` at `n`.
pub fn instantiate_template(k: &Kernel<'_>, t: &OmegaTemplate, n: usize) -> Result<Vec<Line>, Rejection> {
    let name = Some(t.id.clone());
    let m = k
        .family
        .member(t.var.arity, n)
        .ok_or_else(|| reject(&name, 0, Reason::UnsupportedArity(t.var.arity)))?;
    t.lines
        .iter()
        .enumerate()
        .map(|(i, l)| {
            let formula = instantiate(&l.formula, &m).map_err(|e| reject(&name, i, e.into()))?;
            let just = match &l.just {
                Justification::A6n => Justification::Axiom(Schema::A6(n)),
                j => j.clone(),
            };
            Ok(Line::new(formula, just))
        })
        .collect()
}

/// Instantiates `t` at `n = 0..=bound` and checks each instance as a
/// concrete derivation. Returns the number of instances checked.
pub fn spot_check_template(
    k: &Kernel<'_>,
    sigma: &[Formula],
    t: &OmegaTemplate,
    bound: usize,
) -> Result<usize, Rejection> {
    let empty = BTreeMap::new();
    for n in 0..=bound {
        let wrap = |inner: Rejection| Rejection {
            template: Some(t.id.clone()),
            line: inner.line,
            reason: Reason::Instance {
                n,
                inner: alloc::boxed::Box::new(inner),
            },
        };
        let lines = instantiate_template(k, t, n).map_err(wrap)?;
        check_lines(k, sigma, &lines, &Scope::Main(&empty), &None).map_err(wrap)?;
    }
    Ok(bound + 1)
}
