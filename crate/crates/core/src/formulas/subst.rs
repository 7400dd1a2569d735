use alloc::boxed::Box;
use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use super::{FoVar, Formula, FormulaError, SoVar, Term};

fn subst_term(t: &Term, map: &BTreeMap<FoVar, Term>) -> Term {
    match t {
        Term::Var(v) => map.get(v).cloned().unwrap_or_else(|| t.clone()),
        Term::Const(_) => t.clone(),
        Term::App(f, args) => Term::App(*f, args.iter().map(|a| subst_term(a, map)).collect()),
    }
}

fn subst_terms(ts: &[Term], map: &BTreeMap<FoVar, Term>) -> Vec<Term> {
    ts.iter().map(|t| subst_term(t, map)).collect()
}

fn fo_go(f: &Formula, map: &BTreeMap<FoVar, Term>, fresh: &mut u32) -> Formula {
    use Formula::*;
    if map.is_empty() {
        return f.clone();
    }
    match f {
        Pred(p, ts) => Pred(*p, subst_terms(ts, map)),
        Eq(a, b) => Eq(subst_term(a, map), subst_term(b, map)),
        Apply(v, ts) => Apply(*v, subst_terms(ts, map)),
        SoEq(..) => f.clone(),
        Not(a) => Formula::not(fo_go(a, map, fresh)),
        And(a, b) => Formula::and(fo_go(a, map, fresh), fo_go(b, map, fresh)),
        Or(a, b) => Formula::or(fo_go(a, map, fresh), fo_go(b, map, fresh)),
        Implies(a, b) => Formula::implies(fo_go(a, map, fresh), fo_go(b, map, fresh)),
        Iff(a, b) => Formula::iff(fo_go(a, map, fresh), fo_go(b, map, fresh)),
        Forall(v, body) | Exists(v, body) => {
            let free = body.free_fo();
            let mut inner: BTreeMap<FoVar, Term> = map
                .iter()
                .filter(|(y, _)| **y != *v && free.contains(y))
                .map(|(y, t)| (*y, t.clone()))
                .collect();
            let capture = inner.values().any(|t| t.mentions(*v));
            let binder = if capture {
                let w = FoVar(*fresh);
                *fresh += 1;
                inner.insert(*v, Term::Var(w));
                w
            } else {
                *v
            };
            let body = fo_go(body, &inner, fresh);
            match f {
                Forall(..) => Formula::forall(binder, body),
                _ => Formula::exists(binder, body),
            }
        }
        ForallSo(v, a) => Formula::forall_so(*v, fo_go(a, map, fresh)),
        ExistsSo(v, a) => Formula::exists_so(*v, fo_go(a, map, fresh)),
        Inst(v, a) => Inst(*v, Box::new(fo_go(a, map, fresh))),
    }
}

fn first_fresh_fo(f: &Formula, pairs: &[(FoVar, Term)]) -> u32 {
    let mut m = f.max_fo_index();
    for (x, t) in pairs {
        m = m.max(Some(x.0)).max(t.max_var());
    }
    m.map_or(0, |m| m + 1)
}

/// Capture-avoiding `f[x := t]`. Bound variables that would capture a
/// variable of `t` are renamed to fresh indices above every index in sight.
pub fn substitute_fo(f: &Formula, x: FoVar, t: &Term) -> Formula {
    substitute_fo_many(f, &[(x, t.clone())])
}

/// Simultaneous capture-avoiding substitution.
pub fn substitute_fo_many(f: &Formula, pairs: &[(FoVar, Term)]) -> Formula {
    let mut fresh = first_fresh_fo(f, pairs);
    let map: BTreeMap<FoVar, Term> = pairs.iter().cloned().collect();
    fo_go(f, &map, &mut fresh)
}

/// Result of replacing one relation variable by another.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SoSubstitution {
    pub formula: Formula,
    /// Whether the replacement variable was free for the replaced one, i.e.
    /// no binder had to be renamed.
    pub free_for: bool,
}

struct SoCtx {
    from: SoVar,
    to: SoVar,
    fresh: u32,
    free_for: bool,
}

fn so_rename(v: SoVar, from: SoVar, to: SoVar) -> SoVar {
    if v == from {
        to
    } else {
        v
    }
}

fn so_go(f: &Formula, cx: &mut SoCtx) -> Formula {
    use Formula::*;
    match f {
        Pred(..) | Eq(..) => f.clone(),
        Apply(v, ts) => Apply(so_rename(*v, cx.from, cx.to), ts.clone()),
        SoEq(a, b) => SoEq(so_rename(*a, cx.from, cx.to), so_rename(*b, cx.from, cx.to)),
        Not(a) => Formula::not(so_go(a, cx)),
        And(a, b) => Formula::and(so_go(a, cx), so_go(b, cx)),
        Or(a, b) => Formula::or(so_go(a, cx), so_go(b, cx)),
        Implies(a, b) => Formula::implies(so_go(a, cx), so_go(b, cx)),
        Iff(a, b) => Formula::iff(so_go(a, cx), so_go(b, cx)),
        Forall(v, a) => Formula::forall(*v, so_go(a, cx)),
        Exists(v, a) => Formula::exists(*v, so_go(a, cx)),
        ForallSo(w, body) | ExistsSo(w, body) | Inst(w, body) => {
            let (binder, body) = if *w == cx.from || !body.free_so().contains(&cx.from) {
                (*w, body.as_ref().clone())
            } else if *w == cx.to {
                cx.free_for = false;
                let renamed = SoVar::new(cx.fresh, w.arity);
                cx.fresh += 1;
                let mut inner = SoCtx {
                    from: *w,
                    to: renamed,
                    fresh: cx.fresh,
                    free_for: true,
                };
                let b = so_go(body, &mut inner);
                cx.fresh = inner.fresh;
                (renamed, so_go(&b, cx))
            } else {
                (*w, so_go(body, cx))
            };
            let body = Box::new(body);
            match f {
                ForallSo(..) => ForallSo(binder, body),
                ExistsSo(..) => ExistsSo(binder, body),
                _ => Inst(binder, body),
            }
        }
    }
}

/// Replaces the free occurrences of `from` by `to`, renaming binders of `to`
/// where they would capture.
pub fn substitute_so(f: &Formula, from: SoVar, to: SoVar) -> Result<SoSubstitution, FormulaError> {
    if from.arity != to.arity {
        return Err(FormulaError::SoArityMismatch(from, to));
    }
    let fresh = f
        .max_so_index()
        .max(Some(from.index))
        .max(Some(to.index))
        .map_or(0, |m| m + 1);
    let mut cx = SoCtx {
        from,
        to,
        fresh,
        free_for: true,
    };
    let formula = so_go(f, &mut cx);
    Ok(SoSubstitution {
        formula,
        free_for: cx.free_for,
    })
}

struct A6Ctx<'a> {
    v: SoVar,
    theta: &'a Formula,
    slots: &'a [FoVar],
    fresh: u32,
}

impl A6Ctx<'_> {
    fn instance(&mut self, args: &[Term]) -> Formula {
        let pairs: Vec<(FoVar, Term)> = self.slots.iter().copied().zip(args.iter().cloned()).collect();
        let mut fresh = first_fresh_fo(self.theta, &pairs).max(self.fresh);
        let map = pairs.into_iter().collect();
        let out = fo_go(self.theta, &map, &mut fresh);
        self.fresh = fresh;
        out
    }

    fn fresh_tuple(&mut self) -> Vec<FoVar> {
        let xs = (0..self.v.arity).map(|i| FoVar(self.fresh + i)).collect();
        self.fresh += self.v.arity;
        xs
    }

    fn go(&mut self, f: &Formula) -> Formula {
        use Formula::*;
        match f {
            Pred(..) | Eq(..) => f.clone(),
            Apply(w, ts) if *w == self.v => self.instance(ts),
            Apply(..) => f.clone(),
            SoEq(a, b) if *a == self.v || *b == self.v => {
                let xs = self.fresh_tuple();
                let args: Vec<Term> = xs.iter().map(|x| Term::Var(*x)).collect();
                let side = |w: &SoVar, cx: &mut Self| {
                    if *w == cx.v {
                        cx.instance(&args)
                    } else {
                        Apply(*w, args.clone())
                    }
                };
                let l = side(a, self);
                let r = side(b, self);
                Formula::forall_many(&xs, Formula::iff(l, r))
            }
            SoEq(..) => f.clone(),
            Not(a) => Formula::not(self.go(a)),
            And(a, b) => Formula::and(self.go(a), self.go(b)),
            Or(a, b) => Formula::or(self.go(a), self.go(b)),
            Implies(a, b) => Formula::implies(self.go(a), self.go(b)),
            Iff(a, b) => Formula::iff(self.go(a), self.go(b)),
            Forall(x, a) => Formula::forall(*x, self.go(a)),
            Exists(x, a) => Formula::exists(*x, self.go(a)),
            ForallSo(w, _) | ExistsSo(w, _) | Inst(w, _) if *w == self.v => f.clone(),
            ForallSo(w, a) => Formula::forall_so(*w, self.go(a)),
            ExistsSo(w, a) => Formula::exists_so(*w, self.go(a)),
            Inst(w, a) => Inst(*w, Box::new(self.go(a))),
        }
    }
}

/// The instantiation `φ^V_θ`: every free `V(t̄)` in `f` becomes
/// `θ(t̄, ȳ)`, with the parameters `ȳ` renamed fresh and universally
/// quantified in front. A free identity `V = W` becomes
/// `∀x̄ (θ(x̄, ȳ) ↔ W(x̄))`.
///
/// `slots` are the defined-slot variables of `theta` (their number must be
/// the arity of `V`) and `params` its parameter variables.
pub fn a6_instantiate(
    f: &Formula,
    v: SoVar,
    theta: &Formula,
    slots: &[FoVar],
    params: &[FoVar],
) -> Result<Formula, FormulaError> {
    if slots.len() != v.arity as usize {
        return Err(FormulaError::ArityMismatch {
            symbol: alloc::format!("{v}"),
            expected: v.arity as usize,
            found: slots.len(),
        });
    }
    let base = f
        .max_fo_index()
        .max(theta.max_fo_index())
        .max(slots.iter().chain(params).map(|x| x.0).max())
        .map_or(0, |m| m + 1);
    let fresh_params: Vec<FoVar> = (0..params.len() as u32).map(|i| FoVar(base + i)).collect();
    let renamed = substitute_fo_many(
        theta,
        &params
            .iter()
            .zip(&fresh_params)
            .map(|(y, z)| (*y, Term::Var(*z)))
            .collect::<Vec<_>>(),
    );
    let mut cx = A6Ctx {
        v,
        theta: &renamed,
        slots,
        fresh: base + params.len() as u32,
    };
    let body = cx.go(f);
    Ok(Formula::forall_many(&fresh_params, body))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formulas::{alpha_eq, parse, Signature};

    fn sig() -> Signature {
        "P0/1,P1/2".parse().unwrap()
    }

    fn p(s: &str) -> Formula {
        parse(s, &sig()).unwrap()
    }

    #[test]
    fn plain_substitution() {
        assert_eq!(substitute_fo(&p("P0(x0)"), FoVar(0), &Term::var(1)), p("P0(x1)"));
    }

    #[test]
    fn capture_is_avoided() {
        let out = substitute_fo(&p("∀x1 x0 = x1"), FoVar(0), &Term::var(1));
        assert_eq!(out, p("∀x2 x1 = x2"));
    }

    #[test]
    fn bound_target_is_untouched() {
        let f = p("∀x0 P0(x0)");
        assert_eq!(substitute_fo(&f, FoVar(0), &Term::var(5)), f);
    }

    #[test]
    fn simultaneous_swap() {
        let out = substitute_fo_many(
            &p("P1(x0, x1)"),
            &[(FoVar(0), Term::var(1)), (FoVar(1), Term::var(0))],
        );
        assert_eq!(out, p("P1(x1, x0)"));
    }

    #[test]
    fn relation_variable_replacement() {
        let out = substitute_so(&p("X0(x0)"), SoVar::new(0, 1), SoVar::new(1, 1)).unwrap();
        assert_eq!(out.formula, p("X1(x0)"));
        assert!(out.free_for);

        let out = substitute_so(&p("∀X1 X0 = X1"), SoVar::new(0, 1), SoVar::new(1, 1)).unwrap();
        assert_eq!(out.formula, p("∀X2 X1 = X2"));
        assert!(!out.free_for);

        assert!(substitute_so(&p("X0(x0)"), SoVar::new(0, 1), SoVar::new(1, 2)).is_err());
    }

    #[test]
    fn a6_with_parameter() {
        let f = p("∀x0 X0(x0)");
        let theta = p("x0 = x1");
        let out = a6_instantiate(&f, SoVar::new(0, 1), &theta, &[FoVar(0)], &[FoVar(1)]).unwrap();
        assert!(alpha_eq(&out, &p("∀y0 ∀x0 x0 = y0")), "{out}");
        assert!(out.is_sentence());
    }

    #[test]
    fn a6_without_parameters() {
        let f = p("X0(x0) → X0(x1)");
        let theta = p("P0(x0)");
        let out = a6_instantiate(&f, SoVar::new(0, 1), &theta, &[FoVar(0)], &[]).unwrap();
        assert_eq!(out, p("P0(x0) → P0(x1)"));
    }

    #[test]
    fn a6_skips_bound_occurrences() {
        let f = p("∀X0 (X0(x0) ∧ P0(x0))");
        let theta = p("x0 = x1");
        let out = a6_instantiate(&f, SoVar::new(0, 1), &theta, &[FoVar(0)], &[FoVar(1)]).unwrap();
        assert!(alpha_eq(&out, &p("∀y ∀X0 (X0(x0) ∧ P0(x0))")));
    }

    #[test]
    fn a6_theta_binders_do_not_capture() {
        let f = p("X0(x1)");
        let theta = p("∃x1 P1(x0, x1)");
        let out = a6_instantiate(&f, SoVar::new(0, 1), &theta, &[FoVar(0)], &[]).unwrap();
        assert!(alpha_eq(&out, &p("∃x5 P1(x1, x5)")), "{out}");
    }

    #[test]
    fn a6_identity_atoms() {
        let f = p("X0 = X1");
        let theta = p("P0(x0)");
        let out = a6_instantiate(&f, SoVar::new(0, 1), &theta, &[FoVar(0)], &[]).unwrap();
        assert!(alpha_eq(&out, &p("∀x7 (P0(x7) ↔ X1(x7))")), "{out}");
    }

    #[test]
    fn a6_arity_mismatch() {
        let theta = p("P0(x0)");
        assert!(a6_instantiate(&p("X0^2(x0, x1)"), SoVar::new(0, 2), &theta, &[FoVar(0)], &[]).is_err());
    }
}
