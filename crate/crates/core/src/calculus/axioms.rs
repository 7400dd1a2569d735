use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use super::{Schema, INDEX_SEARCH};
use crate::formulas::{alpha_eq, substitute_fo, substitute_fo_many, substitute_so, FoVar, Formula, SoVar, Term};
use crate::theta::ThetaFamily;

/// The first schema `f` is an instance of. Indices of A1 and A6 are searched
/// among the first [`INDEX_SEARCH`] members.
pub fn recognize_axiom(fam: &dyn ThetaFamily, f: &Formula) -> Option<Schema> {
    let g = f.normalize();
    let identity = fam.signature().identity;
    if let Some(s) = Schema::FIRST_ORDER.iter().find(|s| first_order(&g, **s, identity)) {
        return Some(*s);
    }
    if let Some((v, xs, ys, theta)) = a1_parts(f).or_else(|| a1_parts(&g)) {
        if a1_member(fam, v, &xs, &ys, &theta) {
            let index = (0..INDEX_SEARCH).find(|n| a1_index(fam, v, &xs, &ys, &theta, *n));
            return Some(Schema::A1(index));
        }
    }
    for s in [Schema::A2, Schema::A3, Schema::A4, Schema::A5] {
        if matches_schema(fam, f, s) {
            return Some(s);
        }
    }
    (0..INDEX_SEARCH).map(Schema::A6).find(|s| matches_schema(fam, f, *s))
}

/// Whether `f` is an instance of `schema`.
pub fn matches_schema(fam: &dyn ThetaFamily, f: &Formula, schema: Schema) -> bool {
    let g = f.normalize();
    match schema {
        Schema::A1(index) => [a1_parts(f), a1_parts(&g)].into_iter().flatten().any(|(v, xs, ys, theta)| {
            a1_member(fam, v, &xs, &ys, &theta)
                && index.is_none_or(|n| a1_index(fam, v, &xs, &ys, &theta, n))
        }),
        Schema::A2 => a2(&g),
        Schema::A3 => a3(&g),
        Schema::A4 => a4(&g),
        Schema::A5 => a5(&g),
        Schema::A6(n) => a6(fam, &g, n),
        s => first_order(&g, s, fam.signature().identity),
    }
}

fn imp(f: &Formula) -> Option<(&Formula, &Formula)> {
    f.as_imp()
}

fn first_order(g: &Formula, s: Schema, identity: bool) -> bool {
    let r = match s {
        Schema::Pl1 => pl1(g),
        Schema::Pl2 => pl2(g),
        Schema::Pl3 => pl3(g),
        Schema::And1 | Schema::And2 => and12(g, s == Schema::And1),
        Schema::And3 => and3(g),
        Schema::Q1 => q1(g),
        Schema::Q2 => q2(g),
        Schema::Eq1 => Some(identity && matches!(g, Formula::Eq(a, b) if a == b)),
        Schema::Eq2 if identity => eq2(g),
        _ => None,
    };
    r == Some(true)
}

fn pl1(g: &Formula) -> Option<bool> {
    let (a, r) = imp(g)?;
    let (_, a2) = imp(r)?;
    Some(alpha_eq(a, a2))
}

fn pl2(g: &Formula) -> Option<bool> {
    let (l, r) = imp(g)?;
    let (a, bc) = imp(l)?;
    let (b, c) = imp(bc)?;
    let (ab, ac) = imp(r)?;
    let (a1, b1) = imp(ab)?;
    let (a2, c2) = imp(ac)?;
    Some(alpha_eq(a, a1) && alpha_eq(a, a2) && alpha_eq(b, b1) && alpha_eq(c, c2))
}

fn pl3(g: &Formula) -> Option<bool> {
    let (l, r) = imp(g)?;
    let (nb, na) = imp(l)?;
    let (Formula::Not(b), Formula::Not(a)) = (nb, na) else {
        return None;
    };
    let (a2, b2) = imp(r)?;
    Some(alpha_eq(a, a2) && alpha_eq(b, b2))
}

fn and12(g: &Formula, left: bool) -> Option<bool> {
    let (l, r) = imp(g)?;
    let Formula::And(a, b) = l else { return None };
    Some(alpha_eq(if left { a } else { b }, r))
}

fn and3(g: &Formula) -> Option<bool> {
    let (a, r) = imp(g)?;
    let (b, c) = imp(r)?;
    let Formula::And(a2, b2) = c else { return None };
    Some(alpha_eq(a, a2) && alpha_eq(b, b2))
}

fn subterms(t: &Term, out: &mut Vec<Term>) {
    if !out.contains(t) {
        out.push(t.clone());
    }
    if let Term::App(_, args) = t {
        args.iter().for_each(|a| subterms(a, out));
    }
}

fn formula_terms(f: &Formula, out: &mut Vec<Term>) {
    f.visit(&mut |g| match g {
        Formula::Pred(_, ts) | Formula::Apply(_, ts) => ts.iter().for_each(|t| subterms(t, out)),
        Formula::Eq(a, b) => {
            subterms(a, out);
            subterms(b, out);
        }
        _ => {}
    });
}

fn q1(g: &Formula) -> Option<bool> {
    let (l, b) = imp(g)?;
    let Formula::Forall(x, a) = l else { return None };
    let mut candidates = alloc::vec![Term::Var(*x)];
    formula_terms(b, &mut candidates);
    Some(candidates.iter().any(|t| alpha_eq(&substitute_fo(a, *x, t), b)))
}

fn q2(g: &Formula) -> Option<bool> {
    let (l, r) = imp(g)?;
    let Formula::Forall(x, ab) = l else { return None };
    let (a, b) = imp(ab)?;
    let (a2, fb) = imp(r)?;
    let Formula::Forall(x2, b2) = fb else { return None };
    Some(x == x2 && alpha_eq(a, a2) && alpha_eq(b, b2) && !a.free_fo().contains(x))
}

fn eq2(g: &Formula) -> Option<bool> {
    let (l, r) = imp(g)?;
    let Formula::Eq(s, t) = l else { return None };
    let (a, a2) = imp(r)?;
    let mut vars = s.vars();
    vars.extend(t.vars());
    Some(replaces_fo(a, a2, s, t, &vars, &mut Vec::new()))
}

/// `b` is `a` with some free occurrences of `s` replaced by `t`, none of them
/// under a binder of a variable of `s` or `t`.
fn replaces_fo(a: &Formula, b: &Formula, s: &Term, t: &Term, vars: &BTreeSet<FoVar>, bound: &mut Vec<FoVar>) -> bool {
    use Formula::*;
    let exposed = bound.iter().any(|v| vars.contains(v));
    let terms = |xs: &[Term], ys: &[Term]| {
        xs.len() == ys.len() && xs.iter().zip(ys).all(|(x, y)| replaces_term(x, y, s, t, exposed))
    };
    match (a, b) {
        (Pred(p, xs), Pred(q, ys)) => p == q && terms(xs, ys),
        (Apply(v, xs), Apply(w, ys)) => v == w && terms(xs, ys),
        (Eq(x1, x2), Eq(y1, y2)) => terms(&[x1.clone(), x2.clone()], &[y1.clone(), y2.clone()]),
        (SoEq(..), SoEq(..)) => a == b,
        (Not(x), Not(y)) => replaces_fo(x, y, s, t, vars, bound),
        (And(x1, x2), And(y1, y2)) => {
            replaces_fo(x1, y1, s, t, vars, bound) && replaces_fo(x2, y2, s, t, vars, bound)
        }
        (Forall(v, x), Forall(w, y)) if v == w => {
            bound.push(*v);
            let r = replaces_fo(x, y, s, t, vars, bound);
            bound.pop();
            r
        }
        (ForallSo(v, x), ForallSo(w, y)) | (Inst(v, x), Inst(w, y)) if v == w => {
            replaces_fo(x, y, s, t, vars, bound)
        }
        _ => false,
    }
}

fn replaces_term(x: &Term, y: &Term, s: &Term, t: &Term, exposed: bool) -> bool {
    if x == y || (!exposed && x == s && y == t) {
        return true;
    }
    match (x, y) {
        (Term::App(f, xs), Term::App(g, ys)) => {
            f == g
                && xs.len() == ys.len()
                && xs.iter().zip(ys).all(|(a, b)| replaces_term(a, b, s, t, exposed))
        }
        _ => false,
    }
}

/// Like [`replaces_fo`] for relation variables.
fn replaces_so(a: &Formula, b: &Formula, m: SoVar, n: SoVar, bound: &mut Vec<SoVar>) -> bool {
    use Formula::*;
    let exposed = bound.contains(&m) || bound.contains(&n);
    let var = |v: &SoVar, w: &SoVar| v == w || (!exposed && *v == m && *w == n);
    match (a, b) {
        (Apply(v, xs), Apply(w, ys)) => var(v, w) && xs == ys,
        (SoEq(v1, v2), SoEq(w1, w2)) => var(v1, w1) && var(v2, w2),
        (Pred(..), Pred(..)) | (Eq(..), Eq(..)) => a == b,
        (Not(x), Not(y)) => replaces_so(x, y, m, n, bound),
        (And(x1, x2), And(y1, y2)) => replaces_so(x1, y1, m, n, bound) && replaces_so(x2, y2, m, n, bound),
        (Forall(v, x), Forall(w, y)) if v == w => replaces_so(x, y, m, n, bound),
        (ForallSo(v, x), ForallSo(w, y)) | (Inst(v, x), Inst(w, y)) if v == w => {
            bound.push(*v);
            let r = replaces_so(x, y, m, n, bound);
            bound.pop();
            r
        }
        _ => false,
    }
}

/// Peels `k` universal quantifiers.
fn peel(mut f: &Formula, k: usize) -> Option<(Vec<FoVar>, &Formula)> {
    let mut xs = Vec::new();
    for _ in 0..k {
        let Formula::Forall(x, body) = f else { return None };
        xs.push(*x);
        f = body;
    }
    Some((xs, f))
}

fn distinct(xs: &[FoVar]) -> bool {
    xs.iter().collect::<BTreeSet<_>>().len() == xs.len()
}

fn two_so(g: &Formula) -> Option<(SoVar, SoVar, &Formula)> {
    let Formula::ForallSo(m, inner) = g else { return None };
    let Formula::ForallSo(n, body) = inner.as_ref() else { return None };
    (m != n && m.arity == n.arity).then_some((*m, *n, body.as_ref()))
}

fn apply_vars(v: SoVar, xs: &[FoVar]) -> Formula {
    Formula::Apply(v, xs.iter().map(|x| Term::Var(*x)).collect())
}

fn a2(g: &Formula) -> bool {
    (|| {
        let (m, n, body) = two_so(g)?;
        let (ext, eq) = body.as_iff()?;
        if *eq != Formula::SoEq(m, n) {
            return None;
        }
        let (xs, inner) = peel(ext, m.arity as usize)?;
        let (l, r) = inner.as_iff()?;
        Some(distinct(&xs) && *l == apply_vars(m, &xs) && *r == apply_vars(n, &xs))
    })()
    .unwrap_or(false)
}

fn a3(g: &Formula) -> bool {
    (|| {
        let (m, n, body) = two_so(g)?;
        let (eq, r) = imp(body)?;
        if *eq != Formula::SoEq(m, n) {
            return None;
        }
        let (a, b) = imp(r)?;
        Some(replaces_so(a, b, m, n, &mut Vec::new()))
    })()
    .unwrap_or(false)
}

fn a4(g: &Formula) -> bool {
    (|| {
        let (l, b) = imp(g)?;
        let Formula::ForallSo(m, a) = l else { return None };
        let mut candidates = BTreeSet::from([*m]);
        b.visit(&mut |h| match h {
            Formula::Apply(v, _) | Formula::ForallSo(v, _) | Formula::Inst(v, _) => {
                candidates.insert(*v);
            }
            Formula::SoEq(v, w) => {
                candidates.insert(*v);
                candidates.insert(*w);
            }
            _ => {}
        });
        Some(candidates.into_iter().filter(|n| n.arity == m.arity).any(|n| {
            substitute_so(a, *m, n).is_ok_and(|s| s.free_for && alpha_eq(&s.formula, b))
        }))
    })()
    .unwrap_or(false)
}

fn a5(g: &Formula) -> bool {
    (|| {
        let (l, r) = imp(g)?;
        let Formula::ForallSo(v, ab) = l else { return None };
        let (a, b) = imp(ab)?;
        let (a2, fb) = imp(r)?;
        let Formula::ForallSo(v2, b2) = fb else { return None };
        Some(v == v2 && alpha_eq(a, a2) && alpha_eq(b, b2) && !a.free_so().contains(v))
    })()
    .unwrap_or(false)
}

fn a6(fam: &dyn ThetaFamily, g: &Formula, n: usize) -> bool {
    (|| {
        let (l, b) = imp(g)?;
        let Formula::ForallSo(v, a) = l else { return None };
        let m = fam.member(v.arity, n)?;
        let inst = m.instantiate(a, *v).ok()?.normalize();
        Some(alpha_eq(&inst, b))
    })()
    .unwrap_or(false)
}

/// `∀ȳ ∃V ∀x̄ (V(x̄) ↔ θ)`, in sugared or primitive form.
fn a1_parts(f: &Formula) -> Option<(SoVar, Vec<FoVar>, Vec<FoVar>, Formula)> {
    let mut ys = Vec::new();
    let mut cur = f;
    loop {
        let ex = match cur {
            Formula::ExistsSo(v, body) => Some((*v, body.as_ref())),
            _ => cur.as_exists_so(),
        };
        if let Some((v, body)) = ex {
            let (xs, inner) = peel(body, v.arity as usize)?;
            let (l, theta) = match inner {
                Formula::Iff(l, r) => (l.as_ref(), r.as_ref()),
                _ => inner.as_iff()?,
            };
            if *l != apply_vars(v, &xs) || !theta.is_first_order() {
                return None;
            }
            let mut all = xs.clone();
            all.extend(&ys);
            return distinct(&all).then(|| (v, xs, ys, theta.clone()));
        }
        let Formula::Forall(y, body) = cur else { return None };
        ys.push(*y);
        cur = body;
    }
}

fn a1_member(fam: &dyn ThetaFamily, v: SoVar, xs: &[FoVar], ys: &[FoVar], theta: &Formula) -> bool {
    fam.supports_arity(v.arity) && fam.contains(theta, xs, ys)
}

fn a1_index(fam: &dyn ThetaFamily, v: SoVar, xs: &[FoVar], ys: &[FoVar], theta: &Formula, n: usize) -> bool {
    let Some(m) = fam.member(v.arity, n) else { return false };
    if m.params.len() != ys.len() {
        return false;
    }
    let renaming: Vec<(FoVar, Term)> = m
        .slots
        .iter()
        .zip(xs)
        .chain(m.params.iter().zip(ys))
        .map(|(a, b)| (*a, Term::Var(*b)))
        .collect();
    alpha_eq(&substitute_fo_many(&m.formula, &renaming).normalize(), &theta.normalize())
}
