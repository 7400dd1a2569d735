use alloc::vec::Vec;

use super::{FoVar, Formula, SoVar, Term};

/// Binder stacks for the two sides. A variable occurrence is matched by the
/// depth of its innermost binder, or by name when free on both sides.
#[derive(Default)]
struct Scope {
    fo: Vec<(FoVar, FoVar)>,
    so: Vec<(SoVar, SoVar)>,
}

impl Scope {
    fn fo_match(&self, a: FoVar, b: FoVar) -> bool {
        let left = self.fo.iter().rposition(|(x, _)| *x == a);
        let right = self.fo.iter().rposition(|(_, y)| *y == b);
        match (left, right) {
            (None, None) => a == b,
            (Some(i), Some(j)) => i == j,
            _ => false,
        }
    }

    fn so_match(&self, a: SoVar, b: SoVar) -> bool {
        if a.arity != b.arity {
            return false;
        }
        let left = self.so.iter().rposition(|(x, _)| *x == a);
        let right = self.so.iter().rposition(|(_, y)| *y == b);
        match (left, right) {
            (None, None) => a == b,
            (Some(i), Some(j)) => i == j,
            _ => false,
        }
    }
}

fn term_eq(s: &Scope, a: &Term, b: &Term) -> bool {
    match (a, b) {
        (Term::Var(x), Term::Var(y)) => s.fo_match(*x, *y),
        (Term::Const(x), Term::Const(y)) => x == y,
        (Term::App(f, xs), Term::App(g, ys)) => {
            f == g && xs.len() == ys.len() && xs.iter().zip(ys).all(|(x, y)| term_eq(s, x, y))
        }
        _ => false,
    }
}

fn terms_eq(s: &Scope, a: &[Term], b: &[Term]) -> bool {
    a.len() == b.len() && a.iter().zip(b).all(|(x, y)| term_eq(s, x, y))
}

fn go(s: &mut Scope, a: &Formula, b: &Formula) -> bool {
    use Formula::*;
    match (a, b) {
        (Pred(p, xs), Pred(q, ys)) => p == q && terms_eq(s, xs, ys),
        (Eq(a1, a2), Eq(b1, b2)) => term_eq(s, a1, b1) && term_eq(s, a2, b2),
        (Apply(v, xs), Apply(w, ys)) => s.so_match(*v, *w) && terms_eq(s, xs, ys),
        (SoEq(a1, a2), SoEq(b1, b2)) => s.so_match(*a1, *b1) && s.so_match(*a2, *b2),
        (Not(x), Not(y)) => go(s, x, y),
        (And(x1, x2), And(y1, y2))
        | (Or(x1, x2), Or(y1, y2))
        | (Implies(x1, x2), Implies(y1, y2))
        | (Iff(x1, x2), Iff(y1, y2)) => go(s, x1, y1) && go(s, x2, y2),
        (Forall(v, x), Forall(w, y)) | (Exists(v, x), Exists(w, y)) => {
            s.fo.push((*v, *w));
            let r = go(s, x, y);
            s.fo.pop();
            r
        }
        (ForallSo(v, x), ForallSo(w, y))
        | (ExistsSo(v, x), ExistsSo(w, y))
        | (Inst(v, x), Inst(w, y)) => {
            if v.arity != w.arity {
                return false;
            }
            s.so.push((*v, *w));
            let r = go(s, x, y);
            s.so.pop();
            r
        }
        _ => false,
    }
}

/// Equality up to renaming of bound variables of both sorts. Sugar and
/// primitive forms are not identified; normalize first when that is wanted.
pub fn alpha_eq(a: &Formula, b: &Formula) -> bool {
    go(&mut Scope::default(), a, b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formulas::{parse, Signature};

    fn p(s: &str) -> Formula {
        parse(s, &"P0/1,P1/2".parse::<Signature>().unwrap()).unwrap()
    }

    #[test]
    fn renamed_binders_are_equal() {
        assert!(alpha_eq(&p("∀x1 P1(x1, x0)"), &p("∀x5 P1(x5, x0)")));
        assert!(alpha_eq(&p("∀X1 X1(x0)"), &p("∀X4 X4(x0)")));
    }

    #[test]
    fn free_variables_must_agree() {
        assert!(!alpha_eq(&p("∀x1 P1(x1, x0)"), &p("∀x0 P1(x0, x0)")));
        assert!(!alpha_eq(&p("P0(x0)"), &p("P0(x1)")));
    }

    #[test]
    fn shadowing_is_respected() {
        assert!(alpha_eq(&p("∀x0 ∀x0 P0(x0)"), &p("∀x1 ∀x2 P0(x2)")));
        assert!(!alpha_eq(&p("∀x0 ∀x0 P0(x0)"), &p("∀x1 ∀x2 P0(x1)")));
    }

    #[test]
    fn arities_distinguish_relation_variables() {
        assert!(!alpha_eq(&p("∀X0 X0 = X0"), &p("∀X0^2 X0^2 = X0^2")));
    }
}
