//! Quantifier-prefix classes of first-order formulas.

use alloc::vec::Vec;
use core::fmt;

use crate::formulas::{substitute_fo, FoVar, Formula, Term};

/// The least `n` with the formula equivalent (by prenex transformation) to an
/// `∃_n` formula, and likewise for `∀_n`. A quantifier-free formula is
/// `(0, 0)`; a formula in `∃_n` is also in `∀_{n+1}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PrefixClass {
    pub exists: usize,
    pub forall: usize,
}

impl PrefixClass {
    pub fn is_exists_n(&self, n: usize) -> bool {
        self.exists <= n
    }

    pub fn is_forall_n(&self, n: usize) -> bool {
        self.forall <= n
    }
}

impl fmt::Display for PrefixClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use core::cmp::Ordering::*;
        match self.exists.cmp(&self.forall) {
            Less => write!(f, "∃{}", self.exists),
            Greater => write!(f, "∀{}", self.forall),
            Equal => write!(f, "∃{}/∀{}", self.exists, self.forall),
        }
    }
}

fn go(f: &Formula) -> PrefixClass {
    use Formula::*;
    match f {
        Pred(..) | Eq(..) | Apply(..) | SoEq(..) => PrefixClass { exists: 0, forall: 0 },
        Not(a) => {
            let c = go(a);
            PrefixClass {
                exists: c.forall,
                forall: c.exists,
            }
        }
        And(a, b) => {
            let (x, y) = (go(a), go(b));
            PrefixClass {
                exists: x.exists.max(y.exists),
                forall: x.forall.max(y.forall),
            }
        }
        Forall(_, a) | ForallSo(_, a) | Inst(_, a) => {
            let c = go(a);
            let forall = c.forall.max(1).min(c.exists + 1);
            PrefixClass {
                exists: forall + 1,
                forall,
            }
        }
        Or(..) | Implies(..) | Iff(..) | Exists(..) | ExistsSo(..) => go(&f.normalize()),
    }
}

/// Alternation class of a first-order formula.
pub fn classify_prefix(f: &Formula) -> PrefixClass {
    go(&f.normalize())
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum Q {
    All,
    Ex,
}

type Prefix = Vec<(Q, FoVar)>;

fn blocks(p: &[(Q, FoVar)]) -> usize {
    let mut n = 0;
    let mut last = None;
    for (q, _) in p {
        if last != Some(*q) {
            n += 1;
            last = Some(*q);
        }
    }
    n
}

/// Interleaves two prefixes greedily, taking whole leading blocks of the
/// current kind from both sides before switching.
fn merge(a: &[(Q, FoVar)], b: &[(Q, FoVar)], first: Q) -> Prefix {
    let (mut i, mut j) = (0, 0);
    let mut kind = first;
    let mut out = Vec::new();
    while i < a.len() || j < b.len() {
        while i < a.len() && a[i].0 == kind {
            out.push(a[i]);
            i += 1;
        }
        while j < b.len() && b[j].0 == kind {
            out.push(b[j]);
            j += 1;
        }
        kind = if kind == Q::All { Q::Ex } else { Q::All };
    }
    out
}

/// Cost of a prefix read as an `∃_n` (or `∀_n`) prefix.
fn cost(p: &[(Q, FoVar)], kind: Q) -> usize {
    let b = blocks(p);
    match p.first() {
        Some((q, _)) if *q != kind => b + 1,
        _ => b,
    }
}

fn flip(p: Prefix) -> Prefix {
    p.into_iter()
        .map(|(q, v)| (if q == Q::All { Q::Ex } else { Q::All }, v))
        .collect()
}

/// Returns the prefix cheapest as an `∃_n` prefix, the one cheapest as a
/// `∀_n` prefix, and the shared matrix. Bound variables must be distinct.
fn prenex_go(f: &Formula) -> (Prefix, Prefix, Formula) {
    use Formula::*;
    match f {
        Not(a) => {
            let (pe, pa, m) = prenex_go(a);
            (flip(pa), flip(pe), Formula::not(m))
        }
        And(a, b) => {
            let (ae, aa, ma) = prenex_go(a);
            let (be, ba, mb) = prenex_go(b);
            (merge(&ae, &be, Q::Ex), merge(&aa, &ba, Q::All), Formula::and(ma, mb))
        }
        Forall(v, a) => {
            let (pe, pa, m) = prenex_go(a);
            let best = if cost(&pe, Q::All) < cost(&pa, Q::All) { pe } else { pa };
            let mut p = alloc::vec![(Q::All, *v)];
            p.extend(best);
            (p.clone(), p, m)
        }
        _ => (Vec::new(), Vec::new(), f.clone()),
    }
}

/// Renames every bound variable to a distinct fresh index.
fn rename_apart(f: &Formula, next: &mut u32) -> Formula {
    use Formula::*;
    match f {
        Not(a) => Formula::not(rename_apart(a, next)),
        And(a, b) => {
            let a = rename_apart(a, next);
            Formula::and(a, rename_apart(b, next))
        }
        Forall(v, a) => {
            let w = FoVar(*next);
            *next += 1;
            let body = substitute_fo(a, *v, &Term::Var(w));
            Formula::forall(w, rename_apart(&body, next))
        }
        _ => f.clone(),
    }
}

/// A prenex form of a first-order formula using `¬`, `∧` and `∀` in the
/// matrix and `∀`/`∃` in the prefix, with a prefix of fewest blocks.
pub fn prenex(f: &Formula) -> Formula {
    let n = f.normalize();
    let mut next = n.max_fo_index().map_or(0, |m| m + 1);
    let apart = rename_apart(&n, &mut next);
    let (pe, pa, matrix) = prenex_go(&apart);
    let prefix = if blocks(&pa) < blocks(&pe) { pa } else { pe };
    prefix.into_iter().rev().fold(matrix, |acc, (q, v)| match q {
        Q::All => Formula::forall(v, acc),
        Q::Ex => Formula::exists(v, acc),
    })
}

/// Number of quantifier blocks in the prefix of a prenex formula, and
/// whether the first block is existential.
pub fn prefix_blocks(f: &Formula) -> (usize, bool) {
    let mut p = Vec::new();
    let mut cur = f;
    loop {
        match cur {
            Formula::Forall(v, a) => {
                p.push((Q::All, *v));
                cur = a;
            }
            Formula::Exists(v, a) => {
                p.push((Q::Ex, *v));
                cur = a;
            }
            _ => break,
        }
    }
    (blocks(&p), p.first().is_some_and(|q| q.0 == Q::Ex))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formulas::{parse, Signature};

    fn p(s: &str) -> Formula {
        parse(s, &"P0/1,P1/2".parse::<Signature>().unwrap()).unwrap()
    }

    #[test]
    fn examples() {
        let c = classify_prefix(&p("∃x0 ∀x1 (P0(x0) ∧ P0(x1))"));
        assert_eq!(c.exists, 2);
        assert_eq!(c.to_string(), "∃2");
        let c = classify_prefix(&p("P0(x0) ∧ ¬P1(x0, x1)"));
        assert_eq!(c, PrefixClass { exists: 0, forall: 0 });
        assert!(c.is_exists_n(0) && c.is_forall_n(0));
        let c = classify_prefix(&p("∀x0 ∃x1 ∀x2 (P1(x0, x1) ∧ P0(x2))"));
        assert_eq!(c.forall, 3);
        assert_eq!(c.to_string(), "∀3");
    }

    #[test]
    fn conjunction_of_opposite_blocks() {
        let c = classify_prefix(&p("(∃x0 P0(x0)) ∧ ∀x1 P0(x1)"));
        assert_eq!(c, PrefixClass { exists: 2, forall: 2 });
    }

    #[test]
    fn implication_flips_the_antecedent() {
        let c = classify_prefix(&p("(∀x0 P0(x0)) → P0(x1)"));
        assert_eq!(c.exists, 1);
    }

    #[test]
    fn prenex_agrees_with_classification() {
        for s in [
            "∃x0 ∀x1 (P0(x0) ∧ P0(x1))",
            "(∃x0 P0(x0)) ∧ ∀x1 P0(x1)",
            "¬∀x0 (P0(x0) ∧ ∃x1 P1(x0, x1)) ∧ ∀x0 P0(x0)",
            "(∀x0 P0(x0)) ↔ ∃x1 P0(x1)",
            "P0(x0)",
        ] {
            let f = p(s);
            let c = classify_prefix(&f);
            let q = prenex(&f);
            let (n, _) = prefix_blocks(&q);
            assert_eq!(n, c.exists.min(c.forall), "{s} -> {q}");
            assert_eq!(q.free_fo(), f.free_fo());
        }
    }
}
