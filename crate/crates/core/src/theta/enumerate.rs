//! Size-ordered enumeration of first-order formulas.
//!
//! Formulas are generated in primitive form (`¬`, `∧`, `∀`, atoms). A formula
//! in context `c` has free variables among `x0..x{c-1}`; a quantifier at
//! nesting depth `d` binds `x{c+d}`, so distinct formulas are never
//! alpha-equivalent. Sizes: variables and constants 1, application and
//! predicate atoms `1 + Σ args`, identity `1 + s + t`, `¬` and `∀` add 1,
//! `∧` adds 1.

use alloc::collections::BTreeMap;
use alloc::rc::Rc;
use alloc::string::String;
use alloc::vec::Vec;

use crate::formulas::{print, FoVar, Formula, Signature, Term};

/// All ways to write `total` as an ordered sum of `parts` positive integers.
fn compositions(total: usize, parts: usize) -> Vec<Vec<usize>> {
    if parts == 0 {
        return if total == 0 { alloc::vec![Vec::new()] } else { Vec::new() };
    }
    if total < parts {
        return Vec::new();
    }
    let mut out = Vec::new();
    for first in 1..=total - (parts - 1) {
        for mut rest in compositions(total - first, parts - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

fn product<T: Clone>(lists: &[Rc<Vec<T>>]) -> Vec<Vec<T>> {
    let mut acc: Vec<Vec<T>> = alloc::vec![Vec::new()];
    for l in lists {
        let mut next = Vec::with_capacity(acc.len() * l.len());
        for prefix in &acc {
            for x in l.iter() {
                let mut p = prefix.clone();
                p.push(x.clone());
                next.push(p);
            }
        }
        acc = next;
    }
    acc
}

/// Memoized generator of terms and formulas by `(size, available variables)`.
pub struct Generator {
    sig: Signature,
    terms: BTreeMap<(usize, u32), Rc<Vec<Term>>>,
    formulas: BTreeMap<(usize, u32), Rc<Vec<Formula>>>,
}

impl Generator {
    pub fn new(sig: &Signature) -> Self {
        Generator {
            sig: sig.clone(),
            terms: BTreeMap::new(),
            formulas: BTreeMap::new(),
        }
    }

    pub fn terms(&mut self, size: usize, vars: u32) -> Rc<Vec<Term>> {
        if let Some(t) = self.terms.get(&(size, vars)) {
            return t.clone();
        }
        let mut out = Vec::new();
        if size == 1 {
            out.extend((0..vars).map(Term::var));
            out.extend((0..self.sig.constants as u32).map(Term::Const));
        }
        let functions = self.sig.functions.clone();
        for (fi, &arity) in functions.iter().enumerate() {
            if arity == 0 {
                if size == 1 {
                    out.push(Term::App(fi as u32, Vec::new()));
                }
                continue;
            }
            if size < 1 + arity {
                continue;
            }
            for comp in compositions(size - 1, arity) {
                let lists: Vec<_> = comp.iter().map(|&s| self.terms(s, vars)).collect();
                for args in product(&lists) {
                    out.push(Term::App(fi as u32, args));
                }
            }
        }
        let rc = Rc::new(out);
        self.terms.insert((size, vars), rc.clone());
        rc
    }

    /// All primitive formulas of exactly `size` whose free variables are
    /// among `x0..x{vars-1}`.
    pub fn formulas(&mut self, size: usize, vars: u32) -> Rc<Vec<Formula>> {
        if let Some(f) = self.formulas.get(&(size, vars)) {
            return f.clone();
        }
        let mut out = Vec::new();
        if size >= 2 {
            let preds = self.sig.predicates.clone();
            for (p, &arity) in preds.iter().enumerate() {
                if size < 1 + arity {
                    continue;
                }
                for comp in compositions(size - 1, arity) {
                    let lists: Vec<_> = comp.iter().map(|&s| self.terms(s, vars)).collect();
                    for args in product(&lists) {
                        out.push(Formula::Pred(p as u32, args));
                    }
                }
            }
        }
        if self.sig.identity && size >= 3 {
            for a in 1..size - 1 {
                let l = self.terms(a, vars);
                let r = self.terms(size - 1 - a, vars);
                for s in l.iter() {
                    for t in r.iter() {
                        out.push(Formula::eq(s.clone(), t.clone()));
                    }
                }
            }
        }
        if size >= 2 {
            for f in self.formulas(size - 1, vars).iter() {
                out.push(Formula::not(f.clone()));
            }
            for f in self.formulas(size - 1, vars + 1).iter() {
                out.push(Formula::forall(FoVar(vars), f.clone()));
            }
        }
        if size >= 3 {
            for a in 1..size - 1 {
                let l = self.formulas(a, vars);
                let r = self.formulas(size - 1 - a, vars);
                for x in l.iter() {
                    for y in r.iter() {
                        out.push(Formula::and(x.clone(), y.clone()));
                    }
                }
            }
        }
        let rc = Rc::new(out);
        self.formulas.insert((size, vars), rc.clone());
        rc
    }

    /// Formulas of `size` whose free variables are exactly `x0..x{c-1}`,
    /// sorted by their printed form.
    pub fn exact_context(&mut self, size: usize, c: u32) -> Vec<Formula> {
        let mut keyed: Vec<(String, Formula)> = self
            .formulas(size, c)
            .iter()
            .filter(|f| f.free_fo().len() == c as usize)
            .map(|f| (print(f), f.clone()))
            .collect();
        keyed.sort_by(|a, b| a.0.cmp(&b.0));
        keyed.into_iter().map(|(_, f)| f).collect()
    }
}

/// Lazily extended list of `(formula, context)` pairs in global order:
/// by size, then context, then printed form.
pub struct FormulaStream {
    generator: Generator,
    max_context: Option<u32>,
    pub(crate) items: Vec<(Formula, u32)>,
    next_size: usize,
}

/// Sizes beyond this are not generated; enumeration is then treated as
/// exhausted for practical purposes.
pub const SIZE_LIMIT: usize = 40;

impl FormulaStream {
    /// `max_context` bounds the number of free variables (`Some(1)` for
    /// one-free-variable formulas).
    pub fn new(sig: &Signature, max_context: Option<u32>) -> Self {
        FormulaStream {
            generator: Generator::new(sig),
            max_context,
            items: Vec::new(),
            next_size: 1,
        }
    }

    /// Extends the stream by one size level; false once past the limit.
    pub fn grow(&mut self) -> bool {
        if self.next_size > SIZE_LIMIT {
            return false;
        }
        let s = self.next_size;
        self.next_size += 1;
        let top = self.max_context.unwrap_or(s as u32).min(s as u32);
        for c in 1..=top {
            for f in self.generator.exact_context(s, c) {
                self.items.push((f, c));
            }
        }
        true
    }

    /// Extends until `pred` holds for the stream or the size limit is hit.
    pub fn grow_until(&mut self, mut pred: impl FnMut(&[(Formula, u32)]) -> bool) -> bool {
        while !pred(&self.items) {
            if !self.grow() {
                return false;
            }
        }
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn composition_counts() {
        assert_eq!(compositions(4, 2).len(), 3);
        assert_eq!(compositions(2, 3).len(), 0);
        assert_eq!(compositions(0, 0).len(), 1);
    }

    #[test]
    fn smallest_identity_formula() {
        let mut g = Generator::new(&Signature::empty());
        assert!(g.exact_context(1, 1).is_empty());
        assert!(g.exact_context(2, 1).is_empty());
        let f = g.exact_context(3, 1);
        assert_eq!(f.len(), 1);
        assert_eq!(print(&f[0]), "x0 = x0");
    }

    #[test]
    fn stream_is_duplicate_free() {
        let sig: Signature = "P0/1,P1/2".parse().unwrap();
        let mut s = FormulaStream::new(&sig, None);
        s.grow_until(|items| items.len() > 200);
        for (i, a) in s.items.iter().enumerate().take(200) {
            for b in s.items.iter().skip(i + 1).take(200) {
                assert!(!crate::formulas::alpha_eq(&a.0, &b.0));
            }
        }
    }
}
