//! Seeded random structures, formulas, axiom instances and mutations.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use rsol_core::calculus::Schema;
use rsol_core::formulas::{substitute_so, FoVar, Formula, Signature, SoVar, Term};
use rsol_core::structures::{tuple_count, FiniteStructure, Relation};
use rsol_core::theta::ThetaFamily;

pub type Rand = ChaCha8Rng;

pub fn rng(seed: u64) -> Rand {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A random structure. Each predicate is empty, full or a coin-flip
/// relation, so that universal premises hold often enough to sample.
pub fn structure(rng: &mut Rand, sig: &Signature, size: u32) -> FiniteStructure {
    let preds = sig
        .predicates
        .iter()
        .map(|&a| {
            let a = a as u32;
            let cap = tuple_count(size, a).expect("small domain");
            let mut r = Relation::empty(a, size);
            let mode = rng.gen_range(0..5);
            for i in 0..cap {
                let on = match mode {
                    0 => false,
                    1 => true,
                    _ => rng.gen_bool(0.5),
                };
                r.set_index(i, on);
            }
            r
        })
        .collect();
    let funcs = sig
        .functions
        .iter()
        .map(|&a| {
            let cap = tuple_count(size, a as u32).expect("small domain");
            (0..cap).map(|_| rng.gen_range(0..size)).collect()
        })
        .collect();
    let consts = (0..sig.constants).map(|_| rng.gen_range(0..size)).collect();
    FiniteStructure::new(size, sig.clone(), preds, funcs, consts).expect("well-formed random structure")
}

/// Random formulas over `x0 .. x{fo_vars-1}`. Atoms may use every variable
/// in `so_vars`; only those in `so_bound` are quantified.
#[derive(Clone, Debug)]
pub struct FormulaGen<'a> {
    pub sig: &'a Signature,
    pub fo_vars: u32,
    pub so_vars: Vec<SoVar>,
    pub so_bound: Vec<SoVar>,
}

impl<'a> FormulaGen<'a> {
    pub fn new(sig: &'a Signature, fo_vars: u32) -> Self {
        FormulaGen {
            sig,
            fo_vars,
            so_vars: Vec::new(),
            so_bound: Vec::new(),
        }
    }

    pub fn with_so(mut self, atoms: &[SoVar], bound: &[SoVar]) -> Self {
        self.so_vars = atoms.iter().chain(bound).copied().collect();
        self.so_vars.sort();
        self.so_vars.dedup();
        self.so_bound = bound.to_vec();
        self
    }

    fn var(&self, rng: &mut Rand) -> FoVar {
        FoVar(rng.gen_range(0..self.fo_vars))
    }

    pub fn term(&self, rng: &mut Rand, depth: u32) -> Term {
        let funcs = self.sig.functions.len();
        match rng.gen_range(0..6) {
            0 | 1 if self.sig.constants > 0 => Term::Const(rng.gen_range(0..self.sig.constants as u32)),
            2 if depth > 0 && funcs > 0 => {
                let f = rng.gen_range(0..funcs);
                let args = (0..self.sig.functions[f]).map(|_| self.term(rng, depth - 1)).collect();
                Term::App(f as u32, args)
            }
            _ => Term::Var(self.var(rng)),
        }
    }

    pub fn atom(&self, rng: &mut Rand) -> Formula {
        loop {
            match rng.gen_range(0..7) {
                0..=2 if !self.sig.predicates.is_empty() => {
                    let p = rng.gen_range(0..self.sig.predicates.len());
                    let args = (0..self.sig.predicates[p]).map(|_| self.term(rng, 1)).collect();
                    return Formula::Pred(p as u32, args);
                }
                3 if self.sig.identity => return Formula::eq(self.term(rng, 1), self.term(rng, 1)),
                4 | 5 if !self.so_vars.is_empty() => {
                    let v = *self.so_vars.choose(rng).expect("nonempty");
                    let args = (0..v.arity).map(|_| self.term(rng, 1)).collect();
                    return Formula::Apply(v, args);
                }
                6 if self.so_vars.len() >= 2 => {
                    let v = *self.so_vars.choose(rng).expect("nonempty");
                    let w = *self.so_vars.choose(rng).expect("nonempty");
                    if v.arity == w.arity {
                        return Formula::SoEq(v, w);
                    }
                }
                _ => {}
            }
        }
    }

    pub fn formula(&self, rng: &mut Rand, depth: u32) -> Formula {
        if depth == 0 || rng.gen_bool(0.25) {
            return self.atom(rng);
        }
        let d = depth - 1;
        match rng.gen_range(0..9) {
            0 => Formula::not(self.formula(rng, d)),
            1 => Formula::and(self.formula(rng, d), self.formula(rng, d)),
            2 => Formula::or(self.formula(rng, d), self.formula(rng, d)),
            3 => Formula::implies(self.formula(rng, d), self.formula(rng, d)),
            4 => Formula::iff(self.formula(rng, d), self.formula(rng, d)),
            5 => Formula::forall(self.var(rng), self.formula(rng, d)),
            6 => Formula::exists(self.var(rng), self.formula(rng, d)),
            7 if !self.so_bound.is_empty() => {
                let v = *self.so_bound.choose(rng).expect("nonempty");
                Formula::forall_so(v, self.formula(rng, d))
            }
            8 if !self.so_bound.is_empty() => {
                let v = *self.so_bound.choose(rng).expect("nonempty");
                Formula::exists_so(v, self.formula(rng, d))
            }
            _ => Formula::not(self.formula(rng, d)),
        }
    }

    /// A formula closed by randomly chosen quantifiers.
    pub fn sentence(&self, rng: &mut Rand, depth: u32) -> Formula {
        let f = self.formula(rng, depth);
        let (fo, so) = f.free_variables();
        let mut out = f;
        for v in fo.into_iter().rev() {
            out = if rng.gen_bool(0.5) {
                Formula::forall(v, out)
            } else {
                Formula::exists(v, out)
            };
        }
        for v in so.into_iter().rev() {
            out = if rng.gen_bool(0.5) {
                Formula::forall_so(v, out)
            } else {
                Formula::exists_so(v, out)
            };
        }
        out
    }
}

/// Universal closure over free individual and relation variables.
pub fn closure(f: &Formula) -> Formula {
    let (fo, so) = f.free_variables();
    let mut out = f.clone();
    for v in fo.into_iter().rev() {
        out = Formula::forall(v, out);
    }
    for v in so.into_iter().rev() {
        out = Formula::forall_so(v, out);
    }
    out
}

/// Replaces each free occurrence of `from` by `to` with probability 1/2.
/// `from` must not be bound in `f`.
fn replace_some(rng: &mut Rand, f: &Formula, from: SoVar, to: SoVar) -> Formula {
    let mut pick = |v: SoVar, rng: &mut Rand| if v == from && rng.gen_bool(0.5) { to } else { v };
    fn go(rng: &mut Rand, f: &Formula, pick: &mut dyn FnMut(SoVar, &mut Rand) -> SoVar) -> Formula {
        let b = |g: &Formula, rng: &mut Rand, pick: &mut dyn FnMut(SoVar, &mut Rand) -> SoVar| Box::new(go(rng, g, pick));
        match f {
            Formula::Apply(v, args) => Formula::Apply(pick(*v, rng), args.clone()),
            Formula::SoEq(v, w) => {
                let v = pick(*v, rng);
                Formula::SoEq(v, pick(*w, rng))
            }
            Formula::Pred(..) | Formula::Eq(..) => f.clone(),
            Formula::Not(a) => Formula::Not(b(a, rng, pick)),
            Formula::And(x, y) => Formula::And(b(x, rng, pick), b(y, rng, pick)),
            Formula::Or(x, y) => Formula::Or(b(x, rng, pick), b(y, rng, pick)),
            Formula::Implies(x, y) => Formula::Implies(b(x, rng, pick), b(y, rng, pick)),
            Formula::Iff(x, y) => Formula::Iff(b(x, rng, pick), b(y, rng, pick)),
            Formula::Forall(v, a) => Formula::Forall(*v, b(a, rng, pick)),
            Formula::Exists(v, a) => Formula::Exists(*v, b(a, rng, pick)),
            Formula::ForallSo(v, a) => Formula::ForallSo(*v, b(a, rng, pick)),
            Formula::ExistsSo(v, a) => Formula::ExistsSo(*v, b(a, rng, pick)),
            Formula::Inst(v, a) => Formula::Inst(*v, b(a, rng, pick)),
        }
    }
    go(rng, f, &mut pick)
}

fn x(i: u32) -> SoVar {
    SoVar::new(i, 1)
}

/// The second-order axiom schemata.
pub const SO_SCHEMATA: [&str; 6] = ["A1", "A2", "A3", "A4", "A5", "A6"];

/// A random instance of the named schema, with the schema the kernel
/// should recognize it as. Relation variables are unary; `max_n` bounds
/// the member index for A1 and A6.
pub fn axiom_instance(
    rng: &mut Rand,
    fam: &dyn ThetaFamily,
    name: &str,
    max_n: usize,
) -> Option<(Formula, Schema)> {
    let sig = fam.signature();
    let depth = 3;
    Some(match name {
        "A1" => {
            let n = rng.gen_range(0..=max_n);
            let m = fam.member(1, n)?;
            (m.comprehension(rng.gen_range(0..3)), Schema::A1(Some(n)))
        }
        "A2" => {
            let m = rng.gen_range(0..3);
            let n = (m + rng.gen_range(1..3)) % 3;
            let v = FoVar(rng.gen_range(0..3));
            let (a, b) = (x(m), x(n));
            let ext = Formula::forall(
                v,
                Formula::iff(Formula::Apply(a, vec![Term::Var(v)]), Formula::Apply(b, vec![Term::Var(v)])),
            );
            let body = Formula::iff(ext, Formula::SoEq(a, b));
            (Formula::forall_so(a, Formula::forall_so(b, body)), Schema::A2)
        }
        "A3" => {
            let g = FormulaGen::new(sig, 3).with_so(&[x(0), x(1)], &[x(2)]);
            let phi = g.formula(rng, depth);
            let replaced = replace_some(rng, &phi, x(0), x(1));
            let body = Formula::implies(Formula::SoEq(x(0), x(1)), Formula::implies(phi, replaced));
            (Formula::forall_so(x(0), Formula::forall_so(x(1), body)), Schema::A3)
        }
        "A4" => {
            let g = FormulaGen::new(sig, 3).with_so(&[x(0)], &[x(1), x(2)]);
            loop {
                let phi = g.formula(rng, depth);
                let w = x(rng.gen_range(0..4));
                let s = substitute_so(&phi, x(0), w).ok()?;
                if s.free_for {
                    break (Formula::implies(Formula::forall_so(x(0), phi), s.formula), Schema::A4);
                }
            }
        }
        "A5" => {
            let side = FormulaGen::new(sig, 3).with_so(&[x(1)], &[x(2)]);
            let phi = side.formula(rng, depth);
            let g = FormulaGen::new(sig, 3).with_so(&[x(0), x(1)], &[x(2)]);
            let psi = g.formula(rng, depth);
            let lhs = Formula::forall_so(x(0), Formula::implies(phi.clone(), psi.clone()));
            let rhs = Formula::implies(phi, Formula::forall_so(x(0), psi));
            (Formula::implies(lhs, rhs), Schema::A5)
        }
        "A6" => {
            let n = rng.gen_range(0..=max_n);
            let m = fam.member(1, n)?;
            let g = FormulaGen::new(sig, 3).with_so(&[x(0)], &[x(1)]);
            let phi = g.formula(rng, depth);
            let inst = m.instantiate(&phi, x(0)).ok()?;
            (Formula::implies(Formula::forall_so(x(0), phi), inst), Schema::A6(n))
        }
        _ => return None,
    })
}

fn atoms(f: &Formula) -> usize {
    let mut n = 0;
    f.visit(&mut |g| {
        if matches!(g, Formula::Pred(..) | Formula::Eq(..) | Formula::Apply(..) | Formula::SoEq(..)) {
            n += 1;
        }
    });
    n
}

fn negate_atom(f: &Formula, k: &mut usize) -> Formula {
    let rec = |g: &Formula, k: &mut usize| Box::new(negate_atom(g, k));
    match f {
        Formula::Pred(..) | Formula::Eq(..) | Formula::Apply(..) | Formula::SoEq(..) => {
            let hit = *k == 0;
            *k = k.wrapping_sub(1);
            if hit {
                Formula::not(f.clone())
            } else {
                f.clone()
            }
        }
        Formula::Not(a) => Formula::Not(rec(a, k)),
        Formula::And(a, b) => {
            let a = rec(a, k);
            Formula::And(a, rec(b, k))
        }
        Formula::Or(a, b) => {
            let a = rec(a, k);
            Formula::Or(a, rec(b, k))
        }
        Formula::Implies(a, b) => {
            let a = rec(a, k);
            Formula::Implies(a, rec(b, k))
        }
        Formula::Iff(a, b) => {
            let a = rec(a, k);
            Formula::Iff(a, rec(b, k))
        }
        Formula::Forall(v, a) => Formula::Forall(*v, rec(a, k)),
        Formula::Exists(v, a) => Formula::Exists(*v, rec(a, k)),
        Formula::ForallSo(v, a) => Formula::ForallSo(*v, rec(a, k)),
        Formula::ExistsSo(v, a) => Formula::ExistsSo(*v, rec(a, k)),
        Formula::Inst(v, a) => Formula::Inst(*v, rec(a, k)),
    }
}

/// Negates one randomly chosen atomic subformula.
pub fn flip_atom(rng: &mut Rand, f: &Formula) -> Formula {
    let n = atoms(f);
    if n == 0 {
        return Formula::not(f.clone());
    }
    let mut k = rng.gen_range(0..n);
    negate_atom(f, &mut k)
}
