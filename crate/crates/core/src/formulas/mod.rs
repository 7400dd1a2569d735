//! Two-sorted syntax.
//!
//! Variables are index based: `x_n` for individuals and `X_m^k` for `k`-ary
//! relation variables. Symbols of the signature are referenced by position,
//! so `P2` is the third predicate constant, `f0` the first function symbol and
//! `c1` the second individual constant.
//!
//! The primitive connectives are `¬`, `∧` and `∀` (of both sorts). The derived
//! forms `∨`, `→`, `↔` and `∃` are kept in the tree so that printing stays
//! readable; [`Formula::normalize`] rewrites them into primitives and every
//! semantic or proof-theoretic consumer works on normalized trees.

mod alpha;
mod parse;
mod print;
mod subst;

use alloc::boxed::Box;
use alloc::collections::BTreeSet;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

pub use alpha::alpha_eq;
pub use parse::{parse, parse_schematic, ParseError, ParseErrorKind};
pub use print::{print, print_with, PrintOptions};
pub use subst::{
    a6_instantiate, substitute_fo, substitute_fo_many, substitute_so, SoSubstitution,
};

/// An individual variable `x_n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FoVar(pub u32);

/// A relation variable `X_m^k`. Variables with the same index but different
/// arities are distinct.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SoVar {
    pub index: u32,
    pub arity: u32,
}

impl SoVar {
    pub fn new(index: u32, arity: u32) -> Self {
        debug_assert!(arity >= 1);
        SoVar { index, arity }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Variable {
    Fo(FoVar),
    So(SoVar),
}

impl fmt::Display for FoVar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x{}", self.0)
    }
}

impl fmt::Display for SoVar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.arity == 1 {
            write!(f, "X{}", self.index)
        } else {
            write!(f, "X{}^{}", self.index, self.arity)
        }
    }
}

impl fmt::Display for Variable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Variable::Fo(v) => v.fmt(f),
            Variable::So(v) => v.fmt(f),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Term {
    Var(FoVar),
    Const(u32),
    App(u32, Vec<Term>),
}

impl Term {
    pub fn var(i: u32) -> Term {
        Term::Var(FoVar(i))
    }

    pub fn collect_vars(&self, out: &mut BTreeSet<FoVar>) {
        match self {
            Term::Var(v) => {
                out.insert(*v);
            }
            Term::Const(_) => {}
            Term::App(_, args) => args.iter().for_each(|a| a.collect_vars(out)),
        }
    }

    pub fn vars(&self) -> BTreeSet<FoVar> {
        let mut out = BTreeSet::new();
        self.collect_vars(&mut out);
        out
    }

    pub fn mentions(&self, v: FoVar) -> bool {
        match self {
            Term::Var(w) => *w == v,
            Term::Const(_) => false,
            Term::App(_, args) => args.iter().any(|a| a.mentions(v)),
        }
    }

    pub(crate) fn max_var(&self) -> Option<u32> {
        match self {
            Term::Var(v) => Some(v.0),
            Term::Const(_) => None,
            Term::App(_, args) => args.iter().filter_map(Term::max_var).max(),
        }
    }

    pub fn size(&self) -> usize {
        match self {
            Term::Var(_) | Term::Const(_) => 1,
            Term::App(_, args) => 1 + args.iter().map(Term::size).sum::<usize>(),
        }
    }
}

/// A formula of the two-sorted language.
///
/// `Inst(V, φ)` is the schematic node used inside omega-rule templates: it
/// stands for the instantiation of `V` in `φ` by the `n`-th family member,
/// with `n` left open. It binds `V`. Outside templates it is rejected by the
/// kernel and by the evaluators.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Formula {
    Pred(u32, Vec<Term>),
    Eq(Term, Term),
    Apply(SoVar, Vec<Term>),
    SoEq(SoVar, SoVar),
    Not(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Implies(Box<Formula>, Box<Formula>),
    Iff(Box<Formula>, Box<Formula>),
    Forall(FoVar, Box<Formula>),
    Exists(FoVar, Box<Formula>),
    ForallSo(SoVar, Box<Formula>),
    ExistsSo(SoVar, Box<Formula>),
    Inst(SoVar, Box<Formula>),
}

impl Formula {
    #[allow(clippy::should_implement_trait)]
    pub fn not(f: Formula) -> Formula {
        Formula::Not(Box::new(f))
    }
    pub fn and(a: Formula, b: Formula) -> Formula {
        Formula::And(Box::new(a), Box::new(b))
    }
    pub fn or(a: Formula, b: Formula) -> Formula {
        Formula::Or(Box::new(a), Box::new(b))
    }
    pub fn implies(a: Formula, b: Formula) -> Formula {
        Formula::Implies(Box::new(a), Box::new(b))
    }
    pub fn iff(a: Formula, b: Formula) -> Formula {
        Formula::Iff(Box::new(a), Box::new(b))
    }
    pub fn forall(v: FoVar, f: Formula) -> Formula {
        Formula::Forall(v, Box::new(f))
    }
    pub fn exists(v: FoVar, f: Formula) -> Formula {
        Formula::Exists(v, Box::new(f))
    }
    pub fn forall_so(v: SoVar, f: Formula) -> Formula {
        Formula::ForallSo(v, Box::new(f))
    }
    pub fn exists_so(v: SoVar, f: Formula) -> Formula {
        Formula::ExistsSo(v, Box::new(f))
    }
    pub fn eq(a: Term, b: Term) -> Formula {
        Formula::Eq(a, b)
    }

    /// Prefixes `∀v` for each variable, the first one outermost.
    pub fn forall_many(vars: &[FoVar], body: Formula) -> Formula {
        vars.iter().rev().fold(body, |acc, v| Formula::forall(*v, acc))
    }

    /// Right-nested disjunction of a non-empty list; the first element is the
    /// innermost-left operand, matching the left-associative parse.
    pub fn disjunction(parts: Vec<Formula>) -> Option<Formula> {
        let mut it = parts.into_iter();
        let first = it.next()?;
        Some(it.fold(first, Formula::or))
    }

    pub fn conjunction(parts: Vec<Formula>) -> Option<Formula> {
        let mut it = parts.into_iter();
        let first = it.next()?;
        Some(it.fold(first, Formula::and))
    }

    /// `¬(a ∧ ¬b)`, the primitive form of `a → b`.
    pub fn imp_prim(a: Formula, b: Formula) -> Formula {
        Formula::not(Formula::and(a, Formula::not(b)))
    }

    /// Rewrites derived connectives into `¬`, `∧`, `∀`.
    pub fn normalize(&self) -> Formula {
        use Formula::*;
        match self {
            Pred(..) | Eq(..) | Apply(..) | SoEq(..) => self.clone(),
            Not(a) => Formula::not(a.normalize()),
            And(a, b) => Formula::and(a.normalize(), b.normalize()),
            Or(a, b) => Formula::not(Formula::and(
                Formula::not(a.normalize()),
                Formula::not(b.normalize()),
            )),
            Implies(a, b) => Formula::imp_prim(a.normalize(), b.normalize()),
            Iff(a, b) => {
                let (a, b) = (a.normalize(), b.normalize());
                Formula::and(
                    Formula::imp_prim(a.clone(), b.clone()),
                    Formula::imp_prim(b, a),
                )
            }
            Forall(v, a) => Formula::forall(*v, a.normalize()),
            Exists(v, a) => Formula::not(Formula::forall(*v, Formula::not(a.normalize()))),
            ForallSo(v, a) => Formula::forall_so(*v, a.normalize()),
            ExistsSo(v, a) => {
                Formula::not(Formula::forall_so(*v, Formula::not(a.normalize())))
            }
            Inst(v, a) => Formula::Inst(*v, Box::new(a.normalize())),
        }
    }

    pub fn is_normalized(&self) -> bool {
        use Formula::*;
        match self {
            Pred(..) | Eq(..) | Apply(..) | SoEq(..) => true,
            Not(a) | Forall(_, a) | ForallSo(_, a) | Inst(_, a) => a.is_normalized(),
            And(a, b) => a.is_normalized() && b.is_normalized(),
            Or(..) | Implies(..) | Iff(..) | Exists(..) | ExistsSo(..) => false,
        }
    }

    /// Matches the primitive shape `¬(a ∧ ¬b)` and returns `(a, b)`.
    pub fn as_imp(&self) -> Option<(&Formula, &Formula)> {
        if let Formula::Not(inner) = self {
            if let Formula::And(a, nb) = inner.as_ref() {
                if let Formula::Not(b) = nb.as_ref() {
                    return Some((a, b));
                }
            }
        }
        None
    }

    /// Matches the primitive form of `a ↔ b`.
    pub fn as_iff(&self) -> Option<(&Formula, &Formula)> {
        if let Formula::And(l, r) = self {
            let (a, b) = l.as_imp()?;
            let (b2, a2) = r.as_imp()?;
            if alpha_eq(a, a2) && alpha_eq(b, b2) {
                return Some((a, b));
            }
        }
        None
    }

    /// Matches `¬∀x¬a`.
    pub fn as_exists_fo(&self) -> Option<(FoVar, &Formula)> {
        if let Formula::Not(inner) = self {
            if let Formula::Forall(v, body) = inner.as_ref() {
                if let Formula::Not(a) = body.as_ref() {
                    return Some((*v, a));
                }
            }
        }
        None
    }

    /// Matches `¬∀V¬a`.
    pub fn as_exists_so(&self) -> Option<(SoVar, &Formula)> {
        if let Formula::Not(inner) = self {
            if let Formula::ForallSo(v, body) = inner.as_ref() {
                if let Formula::Not(a) = body.as_ref() {
                    return Some((*v, a));
                }
            }
        }
        None
    }

    pub fn is_first_order(&self) -> bool {
        use Formula::*;
        match self {
            Pred(..) | Eq(..) => true,
            Apply(..) | SoEq(..) | ForallSo(..) | ExistsSo(..) | Inst(..) => false,
            Not(a) | Forall(_, a) | Exists(_, a) => a.is_first_order(),
            And(a, b) | Or(a, b) | Implies(a, b) | Iff(a, b) => {
                a.is_first_order() && b.is_first_order()
            }
        }
    }

    pub fn is_schematic(&self) -> bool {
        use Formula::*;
        match self {
            Pred(..) | Eq(..) | Apply(..) | SoEq(..) => false,
            Inst(..) => true,
            Not(a) | Forall(_, a) | Exists(_, a) | ForallSo(_, a) | ExistsSo(_, a) => {
                a.is_schematic()
            }
            And(a, b) | Or(a, b) | Implies(a, b) | Iff(a, b) => a.is_schematic() || b.is_schematic(),
        }
    }

    pub fn mentions_identity(&self) -> bool {
        use Formula::*;
        match self {
            Eq(..) | SoEq(..) => true,
            Pred(..) | Apply(..) => false,
            Not(a) | Forall(_, a) | Exists(_, a) | ForallSo(_, a) | ExistsSo(_, a) | Inst(_, a) => {
                a.mentions_identity()
            }
            And(a, b) | Or(a, b) | Implies(a, b) | Iff(a, b) => {
                a.mentions_identity() || b.mentions_identity()
            }
        }
    }

    /// Free individual and relation variables.
    pub fn free_variables(&self) -> (BTreeSet<FoVar>, BTreeSet<SoVar>) {
        let mut fo = BTreeSet::new();
        let mut so = BTreeSet::new();
        self.collect_free(&mut Vec::new(), &mut Vec::new(), &mut fo, &mut so);
        (fo, so)
    }

    pub fn free_fo(&self) -> BTreeSet<FoVar> {
        self.free_variables().0
    }

    pub fn free_so(&self) -> BTreeSet<SoVar> {
        self.free_variables().1
    }

    pub fn is_sentence(&self) -> bool {
        let (fo, so) = self.free_variables();
        fo.is_empty() && so.is_empty()
    }

    fn collect_free(
        &self,
        bound_fo: &mut Vec<FoVar>,
        bound_so: &mut Vec<SoVar>,
        fo: &mut BTreeSet<FoVar>,
        so: &mut BTreeSet<SoVar>,
    ) {
        use Formula::*;
        let term_vars = |t: &Term, bound_fo: &Vec<FoVar>, fo: &mut BTreeSet<FoVar>| {
            for v in t.vars() {
                if !bound_fo.contains(&v) {
                    fo.insert(v);
                }
            }
        };
        match self {
            Pred(_, ts) => ts.iter().for_each(|t| term_vars(t, bound_fo, fo)),
            Eq(a, b) => {
                term_vars(a, bound_fo, fo);
                term_vars(b, bound_fo, fo);
            }
            Apply(v, ts) => {
                if !bound_so.contains(v) {
                    so.insert(*v);
                }
                ts.iter().for_each(|t| term_vars(t, bound_fo, fo));
            }
            SoEq(a, b) => {
                for v in [a, b] {
                    if !bound_so.contains(v) {
                        so.insert(*v);
                    }
                }
            }
            Not(a) => a.collect_free(bound_fo, bound_so, fo, so),
            And(a, b) | Or(a, b) | Implies(a, b) | Iff(a, b) => {
                a.collect_free(bound_fo, bound_so, fo, so);
                b.collect_free(bound_fo, bound_so, fo, so);
            }
            Forall(v, a) | Exists(v, a) => {
                bound_fo.push(*v);
                a.collect_free(bound_fo, bound_so, fo, so);
                bound_fo.pop();
            }
            ForallSo(v, a) | ExistsSo(v, a) | Inst(v, a) => {
                bound_so.push(*v);
                a.collect_free(bound_fo, bound_so, fo, so);
                bound_so.pop();
            }
        }
    }

    /// Largest individual-variable index occurring anywhere (free or bound).
    pub fn max_fo_index(&self) -> Option<u32> {
        use Formula::*;
        let terms = |ts: &[Term]| ts.iter().filter_map(Term::max_var).max();
        match self {
            Pred(_, ts) | Apply(_, ts) => terms(ts),
            Eq(a, b) => a.max_var().max(b.max_var()),
            SoEq(..) => None,
            Not(a) | ForallSo(_, a) | ExistsSo(_, a) | Inst(_, a) => a.max_fo_index(),
            And(a, b) | Or(a, b) | Implies(a, b) | Iff(a, b) => a.max_fo_index().max(b.max_fo_index()),
            Forall(v, a) | Exists(v, a) => Some(v.0).max(a.max_fo_index()),
        }
    }

    /// Largest relation-variable index occurring anywhere, across arities.
    pub fn max_so_index(&self) -> Option<u32> {
        use Formula::*;
        match self {
            Pred(..) | Eq(..) => None,
            Apply(v, _) => Some(v.index),
            SoEq(a, b) => Some(a.index.max(b.index)),
            Not(a) | Forall(_, a) | Exists(_, a) => a.max_so_index(),
            And(a, b) | Or(a, b) | Implies(a, b) | Iff(a, b) => a.max_so_index().max(b.max_so_index()),
            ForallSo(v, a) | ExistsSo(v, a) | Inst(v, a) => Some(v.index).max(a.max_so_index()),
        }
    }

    /// Arities of all relation variables that occur (free, bound or schematic).
    pub fn so_arities(&self) -> BTreeSet<u32> {
        let mut out = BTreeSet::new();
        self.visit(&mut |f| match f {
            Formula::Apply(v, _) | Formula::ForallSo(v, _) | Formula::ExistsSo(v, _) | Formula::Inst(v, _) => {
                out.insert(v.arity);
            }
            Formula::SoEq(a, b) => {
                out.insert(a.arity);
                out.insert(b.arity);
            }
            _ => {}
        });
        out
    }

    /// Pre-order traversal.
    pub fn visit<F: FnMut(&Formula)>(&self, f: &mut F) {
        f(self);
        use Formula::*;
        match self {
            Pred(..) | Eq(..) | Apply(..) | SoEq(..) => {}
            Not(a) | Forall(_, a) | Exists(_, a) | ForallSo(_, a) | ExistsSo(_, a) | Inst(_, a) => {
                a.visit(f)
            }
            And(a, b) | Or(a, b) | Implies(a, b) | Iff(a, b) => {
                a.visit(f);
                b.visit(f);
            }
        }
    }

    /// Quantifier rank counting quantifiers of both sorts.
    pub fn quantifier_rank(&self) -> usize {
        use Formula::*;
        match self {
            Pred(..) | Eq(..) | Apply(..) | SoEq(..) => 0,
            Not(a) | Inst(_, a) => a.quantifier_rank(),
            And(a, b) | Or(a, b) | Implies(a, b) | Iff(a, b) => {
                a.quantifier_rank().max(b.quantifier_rank())
            }
            Forall(_, a) | Exists(_, a) | ForallSo(_, a) | ExistsSo(_, a) => 1 + a.quantifier_rank(),
        }
    }

    /// Number of nodes, counting terms.
    pub fn size(&self) -> usize {
        use Formula::*;
        match self {
            Pred(_, ts) | Apply(_, ts) => 1 + ts.iter().map(Term::size).sum::<usize>(),
            Eq(a, b) => 1 + a.size() + b.size(),
            SoEq(..) => 1,
            Not(a) | Forall(_, a) | Exists(_, a) | ForallSo(_, a) | ExistsSo(_, a) | Inst(_, a) => {
                1 + a.size()
            }
            And(a, b) | Or(a, b) | Implies(a, b) | Iff(a, b) => 1 + a.size() + b.size(),
        }
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&print(self))
    }
}

/// Predicate constants `P_i` with arities, function symbols `f_i` with
/// arities, a number of individual constants `c_i`, and whether the identity
/// symbol is part of the language.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Signature {
    pub predicates: Vec<usize>,
    pub functions: Vec<usize>,
    pub constants: usize,
    pub identity: bool,
}

impl Default for Signature {
    fn default() -> Self {
        Signature {
            predicates: Vec::new(),
            functions: Vec::new(),
            constants: 0,
            identity: true,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum FormulaError {
    #[error("{symbol} expects {expected} argument(s), got {found}")]
    ArityMismatch {
        symbol: String,
        expected: usize,
        found: usize,
    },
    #[error("unknown symbol {0}")]
    UnknownSymbol(String),
    #[error("identity is disabled in this signature")]
    IdentityDisabled,
    #[error("relation variables {0} and {1} have different arities")]
    SoArityMismatch(SoVar, SoVar),
    #[error("schematic instantiation node outside a template")]
    Schematic,
    #[error("invalid signature: {0}")]
    BadSignature(String),
}

impl Signature {
    pub fn new(predicates: Vec<usize>, functions: Vec<usize>, constants: usize) -> Self {
        Signature {
            predicates,
            functions,
            constants,
            identity: true,
        }
    }

    /// Pure identity language.
    pub fn empty() -> Self {
        Signature::default()
    }

    pub fn without_identity(mut self) -> Self {
        self.identity = false;
        self
    }

    pub fn validate(&self) -> Result<(), FormulaError> {
        if let Some(i) = self.predicates.iter().position(|&a| a == 0) {
            return Err(FormulaError::BadSignature(alloc::format!(
                "predicate P{i} must have arity >= 1"
            )));
        }
        Ok(())
    }

    /// Same signature with `extra` more individual constants appended.
    pub fn with_extra_constants(&self, extra: usize) -> Signature {
        let mut s = self.clone();
        s.constants += extra;
        s
    }

    pub fn check_term(&self, t: &Term) -> Result<(), FormulaError> {
        match t {
            Term::Var(_) => Ok(()),
            Term::Const(c) => {
                if (*c as usize) < self.constants {
                    Ok(())
                } else {
                    Err(FormulaError::UnknownSymbol(alloc::format!("c{c}")))
                }
            }
            Term::App(fi, args) => {
                let arity = *self
                    .functions
                    .get(*fi as usize)
                    .ok_or_else(|| FormulaError::UnknownSymbol(alloc::format!("f{fi}")))?;
                if arity != args.len() {
                    return Err(FormulaError::ArityMismatch {
                        symbol: alloc::format!("f{fi}"),
                        expected: arity,
                        found: args.len(),
                    });
                }
                args.iter().try_for_each(|a| self.check_term(a))
            }
        }
    }

    /// Checks symbol arities, relation-variable arities and the identity flag.
    /// Schematic nodes are accepted only when `schematic` is set.
    pub fn check(&self, f: &Formula, schematic: bool) -> Result<(), FormulaError> {
        use Formula::*;
        match f {
            Pred(p, ts) => {
                let arity = *self
                    .predicates
                    .get(*p as usize)
                    .ok_or_else(|| FormulaError::UnknownSymbol(alloc::format!("P{p}")))?;
                if arity != ts.len() {
                    return Err(FormulaError::ArityMismatch {
                        symbol: alloc::format!("P{p}"),
                        expected: arity,
                        found: ts.len(),
                    });
                }
                ts.iter().try_for_each(|t| self.check_term(t))
            }
            Eq(a, b) => {
                if !self.identity {
                    return Err(FormulaError::IdentityDisabled);
                }
                self.check_term(a)?;
                self.check_term(b)
            }
            Apply(v, ts) => {
                if v.arity as usize != ts.len() {
                    return Err(FormulaError::ArityMismatch {
                        symbol: alloc::format!("{v}"),
                        expected: v.arity as usize,
                        found: ts.len(),
                    });
                }
                ts.iter().try_for_each(|t| self.check_term(t))
            }
            SoEq(a, b) => {
                if !self.identity {
                    return Err(FormulaError::IdentityDisabled);
                }
                if a.arity != b.arity {
                    return Err(FormulaError::SoArityMismatch(*a, *b));
                }
                Ok(())
            }
            Not(a) | Forall(_, a) | Exists(_, a) | ForallSo(_, a) | ExistsSo(_, a) => {
                self.check(a, schematic)
            }
            Inst(_, a) => {
                if !schematic {
                    return Err(FormulaError::Schematic);
                }
                self.check(a, schematic)
            }
            And(a, b) | Or(a, b) | Implies(a, b) | Iff(a, b) => {
                self.check(a, schematic)?;
                self.check(b, schematic)
            }
        }
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = Vec::new();
        for (i, a) in self.predicates.iter().enumerate() {
            parts.push(alloc::format!("P{i}/{a}"));
        }
        for (i, a) in self.functions.iter().enumerate() {
            parts.push(alloc::format!("f{i}/{a}"));
        }
        for i in 0..self.constants {
            parts.push(alloc::format!("c{i}"));
        }
        if !self.identity {
            parts.push(String::from("noeq"));
        }
        f.write_str(&parts.join(","))
    }
}

impl FromStr for Signature {
    type Err = FormulaError;

    /// Comma-separated declarations: `P0/1`, `f0/2`, `c0`, and the flag
    /// `noeq` to drop identity. Indices must be contiguous from zero.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut preds: Vec<(u32, usize)> = Vec::new();
        let mut funcs: Vec<(u32, usize)> = Vec::new();
        let mut consts: Vec<u32> = Vec::new();
        let mut identity = true;
        for raw in s.split(',') {
            let item = raw.trim();
            if item.is_empty() {
                continue;
            }
            if item == "noeq" {
                identity = false;
                continue;
            }
            let bad = || FormulaError::BadSignature(String::from(item));
            let (name, arity) = match item.split_once('/') {
                Some((n, a)) => (n.trim(), Some(a.trim().parse::<usize>().map_err(|_| bad())?)),
                None => (item, None),
            };
            let (head, digits) = name.split_at(1);
            let index: u32 = digits.parse().map_err(|_| bad())?;
            match (head, arity) {
                ("P", Some(a)) => preds.push((index, a)),
                ("f", Some(a)) => funcs.push((index, a)),
                ("c", None) | ("c", Some(0)) => consts.push(index),
                _ => return Err(bad()),
            }
        }
        let contiguous = |mut idx: Vec<u32>, what: &str| -> Result<(), FormulaError> {
            idx.sort_unstable();
            for (i, v) in idx.iter().enumerate() {
                if *v as usize != i {
                    return Err(FormulaError::BadSignature(alloc::format!(
                        "{what} indices must be 0..n without gaps"
                    )));
                }
            }
            Ok(())
        };
        contiguous(preds.iter().map(|p| p.0).collect(), "predicate")?;
        contiguous(funcs.iter().map(|p| p.0).collect(), "function")?;
        contiguous(consts.clone(), "constant")?;
        preds.sort_unstable();
        funcs.sort_unstable();
        let sig = Signature {
            predicates: preds.into_iter().map(|p| p.1).collect(),
            functions: funcs.into_iter().map(|p| p.1).collect(),
            constants: consts.len(),
            identity,
        };
        sig.validate()?;
        Ok(sig)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sig() -> Signature {
        "P0/1,P1/2,f0/1,c0".parse().unwrap()
    }

    #[test]
    fn free_variables_examples() {
        let s = sig();
        let f = parse("∀x0 X0(x0)", &s).unwrap();
        let (fo, so) = f.free_variables();
        assert!(fo.is_empty());
        assert_eq!(so.into_iter().collect::<Vec<_>>(), [SoVar::new(0, 1)]);

        let f = parse("x0 = y0", &s).unwrap();
        let (fo, so) = f.free_variables();
        assert_eq!(fo.len(), 2);
        assert!(so.is_empty());

        let f = parse("∀X0 (X0(x0) ∧ X1(x0))", &s).unwrap();
        let (fo, so) = f.free_variables();
        assert_eq!(fo.into_iter().collect::<Vec<_>>(), [FoVar(0)]);
        assert_eq!(so.into_iter().collect::<Vec<_>>(), [SoVar::new(1, 1)]);
    }

    #[test]
    fn sentences() {
        let s = sig();
        assert!(parse("∀x ∃X ∀y (X(y) ↔ x = y)", &s).unwrap().is_sentence());
        assert!(!parse("P0(x0)", &s).unwrap().is_sentence());
        assert!(parse("∀X0 ∀x0 X0(x0)", &s).unwrap().is_sentence());
    }

    #[test]
    fn normalize_removes_sugar() {
        let s = sig();
        let f = parse("∃x0 (P0(x0) ∨ P0(c0)) → ∃X0 X0(c0) ↔ P0(x1)", &s).unwrap();
        let n = f.normalize();
        assert!(n.is_normalized());
        assert!(!f.is_normalized());
        assert_eq!(n.normalize(), n);
    }

    #[test]
    fn implication_view() {
        let s = sig();
        let f = parse("P0(x0) → P0(x1)", &s).unwrap().normalize();
        let (a, b) = f.as_imp().unwrap();
        assert_eq!(*a, Formula::Pred(0, alloc::vec![Term::var(0)]));
        assert_eq!(*b, Formula::Pred(0, alloc::vec![Term::var(1)]));
        let g = parse("P0(x0) ↔ P0(x1)", &s).unwrap().normalize();
        assert!(g.as_iff().is_some());
    }

    #[test]
    fn signature_round_trip() {
        let s: Signature = "P0/1,P1/2,f0/1,c0,c1,noeq".parse().unwrap();
        assert_eq!(s.predicates, [1, 2]);
        assert_eq!(s.constants, 2);
        assert!(!s.identity);
        assert_eq!(s.to_string().parse::<Signature>().unwrap(), s);
        assert!("P1/1".parse::<Signature>().is_err());
        assert!("P0/0".parse::<Signature>().is_err());
    }

    #[test]
    fn check_rejects_identity_when_disabled() {
        let s = sig().without_identity();
        let f = Formula::eq(Term::var(0), Term::var(1));
        assert_eq!(s.check(&f, false), Err(FormulaError::IdentityDisabled));
    }
}
