use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use super::kfamily::DefinableFamily;
use super::relation::{decode, tuple_count, Relation};
use super::structure::FiniteStructure;
use super::StructureError;
use crate::formulas::{FoVar, Formula, SoVar, Term, Variable};

/// Largest tuple space whose relations the full second-order evaluator will
/// enumerate (`2^20` relations).
pub const FULL_SO_LIMIT: usize = 20;

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Assignment {
    pub fo: BTreeMap<FoVar, u32>,
    pub so: BTreeMap<SoVar, Relation>,
}

impl Assignment {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_fo(mut self, v: FoVar, d: u32) -> Self {
        self.fo.insert(v, d);
        self
    }

    pub fn with_so(mut self, v: SoVar, r: Relation) -> Self {
        self.so.insert(v, r);
        self
    }

    /// Assigns `vars[i] := tuple[i]`.
    pub fn with_tuple(mut self, vars: &[FoVar], tuple: &[u32]) -> Self {
        for (v, d) in vars.iter().zip(tuple) {
            self.fo.insert(*v, *d);
        }
        self
    }
}

/// What second-order quantifiers range over.
#[derive(Clone, Copy, Debug)]
pub enum SoRange<'a> {
    /// The relations of a (materialized or exact) family, per arity.
    Family(&'a DefinableFamily),
    /// Every relation of the arity.
    Full,
    /// No second-order quantification allowed.
    FirstOrder,
}

pub(crate) struct Evaluator<'a> {
    pub s: &'a FiniteStructure,
    pub range: SoRange<'a>,
}

impl Evaluator<'_> {
    fn term(&self, t: &Term, a: &Assignment) -> Result<u32, StructureError> {
        match t {
            Term::Var(v) => a
                .fo
                .get(v)
                .copied()
                .ok_or(StructureError::Unassigned(Variable::Fo(*v))),
            Term::Const(c) => Ok(self.s.constant(*c as usize)),
            Term::App(f, args) => {
                let vals = args
                    .iter()
                    .map(|x| self.term(x, a))
                    .collect::<Result<Vec<_>, _>>()?;
                Ok(self.s.apply(*f as usize, &vals))
            }
        }
    }

    fn terms(&self, ts: &[Term], a: &Assignment) -> Result<Vec<u32>, StructureError> {
        ts.iter().map(|t| self.term(t, a)).collect()
    }

    /// Calls `f` on every relation in the range at `arity` until it returns
    /// `Some`.
    fn each_relation(
        &self,
        arity: u32,
        mut f: impl FnMut(Relation) -> Result<Option<bool>, StructureError>,
    ) -> Result<Option<bool>, StructureError> {
        match self.range {
            SoRange::Family(k) => {
                let rels = k.relations(arity);
                for r in rels {
                    if let Some(v) = f(r.clone())? {
                        return Ok(Some(v));
                    }
                }
                Ok(None)
            }
            SoRange::Full => {
                let cap = full_guard(self.s.size(), arity)?;
                for mask in 0..(1u64 << cap) {
                    if let Some(v) = f(Relation::from_mask(arity, self.s.size(), mask))? {
                        return Ok(Some(v));
                    }
                }
                Ok(None)
            }
            SoRange::FirstOrder => Err(StructureError::NotFirstOrder),
        }
    }

    pub fn eval(&self, f: &Formula, a: &mut Assignment) -> Result<bool, StructureError> {
        use Formula::*;
        Ok(match f {
            Pred(p, ts) => self.s.predicate(*p as usize).contains(&self.terms(ts, a)?),
            Eq(x, y) => self.term(x, a)? == self.term(y, a)?,
            Apply(v, ts) => {
                let args = self.terms(ts, a)?;
                a.so
                    .get(v)
                    .ok_or(StructureError::Unassigned(Variable::So(*v)))?
                    .contains(&args)
            }
            SoEq(x, y) => {
                let rx = a.so.get(x).ok_or(StructureError::Unassigned(Variable::So(*x)))?;
                let ry = a.so.get(y).ok_or(StructureError::Unassigned(Variable::So(*y)))?;
                rx == ry
            }
            Not(x) => !self.eval(x, a)?,
            And(x, y) => self.eval(x, a)? && self.eval(y, a)?,
            Or(x, y) => self.eval(x, a)? || self.eval(y, a)?,
            Implies(x, y) => !self.eval(x, a)? || self.eval(y, a)?,
            Iff(x, y) => self.eval(x, a)? == self.eval(y, a)?,
            Forall(v, body) | Exists(v, body) => {
                let universal = matches!(f, Forall(..));
                let saved = a.fo.get(v).copied();
                let mut result = universal;
                for d in 0..self.s.size() {
                    a.fo.insert(*v, d);
                    let r = self.eval(body, a);
                    match r {
                        Ok(b) if b != universal => {
                            result = !universal;
                            break;
                        }
                        Ok(_) => {}
                        Err(e) => {
                            restore_fo(a, *v, saved);
                            return Err(e);
                        }
                    }
                }
                restore_fo(a, *v, saved);
                result
            }
            ForallSo(v, body) | ExistsSo(v, body) => {
                let universal = matches!(f, ForallSo(..));
                let saved = a.so.remove(v);
                let found = self.each_relation(v.arity, |r| {
                    a.so.insert(*v, r);
                    let b = self.eval(body, a)?;
                    Ok(if b != universal { Some(b) } else { None })
                });
                a.so.remove(v);
                if let Some(r) = saved {
                    a.so.insert(*v, r);
                }
                match found? {
                    Some(_) => !universal,
                    None => universal,
                }
            }
            Inst(..) => return Err(StructureError::Schematic),
        })
    }

    /// The relation `{d̄ | φ[d̄/slots]}` under `base`.
    pub fn define(
        &self,
        f: &Formula,
        slots: &[FoVar],
        base: &Assignment,
    ) -> Result<Relation, StructureError> {
        let n = self.s.size();
        let k = slots.len() as u32;
        let mut r = Relation::empty(k, n);
        let mut a = base.clone();
        for i in 0..r.capacity() {
            let t = decode(n, k, i);
            for (v, d) in slots.iter().zip(&t) {
                a.fo.insert(*v, *d);
            }
            if self.eval(f, &mut a)? {
                r.set_index(i, true);
            }
        }
        Ok(r)
    }
}

fn restore_fo(a: &mut Assignment, v: FoVar, saved: Option<u32>) {
    match saved {
        Some(d) => {
            a.fo.insert(v, d);
        }
        None => {
            a.fo.remove(&v);
        }
    }
}

pub(crate) fn full_guard(n: u32, arity: u32) -> Result<usize, StructureError> {
    match tuple_count(n, arity) {
        Some(cap) if cap <= FULL_SO_LIMIT => Ok(cap),
        _ => Err(StructureError::Feasibility(alloc::format!(
            "enumerating all {arity}-ary relations on {n} elements exceeds 2^{FULL_SO_LIMIT}"
        ))),
    }
}

fn check_formula(s: &FiniteStructure, f: &Formula) -> Result<(), StructureError> {
    let mut sig = s.signature().clone();
    sig.identity = true;
    sig.check(f, false).map_err(StructureError::Formula)
}

fn check_assignment(s: &FiniteStructure, a: &Assignment) -> Result<(), StructureError> {
    if a.fo.values().any(|&d| d >= s.size()) {
        return Err(StructureError::Invalid("assigned element outside the domain".into()));
    }
    for (v, r) in &a.so {
        if r.arity() != v.arity || r.domain() != s.size() {
            return Err(StructureError::Invalid(alloc::format!(
                "{v} is assigned a relation of the wrong shape"
            )));
        }
    }
    Ok(())
}

/// Tarskian satisfaction for first-order formulas.
pub fn eval_fo(s: &FiniteStructure, f: &Formula, a: &Assignment) -> Result<bool, StructureError> {
    check_formula(s, f)?;
    check_assignment(s, a)?;
    let ev = Evaluator {
        s,
        range: SoRange::FirstOrder,
    };
    ev.eval(f, &mut a.clone())
}

/// Satisfaction in the standard structure `(A, K)`. Relation variables must
/// be assigned members of `K`.
pub fn eval_so(
    s: &FiniteStructure,
    k: &DefinableFamily,
    f: &Formula,
    a: &Assignment,
) -> Result<bool, StructureError> {
    check_formula(s, f)?;
    check_assignment(s, a)?;
    if k.domain() != s.size() {
        return Err(StructureError::Invalid("family and structure domains differ".into()));
    }
    for (v, r) in &a.so {
        if !k.contains(r) {
            return Err(StructureError::OutsideK(*v));
        }
    }
    let ev = Evaluator {
        s,
        range: SoRange::Family(k),
    };
    ev.eval(f, &mut a.clone())
}

/// Satisfaction with relation variables ranging over all relations.
pub fn eval_full_so(s: &FiniteStructure, f: &Formula, a: &Assignment) -> Result<bool, StructureError> {
    check_formula(s, f)?;
    check_assignment(s, a)?;
    for arity in f.so_arities() {
        full_guard(s.size(), arity)?;
    }
    let ev = Evaluator {
        s,
        range: SoRange::Full,
    };
    ev.eval(f, &mut a.clone())
}

/// The relation defined by `f` with `slots` free, other variables from `a`.
pub fn define_relation(
    s: &FiniteStructure,
    range: SoRange<'_>,
    f: &Formula,
    slots: &[FoVar],
    a: &Assignment,
) -> Result<Relation, StructureError> {
    check_formula(s, f)?;
    check_assignment(s, a)?;
    Evaluator { s, range }.define(f, slots, a)
}
