//! Countable families `Θ` of first-order formulas, enumerated as `θ^{l+1}_n`.
//!
//! A member carries its defined-slot variables `x̄` (their number is the arity
//! of the relation it defines) and its parameter variables `ȳ`. The A6
//! instantiation and the omega rule use the per-arity enumeration
//! [`ThetaFamily::member`]; [`ThetaFamily::theta_at`] walks all arities in one
//! sequence.
//!
//! Enumerated families cache their prefix behind a `RefCell`, so they are
//! cheap to query repeatedly but not `Sync`.

pub mod enumerate;
mod prefix;

use alloc::boxed::Box;
use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::cell::RefCell;
use core::fmt;

use crate::formulas::{
    a6_instantiate, alpha_eq, substitute_fo_many, FoVar, Formula, FormulaError, Signature, SoVar,
    Term,
};
use enumerate::FormulaStream;

pub use prefix::{classify_prefix, prefix_blocks, prenex, PrefixClass};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThetaMember {
    /// Position `n` among the members of the same arity.
    pub index: usize,
    pub formula: Formula,
    pub slots: Vec<FoVar>,
    pub params: Vec<FoVar>,
}

impl ThetaMember {
    pub fn arity(&self) -> u32 {
        self.slots.len() as u32
    }

    /// Free variables are exactly `x̄ ∪ ȳ`, the two lists are disjoint and
    /// duplicate free, `x̄` is nonempty and the formula is first order.
    pub fn is_well_formed(&self) -> bool {
        let mut all: Vec<FoVar> = self.slots.iter().chain(&self.params).copied().collect();
        let n = all.len();
        all.sort_unstable();
        all.dedup();
        all.len() == n
            && !self.slots.is_empty()
            && self.formula.is_first_order()
            && self.formula.free_fo() == all.into_iter().collect()
    }

    /// `∀ȳ ∃V ∀x̄ (V(x̄) ↔ θ(x̄, ȳ))` for a relation variable of index `v`.
    pub fn comprehension(&self, v: u32) -> Formula {
        let var = SoVar::new(v, self.arity());
        let args = self.slots.iter().map(|x| Term::Var(*x)).collect();
        let inner = Formula::forall_many(
            &self.slots,
            Formula::iff(Formula::Apply(var, args), self.formula.clone()),
        );
        Formula::forall_many(&self.params, Formula::exists_so(var, inner))
    }

    /// `φ^V_n`: see [`a6_instantiate`].
    pub fn instantiate(&self, f: &Formula, v: SoVar) -> Result<Formula, FormulaError> {
        a6_instantiate(f, v, &self.formula, &self.slots, &self.params)
    }
}

impl fmt::Display for ThetaMember {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let list = |vs: &[FoVar]| {
            vs.iter()
                .map(|v| v.to_string())
                .collect::<Vec<_>>()
                .join(",")
        };
        write!(
            f,
            "θ^{}_{} [{} ; {}] {}",
            self.arity(),
            self.index,
            list(&self.slots),
            list(&self.params),
            self.formula
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FamilyKind {
    WeakSo { arity: u32 },
    Dsl,
    AllFo { params: bool },
    ExistsN(usize),
    ForallN(usize),
    Custom,
}

pub trait ThetaFamily {
    fn name(&self) -> String;
    fn signature(&self) -> &Signature;
    fn kind(&self) -> FamilyKind;
    fn supports_arity(&self, arity: u32) -> bool;
    /// `θ^{arity}_n`, or `None` when the family has no such member.
    fn member(&self, arity: u32, n: usize) -> Option<ThetaMember>;
    /// The `n`-th member across all arities. `None` only for families with
    /// fewer than `n + 1` members.
    fn theta_at(&self, n: usize) -> Option<ThetaMember>;
    /// Whether `formula`, read with the given slot and parameter split, is a
    /// member of the family.
    fn contains(&self, formula: &Formula, slots: &[FoVar], params: &[FoVar]) -> bool;
    /// Every member, for families given by an explicit finite list.
    fn finite_members(&self) -> Option<Vec<ThetaMember>> {
        None
    }
}

/// `[θ_0, ..., θ_N]` in the global order.
pub fn enumerate_up_to(fam: &dyn ThetaFamily, n: usize) -> Vec<ThetaMember> {
    (0..=n).map_while(|i| fam.theta_at(i)).collect()
}

fn split_ok(formula: &Formula, slots: &[FoVar], params: &[FoVar]) -> bool {
    ThetaMember {
        index: 0,
        formula: formula.clone(),
        slots: slots.to_vec(),
        params: params.to_vec(),
    }
    .is_well_formed()
}

/// Weak second-order logic generalized to arity `k`:
/// `θ_n = ⋁_{i≤n} (x_1 = y_{i,1} ∧ ... ∧ x_k = y_{i,k})`.
#[derive(Clone, Debug)]
pub struct WeakSo {
    sig: Signature,
    arity: u32,
}

impl WeakSo {
    pub fn new(sig: &Signature, arity: u32) -> Self {
        assert!(arity >= 1);
        WeakSo {
            sig: sig.clone(),
            arity,
        }
    }

    fn build(&self, n: usize, slots: &[FoVar], params: &[FoVar]) -> Formula {
        let k = self.arity as usize;
        let disjuncts = (0..=n)
            .map(|i| {
                let eqs = (0..k)
                    .map(|j| Formula::eq(Term::Var(slots[j]), Term::Var(params[i * k + j])))
                    .collect();
                Formula::conjunction(eqs).expect("arity >= 1")
            })
            .collect();
        Formula::disjunction(disjuncts).expect("n + 1 >= 1 disjuncts")
    }
}

impl ThetaFamily for WeakSo {
    fn name(&self) -> String {
        alloc::format!("weak-so:{}", self.arity)
    }
    fn signature(&self) -> &Signature {
        &self.sig
    }
    fn kind(&self) -> FamilyKind {
        FamilyKind::WeakSo { arity: self.arity }
    }
    fn supports_arity(&self, arity: u32) -> bool {
        arity == self.arity
    }
    fn member(&self, arity: u32, n: usize) -> Option<ThetaMember> {
        if arity != self.arity {
            return None;
        }
        let k = self.arity;
        let slots: Vec<FoVar> = (0..k).map(FoVar).collect();
        let params: Vec<FoVar> = (0..(n as u32 + 1) * k).map(|i| FoVar(k + i)).collect();
        Some(ThetaMember {
            index: n,
            formula: self.build(n, &slots, &params),
            slots,
            params,
        })
    }
    fn theta_at(&self, n: usize) -> Option<ThetaMember> {
        self.member(self.arity, n)
    }
    fn contains(&self, formula: &Formula, slots: &[FoVar], params: &[FoVar]) -> bool {
        let k = self.arity as usize;
        if slots.len() != k || params.is_empty() || !params.len().is_multiple_of(k) {
            return false;
        }
        if !split_ok(formula, slots, params) {
            return false;
        }
        let n = params.len() / k - 1;
        alpha_eq(&formula.normalize(), &self.build(n, slots, params).normalize())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Filter {
    Dsl,
    AllFo { params: bool },
    ExistsN(usize),
    ForallN(usize),
}

struct Index {
    stream: FormulaStream,
    processed: usize,
    /// `(stream position, arity)` in global order.
    global: Vec<(usize, u32)>,
    by_arity: BTreeMap<u32, Vec<usize>>,
}

/// A family realized by filtering the size-ordered formula enumeration.
pub struct Enumerated {
    sig: Signature,
    filter: Filter,
    index: RefCell<Index>,
}

impl Enumerated {
    fn new(sig: &Signature, filter: Filter) -> Self {
        let max_context = match filter {
            Filter::Dsl => Some(1),
            _ => None,
        };
        Enumerated {
            sig: sig.clone(),
            filter,
            index: RefCell::new(Index {
                stream: FormulaStream::new(sig, max_context),
                processed: 0,
                global: Vec::new(),
                by_arity: BTreeMap::new(),
            }),
        }
    }

    /// Definable subset logic: all formulas in one free variable.
    pub fn dsl(sig: &Signature) -> Self {
        Self::new(sig, Filter::Dsl)
    }

    /// All first-order formulas. With `params`, a formula with `c` free
    /// variables yields members of every arity `1..=c`, the first variables
    /// being slots and the rest parameters; without, only arity `c`.
    pub fn all_fo(sig: &Signature, params: bool) -> Self {
        Self::new(sig, Filter::AllFo { params })
    }

    /// `∃_n` formulas with parameters.
    pub fn exists_n(sig: &Signature, n: usize) -> Self {
        Self::new(sig, Filter::ExistsN(n))
    }

    /// `∀_n` formulas with parameters.
    pub fn forall_n(sig: &Signature, n: usize) -> Self {
        Self::new(sig, Filter::ForallN(n))
    }

    fn arities_of(&self, f: &Formula, c: u32) -> Option<core::ops::RangeInclusive<u32>> {
        match self.filter {
            Filter::Dsl | Filter::AllFo { params: false } => Some(c..=c),
            Filter::ExistsN(n) if !classify_prefix(f).is_exists_n(n) => None,
            Filter::ForallN(n) if !classify_prefix(f).is_forall_n(n) => None,
            _ => Some(1..=c),
        }
    }

    fn process(&self, ix: &mut Index) {
        while ix.processed < ix.stream.items.len() {
            let pos = ix.processed;
            ix.processed += 1;
            let (f, c) = &ix.stream.items[pos];
            for a in self.arities_of(f, *c).into_iter().flatten() {
                ix.by_arity.entry(a).or_default().push(ix.global.len());
                ix.global.push((pos, a));
            }
        }
    }

    fn make(&self, ix: &Index, global: usize) -> ThetaMember {
        let (pos, arity) = ix.global[global];
        let (f, c) = &ix.stream.items[pos];
        let index = ix.by_arity[&arity]
            .iter()
            .position(|g| *g == global)
            .expect("indexed");
        ThetaMember {
            index,
            formula: f.clone(),
            slots: (0..arity).map(FoVar).collect(),
            params: (arity..*c).map(FoVar).collect(),
        }
    }
}

impl ThetaFamily for Enumerated {
    fn name(&self) -> String {
        match self.filter {
            Filter::Dsl => "dsl".into(),
            Filter::AllFo { params: true } => "all-fo".into(),
            Filter::AllFo { params: false } => "all-fo:noparams".into(),
            Filter::ExistsN(n) => alloc::format!("exists-n:{n}"),
            Filter::ForallN(n) => alloc::format!("forall-n:{n}"),
        }
    }
    fn signature(&self) -> &Signature {
        &self.sig
    }
    fn kind(&self) -> FamilyKind {
        match self.filter {
            Filter::Dsl => FamilyKind::Dsl,
            Filter::AllFo { params } => FamilyKind::AllFo { params },
            Filter::ExistsN(n) => FamilyKind::ExistsN(n),
            Filter::ForallN(n) => FamilyKind::ForallN(n),
        }
    }
    fn supports_arity(&self, arity: u32) -> bool {
        match self.filter {
            Filter::Dsl => arity == 1,
            _ => arity >= 1,
        }
    }
    fn member(&self, arity: u32, n: usize) -> Option<ThetaMember> {
        if !self.supports_arity(arity) {
            return None;
        }
        let mut ix = self.index.borrow_mut();
        loop {
            self.process(&mut ix);
            if let Some(g) = ix.by_arity.get(&arity).and_then(|l| l.get(n)).copied() {
                return Some(self.make(&ix, g));
            }
            if !ix.stream.grow() {
                return None;
            }
        }
    }
    fn theta_at(&self, n: usize) -> Option<ThetaMember> {
        let mut ix = self.index.borrow_mut();
        loop {
            self.process(&mut ix);
            if n < ix.global.len() {
                return Some(self.make(&ix, n));
            }
            if !ix.stream.grow() {
                return None;
            }
        }
    }
    fn contains(&self, formula: &Formula, slots: &[FoVar], params: &[FoVar]) -> bool {
        if !split_ok(formula, slots, params) || self.sig.check(formula, false).is_err() {
            return false;
        }
        match self.filter {
            Filter::Dsl => slots.len() == 1 && params.is_empty(),
            Filter::AllFo { params: p } => p || params.is_empty(),
            Filter::ExistsN(n) => classify_prefix(formula).is_exists_n(n),
            Filter::ForallN(n) => classify_prefix(formula).is_forall_n(n),
        }
    }
}

/// An explicit finite list of members. Per-arity enumeration cycles through
/// the members of that arity, so the enumeration stays total.
#[derive(Clone, Debug)]
pub struct Custom {
    name: String,
    sig: Signature,
    members: Vec<ThetaMember>,
}

impl Custom {
    pub fn new(
        name: &str,
        sig: &Signature,
        members: Vec<(Formula, Vec<FoVar>, Vec<FoVar>)>,
    ) -> Result<Self, FormulaError> {
        let mut counts: BTreeMap<u32, usize> = BTreeMap::new();
        let mut out = Vec::new();
        for (formula, slots, params) in members {
            sig.check(&formula, false)?;
            let arity = slots.len() as u32;
            let c = counts.entry(arity).or_default();
            let m = ThetaMember {
                index: *c,
                formula,
                slots,
                params,
            };
            *c += 1;
            if !m.is_well_formed() {
                return Err(FormulaError::BadSignature(alloc::format!(
                    "member {} must be first order with free variables exactly its slots and parameters",
                    m.formula
                )));
            }
            out.push(m);
        }
        Ok(Custom {
            name: name.into(),
            sig: sig.clone(),
            members: out,
        })
    }

    pub fn members(&self) -> &[ThetaMember] {
        &self.members
    }
}

impl ThetaFamily for Custom {
    fn name(&self) -> String {
        self.name.clone()
    }
    fn signature(&self) -> &Signature {
        &self.sig
    }
    fn kind(&self) -> FamilyKind {
        FamilyKind::Custom
    }
    fn finite_members(&self) -> Option<Vec<ThetaMember>> {
        Some(self.members.clone())
    }
    fn supports_arity(&self, arity: u32) -> bool {
        self.members.iter().any(|m| m.arity() == arity)
    }
    fn member(&self, arity: u32, n: usize) -> Option<ThetaMember> {
        let of: Vec<&ThetaMember> = self.members.iter().filter(|m| m.arity() == arity).collect();
        if of.is_empty() {
            return None;
        }
        let mut m = of[n % of.len()].clone();
        m.index = n;
        Some(m)
    }
    fn theta_at(&self, n: usize) -> Option<ThetaMember> {
        if self.members.is_empty() {
            return None;
        }
        Some(self.members[n % self.members.len()].clone())
    }
    fn contains(&self, formula: &Formula, slots: &[FoVar], params: &[FoVar]) -> bool {
        self.members.iter().any(|m| {
            if m.slots.len() != slots.len() || m.params.len() != params.len() {
                return false;
            }
            let renaming: Vec<(FoVar, Term)> = slots
                .iter()
                .zip(&m.slots)
                .chain(params.iter().zip(&m.params))
                .map(|(a, b)| (*a, Term::Var(*b)))
                .collect();
            let renamed = substitute_fo_many(formula, &renaming);
            split_ok(formula, slots, params)
                && alpha_eq(&renamed.normalize(), &m.formula.normalize())
        })
    }
}

/// Builds a built-in family from its command-line name:
/// `weak-so[:k]`, `dsl`, `all-fo`, `all-fo:noparams`, `exists-n:<n>`,
/// `forall-n:<n>`.
pub fn builtin(name: &str, sig: &Signature) -> Option<Box<dyn ThetaFamily>> {
    let (head, arg) = match name.split_once(':') {
        Some((h, a)) => (h, Some(a)),
        None => (name, None),
    };
    let num = |a: Option<&str>| a.and_then(|s| s.parse::<usize>().ok());
    Some(match (head, arg) {
        ("weak-so", None) => Box::new(WeakSo::new(sig, 1)),
        ("weak-so", Some(_)) => {
            let k = num(arg).filter(|k| *k >= 1)?;
            Box::new(WeakSo::new(sig, k as u32))
        }
        ("dsl", None) => Box::new(Enumerated::dsl(sig)),
        ("all-fo", None) => Box::new(Enumerated::all_fo(sig, true)),
        ("all-fo", Some("noparams")) => Box::new(Enumerated::all_fo(sig, false)),
        ("exists-n", Some(_)) => Box::new(Enumerated::exists_n(sig, num(arg)?)),
        ("forall-n", Some(_)) => Box::new(Enumerated::forall_n(sig, num(arg)?)),
        _ => return None,
    })
}
