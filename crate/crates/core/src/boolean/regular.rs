use alloc::rc::Rc;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use super::{BooleanAlgebra, BooleanError};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum EntryKind {
    Join,
    Meet,
}

impl fmt::Display for EntryKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            EntryKind::Join => "join",
            EntryKind::Meet => "meet",
        })
    }
}

/// The members of an entry: an explicit list, or a named infinite
/// enumeration `n ↦ s_n`.
#[derive(Clone)]
pub enum Members<E> {
    Finite(Vec<E>),
    Infinite {
        name: String,
        generate: Rc<dyn Fn(usize) -> E>,
    },
}

impl<E: fmt::Debug> fmt::Debug for Members<E> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Members::Finite(v) => f.debug_tuple("Finite").field(v).finish(),
            Members::Infinite { name, .. } => f.debug_tuple("Infinite").field(name).finish(),
        }
    }
}

/// A set `S` with its designated join or meet.
#[derive(Clone, Debug)]
pub struct RegularEntry<E> {
    pub kind: EntryKind,
    pub members: Members<E>,
    pub bound: E,
    pub label: String,
}

impl<E: Clone> RegularEntry<E> {
    pub fn finite(kind: EntryKind, members: Vec<E>, bound: E, label: &str) -> Self {
        RegularEntry {
            kind,
            members: Members::Finite(members),
            bound,
            label: label.into(),
        }
    }

    pub fn infinite(kind: EntryKind, name: &str, generate: impl Fn(usize) -> E + 'static, bound: E) -> Self {
        RegularEntry {
            kind,
            members: Members::Infinite {
                name: name.into(),
                generate: Rc::new(generate),
            },
            bound,
            label: name.into(),
        }
    }

    pub fn is_finite(&self) -> bool {
        matches!(self.members, Members::Finite(_))
    }

    pub fn member(&self, i: usize) -> Option<E> {
        match &self.members {
            Members::Finite(v) => v.get(i).cloned(),
            Members::Infinite { generate, .. } => Some(generate(i)),
        }
    }

    /// How many members to inspect under `budget`.
    pub fn inspect_len(&self, budget: usize) -> usize {
        match &self.members {
            Members::Finite(v) => v.len(),
            Members::Infinite { .. } => budget,
        }
    }

    pub fn generator_name(&self) -> Option<&str> {
        match &self.members {
            Members::Finite(_) => None,
            Members::Infinite { name, .. } => Some(name),
        }
    }
}

/// Outcome of verifying a claimed bound.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EntryCheck {
    Exact,
    /// Bound checked on the first `n` members only.
    PrefixVerified(usize),
}

/// Checks that the bound of `e` is the join (meet) of its members: exactly
/// for finite entries, on the first `prefix` members otherwise.
pub fn verify_entry<A: BooleanAlgebra>(
    alg: &A,
    e: &RegularEntry<A::Elem>,
    prefix: usize,
) -> Result<EntryCheck, BooleanError> {
    let bounded = |s: &A::Elem| match e.kind {
        EntryKind::Join => alg.le(s, &e.bound),
        EntryKind::Meet => alg.le(&e.bound, s),
    };
    let n = e.inspect_len(prefix);
    let members: Vec<A::Elem> = (0..n).filter_map(|i| e.member(i)).collect();
    if let Some(index) = members.iter().position(|s| !bounded(s)) {
        return Err(BooleanError::BoundViolated {
            entry: e.label.clone(),
            index,
        });
    }
    if e.is_finite() {
        let start = match e.kind {
            EntryKind::Join => alg.zero(),
            EntryKind::Meet => alg.one(),
        };
        let exact = members.iter().fold(start, |acc, s| match e.kind {
            EntryKind::Join => alg.join(&acc, s),
            EntryKind::Meet => alg.meet(&acc, s),
        });
        return if alg.equal(&exact, &e.bound) {
            Ok(EntryCheck::Exact)
        } else {
            Err(BooleanError::NotExtremal(e.label.clone()))
        };
    }
    // A member that bounds the whole prefix and sits strictly inside the
    // claim would be a better bound.
    for s in &members {
        let bounds_all = members.iter().all(|t| match e.kind {
            EntryKind::Join => alg.le(t, s),
            EntryKind::Meet => alg.le(s, t),
        });
        if bounds_all && !alg.equal(s, &e.bound) {
            return Err(BooleanError::NotExtremal(e.label.clone()));
        }
    }
    Ok(EntryCheck::PrefixVerified(members.len()))
}

/// A membership procedure for a (candidate) ultrafilter.
pub trait Membership<E> {
    fn contains(&self, e: &E) -> bool;

    /// Uniform knowledge about a named infinite enumeration: whether some
    /// member lies in the filter, when the procedure can tell without
    /// inspecting members one by one.
    fn some_member(&self, _generator: &str) -> Option<bool> {
        None
    }

    /// Whether every member lies in the filter, when known uniformly.
    fn every_member(&self, _generator: &str) -> Option<bool> {
        None
    }
}

impl<E, F: Fn(&E) -> bool> Membership<E> for F {
    fn contains(&self, e: &E) -> bool {
        self(e)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Compatible,
    /// Definitively incompatible. `witness` is the offending member, when a
    /// single member shows it.
    Incompatible { witness: Option<usize> },
    /// The budget ran out before a decision.
    Inconclusive { inspected: usize },
}

impl Verdict {
    pub fn is_compatible(&self) -> bool {
        *self == Verdict::Compatible
    }
}

/// Whether `u` respects the designated bound of `e`: `⋁S ∈ U` iff some
/// member is in `U`, `⋀S ∈ U` iff every member is.
pub fn check_f_compatible<E: Clone>(
    u: &dyn Membership<E>,
    e: &RegularEntry<E>,
    budget: usize,
) -> Verdict {
    let n = e.inspect_len(budget);
    let name = e.generator_name();
    match e.kind {
        EntryKind::Join => {
            let found = (0..n).find(|&i| e.member(i).is_some_and(|s| u.contains(&s)));
            match (u.contains(&e.bound), found) {
                (true, Some(_)) => Verdict::Compatible,
                (false, Some(i)) => Verdict::Incompatible { witness: Some(i) },
                (false, None) => Verdict::Compatible,
                (true, None) if e.is_finite() => Verdict::Incompatible { witness: None },
                (true, None) => match name.and_then(|g| u.some_member(g)) {
                    Some(false) => Verdict::Incompatible { witness: None },
                    _ => Verdict::Inconclusive { inspected: n },
                },
            }
        }
        EntryKind::Meet => {
            // The bound lies below every member, so upward closure puts
            // them all in.
            if u.contains(&e.bound) {
                return Verdict::Compatible;
            }
            match (0..n).find(|&i| e.member(i).is_some_and(|s| !u.contains(&s))) {
                Some(_) => Verdict::Compatible,
                None if e.is_finite() => Verdict::Incompatible { witness: None },
                None => match name.and_then(|g| u.every_member(g)) {
                    Some(true) => Verdict::Incompatible { witness: None },
                    _ => Verdict::Inconclusive { inspected: n },
                },
            }
        }
    }
}

/// Every subset of a finite carrier with its join and its meet.
pub fn complete_regular_family<A: BooleanAlgebra>(
    alg: &A,
) -> Result<Vec<RegularEntry<A::Elem>>, BooleanError> {
    let elems = all_elements(alg)?;
    if elems.len() > 16 {
        return Err(BooleanError::SizeGuard(alloc::format!(
            "2^{} subsets of the carrier",
            elems.len()
        )));
    }
    let mut out = Vec::new();
    for mask in 0..1u32 << elems.len() {
        let members: Vec<A::Elem> = elems
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, e)| e.clone())
            .collect();
        let join = members.iter().fold(alg.zero(), |a, s| alg.join(&a, s));
        let meet = members.iter().fold(alg.one(), |a, s| alg.meet(&a, s));
        out.push(RegularEntry::finite(
            EntryKind::Join,
            members.clone(),
            join,
            &alloc::format!("join#{mask}"),
        ));
        out.push(RegularEntry::finite(
            EntryKind::Meet,
            members,
            meet,
            &alloc::format!("meet#{mask}"),
        ));
    }
    Ok(out)
}

/// The whole carrier of a finite algebra.
pub fn all_elements<A: BooleanAlgebra>(alg: &A) -> Result<Vec<A::Elem>, BooleanError> {
    match alg.cardinality() {
        Some(c) if c <= 1 << 16 => Ok((0..c as usize).map_while(|i| alg.element(i)).collect()),
        Some(c) => Err(BooleanError::SizeGuard(alloc::format!("{c} elements"))),
        None => Err(BooleanError::NotFinite),
    }
}

/// Clauses (i)-(iv) over the given elements: `1 ∈ U`, `0 ∉ U`, closure
/// under meets, upward closure, and `a ∈ U` or `a* ∈ U`.
pub fn is_ultrafilter_on<A: BooleanAlgebra>(alg: &A, u: &dyn Membership<A::Elem>, sample: &[A::Elem]) -> bool {
    if !u.contains(&alg.one()) || u.contains(&alg.zero()) {
        return false;
    }
    for a in sample {
        let ina = u.contains(a);
        if ina == u.contains(&alg.complement(a)) {
            return false;
        }
        for b in sample {
            if ina && u.contains(b) && !u.contains(&alg.meet(a, b)) {
                return false;
            }
            if ina && alg.le(a, b) && !u.contains(b) {
                return false;
            }
        }
    }
    true
}

/// Exhaustive check over a finite algebra.
pub fn is_ultrafilter<A: BooleanAlgebra>(alg: &A, u: &dyn Membership<A::Elem>) -> Result<bool, BooleanError> {
    Ok(is_ultrafilter_on(alg, u, &all_elements(alg)?))
}
