use alloc::vec::Vec;

use super::regular::{EntryKind, Membership, RegularEntry};
use super::{BooleanAlgebra, BooleanError};

/// Default witness-search budget per entry.
pub const DEFAULT_BUDGET: usize = 10_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Step<E> {
    /// `b := b ∧ c*` for a join entry, `b := b ∧ c` for a meet entry.
    Bound { entry: usize },
    /// `b := b ∧ s` (join) or `b := b ∧ s*` (meet) for member `index`.
    Witness { entry: usize, index: usize, member: E },
    /// `b := b ∧ e` when `member`, else `b := b ∧ e*`.
    Decide { element: E, member: bool },
}

/// A finite stage of the construction: a decreasing chain of nonzero
/// elements. The filter it approximates is `{e | b_T ≤ e}`.
#[derive(Clone, Debug)]
pub struct UltrafilterApprox<E> {
    pub chain: Vec<E>,
    pub steps: Vec<Step<E>>,
}

impl<E: Clone> UltrafilterApprox<E> {
    pub fn last(&self) -> &E {
        self.chain.last().expect("chain starts with b_0")
    }

    pub fn contains<A: BooleanAlgebra<Elem = E>>(&self, alg: &A, e: &E) -> bool {
        alg.le(self.last(), e)
    }

    pub fn membership<'a, A: BooleanAlgebra<Elem = E>>(&'a self, alg: &'a A) -> impl Membership<E> + 'a {
        move |e: &E| self.contains(alg, e)
    }

    /// Decisions taken on enumerated elements, in order.
    pub fn decisions(&self) -> impl Iterator<Item = (&E, bool)> {
        self.steps.iter().filter_map(|s| match s {
            Step::Decide { element, member } => Some((element, *member)),
            _ => None,
        })
    }
}

/// Builds a chain `b_0 ≥ b_1 ≥ ...` of nonzero elements starting from the
/// complement of `avoid`, handling the entries in order and deciding one
/// enumerated element after each entry, then up to `decisions` elements in
/// total.
pub fn rs_construct<A: BooleanAlgebra>(
    alg: &A,
    entries: &[RegularEntry<A::Elem>],
    avoid: &A::Elem,
    decisions: usize,
    budget: usize,
) -> Result<UltrafilterApprox<A::Elem>, BooleanError> {
    if alg.is_one(avoid) {
        return Err(BooleanError::AvoidUnit);
    }
    let mut out = UltrafilterApprox {
        chain: alloc::vec![alg.complement(avoid)],
        steps: Vec::new(),
    };
    let mut next_element = 0usize;
    let mut decided = 0usize;
    let mut decide = |out: &mut UltrafilterApprox<A::Elem>| -> bool {
        if decided >= decisions {
            return false;
        }
        let Some(e) = alg.element(next_element) else {
            return false;
        };
        next_element += 1;
        decided += 1;
        let b = out.last().clone();
        let with = alg.meet(&b, &e);
        let member = !alg.is_zero(&with);
        let b = if member {
            with
        } else {
            alg.meet(&b, &alg.complement(&e))
        };
        out.chain.push(b);
        out.steps.push(Step::Decide { element: e, member });
        true
    };
    for (i, entry) in entries.iter().enumerate() {
        handle_entry(alg, &mut out, i, entry, budget)?;
        decide(&mut out);
    }
    while decide(&mut out) {}
    Ok(out)
}

fn handle_entry<A: BooleanAlgebra>(
    alg: &A,
    out: &mut UltrafilterApprox<A::Elem>,
    i: usize,
    entry: &RegularEntry<A::Elem>,
    budget: usize,
) -> Result<(), BooleanError> {
    let b = out.last().clone();
    let join = entry.kind == EntryKind::Join;
    let away = if join {
        alg.complement(&entry.bound)
    } else {
        entry.bound.clone()
    };
    let candidate = alg.meet(&b, &away);
    if !alg.is_zero(&candidate) {
        out.chain.push(candidate);
        out.steps.push(Step::Bound { entry: i });
        return Ok(());
    }
    // Here b lies below the join (resp. outside the meet), so by
    // distributivity some member meets b (resp. b ∧ s* ≠ 0).
    for index in 0..entry.inspect_len(budget) {
        let Some(s) = entry.member(index) else { break };
        let in_bound = if join {
            alg.le(&s, &entry.bound)
        } else {
            alg.le(&entry.bound, &s)
        };
        if !in_bound {
            return Err(BooleanError::ClaimRefuted(entry.label.clone()));
        }
        let side = if join { s.clone() } else { alg.complement(&s) };
        let next = alg.meet(&b, &side);
        if !alg.is_zero(&next) {
            out.chain.push(next);
            out.steps.push(Step::Witness {
                entry: i,
                index,
                member: s,
            });
            return Ok(());
        }
    }
    if entry.is_finite() {
        Err(BooleanError::ClaimRefuted(entry.label.clone()))
    } else {
        Err(BooleanError::BudgetExhausted(entry.label.clone()))
    }
}
