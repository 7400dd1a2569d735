//! Boolean algebras, regular families and compatible ultrafilters.
//!
//! Three carriers are built in: finite powersets, free algebras on finitely
//! many generators (the propositional Lindenbaum algebra) and the
//! finite-cofinite algebra on the naturals. Truth-set algebras of finite
//! structures live in [`crate::structures::TruthAlgebra`].

use alloc::string::String;
use alloc::vec::Vec;

use crate::formulas::{Formula, Variable};
use crate::structures::{instance_classes, LemmaItem, RegCheck, Relation, StructureError};

mod algebra;
mod carriers;
mod regular;
mod rs;

pub use algebra::BooleanAlgebra;
pub use carriers::{FinCof, FinCofSet, Free, PowerSet, Prop};
pub use regular::{
    all_elements, check_f_compatible, complete_regular_family, is_ultrafilter, is_ultrafilter_on,
    verify_entry, EntryCheck, EntryKind, Members, Membership, RegularEntry, Verdict,
};
pub use rs::{rs_construct, Step, UltrafilterApprox, DEFAULT_BUDGET};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum BooleanError {
    #[error("the avoided element must not be 1")]
    AvoidUnit,
    #[error("enumeration budget exhausted for entry {0}")]
    BudgetExhausted(String),
    #[error("claimed bound refuted for entry {0}")]
    ClaimRefuted(String),
    #[error("entry {entry}: member {index} is not below the bound")]
    BoundViolated { entry: String, index: usize },
    #[error("entry {0}: the bound is not the least one")]
    NotExtremal(String),
    #[error("size guard: {0}")]
    SizeGuard(String),
    #[error("the algebra is not finite")]
    NotFinite,
}

/// The ultrafilter of cofinite sets. It knows uniformly that no atom and
/// every coatom belongs to it.
#[derive(Clone, Copy, Debug, Default)]
pub struct CofiniteFilter;

impl Membership<FinCofSet> for CofiniteFilter {
    fn contains(&self, e: &FinCofSet) -> bool {
        e.is_cofinite()
    }
    fn some_member(&self, generator: &str) -> Option<bool> {
        match generator {
            "atoms" => Some(false),
            "coatoms" => Some(true),
            _ => None,
        }
    }
    fn every_member(&self, generator: &str) -> Option<bool> {
        self.some_member(generator)
    }
}

impl FinCof {
    /// Named enumerations: `atoms` (`n ↦ {n}`), `coatoms` (`n ↦ ω∖{n}`)
    /// and `initial` (`n ↦ {0, ..., n}`).
    pub fn generator(name: &str) -> Option<fn(usize) -> FinCofSet> {
        Some(match name {
            "atoms" => |n| FinCof::atom(n as u64),
            "coatoms" => |n| FinCofSet::cofinite([n as u64]),
            "initial" => |n| FinCofSet::finite(0..=n as u64),
            _ => return None,
        })
    }

    /// `⋁{n} = 1`.
    pub fn atoms_entry() -> RegularEntry<FinCofSet> {
        RegularEntry::infinite(EntryKind::Join, "atoms", |n| FinCof::atom(n as u64), FinCof.one())
    }
}

/// Entries built from the quantifier identities: for each `(φ, item, var)`,
/// the instance classes with the class of the quantified formula as their
/// designated meet or join.
pub fn lemma_family(
    cx: &RegCheck<'_>,
    items: &[(Formula, LemmaItem, Variable)],
) -> Result<Vec<RegularEntry<Relation>>, StructureError> {
    items
        .iter()
        .map(|(f, item, var)| {
            let (bound, members) = instance_classes(cx, f, *item, *var)?;
            let kind = if item.universal() {
                EntryKind::Meet
            } else {
                EntryKind::Join
            };
            Ok(RegularEntry::finite(
                kind,
                members,
                bound,
                &alloc::format!("({item}) {var} {f}"),
            ))
        })
        .collect()
}

#[cfg(test)]
mod tests;
