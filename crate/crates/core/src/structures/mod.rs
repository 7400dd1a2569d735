//! Finite structures, standard-structure semantics and the definable-relation
//! families `K`.

use alloc::string::String;

use crate::formulas::{FormulaError, SoVar, Variable};

mod algebra;
mod eval;
mod kfamily;
mod leibniz;
mod orbits;
mod relation;
mod structure;

pub use algebra::{
    instance_classes, lemma_reg_check, LemmaItem, RegCheck, RegOutcome, TruthAlgebra,
};
pub use eval::{
    define_relation, eval_fo, eval_full_so, eval_so, Assignment, SoRange, FULL_SO_LIMIT,
};
pub use kfamily::{
    exact_k, materialize_by_rank, materialize_k, reevaluate, DefinableFamily, Provenance,
    StandardModel,
    PARAMETER_LIMIT,
};
pub use leibniz::{leibniz_reduce, Reduction};
pub use orbits::{automorphisms, k_exact_orbits, orbits, UNION_LIMIT};
pub use relation::{decode, encode, tuple_count, Relation};
pub use structure::FiniteStructure;

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum StructureError {
    #[error("invalid structure: {0}")]
    Invalid(String),
    #[error("unassigned variable {0}")]
    Unassigned(Variable),
    #[error("{0} is assigned a relation outside the family")]
    OutsideK(SoVar),
    #[error("second-order quantifier in a first-order evaluation")]
    NotFirstOrder,
    #[error("feasibility guard: {0}")]
    Feasibility(String),
    #[error("schematic instantiation node cannot be evaluated")]
    Schematic,
    #[error("this oracle needs identity in the signature")]
    IdentityRequired,
    #[error("variable {0} is outside the truth algebra's variable budget")]
    UnsupportedVariable(Variable),
    #[error("signature mismatch: {0}")]
    SignatureMismatch(String),
    #[error(transparent)]
    Formula(#[from] FormulaError),
}

#[cfg(test)]
mod tests;
