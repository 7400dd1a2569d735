//! The Hilbert system: a first-order base, the second-order axioms A1-A6,
//! modus ponens, generalization and the omega rule.
//!
//! The first-order base is
//!
//! - `PL1` `φ → (ψ → φ)`
//! - `PL2` `(φ → (ψ → χ)) → ((φ → ψ) → (φ → χ))`
//! - `PL3` `(¬ψ → ¬φ) → (φ → ψ)`
//! - `AND1` `φ ∧ ψ → φ`, `AND2` `φ ∧ ψ → ψ`, `AND3` `φ → (ψ → φ ∧ ψ)`
//! - `Q1` `∀x φ → φ[x := t]`
//! - `Q2` `∀x (φ → ψ) → (φ → ∀x ψ)` with `x` not free in `φ`
//! - `EQ1` `t = t` and `EQ2` `s = t → (φ → φ')`, where `φ'` replaces some
//!   free occurrences of `s` in `φ` by `t` (identity only)
//!
//! Lines are compared after [`Formula::normalize`], so `∨`, `→`, `↔` and
//! `∃` are abbreviations and a line may be written in either form.
//!
//! The omega rule is represented by [`OmegaTemplate`]s: a finite list of
//! schematic lines in which `[V := θ_n](φ)` stands for the instantiation by
//! the `n`-th family member, `n` left open.

use alloc::boxed::Box;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::formulas::{FoVar, Formula, FormulaError, SoVar};

mod axioms;
mod deduction;
mod kernel;

pub use axioms::{matches_schema, recognize_axiom};
pub use deduction::{apply_deduction, Builder};
pub use kernel::{check_proof, check_template, instantiate_template, spot_check_template, Kernel};

/// How far the recognizer searches for a family index when none is given.
pub const INDEX_SEARCH: usize = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Schema {
    Pl1,
    Pl2,
    Pl3,
    And1,
    And2,
    And3,
    Q1,
    Q2,
    Eq1,
    Eq2,
    /// Comprehension, with the per-arity index of the member when known.
    A1(Option<usize>),
    A2,
    A3,
    A4,
    A5,
    /// Instantiation by the `n`-th member of the quantified arity.
    A6(usize),
}

impl Schema {
    pub const FIRST_ORDER: [Schema; 10] = [
        Schema::Pl1,
        Schema::Pl2,
        Schema::Pl3,
        Schema::And1,
        Schema::And2,
        Schema::And3,
        Schema::Q1,
        Schema::Q2,
        Schema::Eq1,
        Schema::Eq2,
    ];

    pub fn parse(s: &str) -> Option<Schema> {
        let mut it = s.split_whitespace();
        let head = it.next()?.to_ascii_uppercase();
        let arg = it.next();
        if it.next().is_some() {
            return None;
        }
        let index = || arg.and_then(|a| a.parse::<usize>().ok());
        Some(match (head.as_str(), arg) {
            ("PL1", None) => Schema::Pl1,
            ("PL2", None) => Schema::Pl2,
            ("PL3", None) => Schema::Pl3,
            ("AND1", None) => Schema::And1,
            ("AND2", None) => Schema::And2,
            ("AND3", None) => Schema::And3,
            ("Q1", None) => Schema::Q1,
            ("Q2", None) => Schema::Q2,
            ("EQ1", None) => Schema::Eq1,
            ("EQ2", None) => Schema::Eq2,
            ("A1", None) => Schema::A1(None),
            ("A1", Some(_)) => Schema::A1(Some(index()?)),
            ("A2", None) => Schema::A2,
            ("A3", None) => Schema::A3,
            ("A4", None) => Schema::A4,
            ("A5", None) => Schema::A5,
            ("A6", Some(_)) => Schema::A6(index()?),
            _ => return None,
        })
    }
}

impl fmt::Display for Schema {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Schema::Pl1 => f.write_str("PL1"),
            Schema::Pl2 => f.write_str("PL2"),
            Schema::Pl3 => f.write_str("PL3"),
            Schema::And1 => f.write_str("AND1"),
            Schema::And2 => f.write_str("AND2"),
            Schema::And3 => f.write_str("AND3"),
            Schema::Q1 => f.write_str("Q1"),
            Schema::Q2 => f.write_str("Q2"),
            Schema::Eq1 => f.write_str("EQ1"),
            Schema::Eq2 => f.write_str("EQ2"),
            Schema::A1(None) => f.write_str("A1"),
            Schema::A1(Some(n)) => write!(f, "A1 {n}"),
            Schema::A2 => f.write_str("A2"),
            Schema::A3 => f.write_str("A3"),
            Schema::A4 => f.write_str("A4"),
            Schema::A5 => f.write_str("A5"),
            Schema::A6(n) => write!(f, "A6 {n}"),
        }
    }
}

/// Line references are zero-based positions in the enclosing line list.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Justification {
    Premise(usize),
    Axiom(Schema),
    /// `∀V φ → [V := θ_n](φ)`, templates only.
    A6n,
    /// `Mp(i, j)`: line `i` is `a → b`, line `j` is `a`.
    Mp(usize, usize),
    GenFo(usize, FoVar),
    GenSo(usize, SoVar),
    R3(String),
}

impl fmt::Display for Justification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Justification::Premise(i) => write!(f, "premise {}", i + 1),
            Justification::Axiom(s) => write!(f, "{s}"),
            Justification::A6n => f.write_str("A6 n"),
            Justification::Mp(i, j) => write!(f, "MP {} {}", i + 1, j + 1),
            Justification::GenFo(i, x) => write!(f, "Gen {} {x}", i + 1),
            Justification::GenSo(i, v) => write!(f, "Gen {} {v}", i + 1),
            Justification::R3(id) => write!(f, "R3 {id}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Line {
    pub formula: Formula,
    pub just: Justification,
}

impl Line {
    pub fn new(formula: Formula, just: Justification) -> Self {
        Line { formula, just }
    }
}

/// A schematic derivation uniform in `n`. Its last line must be
/// `ψ → [V := θ_n](φ)`; the omega rule then yields `ψ → ∀V φ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OmegaTemplate {
    pub id: String,
    pub var: SoVar,
    pub lines: Vec<Line>,
}

impl OmegaTemplate {
    /// `(ψ, φ)` read off the last line.
    pub fn target(&self) -> Option<(Formula, Formula)> {
        let last = self.lines.last()?.formula.normalize();
        let (psi, inst) = last.as_imp()?;
        match inst {
            Formula::Inst(v, phi) if *v == self.var => Some((psi.clone(), (**phi).clone())),
            _ => None,
        }
    }

    /// `ψ → ∀V φ`.
    pub fn conclusion(&self) -> Option<Formula> {
        let (psi, phi) = self.target()?;
        Some(Formula::imp_prim(psi, Formula::forall_so(self.var, phi)))
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Proof {
    pub sigma: Vec<Formula>,
    pub lines: Vec<Line>,
    pub templates: Vec<OmegaTemplate>,
    /// When set, the last line must be this formula.
    pub goal: Option<Formula>,
}

impl Proof {
    pub fn conclusion(&self) -> Option<&Formula> {
        self.lines.last().map(|l| &l.formula)
    }

    pub fn template(&self, id: &str) -> Option<&OmegaTemplate> {
        self.templates.iter().find(|t| t.id == id)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum Reason {
    #[error("forward reference to line {}", .0 + 1)]
    ForwardReference(usize),
    #[error("no premise {}", .0 + 1)]
    NoSuchPremise(usize),
    #[error("premise {} is not a sentence", .0 + 1)]
    PremiseNotSentence(usize),
    #[error("formula differs from premise {}", .0 + 1)]
    PremiseMismatch(usize),
    #[error("not an instance of {0}")]
    NotAnInstance(Schema),
    #[error("modus ponens does not match")]
    MpMismatch,
    #[error("generalization does not match")]
    GenMismatch,
    #[error("unknown template {0}")]
    UnknownTemplate(String),
    #[error("duplicate template {0}")]
    DuplicateTemplate(String),
    #[error("template {0} was rejected")]
    TemplateRejected(String),
    #[error("conclusion differs from the target of template {0}")]
    R3Mismatch(String),
    #[error("the omega rule is not available inside templates")]
    NestedR3,
    #[error("schematic step outside a template")]
    SchematicOutsideTemplate,
    #[error("schematic node must instantiate {0}")]
    ForeignSchematic(SoVar),
    #[error("the last line must have the form ψ → [V := θ_n](φ)")]
    BadTarget,
    #[error("the family has no members of arity {0}")]
    UnsupportedArity(u32),
    #[error("the last line is not the declared goal")]
    GoalMismatch,
    #[error("empty line list")]
    Empty,
    #[error("at n = {n}: {inner}")]
    Instance { n: usize, inner: Box<Rejection> },
    #[error(transparent)]
    Formula(#[from] FormulaError),
}

/// The first failing line. `template` names the enclosing template.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rejection {
    pub template: Option<String>,
    pub line: usize,
    pub reason: Reason,
}

impl fmt::Display for Rejection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(t) = &self.template {
            write!(f, "template {t}, ")?;
        }
        write!(f, "line {}: {}", self.line + 1, self.reason)
    }
}

impl core::error::Error for Rejection {}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum DeductionError {
    #[error("input proof rejected: {0}")]
    Rejected(Rejection),
    #[error("the discharged formula is not a sentence")]
    NotSentence,
}

#[cfg(test)]
mod tests;
