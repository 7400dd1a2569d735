//! Restricted second-order logic toolkit.
//!
//! The language is two-sorted: first-order variables `x0, x1, ...` range over
//! the elements of a structure, second-order variables `X0^k, X1^k, ...` range
//! over a designated family `K` of `k`-ary relations. The family is fixed by a
//! countable set of first-order formulas (a [`theta::ThetaFamily`]): a relation
//! belongs to `K` exactly when some member of the family defines it, possibly
//! with parameters.
//!
//! Modules:
//!
//! - [`formulas`]: syntax, parsing, printing, substitution.
//! - [`theta`]: enumerated formula families (weak second-order, definable
//!   subsets, all first-order formulas, prefix-restricted formulas).
//! - [`structures`]: finite structures, evaluation over `(A, K)`, exact
//!   oracles for `K`, truth algebras and Leibniz reduction.
//! - [`calculus`]: the Hilbert system with comprehension, extensionality,
//!   Leibniz law, quantifier principles, instantiation and the omega rule.
//! - [`boolean`]: Boolean algebras, regular families, compatible ultrafilters
//!   and the Rasiowa-Sikorski construction.
//!
//! The crate is `no_std` and only needs `alloc`.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod boolean;
pub mod calculus;
pub mod formulas;
pub mod structures;
pub mod theta;

pub use formulas::{Formula, FoVar, Signature, SoVar, Term, Variable};
