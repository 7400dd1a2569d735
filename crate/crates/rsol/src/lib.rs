//! File formats, proof corpus, random generators and verification suites
//! on top of `rsol-core`.

pub mod corpus;
mod error;
pub mod formats;
pub mod gen;
pub mod prf;
pub mod suites;

pub use error::Failure;
