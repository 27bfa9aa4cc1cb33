//! A workbench for finite category theory.
//!
//! The crate computes, over finite instances, free and presented categories
//! and groupoids, colax and strict descent categories, Eilenberg–Moore
//! categories, monads in the span and matrix bicategories, the mate
//! correspondence with Beck–Chevalley checking, and combinatorial CW
//! realizations of presentations with their homology.

pub mod acceptance;
pub mod bicat;
pub mod cli;
pub mod corpus;
pub mod descent;
pub mod error;
pub mod fincat;
pub mod mates;
pub mod present;
pub mod random;
pub mod report;
pub mod topo;

pub use error::{Error, Result};
pub use report::{ValidationReport, Violation, ViolationKind};
