//! Syntax kernel for first-order arithmetic with bounded evaluation,
//! disjunction builders, truth-principle checkers, a finite satisfaction
//! class engine and cut-model simulations.
//!
//! The crate is `no_std` and needs only `alloc`.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod coding;
pub mod countermodels;
pub mod derivations;
pub mod disjunctions;
pub mod ev;
pub mod principles;
pub mod semantics;
pub mod syntax;

#[cfg(test)]
mod testgen;

pub use syntax::{Assignment, Formula, FormulaKind, SentenceSeq, SyntaxError, Term, TermKind, Var};
