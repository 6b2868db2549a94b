//! Satisfaction classes on finite data: templates and extensional
//! equivalence, similarity classes, pre-satisfaction completion and the
//! finite-stage construction with its audits.

mod classes;
mod construct;
mod generate;
mod satclass;
mod template;

pub use classes::{class_graph, ClassGraph, SimilarityClass};
pub use construct::{check_scenario, ev_construct, is_long, EvReport, EvScenario, DEFAULT_MAX_VALUE};
pub use generate::{random_scenario, MAX_CLASSES, MAX_ENVIRONMENT};
pub use satclass::{
    asn, assignments, bounded_truth, bounded_truth_class, check_internal_induction, comp_failure, complete_presat,
    maximal_domain, validate_sat_class, PartialSatClass,
};
pub use template::{ext_equiv, template, value_key, EquivWitness, SyntacticTemplate};

use crate::syntax::{Formula, SyntaxError};
use alloc::string::String;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum EvError {
    #[error("not a pre-satisfaction class: {clause} ({formula})")]
    NotPresat { clause: &'static str, formula: Formula },
    #[error("similarity order has a cycle")]
    Cycle,
    #[error("scenario invariant fails: {0}")]
    Scenario(String),
    #[error("formula has {count} free variables, at most one allowed")]
    TooManyFreeVars { count: usize },
    #[error(transparent)]
    Syntax(#[from] SyntaxError),
}

#[cfg(test)]
mod tests;
