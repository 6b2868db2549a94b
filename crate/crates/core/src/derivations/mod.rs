//! The sequence transform behind the outer-disjunction arguments, replays of
//! the induction chains that use it, and a premises-plus-modus-ponens proof
//! checker with a tautology decider.

mod chains;
mod proof;
mod tautology;
mod yablo;

pub use chains::{replay_dcin_chain, replay_order_chain, ChainOutcome, ChainReport};
pub use proof::{check_proof, Justification, PremiseStatus, ProofLine, ProofReport, PropProof};
pub use tautology::{is_tautology, propositional_atoms, tag_exclusion, MAX_ATOMS};
pub use yablo::{
    check_yablo_claim, check_yablo_claim_with, yablo_transform, yablo_transform_with, HypothesisFailure,
    StructureFault, YabloReport, YabloSequence,
};

use crate::disjunctions::DisjError;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DerivError {
    #[error("operation needs a nonempty sequence")]
    Empty,
    #[error("element {index} is not a sentence")]
    NotASentence { index: usize },
    #[error(transparent)]
    Builder(#[from] DisjError),
    #[error("hypothesis fails at index {index}: {failure:?}")]
    Hypothesis { index: usize, failure: HypothesisFailure },
    #[error("truth oracle cannot decide the sentence needed at index {index}")]
    OracleUndetermined { index: usize },
    #[error("line {line}: {reason}")]
    Malformed { line: usize, reason: &'static str },
    #[error("{atoms} propositional atoms exceed the limit of {limit}")]
    TooManyAtoms { atoms: usize, limit: usize },
}
