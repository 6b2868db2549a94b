use alloc::vec::Vec;

use crate::disjunctions::Disjoin;
use crate::semantics::{Evaluator, TruthOracle};
use crate::syntax::{dag_size, Formula};

use super::DerivError;

/// The source sentences `φ_j` and the derived `ψ_j`, with
/// `ψ₀ = φ₀` and `ψ_{j+1} = ¬¬φ_{j+1} ∨ ⋁_{i≤j} ¬ψ_i`.
#[derive(Clone, Debug)]
pub struct YabloSequence {
    pub source: Vec<Formula>,
    pub derived: Vec<Formula>,
    /// The disjunctions `⋁_{i≤j} ¬ψ_i` actually used, for `j < c`.
    pub prefixes: Vec<Formula>,
}

impl YabloSequence {
    pub fn len(&self) -> usize {
        self.source.len()
    }

    pub fn is_empty(&self) -> bool {
        self.source.is_empty()
    }

    /// Distinct nodes over all derived sentences.
    pub fn dag_size(&self) -> usize {
        dag_size(self.derived.iter())
    }

    /// Node count of the last derived sentence written out as a tree
    /// (saturating; nothing is materialised).
    pub fn last_flat_size(&self) -> u64 {
        self.derived.last().map_or(0, Formula::flat_size)
    }
}

fn check_sentences(items: &[Formula]) -> Result<(), DerivError> {
    if items.is_empty() {
        return Err(DerivError::Empty);
    }
    match items.iter().position(|f| !f.is_sentence()) {
        Some(index) => Err(DerivError::NotASentence { index }),
        None => Ok(()),
    }
}

fn next_psi(phi: &Formula, prefix: Formula) -> Formula {
    Formula::or(Formula::not(Formula::not(phi.clone())), prefix)
}

/// Builds the sequence with left-grouped prefixes extended one disjunct at a
/// time, so every `ψ_j` shares all earlier nodes.
pub fn yablo_transform(items: &[Formula]) -> Result<YabloSequence, DerivError> {
    check_sentences(items)?;
    let mut derived = Vec::with_capacity(items.len());
    let mut prefixes = Vec::with_capacity(items.len());
    derived.push(items[0].clone());
    for phi in &items[1..] {
        let neg = Formula::not(derived.last().expect("nonempty").clone());
        let prefix = match prefixes.last() {
            None => neg,
            Some(p) => Formula::or(Formula::clone(p), neg),
        };
        derived.push(next_psi(phi, prefix.clone()));
        prefixes.push(prefix);
    }
    Ok(YabloSequence { source: items.to_vec(), derived, prefixes })
}

/// Same construction with an arbitrary builder for `⋁_{i≤j} ¬ψ_i`, rebuilt
/// from scratch at every step.
pub fn yablo_transform_with(items: &[Formula], builder: &dyn Disjoin) -> Result<YabloSequence, DerivError> {
    check_sentences(items)?;
    let mut derived = alloc::vec![items[0].clone()];
    let mut negs = Vec::with_capacity(items.len());
    let mut prefixes = Vec::with_capacity(items.len());
    for phi in &items[1..] {
        negs.push(Formula::not(derived.last().expect("nonempty").clone()));
        let prefix = builder.build(&negs)?;
        derived.push(next_psi(phi, prefix.clone()));
        prefixes.push(prefix);
    }
    Ok(YabloSequence { source: items.to_vec(), derived, prefixes })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HypothesisFailure {
    Undetermined,
    FirstFalse,
    StepFails,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructureFault {
    pub index: usize,
    pub what: &'static str,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct YabloReport {
    pub length: usize,
    /// Places where the sequence is not built by the append identity.
    pub structure_faults: Vec<StructureFault>,
    pub first_derived_failure: Option<usize>,
    pub first_source_failure: Option<usize>,
    pub dag_size: usize,
    pub last_flat_size: u64,
}

impl YabloReport {
    pub fn passed(&self) -> bool {
        self.structure_faults.is_empty()
            && self.first_derived_failure.is_none()
            && self.first_source_failure.is_none()
    }
}

/// Checks the hypotheses (every source sentence decided, the first true,
/// truth passed along each step), audits that the sequence was built with
/// the append identity, and confirms that every `ψ_j` and every `φ_j` is
/// true.
pub fn check_yablo_claim(ys: &YabloSequence, budget: u64) -> Result<YabloReport, DerivError> {
    let mut ev = Evaluator::new(budget);
    check_yablo_claim_with(ys, &mut ev)
}

pub fn check_yablo_claim_with(ys: &YabloSequence, truth: &mut dyn TruthOracle) -> Result<YabloReport, DerivError> {
    check_sentences(&ys.source)?;
    let mut values = Vec::with_capacity(ys.len());
    for (index, phi) in ys.source.iter().enumerate() {
        let v = truth
            .truth(phi)
            .ok_or(DerivError::Hypothesis { index, failure: HypothesisFailure::Undetermined })?;
        values.push(v);
    }
    if !values[0] {
        return Err(DerivError::Hypothesis { index: 0, failure: HypothesisFailure::FirstFalse });
    }
    if let Some(i) = values.windows(2).position(|w| w[0] && !w[1]) {
        return Err(DerivError::Hypothesis { index: i + 1, failure: HypothesisFailure::StepFails });
    }

    let mut faults = Vec::new();
    if ys.derived.len() != ys.len() || ys.prefixes.len() + 1 != ys.len() {
        faults.push(StructureFault { index: 0, what: "length mismatch" });
    } else {
        if ys.derived[0] != ys.source[0] {
            faults.push(StructureFault { index: 0, what: "first derived sentence differs from the source" });
        }
        for j in 0..ys.prefixes.len() {
            let neg = Formula::not(ys.derived[j].clone());
            let expected = if j == 0 {
                neg
            } else {
                Formula::or(ys.prefixes[j - 1].clone(), neg)
            };
            if ys.prefixes[j] != expected {
                faults.push(StructureFault { index: j, what: "prefix disjunction breaks the append identity" });
            }
            if ys.derived[j + 1] != next_psi(&ys.source[j + 1], ys.prefixes[j].clone()) {
                faults.push(StructureFault { index: j + 1, what: "derived sentence has the wrong shape" });
            }
        }
    }

    let mut first_derived_failure = None;
    for (j, psi) in ys.derived.iter().enumerate() {
        if truth.truth(psi) != Some(true) {
            first_derived_failure = Some(j);
            break;
        }
    }
    Ok(YabloReport {
        length: ys.len(),
        structure_faults: faults,
        first_derived_failure,
        first_source_failure: values.iter().position(|v| !v),
        dag_size: ys.dag_size(),
        last_flat_size: ys.last_flat_size(),
    })
}
