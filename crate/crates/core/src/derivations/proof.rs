use alloc::vec::Vec;

use crate::semantics::TruthOracle;
use crate::syntax::{Formula, FormulaKind};

use super::DerivError;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Justification {
    Premise,
    /// Modus ponens from line `minor` (`a`) and line `major` (`¬a ∨ b`).
    ModusPonens { minor: usize, major: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProofLine {
    pub formula: Formula,
    pub justification: Justification,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PropProof {
    pub lines: Vec<ProofLine>,
}

impl PropProof {
    pub fn new() -> PropProof {
        PropProof::default()
    }

    pub fn premise(mut self, f: Formula) -> PropProof {
        self.lines.push(ProofLine { formula: f, justification: Justification::Premise });
        self
    }

    pub fn modus_ponens(mut self, f: Formula, minor: usize, major: usize) -> PropProof {
        self.lines.push(ProofLine { formula: f, justification: Justification::ModusPonens { minor, major } });
        self
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PremiseStatus {
    /// No premises: a pure propositional derivation.
    None,
    AllTrue,
    SomeFalse,
    Undetermined,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProofReport {
    pub lines: usize,
    pub conclusion: Option<Formula>,
    pub premises: usize,
    pub premise_status: PremiseStatus,
    /// Truth of the conclusion per the oracle, when the premises are all true
    /// and reflection is therefore applicable.
    pub conclusion_truth: Option<bool>,
}

impl ProofReport {
    /// Reflection applies and the conclusion is true.
    pub fn reflection_holds(&self) -> Option<bool> {
        match self.premise_status {
            PremiseStatus::AllTrue | PremiseStatus::None => self.conclusion_truth,
            _ => None,
        }
    }
}

/// Validates every justification and classifies the premises by the oracle.
pub fn check_proof(p: &PropProof, truth: &mut dyn TruthOracle) -> Result<ProofReport, DerivError> {
    for (n, line) in p.lines.iter().enumerate() {
        if let Justification::ModusPonens { minor, major } = line.justification {
            if minor >= n || major >= n {
                return Err(DerivError::Malformed { line: n, reason: "cites a line that is not earlier" });
            }
            let expected = Formula::or(Formula::not(p.lines[minor].formula.clone()), line.formula.clone());
            if p.lines[major].formula != expected {
                let reason = match p.lines[major].formula.kind() {
                    FormulaKind::Or(l, _) if matches!(l.kind(), FormulaKind::Not(_)) => {
                        "implication does not match the cited lines"
                    }
                    _ => "major premise is not an implication",
                };
                return Err(DerivError::Malformed { line: n, reason });
            }
        }
    }
    let premises: Vec<&Formula> = p
        .lines
        .iter()
        .filter(|l| l.justification == Justification::Premise)
        .map(|l| &l.formula)
        .collect();
    let mut status = if premises.is_empty() { PremiseStatus::None } else { PremiseStatus::AllTrue };
    for f in &premises {
        match truth.truth(f) {
            Some(true) => {}
            Some(false) => {
                status = PremiseStatus::SomeFalse;
                break;
            }
            None => status = PremiseStatus::Undetermined,
        }
    }
    let conclusion = p.lines.last().map(|l| l.formula.clone());
    let conclusion_truth = match (status, &conclusion) {
        (PremiseStatus::AllTrue | PremiseStatus::None, Some(c)) => truth.truth(c),
        _ => None,
    };
    Ok(ProofReport {
        lines: p.lines.len(),
        conclusion,
        premises: premises.len(),
        premise_status: status,
        conclusion_truth,
    })
}
