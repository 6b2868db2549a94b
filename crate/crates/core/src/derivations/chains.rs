//! Executable replays of two inductive arguments over prefix chains:
//! a disjunction with a true disjunct is true (via the chain of
//! left-grouped prefix disjunctions), and order induction over a sequence
//! (via the chain of negated disjunctions of negations).

use alloc::vec::Vec;

use crate::disjunctions::is_append_step;
use crate::disjunctions::BuilderKind;
use crate::semantics::TruthOracle;
use crate::syntax::Formula;

use super::DerivError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ChainOutcome {
    /// No element satisfies the hypothesis; the chain never starts.
    HypothesisEmpty,
    /// Every link of the chain held and the conclusion is true.
    Confirmed,
    /// The oracle broke the chain at the given prefix index.
    Broken { at: usize, what: &'static str },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainReport {
    pub length: usize,
    /// Index where the chain starts, if it starts at all.
    pub start: Option<usize>,
    /// Truth of each chain element from `start` on.
    pub links: Vec<bool>,
    pub outcome: ChainOutcome,
}

fn ask(truth: &mut dyn TruthOracle, phi: &Formula, index: usize) -> Result<bool, DerivError> {
    truth.truth(phi).ok_or(DerivError::OracleUndetermined { index })
}

/// Starting from the first true `α_j`, walks `⋁_{i≤j} α_i, …, ⋁_{i≤c} α_i`:
/// the first is true by the append identity and disjunction compositionality,
/// each step preserves truth for the same reason, and the last one is the
/// disjunctive-correctness instance for the whole sequence.
pub fn replay_dcin_chain(items: &[Formula], truth: &mut dyn TruthOracle) -> Result<ChainReport, DerivError> {
    if items.is_empty() {
        return Err(DerivError::Empty);
    }
    let mut start = None;
    for (i, a) in items.iter().enumerate() {
        if ask(truth, a, i)? {
            start = Some(i);
            break;
        }
    }
    let Some(j) = start else {
        return Ok(ChainReport {
            length: items.len(),
            start: None,
            links: Vec::new(),
            outcome: ChainOutcome::HypothesisEmpty,
        });
    };
    let mut prefix = items[0].clone();
    for a in &items[1..=j] {
        prefix = Formula::or(prefix, a.clone());
    }
    let mut links = Vec::new();
    let mut outcome = ChainOutcome::Confirmed;
    for k in j..items.len() {
        if k > j {
            let next = Formula::or(prefix.clone(), items[k].clone());
            debug_assert!(is_append_step(BuilderKind::LeftGrouped, &prefix, &next, &items[k]));
            prefix = next;
        }
        let v = ask(truth, &prefix, k)?;
        links.push(v);
        if !v {
            outcome = ChainOutcome::Broken {
                at: k,
                what: if k == j {
                    "prefix ending in a true disjunct is not true"
                } else {
                    "truth not preserved when a disjunct is appended"
                },
            };
            break;
        }
    }
    Ok(ChainReport { length: items.len(), start, links, outcome })
}

/// For a sequence whose truth is progressive (all earlier elements true
/// forces the next one true), walks `¬⋁_{i≤j} ¬φ_i` for `j = 0..c`. Each
/// link follows from disjunctive correctness and progressiveness; at the end
/// every `φ_j` must be true.
pub fn replay_order_chain(items: &[Formula], truth: &mut dyn TruthOracle) -> Result<ChainReport, DerivError> {
    if items.is_empty() {
        return Err(DerivError::Empty);
    }
    let mut values = Vec::with_capacity(items.len());
    for (i, f) in items.iter().enumerate() {
        values.push(ask(truth, f, i)?);
    }
    // progressive: for every j, if all i < j are true then j is true
    let progressive = (0..items.len()).all(|j| !values[..j].iter().all(|v| *v) || values[j]);
    if !progressive {
        return Ok(ChainReport {
            length: items.len(),
            start: None,
            links: Vec::new(),
            outcome: ChainOutcome::HypothesisEmpty,
        });
    }
    let mut negs = Formula::not(items[0].clone());
    let mut links = Vec::new();
    let mut outcome = ChainOutcome::Confirmed;
    for j in 0..items.len() {
        if j > 0 {
            negs = Formula::or(negs, Formula::not(items[j].clone()));
        }
        let link = Formula::not(negs.clone());
        let v = ask(truth, &link, j)?;
        links.push(v);
        if !v {
            outcome = ChainOutcome::Broken { at: j, what: "negated prefix disjunction is not true" };
            break;
        }
    }
    if outcome == ChainOutcome::Confirmed {
        if let Some(j) = values.iter().position(|v| !v) {
            outcome = ChainOutcome::Broken { at: j, what: "element false after the chain closed" };
        }
    }
    Ok(ChainReport { length: items.len(), start: Some(0), links, outcome })
}
