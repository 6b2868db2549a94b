use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::ToString;
use alloc::vec::Vec;
use core::fmt::Debug;

use crate::disjunctions::{bigvee, is_append_step, BuilderKind, Disjoin};
use crate::semantics::TruthOracle;
use crate::syntax::{num_u64, substitute, Formula, SentenceSeq};

use super::{PrincipleError, PrincipleReport, TruthValuation};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DcDirection {
    /// A disjunction with a true disjunct is true.
    In,
    /// A true disjunction has a true disjunct.
    Out,
    Both,
}

impl DcDirection {
    pub fn name(self) -> &'static str {
        match self {
            DcDirection::In => "dcin",
            DcDirection::Out => "dcout",
            DcDirection::Both => "dc",
        }
    }
}

fn lookup(v: &TruthValuation, f: &Formula) -> Result<bool, PrincipleError> {
    v.get(f).ok_or_else(|| PrincipleError::ClosureMiss(f.clone()))
}

fn ask(truth: &mut dyn TruthOracle, f: &Formula) -> Result<bool, PrincipleError> {
    truth.truth(f).ok_or_else(|| PrincipleError::OracleUndetermined(f.clone()))
}

/// Disjunctive correctness for the left-grouped disjunction of each sequence.
pub fn check_dc(v: &TruthValuation, seqs: &[SentenceSeq], direction: DcDirection) -> Result<PrincipleReport, PrincipleError> {
    let mut report = PrincipleReport::new(direction.name());
    for seq in seqs {
        let d = bigvee(seq)?;
        let whole = lookup(v, &d)?;
        let mut some = false;
        for f in seq.iter() {
            some |= lookup(v, f)?;
        }
        report.instances += 1;
        if direction != DcDirection::Out && some && !whole {
            report.violate("dcin", d.to_string(), "a disjunct is true but the disjunction is not".to_string());
        }
        if direction != DcDirection::In && whole && !some {
            report.violate("dcout", d.to_string(), "the disjunction is true but no disjunct is".to_string());
        }
    }
    Ok(report)
}

/// `T(s₀) ∧ ∀i (T(s_i) → T(s_{i+1})) → ∀j T(s_j)` for each sequence.
pub fn check_seqind<N: Ord + Debug>(t: &BTreeSet<N>, seqs: &[Vec<N>]) -> PrincipleReport {
    let mut report = PrincipleReport::new("seqind");
    for s in seqs {
        report.instances += 1;
        let base = s.first().is_none_or(|x| t.contains(x));
        let steps = s.windows(2).all(|w| !t.contains(&w[0]) || t.contains(&w[1]));
        if !(base && steps) {
            report.vacuous += 1;
            continue;
        }
        if let Some(j) = s.iter().position(|x| !t.contains(x)) {
            report.violate("seqind", format!("{s:?}"), format!("hypotheses hold but entry {j} is not in T"));
        }
    }
    report
}

/// `∀j ((∀i<j T(s_i)) → T(s_j)) → ∀l T(s_l)` for each sequence.
pub fn check_seqoind<N: Ord + Debug>(t: &BTreeSet<N>, seqs: &[Vec<N>]) -> PrincipleReport {
    let mut report = PrincipleReport::new("seqoind");
    for s in seqs {
        report.instances += 1;
        let mut prefix_in = true;
        let mut progressive = true;
        for x in s {
            let here = t.contains(x);
            if prefix_in && !here {
                progressive = false;
                break;
            }
            prefix_in &= here;
        }
        if !progressive {
            report.vacuous += 1;
            continue;
        }
        if let Some(j) = s.iter().position(|x| !t.contains(x)) {
            report.violate("seqoind", format!("{s:?}"), format!("sequence is progressive but entry {j} is not in T"));
        }
    }
    report
}

/// Induction for the set defined by `φ` through `truth`, audited up to
/// `budget`.
pub fn check_int(truth: &mut dyn TruthOracle, phi: &Formula, budget: u64) -> Result<PrincipleReport, PrincipleError> {
    let mut report = PrincipleReport::new("int");
    let fv = phi.free_vars();
    if fv.len() > 1 {
        return Err(PrincipleError::TooManyFreeVars { count: fv.len() });
    }
    report.instances = 1;
    let Some(&x) = fv.first() else {
        if truth.truth(phi).is_none() {
            report.undetermined = 1;
        }
        return Ok(report);
    };
    let mut values = Vec::with_capacity(budget as usize + 1);
    for n in 0..=budget {
        match truth.truth(&substitute(phi, x, &num_u64(n))?) {
            Some(b) => values.push(b),
            None => {
                report.undetermined = 1;
                report.notes.push(format!("instance {n} undetermined"));
                return Ok(report);
            }
        }
    }
    if !values[0] {
        report.vacuous = 1;
        report.notes.push("base case fails".to_string());
        return Ok(report);
    }
    if let Some(n) = values.windows(2).position(|w| w[0] && !w[1]) {
        report.vacuous = 1;
        report.notes.push(format!("step {n} -> {} fails", n + 1));
        return Ok(report);
    }
    if let Some(n) = values.iter().position(|b| !b) {
        report.violate("int", phi.to_string(), format!("hypotheses hold but instance {n} is false"));
    }
    Ok(report)
}

/// The append clause (structurally and in truth), the outer clause and the
/// full biconditional for `kind` on each sample.
pub fn check_outer_contract(
    kind: BuilderKind,
    truth: &mut dyn TruthOracle,
    samples: &[SentenceSeq],
) -> Result<PrincipleReport, PrincipleError> {
    let mut report = PrincipleReport::new("outer");
    for seq in samples {
        let d = kind.build(seq)?;
        let whole = ask(truth, &d)?;
        let mut parts = Vec::with_capacity(seq.len());
        for f in seq.iter() {
            parts.push(ask(truth, f)?);
        }
        let some = parts.iter().any(|b| *b);
        report.instances += 1;
        if whole && !some {
            report.violate("out", d.to_string(), "built sentence is true but no element is".to_string());
        }
        if whole != some {
            report.violate(
                "biconditional",
                d.to_string(),
                format!("built sentence is {whole} but some element true is {some}"),
            );
        }
        if seq.len() >= 2 {
            let (init, last) = seq.split_at(seq.len() - 1);
            let prev = kind.build(init)?;
            if !is_append_step(kind, &prev, &d, &last[0]) {
                report.violate(
                    "append-structural",
                    d.to_string(),
                    format!("not obtained from {prev} by appending one element"),
                );
            }
            let before = ask(truth, &prev)?;
            if whole != (before || parts[parts.len() - 1]) {
                report.violate(
                    "append-truth",
                    d.to_string(),
                    "truth differs from the shorter sentence or the appended element".to_string(),
                );
            }
        }
    }
    Ok(report)
}
