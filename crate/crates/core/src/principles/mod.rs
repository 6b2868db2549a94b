//! Finite truth valuations and instance checkers for the compositional
//! clauses, regularity, disjunctive correctness, the sequential induction
//! schemes, internal induction, quantifier-free correctness and the
//! outer-disjunction contract.

mod ct;
mod schemes;

pub use ct::{check_ct_minus, check_qfc};
pub use schemes::{check_dc, check_int, check_outer_contract, check_seqind, check_seqoind, DcDirection};

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;
use alloc::vec::Vec;

use num_bigint::BigUint;

use crate::coding::{decode_term, encode_formula};
use crate::disjunctions::DisjError;
use crate::semantics::{EvalError, Evaluator, TruthOracle};
use crate::syntax::{num_u64, substitute, Formula, FormulaKind, SyntaxError, Term};

/// Upper bound on the number of sentences a generated closure may hold.
pub const MAX_CLOSURE: usize = 1 << 16;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PrincipleError {
    #[error("sentence {0} is outside the valuation's closure")]
    ClosureMiss(Formula),
    #[error("truth oracle cannot decide {0}")]
    OracleUndetermined(Formula),
    #[error("closure exceeds {limit} sentences")]
    ClosureTooLarge { limit: usize },
    #[error("formula has {count} free variables, at most one allowed")]
    TooManyFreeVars { count: usize },
    #[error(transparent)]
    Builder(#[from] DisjError),
    #[error(transparent)]
    Syntax(#[from] SyntaxError),
    #[error(transparent)]
    Eval(#[from] EvalError),
}

/// Which terms the quantifier clauses range over.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QuantifierVariant {
    /// `num(x)` for `x ≤ budget`.
    Numeral,
    /// Closed terms whose code is at most `budget`.
    ClosedTerm,
}

impl QuantifierVariant {
    pub fn name(self) -> &'static str {
        match self {
            QuantifierVariant::Numeral => "numeral",
            QuantifierVariant::ClosedTerm => "term",
        }
    }

    pub fn from_name(s: &str) -> Option<QuantifierVariant> {
        match s {
            "numeral" => Some(QuantifierVariant::Numeral),
            "term" => Some(QuantifierVariant::ClosedTerm),
            _ => None,
        }
    }

    pub fn instance_terms(self, budget: u64) -> Vec<Term> {
        match self {
            QuantifierVariant::Numeral => (0..=budget).map(num_u64).collect(),
            QuantifierVariant::ClosedTerm => (0..=budget)
                .filter_map(|c| decode_term(&BigUint::from(c)).ok())
                .filter(Term::is_closed)
                .collect(),
        }
    }
}

/// Sentences reachable from `roots` by taking direct subformulas and
/// instantiating quantifiers with each of `instances`.
pub fn sentence_closure(roots: &[Formula], instances: &[Term]) -> Result<BTreeSet<Formula>, PrincipleError> {
    let mut seen = BTreeSet::new();
    let mut todo: Vec<Formula> = roots.to_vec();
    while let Some(f) = todo.pop() {
        if !f.is_sentence() {
            return Err(EvalError::NotASentence.into());
        }
        if seen.contains(&f) {
            continue;
        }
        match f.kind() {
            FormulaKind::Eq(..) => {}
            FormulaKind::Not(a) => todo.push(a.clone()),
            FormulaKind::Or(a, b) | FormulaKind::And(a, b) => {
                todo.push(a.clone());
                todo.push(b.clone());
            }
            FormulaKind::Exists(v, body) | FormulaKind::Forall(v, body) => {
                for t in instances {
                    todo.push(substitute(body, *v, t)?);
                }
            }
        }
        seen.insert(f);
        if seen.len() > MAX_CLOSURE {
            return Err(PrincipleError::ClosureTooLarge { limit: MAX_CLOSURE });
        }
    }
    Ok(seen)
}

/// A truth predicate on a finite set of sentences.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TruthValuation {
    values: BTreeMap<Formula, bool>,
}

impl TruthValuation {
    pub fn new() -> TruthValuation {
        TruthValuation::default()
    }

    /// Asks `oracle` about every sentence of `closure`.
    pub fn from_oracle(
        closure: impl IntoIterator<Item = Formula>,
        oracle: &mut dyn TruthOracle,
    ) -> Result<TruthValuation, PrincipleError> {
        let mut values = BTreeMap::new();
        for f in closure {
            let b = oracle.truth(&f).ok_or_else(|| PrincipleError::OracleUndetermined(f.clone()))?;
            values.insert(f, b);
        }
        Ok(TruthValuation { values })
    }

    /// Valuation read off bounded evaluation, on the closure of `roots`.
    pub fn evaluated(roots: &[Formula], instances: &[Term], budget: u64) -> Result<TruthValuation, PrincipleError> {
        let closure = sentence_closure(roots, instances)?;
        TruthValuation::from_oracle(closure, &mut Evaluator::new(budget))
    }

    pub fn insert(&mut self, f: Formula, b: bool) -> Option<bool> {
        self.values.insert(f, b)
    }

    pub fn get(&self, f: &Formula) -> Option<bool> {
        self.values.get(f).copied()
    }

    /// Negates the value of `f`; returns the new value.
    pub fn flip(&mut self, f: &Formula) -> Option<bool> {
        let b = self.values.get_mut(f)?;
        *b = !*b;
        Some(*b)
    }

    pub fn contains(&self, f: &Formula) -> bool {
        self.values.contains_key(f)
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Formula, bool)> {
        self.values.iter().map(|(f, b)| (f, *b))
    }

    pub fn sentences(&self) -> impl Iterator<Item = &Formula> {
        self.values.keys()
    }

    /// Codes of the true sentences, for the schemes stated over sets of
    /// numbers.
    pub fn true_codes(&self) -> BTreeSet<BigUint> {
        self.values.iter().filter(|(_, b)| **b).map(|(f, _)| encode_formula(f)).collect()
    }
}

impl TruthOracle for TruthValuation {
    fn truth(&mut self, phi: &Formula) -> Option<bool> {
        self.get(phi)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    /// Clause family, e.g. `negation`, `regularity`, `dcout`.
    pub family: &'static str,
    pub instance: String,
    pub explanation: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Outcome {
    Pass,
    Fail,
    Undetermined,
}

impl Outcome {
    pub fn label(self) -> &'static str {
        match self {
            Outcome::Pass => "pass",
            Outcome::Fail => "fail",
            Outcome::Undetermined => "undetermined",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrincipleReport {
    pub principle: &'static str,
    pub instances: usize,
    pub violations: Vec<Violation>,
    /// Instances the finite data could not settle.
    pub undetermined: usize,
    /// Instances whose hypothesis fails, so the principle holds vacuously.
    pub vacuous: usize,
    pub notes: Vec<String>,
}

impl PrincipleReport {
    pub fn new(principle: &'static str) -> PrincipleReport {
        PrincipleReport {
            principle,
            instances: 0,
            violations: Vec::new(),
            undetermined: 0,
            vacuous: 0,
            notes: Vec::new(),
        }
    }

    pub fn verdict(&self) -> Outcome {
        if !self.violations.is_empty() {
            Outcome::Fail
        } else if self.undetermined > 0 {
            Outcome::Undetermined
        } else {
            Outcome::Pass
        }
    }

    pub fn passed(&self) -> bool {
        self.verdict() == Outcome::Pass
    }

    pub fn families(&self) -> BTreeSet<&'static str> {
        self.violations.iter().map(|v| v.family).collect()
    }

    pub(crate) fn violate(&mut self, family: &'static str, instance: String, explanation: String) {
        self.violations.push(Violation { family, instance, explanation });
    }

    /// Folds another report into this one, keeping this one's name.
    pub fn absorb(&mut self, other: PrincipleReport) {
        self.instances += other.instances;
        self.violations.extend(other.violations);
        self.undetermined += other.undetermined;
        self.vacuous += other.vacuous;
        self.notes.extend(other.notes);
    }
}

#[cfg(test)]
mod tests;
