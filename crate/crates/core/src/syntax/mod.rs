//! Terms and formulas of first-order arithmetic, with parsing, printing,
//! free variables, closed-term substitution and hash-consing.

mod assignment;
mod formula;
mod intern;
mod parse;
mod term;

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use core::ops::Deref;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};

pub use assignment::Assignment;
pub use formula::{dag_size, Formula, FormulaKind};
pub use intern::Interner;
pub use parse::{parse_formula, parse_term};
pub use term::{Term, TermKind, Var};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SyntaxError {
    #[error("syntax error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("variable {0} has no value in the assignment")]
    Unbound(Var),
    #[error("substituted term {0} is not closed")]
    OpenSubstitute(String),
    #[error("element {index} of the sequence is not a sentence")]
    NotASentence { index: usize },
    #[error("operation needs a nonempty sequence")]
    EmptySequence,
}

pub(crate) fn mix(a: u64, b: u64) -> u64 {
    let mut z = a ^ b.wrapping_mul(0x9E37_79B9_7F4A_7C15).rotate_left(17);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// The numeral `S(S(…S(0)…))` with `n` successors.
pub fn num(n: &BigUint) -> Term {
    let mut t = Term::zero();
    let mut k = n.clone();
    while !k.is_zero() {
        t = Term::succ(t);
        k -= 1u32;
    }
    t
}

pub fn num_u64(n: u64) -> Term {
    (0..n).fold(Term::zero(), |t, _| Term::succ(t))
}

/// If `t` is a numeral, the number it denotes.
pub fn numeral_value(t: &Term) -> Option<BigUint> {
    let mut n = BigUint::zero();
    let mut cur = t;
    loop {
        match cur.kind() {
            TermKind::Zero => return Some(n),
            TermKind::Succ(inner) => {
                n += BigUint::one();
                cur = inner;
            }
            _ => return None,
        }
    }
}

/// `φ[α]`: replaces every free variable `v` of `φ` by `num(α(v))`.
pub fn instantiate(phi: &Formula, alpha: &Assignment) -> Result<Formula, SyntaxError> {
    if let Some(v) = alpha.first_missing(phi.free_vars()) {
        return Err(SyntaxError::Unbound(v));
    }
    if phi.is_sentence() {
        return Ok(phi.clone());
    }
    let map: BTreeMap<Var, Term> = phi
        .free_vars()
        .iter()
        .map(|v| (*v, num(alpha.get(*v).expect("covered"))))
        .collect();
    Ok(formula::ClosedSubst::new(&map).formula(phi, &mut Vec::new()))
}

/// `φ(t)`: replaces the free occurrences of `v` by the closed term `t`.
/// Open replacement terms are rejected, so no capture can occur.
pub fn substitute(phi: &Formula, v: Var, t: &Term) -> Result<Formula, SyntaxError> {
    if !t.is_closed() {
        return Err(SyntaxError::OpenSubstitute(alloc::format!("{t}")));
    }
    let map = BTreeMap::from([(v, t.clone())]);
    Ok(formula::ClosedSubst::new(&map).formula(phi, &mut Vec::new()))
}

/// Simultaneous closed-term substitution.
pub fn substitute_all(phi: &Formula, map: &BTreeMap<Var, Term>) -> Result<Formula, SyntaxError> {
    if let Some(t) = map.values().find(|t| !t.is_closed()) {
        return Err(SyntaxError::OpenSubstitute(alloc::format!("{t}")));
    }
    Ok(formula::ClosedSubst::new(map).formula(phi, &mut Vec::new()))
}

/// Term-level counterpart of [`substitute_all`].
pub fn substitute_term(t: &Term, map: &BTreeMap<Var, Term>) -> Result<Term, SyntaxError> {
    if let Some(bad) = map.values().find(|t| !t.is_closed()) {
        return Err(SyntaxError::OpenSubstitute(alloc::format!("{bad}")));
    }
    fn go(t: &Term, map: &BTreeMap<Var, Term>) -> Term {
        if t.is_closed() {
            return t.clone();
        }
        match t.kind() {
            TermKind::Var(v) => map.get(v).cloned().unwrap_or_else(|| t.clone()),
            TermKind::Succ(a) => Term::succ(go(a, map)),
            TermKind::Add(a, b) => Term::add(go(a, map), go(b, map)),
            TermKind::Mul(a, b) => Term::mul(go(a, map), go(b, map)),
            TermKind::Zero => t.clone(),
        }
    }
    Ok(go(t, map))
}

/// Least variable index not occurring free or bound in any of `fs`.
pub fn fresh_var<'a>(fs: impl IntoIterator<Item = &'a Formula>) -> Var {
    fn max_in(f: &Formula, seen: &mut alloc::collections::BTreeSet<usize>, best: &mut Option<u32>) {
        if !seen.insert(f.addr()) {
            return;
        }
        let mut bump = |v: Var| *best = Some(best.map_or(v.0, |b| b.max(v.0)));
        match f.kind() {
            FormulaKind::Eq(s, t) => {
                let mut vars = alloc::collections::BTreeSet::new();
                s.collect_vars(&mut vars);
                t.collect_vars(&mut vars);
                vars.into_iter().for_each(bump);
            }
            FormulaKind::Exists(v, a) | FormulaKind::Forall(v, a) => {
                bump(*v);
                max_in(a, seen, best);
            }
            _ => f.direct_subformulas().iter().for_each(|g| max_in(g, seen, best)),
        }
    }
    let mut best = None;
    let mut seen = alloc::collections::BTreeSet::new();
    for f in fs {
        max_in(f, &mut seen, &mut best);
    }
    Var(best.map_or(0, |b| b + 1))
}

/// An ordered list of sentences, indexed from 0.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord)]
pub struct SentenceSeq(Vec<Formula>);

impl SentenceSeq {
    pub fn new(items: Vec<Formula>) -> Result<SentenceSeq, SyntaxError> {
        if let Some(index) = items.iter().position(|f| !f.is_sentence()) {
            return Err(SyntaxError::NotASentence { index });
        }
        Ok(SentenceSeq(items))
    }

    pub fn empty() -> SentenceSeq {
        SentenceSeq(Vec::new())
    }

    /// `self ⌢ ⟨ψ⟩`
    pub fn appended(&self, psi: Formula) -> Result<SentenceSeq, SyntaxError> {
        if !psi.is_sentence() {
            return Err(SyntaxError::NotASentence { index: self.0.len() });
        }
        let mut items = self.0.clone();
        items.push(psi);
        Ok(SentenceSeq(items))
    }

    pub fn prefix(&self, len: usize) -> SentenceSeq {
        SentenceSeq(self.0[..len].to_vec())
    }

    pub fn into_vec(self) -> Vec<Formula> {
        self.0
    }
}

impl Deref for SentenceSeq {
    type Target = [Formula];

    fn deref(&self) -> &[Formula] {
        &self.0
    }
}

/// Small helper for callers that hold numbers as `u64`.
pub fn to_u64(n: &BigUint) -> Option<u64> {
    n.to_u64()
}
