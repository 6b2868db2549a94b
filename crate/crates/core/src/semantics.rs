//! Values of terms and budgeted three-valued evaluation of sentences in the
//! standard model.
//!
//! Quantifiers search `0..=budget`. Besides vacuous quantifiers, three
//! derived shapes are decided exactly:
//!
//! * `∃z(z + s = t)` with `z` not in `s, t`, which is `s ≤ t`;
//! * `∃x(∃z(z + x = t) ∧ ψ)` and `∀x(¬∃z(z + x = t) ∨ ψ)`, the bounded
//!   quantifiers, whenever the bound's value is within the budget.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};

use crate::syntax::{Assignment, Formula, FormulaKind, Term, TermKind, Var};

pub const DEFAULT_BUDGET: u64 = 64;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum EvalError {
    #[error("term is not closed")]
    OpenTerm,
    #[error("variable {0} has no value")]
    Unbound(Var),
    #[error("formula has free variables")]
    NotASentence,
}

/// Witness or counterexample values chosen for the outermost decided
/// quantifiers, in binder order.
pub type Certificate = Vec<(Var, BigUint)>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    True(Certificate),
    False(Certificate),
    Unknown,
}

impl Verdict {
    pub fn truth(&self) -> Option<bool> {
        match self {
            Verdict::True(_) => Some(true),
            Verdict::False(_) => Some(false),
            Verdict::Unknown => None,
        }
    }

    pub fn is_true(&self) -> bool {
        matches!(self, Verdict::True(_))
    }

    pub fn is_false(&self) -> bool {
        matches!(self, Verdict::False(_))
    }

    pub fn is_determined(&self) -> bool {
        !matches!(self, Verdict::Unknown)
    }

    pub fn label(&self) -> &'static str {
        match self {
            Verdict::True(_) => "true",
            Verdict::False(_) => "false",
            Verdict::Unknown => "unknown",
        }
    }

    pub fn certificate(&self) -> &[(Var, BigUint)] {
        match self {
            Verdict::True(c) | Verdict::False(c) => c,
            Verdict::Unknown => &[],
        }
    }

    fn negate(self) -> Verdict {
        match self {
            Verdict::True(c) => Verdict::False(c),
            Verdict::False(c) => Verdict::True(c),
            Verdict::Unknown => Verdict::Unknown,
        }
    }
}

/// `val(t)` for a closed term.
pub fn val(t: &Term) -> Result<BigUint, EvalError> {
    if !t.is_closed() {
        return Err(EvalError::OpenTerm);
    }
    term_eval(t, &Assignment::new())
}

/// `t^α`: the value of `t` with variables read from `α`.
pub fn term_eval(t: &Term, alpha: &Assignment) -> Result<BigUint, EvalError> {
    value(t, &|v| alpha.get(v).cloned())
}

pub fn val_seq(ts: &[Term]) -> Result<Vec<BigUint>, EvalError> {
    ts.iter().map(val).collect()
}

fn value(t: &Term, env: &dyn Fn(Var) -> Option<BigUint>) -> Result<BigUint, EvalError> {
    let mut succs = 0u64;
    let mut cur = t;
    while let TermKind::Succ(inner) = cur.kind() {
        succs += 1;
        cur = inner;
    }
    let base = match cur.kind() {
        TermKind::Zero => BigUint::zero(),
        TermKind::Var(v) => env(*v).ok_or(EvalError::Unbound(*v))?,
        TermKind::Add(a, b) => value(a, env)? + value(b, env)?,
        TermKind::Mul(a, b) => value(a, env)? * value(b, env)?,
        TermKind::Succ(_) => unreachable!(),
    };
    Ok(base + succs)
}

/// Bounded evaluation of a sentence.
pub fn evaluate(phi: &Formula, budget: u64) -> Result<Verdict, EvalError> {
    if !phi.is_sentence() {
        return Err(EvalError::NotASentence);
    }
    let mut ev = Evaluator::new(budget);
    Ok(ev.formula(phi))
}

/// Bounded evaluation of `φ` under `α`, equivalent to evaluating `φ[α]`.
pub fn evaluate_under(phi: &Formula, alpha: &Assignment, budget: u64) -> Result<Verdict, EvalError> {
    if let Some(v) = alpha.first_missing(phi.free_vars()) {
        return Err(EvalError::Unbound(v));
    }
    let mut ev = Evaluator::new(budget);
    for (v, n) in alpha.iter() {
        ev.env.push((v, n.clone()));
    }
    Ok(ev.formula(phi))
}

/// Reusable evaluator; memoises sentences by node identity, so heavily
/// shared DAGs are evaluated once per distinct node.
pub struct Evaluator {
    budget: u64,
    env: Vec<(Var, BigUint)>,
    memo: BTreeMap<usize, (Formula, Verdict)>,
}

enum Shape<'a> {
    Compare(&'a Term, &'a Term),
    Bounded(&'a Term, &'a Formula),
    Plain,
}

/// `∃z(z + s = t)` with `z` absent from `s` and `t`.
pub fn as_comparison(f: &Formula) -> Option<(&Term, &Term)> {
    let FormulaKind::Exists(z, body) = f.kind() else { return None };
    let FormulaKind::Eq(lhs, t) = body.kind() else { return None };
    let TermKind::Add(zt, s) = lhs.kind() else { return None };
    match zt.kind() {
        TermKind::Var(w) if w == z && !s.mentions(*z) && !t.mentions(*z) => Some((s, t)),
        _ => None,
    }
}

/// `∃x(x ≤ t ∧ ψ)` with `x` not in `t`; returns `(x, t, ψ)`.
pub fn as_bounded_exists(f: &Formula) -> Option<(Var, &Term, &Formula)> {
    let FormulaKind::Exists(x, body) = f.kind() else { return None };
    let FormulaKind::And(guard, psi) = body.kind() else { return None };
    bound_of(*x, guard).map(|t| (*x, t, psi))
}

/// `∀x(¬(x ≤ t) ∨ ψ)` with `x` not in `t`; returns `(x, t, ψ)`.
pub fn as_bounded_forall(f: &Formula) -> Option<(Var, &Term, &Formula)> {
    let FormulaKind::Forall(x, body) = f.kind() else { return None };
    let FormulaKind::Or(neg, psi) = body.kind() else { return None };
    let FormulaKind::Not(guard) = neg.kind() else { return None };
    bound_of(*x, guard).map(|t| (*x, t, psi))
}

fn bound_of(x: Var, guard: &Formula) -> Option<&Term> {
    let (s, t) = as_comparison(guard)?;
    match s.kind() {
        TermKind::Var(w) if *w == x && !t.mentions(x) => Some(t),
        _ => None,
    }
}

impl Evaluator {
    pub fn new(budget: u64) -> Evaluator {
        Evaluator { budget, env: Vec::new(), memo: BTreeMap::new() }
    }

    fn lookup(&self, v: Var) -> Option<BigUint> {
        self.env.iter().rev().find(|(w, _)| *w == v).map(|(_, n)| n.clone())
    }

    fn term(&self, t: &Term) -> BigUint {
        value(t, &|v| self.lookup(v)).expect("free variables are bound by the environment")
    }

    /// Evaluates a sentence, reusing verdicts from earlier calls.
    pub fn sentence(&mut self, phi: &Formula) -> Result<Verdict, EvalError> {
        if !phi.is_sentence() {
            return Err(EvalError::NotASentence);
        }
        Ok(self.formula(phi))
    }

    // every free variable of `phi` must be bound by the environment
    fn formula(&mut self, phi: &Formula) -> Verdict {
        if phi.is_sentence() {
            if let Some((_, v)) = self.memo.get(&phi.addr()) {
                return v.clone();
            }
            // sentences do not read the environment
            let saved = core::mem::take(&mut self.env);
            let out = self.step(phi);
            self.env = saved;
            self.memo.insert(phi.addr(), (phi.clone(), out.clone()));
            out
        } else {
            self.step(phi)
        }
    }

    fn step(&mut self, phi: &Formula) -> Verdict {
        match phi.kind() {
            FormulaKind::Eq(s, t) => {
                if self.term(s) == self.term(t) {
                    Verdict::True(Vec::new())
                } else {
                    Verdict::False(Vec::new())
                }
            }
            FormulaKind::Not(a) => self.formula(a).negate(),
            FormulaKind::Or(a, b) => match self.formula(a) {
                t @ Verdict::True(_) => t,
                Verdict::False(_) => self.formula(b),
                Verdict::Unknown => match self.formula(b) {
                    t @ Verdict::True(_) => t,
                    _ => Verdict::Unknown,
                },
            },
            FormulaKind::And(a, b) => match self.formula(a) {
                f @ Verdict::False(_) => f,
                Verdict::True(_) => self.formula(b),
                Verdict::Unknown => match self.formula(b) {
                    f @ Verdict::False(_) => f,
                    _ => Verdict::Unknown,
                },
            },
            FormulaKind::Exists(v, body) => {
                let shape = if let Some((s, t)) = as_comparison(phi) {
                    Shape::Compare(s, t)
                } else if let Some((_, t, psi)) = as_bounded_exists(phi) {
                    Shape::Bounded(t, psi)
                } else {
                    Shape::Plain
                };
                self.quantifier(*v, body, shape, true)
            }
            FormulaKind::Forall(v, body) => {
                let shape = match as_bounded_forall(phi) {
                    Some((_, t, psi)) => Shape::Bounded(t, psi),
                    None => Shape::Plain,
                };
                self.quantifier(*v, body, shape, false)
            }
        }
    }

    /// Shared search for both quantifiers. `exists` selects which value of
    /// the body is decisive (true for ∃, false for ∀).
    fn quantifier(&mut self, v: Var, body: &Formula, shape: Shape<'_>, exists: bool) -> Verdict {
        let decisive = |r: &Verdict| if exists { r.is_true() } else { r.is_false() };
        let wrap = |cert: Certificate| if exists { Verdict::True(cert) } else { Verdict::False(cert) };
        let settle = |cert: Certificate| if exists { Verdict::False(cert) } else { Verdict::True(cert) };

        if !body.free_vars().contains(&v) {
            return self.formula(body);
        }
        let (limit, conclusive, scope) = match shape {
            Shape::Compare(s, t) => {
                let (s, t) = (self.term(s), self.term(t));
                return if s <= t {
                    Verdict::True(alloc::vec![(v, t - s)])
                } else {
                    Verdict::False(Vec::new())
                };
            }
            Shape::Bounded(t, psi) => {
                let bound = self.term(t);
                match bound.to_u64().filter(|b| *b <= self.budget) {
                    Some(b) => (b, true, psi),
                    None => (self.budget, false, psi),
                }
            }
            Shape::Plain => (self.budget, false, body),
        };
        let mut undetermined = false;
        let mut n = BigUint::zero();
        loop {
            self.env.push((v, n.clone()));
            let r = self.formula(scope);
            self.env.pop();
            if decisive(&r) {
                let mut cert = alloc::vec![(v, n)];
                cert.extend(r.certificate().iter().cloned());
                return wrap(cert);
            }
            undetermined |= !r.is_determined();
            if n >= BigUint::from(limit) {
                break;
            }
            n += BigUint::one();
        }
        if conclusive && !undetermined {
            settle(Vec::new())
        } else {
            Verdict::Unknown
        }
    }
}

/// A source of truth values for sentences; `None` means the source cannot
/// decide (budget exhausted, or the sentence lies outside its domain).
pub trait TruthOracle {
    fn truth(&mut self, phi: &Formula) -> Option<bool>;
}

impl TruthOracle for Evaluator {
    fn truth(&mut self, phi: &Formula) -> Option<bool> {
        self.sentence(phi).ok()?.truth()
    }
}

impl<F: FnMut(&Formula) -> Option<bool>> TruthOracle for F {
    fn truth(&mut self, phi: &Formula) -> Option<bool> {
        self(phi)
    }
}

/// `s ≤ t` as the formula `∃z(z + s = t)`, with `z` the least variable not
/// occurring in `s` or `t`.
pub fn leq(s: Term, t: Term) -> Formula {
    let mut used = alloc::collections::BTreeSet::new();
    s.collect_vars(&mut used);
    t.collect_vars(&mut used);
    let z = (0..).map(Var).find(|v| !used.contains(v)).expect("unbounded");
    leq_with(z, s, t)
}

/// `∃z(z + s = t)` with an explicit comparison variable.
pub fn leq_with(z: Var, s: Term, t: Term) -> Formula {
    Formula::exists(z, Formula::equals(Term::add(Term::var(z), s), t))
}

/// `∃x(x ≤ t ∧ ψ)`, using `z` as the comparison variable.
pub fn bounded_exists(x: Var, z: Var, t: Term, psi: Formula) -> Formula {
    Formula::exists(x, Formula::and(leq_with(z, Term::var(x), t), psi))
}

/// `∀x(¬(x ≤ t) ∨ ψ)`, using `z` as the comparison variable.
pub fn bounded_forall(x: Var, z: Var, t: Term, psi: Formula) -> Formula {
    Formula::forall(x, Formula::or(Formula::not(leq_with(z, Term::var(x), t)), psi))
}
