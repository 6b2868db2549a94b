use alloc::vec::Vec;

use num_bigint::BigUint;

use crate::semantics::val;
use crate::syntax::{instantiate, Assignment, Formula, FormulaKind, SyntaxError, Term, TermKind, Var};

/// `φ = template(s̄)`. Binders are renamed `x0, x1, …` in preorder and slots
/// become the variables after the binders, left to right.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SyntacticTemplate {
    pub template: Formula,
    pub slots: Vec<Term>,
    /// Original variable of each binder, in preorder.
    pub binders: Vec<Var>,
}

impl SyntacticTemplate {
    /// First variable index used for slots.
    pub fn slot_base(&self) -> u32 {
        self.binders.len() as u32
    }

    /// Puts the slots and original binder names back.
    pub fn reconstruct(&self) -> Formula {
        self.rebuild(&self.template)
    }

    fn rebuild(&self, f: &Formula) -> Formula {
        match f.kind() {
            FormulaKind::Eq(s, t) => Formula::equals(self.rebuild_term(s), self.rebuild_term(t)),
            FormulaKind::Not(a) => Formula::not(self.rebuild(a)),
            FormulaKind::Or(a, b) => Formula::or(self.rebuild(a), self.rebuild(b)),
            FormulaKind::And(a, b) => Formula::and(self.rebuild(a), self.rebuild(b)),
            FormulaKind::Exists(v, a) => Formula::exists(self.binders[v.0 as usize], self.rebuild(a)),
            FormulaKind::Forall(v, a) => Formula::forall(self.binders[v.0 as usize], self.rebuild(a)),
        }
    }

    fn rebuild_term(&self, t: &Term) -> Term {
        match t.kind() {
            TermKind::Var(v) if v.0 >= self.slot_base() => self.slots[(v.0 - self.slot_base()) as usize].clone(),
            TermKind::Var(v) => Term::var(self.binders[v.0 as usize]),
            TermKind::Zero => Term::zero(),
            TermKind::Succ(a) => Term::succ(self.rebuild_term(a)),
            TermKind::Add(a, b) => Term::add(self.rebuild_term(a), self.rebuild_term(b)),
            TermKind::Mul(a, b) => Term::mul(self.rebuild_term(a), self.rebuild_term(b)),
        }
    }
}

fn count_binders(f: &Formula) -> u32 {
    match f.kind() {
        FormulaKind::Eq(..) => 0,
        FormulaKind::Not(a) => count_binders(a),
        FormulaKind::Or(a, b) | FormulaKind::And(a, b) => count_binders(a) + count_binders(b),
        FormulaKind::Exists(_, a) | FormulaKind::Forall(_, a) => 1 + count_binders(a),
    }
}

struct Extract {
    scope: Vec<(Var, Var)>,
    base: u32,
    slots: Vec<Term>,
    binders: Vec<Var>,
}

impl Extract {
    fn bound(&self, t: &Term) -> bool {
        self.scope.iter().any(|(v, _)| t.mentions(*v))
    }

    fn formula(&mut self, f: &Formula) -> Formula {
        match f.kind() {
            FormulaKind::Eq(s, t) => {
                let s = self.term(s);
                Formula::equals(s, self.term(t))
            }
            FormulaKind::Not(a) => Formula::not(self.formula(a)),
            FormulaKind::Or(a, b) => {
                let a = self.formula(a);
                Formula::or(a, self.formula(b))
            }
            FormulaKind::And(a, b) => {
                let a = self.formula(a);
                Formula::and(a, self.formula(b))
            }
            FormulaKind::Exists(v, a) | FormulaKind::Forall(v, a) => {
                let canon = Var(self.binders.len() as u32);
                self.binders.push(*v);
                self.scope.push((*v, canon));
                let body = self.formula(a);
                self.scope.pop();
                if matches!(f.kind(), FormulaKind::Exists(..)) {
                    Formula::exists(canon, body)
                } else {
                    Formula::forall(canon, body)
                }
            }
        }
    }

    fn term(&mut self, t: &Term) -> Term {
        if !self.bound(t) {
            let v = Var(self.base + self.slots.len() as u32);
            self.slots.push(t.clone());
            return Term::var(v);
        }
        match t.kind() {
            TermKind::Var(v) => {
                let (_, canon) = self.scope.iter().rev().find(|(w, _)| w == v).expect("bound variable in scope");
                Term::var(*canon)
            }
            TermKind::Succ(a) => Term::succ(self.term(a)),
            TermKind::Add(a, b) => {
                let a = self.term(a);
                Term::add(a, self.term(b))
            }
            TermKind::Mul(a, b) => {
                let a = self.term(a);
                Term::mul(a, self.term(b))
            }
            TermKind::Zero => unreachable!("zero mentions no variable"),
        }
    }
}

/// Extracts every maximal subterm without bound variables into a slot.
pub fn template(phi: &Formula) -> SyntacticTemplate {
    let mut ex = Extract { scope: Vec::new(), base: count_binders(phi), slots: Vec::new(), binders: Vec::new() };
    let template = ex.formula(phi);
    SyntacticTemplate { template, slots: ex.slots, binders: ex.binders }
}

/// Witness of `(φ,α) ≃ (ψ,β)`: a shared template and the two slot lists.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EquivWitness {
    pub template: Formula,
    pub left: Vec<Term>,
    pub right: Vec<Term>,
    pub values: Vec<BigUint>,
}

/// Template and slot values of a sentence; two sentences are regularity
/// related exactly when these keys agree.
pub fn value_key(sentence: &Formula) -> (Formula, Vec<BigUint>) {
    let t = template(sentence);
    let values = t.slots.iter().map(|s| val(s).expect("slots of a sentence are closed")).collect();
    (t.template, values)
}

pub fn ext_equiv(p: (&Formula, &Assignment), q: (&Formula, &Assignment)) -> Result<Option<EquivWitness>, SyntaxError> {
    let (a, b) = (instantiate(p.0, p.1)?, instantiate(q.0, q.1)?);
    let (ta, tb) = (template(&a), template(&b));
    if ta.template != tb.template {
        return Ok(None);
    }
    let va: Vec<BigUint> = ta.slots.iter().map(|s| val(s).expect("closed")).collect();
    for (s, n) in tb.slots.iter().zip(&va) {
        if val(s).expect("closed") != *n {
            return Ok(None);
        }
    }
    Ok(Some(EquivWitness { template: ta.template, left: ta.slots, right: tb.slots, values: va }))
}
