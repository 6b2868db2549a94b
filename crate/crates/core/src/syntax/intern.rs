use alloc::collections::BTreeMap;

use super::formula::{Formula, FormulaKind};
use super::term::{Term, TermKind};

/// Hash-consing table: structurally equal nodes are mapped to one shared
/// node. Keys use child addresses, which is sound because children are
/// interned before their parents.
///
/// Interning is an optimisation only. Equality, ordering and every
/// operation in the crate give the same answers on interned and
/// non-interned values.
#[derive(Default)]
pub struct Interner {
    terms: BTreeMap<(u8, usize, usize, u32), Term>,
    formulas: BTreeMap<(u8, usize, usize, u32), Formula>,
    // address -> (original, interned); the original is held so its address
    // stays valid for the lifetime of the table
    seen_terms: BTreeMap<usize, (Term, Term)>,
    seen_formulas: BTreeMap<usize, (Formula, Formula)>,
}

impl Interner {
    pub fn new() -> Interner {
        Interner::default()
    }

    /// Number of distinct nodes held by the table.
    pub fn len(&self) -> usize {
        self.terms.len() + self.formulas.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn term(&mut self, t: &Term) -> Term {
        if let Some((_, done)) = self.seen_terms.get(&t.addr()) {
            return done.clone();
        }
        let (key, build): ((u8, usize, usize, u32), Term) = match t.kind() {
            TermKind::Zero => ((0, 0, 0, 0), Term::zero()),
            TermKind::Var(v) => ((4, 0, 0, v.0), Term::var(*v)),
            TermKind::Succ(a) => {
                let a = self.term(a);
                ((1, a.addr(), 0, 0), Term::succ(a))
            }
            TermKind::Add(a, b) => {
                let (a, b) = (self.term(a), self.term(b));
                ((2, a.addr(), b.addr(), 0), Term::add(a, b))
            }
            TermKind::Mul(a, b) => {
                let (a, b) = (self.term(a), self.term(b));
                ((3, a.addr(), b.addr(), 0), Term::mul(a, b))
            }
        };
        let out = self.terms.entry(key).or_insert(build).clone();
        self.seen_terms.insert(t.addr(), (t.clone(), out.clone()));
        self.seen_terms.insert(out.addr(), (out.clone(), out.clone()));
        out
    }

    pub fn formula(&mut self, f: &Formula) -> Formula {
        if let Some((_, done)) = self.seen_formulas.get(&f.addr()) {
            return done.clone();
        }
        let (key, build): ((u8, usize, usize, u32), Formula) = match f.kind() {
            FormulaKind::Eq(s, t) => {
                let (s, t) = (self.term(s), self.term(t));
                ((0, s.addr(), t.addr(), 0), Formula::equals(s, t))
            }
            FormulaKind::Not(a) => {
                let a = self.formula(a);
                ((1, a.addr(), 0, 0), Formula::not(a))
            }
            FormulaKind::Or(a, b) => {
                let (a, b) = (self.formula(a), self.formula(b));
                ((2, a.addr(), b.addr(), 0), Formula::or(a, b))
            }
            FormulaKind::And(a, b) => {
                let (a, b) = (self.formula(a), self.formula(b));
                ((3, a.addr(), b.addr(), 0), Formula::and(a, b))
            }
            FormulaKind::Exists(v, a) => {
                let a = self.formula(a);
                ((4, a.addr(), 0, v.0), Formula::exists(*v, a))
            }
            FormulaKind::Forall(v, a) => {
                let a = self.formula(a);
                ((5, a.addr(), 0, v.0), Formula::forall(*v, a))
            }
        };
        let out = self.formulas.entry(key).or_insert(build).clone();
        self.seen_formulas.insert(f.addr(), (f.clone(), out.clone()));
        self.seen_formulas.insert(out.addr(), (out.clone(), out.clone()));
        out
    }
}
