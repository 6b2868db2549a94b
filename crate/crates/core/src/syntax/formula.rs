use alloc::collections::{BTreeMap, BTreeSet};
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use core::hash::{Hash, Hasher};

use super::term::{Term, Var};
use super::mix;

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum FormulaKind {
    Eq(Term, Term),
    Not(Formula),
    Or(Formula, Formula),
    And(Formula, Formula),
    Exists(Var, Formula),
    Forall(Var, Formula),
}

#[derive(Debug)]
struct FormulaNode {
    kind: FormulaKind,
    digest: u64,
    size: u64,
    depth: u32,
    free: Arc<[Var]>,
}

/// A formula of first-order arithmetic. There is no primitive implication.
///
/// Like [`Term`], a `Formula` is an immutable shared tree. Each node caches
/// its structural digest, flat size, depth and free-variable set, so that
/// sentences built over heavily shared DAGs stay cheap to compare and query.
#[derive(Clone)]
pub struct Formula(Arc<FormulaNode>);

fn merge(a: &[Var], b: &[Var]) -> Arc<[Var]> {
    let set: BTreeSet<Var> = a.iter().chain(b).copied().collect();
    set.into_iter().collect()
}

impl Formula {
    fn from_kind(kind: FormulaKind) -> Formula {
        let (digest, size, depth, free): (u64, u64, u32, Arc<[Var]>) = match &kind {
            FormulaKind::Eq(s, t) => {
                let mut vars = BTreeSet::new();
                s.collect_vars(&mut vars);
                t.collect_vars(&mut vars);
                (
                    mix(mix(100, s.digest()), t.digest()),
                    s.size().saturating_add(t.size()).saturating_add(1),
                    0,
                    vars.into_iter().collect(),
                )
            }
            FormulaKind::Not(a) => (
                mix(101, a.digest()),
                a.flat_size().saturating_add(1),
                a.depth() + 1,
                a.0.free.clone(),
            ),
            FormulaKind::Or(a, b) | FormulaKind::And(a, b) => {
                let tag = if matches!(kind, FormulaKind::Or(..)) { 102 } else { 103 };
                let free = if b.0.free.is_empty() {
                    a.0.free.clone()
                } else if a.0.free.is_empty() {
                    b.0.free.clone()
                } else {
                    merge(&a.0.free, &b.0.free)
                };
                (
                    mix(mix(tag, a.digest()), b.digest()),
                    a.flat_size().saturating_add(b.flat_size()).saturating_add(1),
                    a.depth().max(b.depth()) + 1,
                    free,
                )
            }
            FormulaKind::Exists(v, a) | FormulaKind::Forall(v, a) => {
                let tag = if matches!(kind, FormulaKind::Exists(..)) { 104 } else { 105 };
                let free: Arc<[Var]> = if a.0.free.contains(v) {
                    a.0.free.iter().copied().filter(|w| w != v).collect()
                } else {
                    a.0.free.clone()
                };
                (
                    mix(mix(tag, u64::from(v.0)), a.digest()),
                    a.flat_size().saturating_add(1),
                    a.depth() + 1,
                    free,
                )
            }
        };
        Formula(Arc::new(FormulaNode { kind, digest, size, depth, free }))
    }

    pub fn equals(s: Term, t: Term) -> Formula {
        Formula::from_kind(FormulaKind::Eq(s, t))
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(a: Formula) -> Formula {
        Formula::from_kind(FormulaKind::Not(a))
    }

    pub fn or(a: Formula, b: Formula) -> Formula {
        Formula::from_kind(FormulaKind::Or(a, b))
    }

    pub fn and(a: Formula, b: Formula) -> Formula {
        Formula::from_kind(FormulaKind::And(a, b))
    }

    pub fn exists(v: Var, a: Formula) -> Formula {
        Formula::from_kind(FormulaKind::Exists(v, a))
    }

    pub fn forall(v: Var, a: Formula) -> Formula {
        Formula::from_kind(FormulaKind::Forall(v, a))
    }

    /// `¬a ∨ b`, the only reading of `a → b` used anywhere in the crate.
    pub fn implies(a: Formula, b: Formula) -> Formula {
        Formula::or(Formula::not(a), b)
    }

    /// `0 = 0`
    pub fn verum() -> Formula {
        Formula::equals(Term::zero(), Term::zero())
    }

    /// `¬(0 = 0)`
    pub fn falsum() -> Formula {
        Formula::not(Formula::verum())
    }

    pub fn kind(&self) -> &FormulaKind {
        &self.0.kind
    }

    pub fn digest(&self) -> u64 {
        self.0.digest
    }

    /// Node count (formula and term nodes) of the fully unshared tree,
    /// saturating at `u64::MAX`.
    pub fn flat_size(&self) -> u64 {
        self.0.size
    }

    /// Connective/quantifier nesting depth; atomic formulas have depth 0.
    pub fn depth(&self) -> u32 {
        self.0.depth
    }

    /// The free variables in increasing order.
    pub fn free_vars(&self) -> &[Var] {
        &self.0.free
    }

    pub fn is_sentence(&self) -> bool {
        self.0.free.is_empty()
    }

    pub fn ptr_eq(&self, other: &Formula) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
    }

    pub(crate) fn addr(&self) -> usize {
        Arc::as_ptr(&self.0) as usize
    }

    pub fn is_quantifier_free(&self) -> bool {
        match self.kind() {
            FormulaKind::Eq(..) => true,
            FormulaKind::Not(a) => a.is_quantifier_free(),
            FormulaKind::Or(a, b) | FormulaKind::And(a, b) => {
                a.is_quantifier_free() && b.is_quantifier_free()
            }
            FormulaKind::Exists(..) | FormulaKind::Forall(..) => false,
        }
    }

    /// `[]` for equations, `[ψ]` for negations and quantifiers, `[ψ, η]` for
    /// binary connectives.
    pub fn direct_subformulas(&self) -> Vec<Formula> {
        match self.kind() {
            FormulaKind::Eq(..) => Vec::new(),
            FormulaKind::Not(a) | FormulaKind::Exists(_, a) | FormulaKind::Forall(_, a) => {
                alloc::vec![a.clone()]
            }
            FormulaKind::Or(a, b) | FormulaKind::And(a, b) => alloc::vec![a.clone(), b.clone()],
        }
    }

    /// Every distinct subformula (including `self`), each listed once.
    pub fn subformulas(&self) -> BTreeSet<Formula> {
        let mut out = BTreeSet::new();
        let mut stack = alloc::vec![self.clone()];
        while let Some(f) = stack.pop() {
            if out.insert(f.clone()) {
                stack.extend(f.direct_subformulas());
            }
        }
        out
    }

    /// Deep copy with no sharing between equal subtrees. Exponential on
    /// DAG-shaped inputs; meant for tests that compare representations.
    pub fn unshare(&self) -> Formula {
        fn term(t: &Term) -> Term {
            use super::term::TermKind as K;
            match t.kind() {
                K::Zero => Term::zero(),
                K::Succ(a) => Term::succ(term(a)),
                K::Add(a, b) => Term::add(term(a), term(b)),
                K::Mul(a, b) => Term::mul(term(a), term(b)),
                K::Var(v) => Term::var(*v),
            }
        }
        match self.kind() {
            FormulaKind::Eq(s, t) => Formula::equals(term(s), term(t)),
            FormulaKind::Not(a) => Formula::not(a.unshare()),
            FormulaKind::Or(a, b) => Formula::or(a.unshare(), b.unshare()),
            FormulaKind::And(a, b) => Formula::and(a.unshare(), b.unshare()),
            FormulaKind::Exists(v, a) => Formula::exists(*v, a.unshare()),
            FormulaKind::Forall(v, a) => Formula::forall(*v, a.unshare()),
        }
    }

    fn tag(&self) -> u8 {
        match self.kind() {
            FormulaKind::Eq(..) => 0,
            FormulaKind::Not(_) => 1,
            FormulaKind::Or(..) => 2,
            FormulaKind::And(..) => 3,
            FormulaKind::Exists(..) => 4,
            FormulaKind::Forall(..) => 5,
        }
    }
}

/// Number of distinct nodes (formula and term) reachable from `roots`,
/// counting each shared node once.
pub fn dag_size<'a>(roots: impl IntoIterator<Item = &'a Formula>) -> usize {
    let mut seen_f = BTreeSet::new();
    let mut seen_t = BTreeSet::new();
    let mut stack: Vec<Formula> = roots.into_iter().cloned().collect();
    let mut terms: Vec<Term> = Vec::new();
    while let Some(f) = stack.pop() {
        if !seen_f.insert(f.addr()) {
            continue;
        }
        match f.kind() {
            FormulaKind::Eq(s, t) => {
                terms.push(s.clone());
                terms.push(t.clone());
            }
            _ => stack.extend(f.direct_subformulas()),
        }
    }
    while let Some(t) = terms.pop() {
        if seen_t.insert(t.addr()) {
            terms.extend(t.children().cloned());
        }
    }
    seen_f.len() + seen_t.len()
}

/// Simultaneous substitution of closed terms for free variables.
///
/// Only free occurrences are replaced; binders shadow their variable.
/// Shared subtrees are rewritten once.
pub(crate) struct ClosedSubst<'a> {
    map: &'a BTreeMap<Var, Term>,
    memo: BTreeMap<(usize, u64), Formula>,
}

impl<'a> ClosedSubst<'a> {
    pub(crate) fn new(map: &'a BTreeMap<Var, Term>) -> Self {
        debug_assert!(map.values().all(Term::is_closed));
        ClosedSubst { map, memo: BTreeMap::new() }
    }

    fn term(&self, t: &Term, shadow: &[Var]) -> Term {
        use super::term::TermKind as K;
        if t.is_closed() {
            return t.clone();
        }
        match t.kind() {
            K::Var(v) => match self.map.get(v) {
                Some(r) if !shadow.contains(v) => r.clone(),
                _ => t.clone(),
            },
            K::Succ(a) => Term::succ(self.term(a, shadow)),
            K::Add(a, b) => Term::add(self.term(a, shadow), self.term(b, shadow)),
            K::Mul(a, b) => Term::mul(self.term(a, shadow), self.term(b, shadow)),
            K::Zero => t.clone(),
        }
    }

    pub(crate) fn formula(&mut self, f: &Formula, shadow: &mut Vec<Var>) -> Formula {
        if !f.free_vars().iter().any(|v| self.map.contains_key(v) && !shadow.contains(v)) {
            return f.clone();
        }
        let key = (f.addr(), shadow.iter().fold(0u64, |h, v| mix(h, u64::from(v.0))));
        if let Some(done) = self.memo.get(&key) {
            return done.clone();
        }
        let out = match f.kind() {
            FormulaKind::Eq(s, t) => Formula::equals(self.term(s, shadow), self.term(t, shadow)),
            FormulaKind::Not(a) => Formula::not(self.formula(a, shadow)),
            FormulaKind::Or(a, b) => {
                let a = self.formula(a, shadow);
                Formula::or(a, self.formula(b, shadow))
            }
            FormulaKind::And(a, b) => {
                let a = self.formula(a, shadow);
                Formula::and(a, self.formula(b, shadow))
            }
            FormulaKind::Exists(v, a) | FormulaKind::Forall(v, a) => {
                shadow.push(*v);
                let body = self.formula(a, shadow);
                shadow.pop();
                if matches!(f.kind(), FormulaKind::Exists(..)) {
                    Formula::exists(*v, body)
                } else {
                    Formula::forall(*v, body)
                }
            }
        };
        self.memo.insert(key, out.clone());
        out
    }
}

impl PartialEq for Formula {
    fn eq(&self, other: &Formula) -> bool {
        self.ptr_eq(other)
            || (self.digest() == other.digest()
                && self.flat_size() == other.flat_size()
                && self.kind() == other.kind())
    }
}

impl Eq for Formula {}

impl Ord for Formula {
    fn cmp(&self, other: &Formula) -> Ordering {
        if self.ptr_eq(other) {
            return Ordering::Equal;
        }
        self.digest()
            .cmp(&other.digest())
            .then(self.flat_size().cmp(&other.flat_size()))
            .then_with(|| match (self.kind(), other.kind()) {
                (FormulaKind::Eq(a1, a2), FormulaKind::Eq(b1, b2)) => {
                    a1.cmp(b1).then_with(|| a2.cmp(b2))
                }
                (FormulaKind::Not(a), FormulaKind::Not(b)) => a.cmp(b),
                (FormulaKind::Or(a1, a2), FormulaKind::Or(b1, b2))
                | (FormulaKind::And(a1, a2), FormulaKind::And(b1, b2)) => {
                    a1.cmp(b1).then_with(|| a2.cmp(b2))
                }
                (FormulaKind::Exists(v, a), FormulaKind::Exists(w, b))
                | (FormulaKind::Forall(v, a), FormulaKind::Forall(w, b)) => {
                    v.cmp(w).then_with(|| a.cmp(b))
                }
                _ => self.tag().cmp(&other.tag()),
            })
    }
}

impl PartialOrd for Formula {
    fn partial_cmp(&self, other: &Formula) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Hash for Formula {
    fn hash<H: Hasher>(&self, state: &mut H) {
        state.write_u64(self.digest());
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind() {
            FormulaKind::Eq(s, t) => write!(f, "{s}={t}"),
            FormulaKind::Not(a) => write!(f, "!{a}"),
            FormulaKind::Or(a, b) => write!(f, "({a}|{b})"),
            FormulaKind::And(a, b) => write!(f, "({a}&{b})"),
            FormulaKind::Exists(v, a) => write!(f, "E {v}.{a}"),
            FormulaKind::Forall(v, a) => write!(f, "A {v}.{a}"),
        }
    }
}

impl fmt::Debug for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
