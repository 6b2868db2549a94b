use alloc::sync::Arc;
use core::cmp::Ordering;
use core::fmt;
use core::hash::{Hash, Hasher};

use super::mix;

/// Index of an object-language variable; printed as `x<index>`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Var(pub u32);

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x{}", self.0)
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum TermKind {
    Zero,
    Succ(Term),
    Add(Term, Term),
    Mul(Term, Term),
    Var(Var),
}

#[derive(Debug)]
struct TermNode {
    kind: TermKind,
    digest: u64,
    size: u64,
    closed: bool,
}

impl Drop for TermNode {
    // Unrolls long successor chains so dropping a large numeral does not
    // recurse once per `S`.
    fn drop(&mut self) {
        let mut next = match core::mem::replace(&mut self.kind, TermKind::Zero) {
            TermKind::Succ(t) => Some(t),
            _ => None,
        };
        while let Some(t) = next.take() {
            if let Ok(mut node) = Arc::try_unwrap(t.0) {
                if let TermKind::Succ(inner) = core::mem::replace(&mut node.kind, TermKind::Zero) {
                    next = Some(inner);
                }
            }
        }
    }
}

/// A term of the arithmetical language `{0, S, +, ×}`.
///
/// Terms are immutable reference-counted trees. Cloning is cheap and clones
/// share structure; equality and ordering are structural and never depend on
/// node identity.
#[derive(Clone)]
pub struct Term(Arc<TermNode>);

impl Term {
    fn from_kind(kind: TermKind) -> Term {
        let (digest, size, closed) = match &kind {
            TermKind::Zero => (mix(6, 0), 1, true),
            TermKind::Succ(t) => (mix(7, t.digest()), t.size().saturating_add(1), t.is_closed()),
            TermKind::Add(a, b) => (
                mix(mix(8, a.digest()), b.digest()),
                a.size().saturating_add(b.size()).saturating_add(1),
                a.is_closed() && b.is_closed(),
            ),
            TermKind::Mul(a, b) => (
                mix(mix(9, a.digest()), b.digest()),
                a.size().saturating_add(b.size()).saturating_add(1),
                a.is_closed() && b.is_closed(),
            ),
            TermKind::Var(v) => (mix(10, u64::from(v.0)), 1, false),
        };
        Term(Arc::new(TermNode { kind, digest, size, closed }))
    }

    pub fn zero() -> Term {
        Term::from_kind(TermKind::Zero)
    }

    pub fn succ(t: Term) -> Term {
        Term::from_kind(TermKind::Succ(t))
    }

    #[allow(clippy::should_implement_trait)]
    pub fn add(a: Term, b: Term) -> Term {
        Term::from_kind(TermKind::Add(a, b))
    }

    #[allow(clippy::should_implement_trait)]
    pub fn mul(a: Term, b: Term) -> Term {
        Term::from_kind(TermKind::Mul(a, b))
    }

    pub fn var(v: Var) -> Term {
        Term::from_kind(TermKind::Var(v))
    }

    pub fn kind(&self) -> &TermKind {
        &self.0.kind
    }

    /// Structural hash, stable across runs and independent of sharing.
    pub fn digest(&self) -> u64 {
        self.0.digest
    }

    /// Node count of the fully unshared tree (saturating).
    pub fn size(&self) -> u64 {
        self.0.size
    }

    pub fn is_closed(&self) -> bool {
        self.0.closed
    }

    pub fn ptr_eq(&self, other: &Term) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
    }

    pub(crate) fn addr(&self) -> usize {
        Arc::as_ptr(&self.0) as usize
    }

    pub fn children(&self) -> impl Iterator<Item = &Term> {
        let (a, b) = match self.kind() {
            TermKind::Zero | TermKind::Var(_) => (None, None),
            TermKind::Succ(t) => (Some(t), None),
            TermKind::Add(a, b) | TermKind::Mul(a, b) => (Some(a), Some(b)),
        };
        a.into_iter().chain(b)
    }

    /// Does `v` occur in this term?
    pub fn mentions(&self, v: Var) -> bool {
        if self.is_closed() {
            return false;
        }
        match self.kind() {
            TermKind::Var(w) => *w == v,
            _ => self.children().any(|c| c.mentions(v)),
        }
    }

    pub fn collect_vars(&self, out: &mut alloc::collections::BTreeSet<Var>) {
        if self.is_closed() {
            return;
        }
        match self.kind() {
            TermKind::Var(v) => {
                out.insert(*v);
            }
            _ => self.children().for_each(|c| c.collect_vars(out)),
        }
    }

    fn tag(&self) -> u8 {
        match self.kind() {
            TermKind::Zero => 0,
            TermKind::Succ(_) => 1,
            TermKind::Add(..) => 2,
            TermKind::Mul(..) => 3,
            TermKind::Var(_) => 4,
        }
    }
}

impl PartialEq for Term {
    fn eq(&self, other: &Term) -> bool {
        let (mut a, mut b) = (self, other);
        loop {
            if a.ptr_eq(b) {
                return true;
            }
            if a.digest() != b.digest() || a.size() != b.size() {
                return false;
            }
            match (a.kind(), b.kind()) {
                (TermKind::Succ(x), TermKind::Succ(y)) => (a, b) = (x, y),
                (x, y) => return x == y,
            }
        }
    }
}

impl Eq for Term {}

impl Ord for Term {
    fn cmp(&self, other: &Term) -> Ordering {
        let (mut a, mut b) = (self, other);
        loop {
            if a.ptr_eq(b) {
                return Ordering::Equal;
            }
            let head = a.digest().cmp(&b.digest()).then(a.size().cmp(&b.size()));
            if head != Ordering::Equal {
                return head;
            }
            match (a.kind(), b.kind()) {
                (TermKind::Succ(x), TermKind::Succ(y)) => (a, b) = (x, y),
                (TermKind::Add(a1, a2), TermKind::Add(b1, b2))
                | (TermKind::Mul(a1, a2), TermKind::Mul(b1, b2)) => {
                    return a1.cmp(b1).then_with(|| a2.cmp(b2))
                }
                (TermKind::Var(x), TermKind::Var(y)) => return x.cmp(y),
                _ => return a.tag().cmp(&b.tag()),
            }
        }
    }
}

impl PartialOrd for Term {
    fn partial_cmp(&self, other: &Term) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Hash for Term {
    fn hash<H: Hasher>(&self, state: &mut H) {
        state.write_u64(self.digest());
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind() {
            TermKind::Zero => f.write_str("0"),
            TermKind::Succ(_) => {
                // numerals can be long; print successor chains iteratively
                let mut depth = 0usize;
                let mut cur = self;
                while let TermKind::Succ(inner) = cur.kind() {
                    depth += 1;
                    cur = inner;
                }
                for _ in 0..depth {
                    f.write_str("S(")?;
                }
                write!(f, "{cur}")?;
                for _ in 0..depth {
                    f.write_str(")")?;
                }
                Ok(())
            }
            TermKind::Add(a, b) => write!(f, "({a}+{b})"),
            TermKind::Mul(a, b) => write!(f, "({a}*{b})"),
            TermKind::Var(v) => write!(f, "{v}"),
        }
    }
}

impl fmt::Debug for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
