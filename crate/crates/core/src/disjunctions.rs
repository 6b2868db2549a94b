//! Disjunction and conjunction builders over finite sentence sequences.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use crate::coding::encode_formula;
use crate::semantics::{as_bounded_exists, bounded_exists};
use crate::syntax::{num_u64, Formula, FormulaKind, Term, TermKind, Var};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DisjError {
    #[error("builder needs a nonempty sequence")]
    Empty,
    #[error("split needs at least two elements")]
    TooShort,
    #[error("choice function returned an element outside the set")]
    InvalidChoice,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum BuilderKind {
    LeftGrouped,
    Balanced,
    QuantifiedOuter,
    NegatedConjunction,
    /// Selective disjunction with the minimum-code choice function.
    Selective,
}

impl BuilderKind {
    pub const ALL: [BuilderKind; 5] = [
        BuilderKind::LeftGrouped,
        BuilderKind::Balanced,
        BuilderKind::QuantifiedOuter,
        BuilderKind::NegatedConjunction,
        BuilderKind::Selective,
    ];

    pub fn name(self) -> &'static str {
        match self {
            BuilderKind::LeftGrouped => "left",
            BuilderKind::Balanced => "balanced",
            BuilderKind::QuantifiedOuter => "outer",
            BuilderKind::NegatedConjunction => "negconj",
            BuilderKind::Selective => "selective",
        }
    }

    pub fn from_name(name: &str) -> Option<BuilderKind> {
        BuilderKind::ALL.into_iter().find(|k| k.name() == name)
    }
}

/// Anything that turns a finite sentence sequence into one sentence.
pub trait Disjoin {
    fn build(&self, items: &[Formula]) -> Result<Formula, DisjError>;
}

impl Disjoin for BuilderKind {
    fn build(&self, items: &[Formula]) -> Result<Formula, DisjError> {
        match self {
            BuilderKind::LeftGrouped => bigvee(items),
            BuilderKind::Balanced => Ok(balanced(items)),
            BuilderKind::QuantifiedOuter => quantified_outer(items),
            BuilderKind::NegatedConjunction => negated_conjunction_outer(items),
            BuilderKind::Selective => {
                let set: BTreeSet<Formula> = items.iter().cloned().collect();
                selective_outer(&set, &min_code_choice)
            }
        }
    }
}

impl<F: Fn(&[Formula]) -> Result<Formula, DisjError>> Disjoin for F {
    fn build(&self, items: &[Formula]) -> Result<Formula, DisjError> {
        self(items)
    }
}

/// `(((φ₀ ∨ φ₁) ∨ …) ∨ φ_c)`
pub fn bigvee(items: &[Formula]) -> Result<Formula, DisjError> {
    let (first, rest) = items.split_first().ok_or(DisjError::Empty)?;
    Ok(rest.iter().fold(first.clone(), |acc, f| Formula::or(acc, f.clone())))
}

/// `(((φ₀ ∧ φ₁) ∧ …) ∧ φ_c)`
pub fn bigwedge(items: &[Formula]) -> Result<Formula, DisjError> {
    let (first, rest) = items.split_first().ok_or(DisjError::Empty)?;
    Ok(rest.iter().fold(first.clone(), |acc, f| Formula::and(acc, f.clone())))
}

/// Balanced disjunction: `B(∅) = ¬(0=0)`, `B(φ) = φ`, otherwise the
/// disjunction of the balanced halves split at `⌊c/2⌋`.
pub fn balanced(items: &[Formula]) -> Formula {
    match items {
        [] => Formula::falsum(),
        [only] => only.clone(),
        _ => {
            let (l, r) = items.split_at(items.len() / 2);
            Formula::or(balanced(l), balanced(r))
        }
    }
}

pub fn balanced_split(items: &[Formula]) -> Result<(&[Formula], &[Formula]), DisjError> {
    if items.len() < 2 {
        return Err(DisjError::TooShort);
    }
    Ok(items.split_at(items.len() / 2))
}

const TAG: Var = Var(0);
const CMP: Var = Var(1);

fn tagged(i: usize, phi: &Formula) -> Formula {
    Formula::and(Formula::equals(num_u64(i as u64), Term::var(TAG)), phi.clone())
}

/// `∃x(x ≤ c ∧ ⋁_{i≤c} (num(i) = x ∧ φ_i))`. The items are sentences, so
/// `x0` and `x1` are fresh for them.
pub fn quantified_outer(items: &[Formula]) -> Result<Formula, DisjError> {
    let tagged: Vec<Formula> = items.iter().enumerate().map(|(i, f)| tagged(i, f)).collect();
    let spine = bigvee(&tagged)?;
    Ok(bounded_exists(TAG, CMP, num_u64(items.len() as u64 - 1), spine))
}

/// `¬⋀_{i≤c} ¬φ_i`, with the conjunction grouped to the left.
pub fn negated_conjunction_outer(items: &[Formula]) -> Result<Formula, DisjError> {
    let negs: Vec<Formula> = items.iter().cloned().map(Formula::not).collect();
    Ok(Formula::not(bigwedge(&negs)?))
}

/// `D(∅) = ¬(0=0)`, `D(Φ) = choice(Φ) ∨ D(Φ ∖ {choice(Φ)})`.
pub fn selective_outer(
    set: &BTreeSet<Formula>,
    choice: &dyn Fn(&BTreeSet<Formula>) -> Formula,
) -> Result<Formula, DisjError> {
    let mut order = Vec::with_capacity(set.len());
    let mut rest = set.clone();
    while !rest.is_empty() {
        let pick = choice(&rest);
        if !rest.remove(&pick) {
            return Err(DisjError::InvalidChoice);
        }
        order.push(pick);
    }
    Ok(order
        .into_iter()
        .rev()
        .fold(Formula::falsum(), |acc, f| Formula::or(f, acc)))
}

/// Selects the element with the least Gödel code.
pub fn min_code_choice(set: &BTreeSet<Formula>) -> Formula {
    set.iter()
        .map(|f| (encode_formula(f), f))
        .min_by(|a, b| a.0.cmp(&b.0))
        .map(|(_, f)| f.clone())
        .expect("choice on a nonempty set")
}

/// The disjuncts of the maximal left-grouped ∨-spine of `f`, leftmost
/// first. A formula that is not a disjunction is its own single disjunct.
pub fn spine(f: &Formula) -> Vec<&Formula> {
    let mut out = Vec::new();
    let mut cur = f;
    while let FormulaKind::Or(l, r) = cur.kind() {
        out.push(r);
        cur = l;
    }
    out.push(cur);
    out.reverse();
    out
}

/// Number of disjuncts on the left-grouped ∨-spine of `f`.
pub fn spine_len(f: &Formula) -> usize {
    let mut n = 1;
    let mut cur = f;
    while let FormulaKind::Or(l, _) = cur.kind() {
        n += 1;
        cur = l;
    }
    n
}

fn bounded_parts(f: &Formula) -> Option<(&Term, &Formula)> {
    as_bounded_exists(f).filter(|(x, _, _)| *x == TAG).map(|(_, t, d)| (t, d))
}

/// Does `next` arise from `prev` by the builder's one-step append of `psi`?
/// This is the structural form of `D(φ̄⌢⟨ψ⟩) = D(φ̄) ∨ ψ`, read through each
/// builder's own shape.
pub fn is_append_step(kind: BuilderKind, prev: &Formula, next: &Formula, psi: &Formula) -> bool {
    match kind {
        BuilderKind::LeftGrouped | BuilderKind::Balanced | BuilderKind::Selective => {
            *next == Formula::or(prev.clone(), psi.clone())
        }
        BuilderKind::NegatedConjunction => match (prev.kind(), next.kind()) {
            (FormulaKind::Not(old), FormulaKind::Not(body)) => {
                *body == Formula::and(old.clone(), Formula::not(psi.clone()))
            }
            _ => false,
        },
        BuilderKind::QuantifiedOuter => {
            let (Some((b0, d0)), Some((b1, d1))) = (bounded_parts(prev), bounded_parts(next)) else {
                return false;
            };
            let len = spine_len(d0);
            numeral_is(b0, len - 1)
                && numeral_is(b1, len)
                && *d1 == Formula::or(d0.clone(), tagged(len, psi))
        }
    }
}

fn numeral_is(t: &Term, n: usize) -> bool {
    let mut k = 0;
    let mut cur = t;
    while let TermKind::Succ(inner) = cur.kind() {
        k += 1;
        cur = inner;
    }
    matches!(cur.kind(), TermKind::Zero) && k == n
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semantics::evaluate;
    use crate::syntax::parse_formula;
    use alloc::vec;

    fn p(s: &str) -> Formula {
        parse_formula(s).unwrap()
    }

    fn abc() -> (Formula, Formula, Formula) {
        (p("0=0"), p("S(0)=0"), p("0=S(S(0))"))
    }

    #[test]
    fn left_grouped() {
        let (a, b, c) = abc();
        assert_eq!(bigvee(std::slice::from_ref(&a)).unwrap(), a);
        let abc = bigvee(&[a.clone(), b.clone(), c.clone()]).unwrap();
        assert_eq!(abc, Formula::or(Formula::or(a.clone(), b.clone()), c.clone()));
        assert_eq!(abc, Formula::or(bigvee(&[a, b]).unwrap(), c));
        assert_eq!(bigvee(&[]), Err(DisjError::Empty));
    }

    #[test]
    fn left_grouped_conjunction() {
        let (a, b, c) = abc();
        assert_eq!(bigwedge(std::slice::from_ref(&a)).unwrap(), a);
        assert_eq!(
            bigwedge(&[a.clone(), b.clone(), c.clone()]).unwrap(),
            Formula::and(Formula::and(a, b), c)
        );
        assert_eq!(bigwedge(&[]), Err(DisjError::Empty));
    }

    #[test]
    fn balanced_examples() {
        let (a, b, c) = abc();
        assert_eq!(balanced(&[]), p("!0=0"));
        assert_eq!(balanced(std::slice::from_ref(&a)), a);
        assert_eq!(
            balanced(&[a.clone(), b.clone(), c.clone()]),
            Formula::or(a.clone(), Formula::or(b.clone(), c.clone()))
        );
        assert_ne!(
            balanced(&[a.clone(), b.clone(), c.clone()]),
            Formula::or(balanced(&[a.clone(), b.clone()]), c.clone())
        );
    }

    #[test]
    fn split_examples() {
        let (a, b, c) = abc();
        let d = p("S(0)=S(0)");
        let two = [a.clone(), b.clone()];
        let (l, r) = balanced_split(&two).unwrap();
        assert_eq!((l, r), (&two[..1], &two[1..]));
        let four = [a.clone(), b.clone(), c.clone(), d.clone()];
        let (l, r) = balanced_split(&four).unwrap();
        assert_eq!((l.len(), r.len()), (2, 2));
        assert_eq!(balanced(&four), Formula::or(balanced(l), balanced(r)));
        assert_eq!(balanced_split(&[a]), Err(DisjError::TooShort));
    }

    #[test]
    fn quantified_outer_unfolds() {
        let phi = p("S(0)=S(0)");
        let one = quantified_outer(std::slice::from_ref(&phi)).unwrap();
        assert_eq!(one, p("E x0.(E x1.(x1+x0)=0 & (0=x0 & S(0)=S(0)))"));
        let two = quantified_outer(&[phi.clone(), p("0=S(0)")]).unwrap();
        assert_eq!(
            two,
            p("E x0.(E x1.(x1+x0)=S(0) & ((0=x0 & S(0)=S(0)) | (S(0)=x0 & 0=S(0))))")
        );
        assert_eq!(quantified_outer(&[]), Err(DisjError::Empty));
    }

    #[test]
    fn negated_conjunction_unfolds() {
        let (a, b, _) = abc();
        assert_eq!(
            negated_conjunction_outer(std::slice::from_ref(&a)).unwrap(),
            Formula::not(Formula::not(a.clone()))
        );
        assert_eq!(
            negated_conjunction_outer(&[a.clone(), b.clone()]).unwrap(),
            Formula::not(Formula::and(Formula::not(a), Formula::not(b)))
        );
    }

    #[test]
    fn selective_examples() {
        let (a, b, _) = abc();
        let empty = BTreeSet::new();
        assert_eq!(selective_outer(&empty, &min_code_choice).unwrap(), p("!0=0"));
        let single: BTreeSet<_> = [a.clone()].into();
        assert_eq!(
            selective_outer(&single, &min_code_choice).unwrap(),
            Formula::or(a.clone(), p("!0=0"))
        );
        let pair: BTreeSet<_> = [a.clone(), b.clone()].into();
        let once = selective_outer(&pair, &min_code_choice).unwrap();
        assert_eq!(once, selective_outer(&pair, &min_code_choice).unwrap());
        // 0=0 has the smaller code, so it is chosen first
        assert!(encode_formula(&a) < encode_formula(&b));
        assert_eq!(once, Formula::or(a.clone(), Formula::or(b, p("!0=0"))));
        let rogue = |_: &BTreeSet<Formula>| p("S(S(0))=0");
        assert_eq!(selective_outer(&pair, &rogue), Err(DisjError::InvalidChoice));
    }

    #[test]
    fn append_steps() {
        let (a, b, c) = abc();
        for kind in [
            BuilderKind::LeftGrouped,
            BuilderKind::QuantifiedOuter,
            BuilderKind::NegatedConjunction,
        ] {
            let prev = kind.build(&[a.clone(), b.clone()]).unwrap();
            let next = kind.build(&[a.clone(), b.clone(), c.clone()]).unwrap();
            assert!(is_append_step(kind, &prev, &next, &c), "{kind:?}");
            assert!(!is_append_step(kind, &prev, &next, &a), "{kind:?}");
        }
        let kind = BuilderKind::Balanced;
        let prev = kind.build(&[a.clone(), b.clone()]).unwrap();
        let next = kind.build(&[a.clone(), b.clone(), c.clone()]).unwrap();
        assert!(!is_append_step(kind, &prev, &next, &c));
    }

    #[test]
    fn spines() {
        let (a, b, c) = abc();
        let f = bigvee(&[a.clone(), b.clone(), c.clone()]).unwrap();
        assert_eq!(spine(&f), vec![&a, &b, &c]);
        assert_eq!(spine_len(&f), 3);
        assert_eq!(spine_len(&a), 1);
    }

    mod props {
        use super::*;
        use crate::testgen::arb_sentence;
        use proptest::prelude::*;

        fn decidable() -> impl Strategy<Value = Vec<Formula>> {
            proptest::collection::vec(arb_sentence(3), 1..12).prop_filter("decidable", |fs| {
                fs.iter().all(|f| evaluate(f, 4).unwrap().is_determined())
            })
        }

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(64))]

            #[test]
            fn append_law(fs in proptest::collection::vec(arb_sentence(2), 1..10), psi in arb_sentence(2)) {
                let mut longer = fs.clone();
                longer.push(psi.clone());
                prop_assert_eq!(bigvee(&longer).unwrap(), Formula::or(bigvee(&fs).unwrap(), psi));
            }

            #[test]
            fn every_builder_is_disjunctively_correct(fs in decidable()) {
                let any = fs.iter().any(|f| evaluate(f, 4).unwrap().is_true());
                for kind in BuilderKind::ALL {
                    let built = kind.build(&fs).unwrap();
                    prop_assert_eq!(evaluate(&built, 16).unwrap().truth(), Some(any), "{:?}", kind);
                }
            }

            #[test]
            fn halves_of_long_sequences_are_long(k in 1usize..20, extra in 0usize..5) {
                let fs: Vec<Formula> = (0..2 * k + extra).map(|i| Formula::equals(num_u64(i as u64), Term::zero())).collect();
                let (l, r) = balanced_split(&fs).unwrap();
                prop_assert!(l.len() >= k && r.len() >= k);
            }
        }
    }
}
