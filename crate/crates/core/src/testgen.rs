use alloc::collections::BTreeMap;

use proptest::prelude::*;

use crate::semantics::{bounded_exists, bounded_forall};
use crate::syntax::{num_u64, substitute_all, Formula, Term, Var};

pub fn arb_term(depth: u32) -> BoxedStrategy<Term> {
    let leaf = prop_oneof![Just(Term::zero()), (0u32..4).prop_map(|i| Term::var(Var(i)))];
    leaf.prop_recursive(depth, 48, 2, |inner| {
        prop_oneof![
            inner.clone().prop_map(Term::succ),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Term::add(a, b)),
            (inner.clone(), inner).prop_map(|(a, b)| Term::mul(a, b)),
        ]
    })
    .boxed()
}

pub fn arb_closed_term(depth: u32) -> BoxedStrategy<Term> {
    Just(Term::zero())
        .prop_recursive(depth, 24, 2, |inner| {
            prop_oneof![
                inner.clone().prop_map(Term::succ),
                (inner.clone(), inner.clone()).prop_map(|(a, b)| Term::add(a, b)),
                (inner.clone(), inner).prop_map(|(a, b)| Term::mul(a, b)),
            ]
        })
        .boxed()
}

pub fn arb_formula(depth: u32) -> BoxedStrategy<Formula> {
    let atom = (arb_term(3), arb_term(3)).prop_map(|(s, t)| Formula::equals(s, t));
    atom.prop_recursive(depth, 64, 2, |inner| {
        prop_oneof![
            inner.clone().prop_map(Formula::not),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::or(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::and(a, b)),
            (0u32..4, inner.clone()).prop_map(|(v, a)| Formula::exists(Var(v), a)),
            (0u32..4, inner).prop_map(|(v, a)| Formula::forall(Var(v), a)),
        ]
    })
    .boxed()
}

/// Like [`arb_formula`] but also produces bounded quantifiers with small
/// numeral bounds, so that many instances evaluate conclusively.
pub fn arb_bounded_formula(depth: u32) -> BoxedStrategy<Formula> {
    let atom = (arb_term(2), arb_term(2)).prop_map(|(s, t)| Formula::equals(s, t));
    atom.prop_recursive(depth, 48, 2, |inner| {
        prop_oneof![
            inner.clone().prop_map(Formula::not),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::or(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::and(a, b)),
            (0u32..4, inner.clone()).prop_map(|(v, a)| Formula::exists(Var(v), a)),
            (0u32..4, inner.clone()).prop_map(|(v, a)| Formula::forall(Var(v), a)),
            (0u32..4, 0u64..5, inner.clone())
                .prop_map(|(v, b, a)| bounded_exists(Var(v), Var(9), num_u64(b), a)),
            (0u32..4, 0u64..5, inner)
                .prop_map(|(v, b, a)| bounded_forall(Var(v), Var(9), num_u64(b), a)),
        ]
    })
    .boxed()
}

/// Random formulas closed by substituting small numerals for free variables.
pub fn arb_sentence(depth: u32) -> BoxedStrategy<Formula> {
    (arb_bounded_formula(depth), proptest::collection::vec(0u64..4, 4))
        .prop_map(|(f, vals)| {
            let map: BTreeMap<Var, Term> =
                f.free_vars().iter().zip(vals.iter()).map(|(v, n)| (*v, num_u64(*n))).collect();
            substitute_all(&f, &map).unwrap()
        })
        .boxed()
}
