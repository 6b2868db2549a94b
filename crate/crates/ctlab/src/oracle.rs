//! Reference truth by brute-force enumeration: every quantifier ranges over
//! `0..=range`, and terms are valued directly from an environment. Shares
//! nothing with the core evaluator beyond the syntax types.

use std::collections::BTreeMap;

use ctlab_core::{Formula, FormulaKind, Term, TermKind, Var};
use num_bigint::BigUint;

fn value(t: &Term, env: &BTreeMap<Var, u64>) -> Option<BigUint> {
    Some(match t.kind() {
        TermKind::Zero => BigUint::ZERO,
        TermKind::Succ(a) => value(a, env)? + 1u32,
        TermKind::Add(a, b) => value(a, env)? + value(b, env)?,
        TermKind::Mul(a, b) => value(a, env)? * value(b, env)?,
        TermKind::Var(v) => BigUint::from(*env.get(v)?),
    })
}

fn truth(f: &Formula, env: &mut BTreeMap<Var, u64>, range: u64) -> Option<bool> {
    Some(match f.kind() {
        FormulaKind::Eq(s, t) => value(s, env)? == value(t, env)?,
        FormulaKind::Not(a) => !truth(a, env, range)?,
        FormulaKind::Or(a, b) => truth(a, env, range)? || truth(b, env, range)?,
        FormulaKind::And(a, b) => truth(a, env, range)? && truth(b, env, range)?,
        FormulaKind::Exists(x, a) | FormulaKind::Forall(x, a) => {
            let want = matches!(f.kind(), FormulaKind::Exists(..));
            let saved = env.get(x).copied();
            let mut result = !want;
            for n in 0..=range {
                env.insert(*x, n);
                if truth(a, env, range)? == want {
                    result = want;
                    break;
                }
            }
            match saved {
                Some(n) => env.insert(*x, n),
                None => env.remove(x),
            };
            result
        }
    })
}

/// `None` when the formula has a free variable.
pub fn enumerate_truth(f: &Formula, range: u64) -> Option<bool> {
    truth(f, &mut BTreeMap::new(), range)
}

#[cfg(test)]
mod tests {
    use super::*;
    use ctlab_core::syntax::parse_formula;

    #[test]
    fn small_cases() {
        let p = |s| parse_formula(s).unwrap();
        assert_eq!(enumerate_truth(&p("E x0.(x0*x0)=S(S(S(S(0))))"), 8), Some(true));
        assert_eq!(enumerate_truth(&p("A x0.!S(x0)=0"), 8), Some(true));
        assert_eq!(enumerate_truth(&p("E x0.x0=S(S(S(0)))"), 2), Some(false));
        assert_eq!(enumerate_truth(&p("x0=0"), 8), None);
        assert_eq!(enumerate_truth(&p("E x0.(A x0.x0=x0&x0=S(0))"), 3), Some(true));
    }
}
