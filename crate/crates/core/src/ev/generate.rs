use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use crate::disjunctions::bigvee;
use crate::syntax::{num_u64, Formula, Term, Var};

use super::classes::class_graph;
use super::satclass::bounded_truth_class;
use super::EvScenario;

pub const MAX_ENVIRONMENT: usize = 60;
pub const MAX_CLASSES: usize = 12;

struct Draw<'a>(&'a mut dyn FnMut() -> u64);

impl Draw<'_> {
    fn below(&mut self, n: u64) -> u64 {
        (self.0)() % n
    }

    fn coin(&mut self) -> bool {
        self.below(2) == 1
    }
}

fn atom(k: u64) -> Formula {
    Formula::equals(Term::var(Var(0)), num_u64(k))
}

/// A random scenario: equations `x0 = k`, an optional layer of negations,
/// conjunctions and an existential over them, and a long left-grouped
/// disjunction with at least `long_cut + 1` disjuncts. The base is bounded
/// truth on a downward-closed union of whole similarity classes, so it is
/// regular. Draws are read from `next`.
pub fn random_scenario(next: &mut dyn FnMut() -> u64, long_cut: usize, max_value: u64) -> EvScenario {
    let mut d = Draw(next);
    for attempt in 0.. {
        let plain = attempt >= 32;
        let k = |d: &mut Draw| d.below(max_value + 2);
        let atoms: Vec<Formula> = (0..1 + d.below(4)).map(|_| atom(k(&mut d))).collect();
        let disjuncts: Vec<Formula> = (0..long_cut + 1 + d.below(2) as usize).map(|_| atom(k(&mut d))).collect();
        let long = bigvee(&disjuncts).expect("non-empty");

        let with_neg = !plain && d.coin();
        let with_and = !plain && d.coin();
        let with_exists = !plain && d.coin();
        let mut roots = atoms.clone();
        roots.push(long.clone());
        let pick = |d: &mut Draw| atoms[d.below(atoms.len() as u64) as usize].clone();
        if with_neg {
            roots.push(Formula::not(pick(&mut d)));
        }
        if with_and {
            roots.push(Formula::and(pick(&mut d), pick(&mut d)));
        }
        if with_exists {
            roots.push(Formula::exists(Var(0), pick(&mut d)));
        }
        let mut env: BTreeSet<Formula> = BTreeSet::new();
        for r in &roots {
            env.extend(r.subformulas());
        }

        // Whole classes, closed downward: equations, then optionally the
        // negation, conjunction and existential layers.
        let in_base = |f: &Formula, neg: bool, and: bool, ex: bool| {
            use crate::syntax::FormulaKind as K;
            match f.kind() {
                K::Eq(..) => true,
                K::Not(a) => neg && matches!(a.kind(), K::Eq(..)),
                K::And(..) => and,
                K::Exists(..) => ex,
                _ => false,
            }
        };
        let (bn, ba, be) = (d.coin(), d.coin(), d.coin());
        let domain: BTreeSet<Formula> = env.iter().filter(|f| in_base(f, bn, ba, be)).cloned().collect();
        for f in &domain {
            env.insert(Formula::not(f.clone()));
        }
        let base = bounded_truth_class(&domain, max_value);

        let mut targets: Vec<Formula> = Vec::new();
        let pool: Vec<&Formula> = env.iter().collect();
        for _ in 0..1 + d.below(6) {
            let f = pool[d.below(pool.len() as u64) as usize].clone();
            if !targets.contains(&f) {
                targets.push(f);
            }
        }
        if !targets.contains(&long) {
            targets.push(long);
        }
        targets.retain(|t| {
            !super::is_long(t, long_cut)
                || matches!(t.kind(), crate::syntax::FormulaKind::Or(l, _) if super::is_long(l, long_cut))
        });

        let classes = class_graph(&env).map(|g| g.classes.len()).unwrap_or(usize::MAX);
        if env.len() <= MAX_ENVIRONMENT && classes <= MAX_CLASSES {
            return EvScenario { environment: env, base, targets, long_cut, max_value };
        }
    }
    unreachable!("the plain shape always fits")
}
