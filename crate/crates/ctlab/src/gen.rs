//! Seeded random syntax. Every generator draws from a ChaCha8 stream, so a
//! seed fixes the output on every platform.

use ctlab_core::coding::Syntax;
use ctlab_core::semantics::{bounded_exists, bounded_forall};
use ctlab_core::syntax::num_u64;
use ctlab_core::{Formula, Term, Var};

use crate::oracle::enumerate_truth;
use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Largest value a generated bounded quantifier ranges over.
pub const QUANT_BOUND: u64 = 8;

pub fn stream(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    r.set_stream(stream);
    r
}

/// Adapter for the core generators, which take a plain draw function.
pub fn draws(rng: &mut ChaCha8Rng) -> impl FnMut() -> u64 + '_ {
    move || rng.next_u64()
}

pub fn term(rng: &mut impl Rng, depth: u32, vars: &[Var]) -> Term {
    if depth == 0 || rng.random_ratio(1, 3) {
        return match rng.random_range(0..3) {
            0 if !vars.is_empty() => Term::var(vars[rng.random_range(0..vars.len())]),
            1 => Term::zero(),
            _ => num_u64(rng.random_range(0..4)),
        };
    }
    match rng.random_range(0..3) {
        0 => Term::succ(term(rng, depth - 1, vars)),
        1 => Term::add(term(rng, depth - 1, vars), term(rng, depth - 1, vars)),
        _ => Term::mul(term(rng, depth - 1, vars), term(rng, depth - 1, vars)),
    }
}

const FREE: [Var; 4] = [Var(0), Var(1), Var(2), Var(3)];

/// Like `term` but without numeral leaves, so `depth` bounds the whole tree.
fn tree_term(rng: &mut impl Rng, depth: u32) -> Term {
    if depth == 0 || rng.random_ratio(1, 3) {
        return if rng.random_bool(0.5) { Term::var(FREE[rng.random_range(0..4)]) } else { Term::zero() };
    }
    match rng.random_range(0..3) {
        0 => Term::succ(tree_term(rng, depth - 1)),
        1 => Term::add(tree_term(rng, depth - 1), tree_term(rng, depth - 1)),
        _ => Term::mul(tree_term(rng, depth - 1), tree_term(rng, depth - 1)),
    }
}

fn open_formula(rng: &mut impl Rng, depth: u32) -> Formula {
    if depth <= 1 {
        return Formula::equals(tree_term(rng, 0), tree_term(rng, 0));
    }
    let d = depth - 1;
    match rng.random_range(0..6) {
        0 => Formula::equals(tree_term(rng, d - 1), tree_term(rng, d - 1)),
        1 => Formula::not(open_formula(rng, d)),
        2 => Formula::or(open_formula(rng, d), open_formula(rng, d)),
        3 => Formula::and(open_formula(rng, d), open_formula(rng, d)),
        4 => Formula::exists(FREE[rng.random_range(0..4)], open_formula(rng, d)),
        _ => Formula::forall(FREE[rng.random_range(0..4)], open_formula(rng, d)),
    }
}

/// A term or formula, possibly open, whose tree has depth at most `depth`
/// (an equation counts one level above its terms).
pub fn syntax_tree(rng: &mut impl Rng, depth: u32) -> Syntax {
    let d = rng.random_range(0..=depth);
    if rng.random_bool(0.3) {
        Syntax::Term(tree_term(rng, d))
    } else {
        Syntax::Formula(open_formula(rng, d.max(1)))
    }
}

fn small_bound(rng: &mut impl Rng) -> Term {
    if rng.random_bool(0.5) {
        num_u64(rng.random_range(0..=QUANT_BOUND))
    } else {
        let half = QUANT_BOUND / 2;
        Term::add(num_u64(rng.random_range(0..=half)), num_u64(rng.random_range(0..=half)))
    }
}

fn decidable(rng: &mut impl Rng, depth: u32, scope: &mut Vec<Var>, fresh: &mut u32) -> Formula {
    if depth == 0 || rng.random_ratio(1, 4) {
        return Formula::equals(term(rng, 2, scope), term(rng, 2, scope));
    }
    match rng.random_range(0..5) {
        0 => Formula::not(decidable(rng, depth - 1, scope, fresh)),
        1 => Formula::or(decidable(rng, depth - 1, scope, fresh), decidable(rng, depth - 1, scope, fresh)),
        2 => Formula::and(decidable(rng, depth - 1, scope, fresh), decidable(rng, depth - 1, scope, fresh)),
        k => {
            let (x, z) = (Var(*fresh), Var(*fresh + 1));
            *fresh += 2;
            let bound = small_bound(rng);
            scope.push(x);
            let body = decidable(rng, depth - 1, scope, fresh);
            scope.pop();
            if k == 3 {
                bounded_exists(x, z, bound, body)
            } else {
                bounded_forall(x, z, bound, body)
            }
        }
    }
}

/// A sentence whose quantifiers are all bounded by closed terms of value at
/// most `QUANT_BOUND`.
pub fn decidable_sentence(rng: &mut impl Rng, depth: u32) -> Formula {
    decidable(rng, depth, &mut Vec::new(), &mut 0)
}

/// A quantifier-free sentence.
pub fn qf_sentence(rng: &mut impl Rng, depth: u32) -> Formula {
    if depth == 0 || rng.random_ratio(1, 3) {
        return Formula::equals(term(rng, 2, &[]), term(rng, 2, &[]));
    }
    match rng.random_range(0..3) {
        0 => Formula::not(qf_sentence(rng, depth - 1)),
        1 => Formula::or(qf_sentence(rng, depth - 1), qf_sentence(rng, depth - 1)),
        _ => Formula::and(qf_sentence(rng, depth - 1), qf_sentence(rng, depth - 1)),
    }
}

pub fn decidable_sequence(rng: &mut impl Rng, max_len: usize, depth: u32) -> Vec<Formula> {
    let len = rng.random_range(1..=max_len);
    (0..len).map(|_| decidable_sentence(rng, depth)).collect()
}

/// A decidable sentence made true by negating it if needed.
pub fn true_sentence(rng: &mut impl Rng) -> Formula {
    let f = decidable_sentence(rng, 2);
    if enumerate_truth(&f, QUANT_BOUND) == Some(true) {
        f
    } else {
        Formula::not(f)
    }
}
