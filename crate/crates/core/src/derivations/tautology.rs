use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use crate::disjunctions::{bigvee, bigwedge};
use crate::syntax::{num_u64, Formula, FormulaKind};

use super::DerivError;

pub const MAX_ATOMS: usize = 20;

/// Maximal non-Boolean subformulas (equations and quantified formulas),
/// distinct up to structural equality, in first-occurrence order.
pub fn propositional_atoms(phi: &Formula) -> Vec<Formula> {
    fn go(f: &Formula, seen: &mut BTreeMap<Formula, usize>, out: &mut Vec<Formula>) {
        match f.kind() {
            FormulaKind::Not(a) => go(a, seen, out),
            FormulaKind::Or(a, b) | FormulaKind::And(a, b) => {
                go(a, seen, out);
                go(b, seen, out);
            }
            _ => {
                if !seen.contains_key(f) {
                    seen.insert(f.clone(), out.len());
                    out.push(f.clone());
                }
            }
        }
    }
    let mut seen = BTreeMap::new();
    let mut out = Vec::new();
    go(phi, &mut seen, &mut out);
    out
}

/// Truth table as a bitset over all `2^n` valuations of the atoms.
struct Table {
    words: usize,
    atoms: BTreeMap<Formula, usize>,
    memo: BTreeMap<usize, (Formula, Vec<u64>)>,
}

impl Table {
    fn atom_column(&self, k: usize) -> Vec<u64> {
        let rows = 1usize << self.atoms.len();
        let mut col = vec![0u64; self.words];
        for row in 0..rows {
            if row >> k & 1 == 1 {
                col[row / 64] |= 1 << (row % 64);
            }
        }
        col
    }

    fn column(&mut self, f: &Formula) -> Vec<u64> {
        if let Some((_, c)) = self.memo.get(&f.addr()) {
            return c.clone();
        }
        let col = match f.kind() {
            FormulaKind::Not(a) => self.column(a).into_iter().map(|w| !w).collect(),
            FormulaKind::Or(a, b) => {
                let (x, y) = (self.column(a), self.column(b));
                x.iter().zip(&y).map(|(p, q)| p | q).collect()
            }
            FormulaKind::And(a, b) => {
                let (x, y) = (self.column(a), self.column(b));
                x.iter().zip(&y).map(|(p, q)| p & q).collect()
            }
            _ => self.atom_column(self.atoms[f]),
        };
        self.memo.insert(f.addr(), (f.clone(), col.clone()));
        col
    }
}

/// Is `φ` true under every valuation of its propositional atoms?
pub fn is_tautology(phi: &Formula) -> Result<bool, DerivError> {
    let atoms = propositional_atoms(phi);
    if atoms.len() > MAX_ATOMS {
        return Err(DerivError::TooManyAtoms { atoms: atoms.len(), limit: MAX_ATOMS });
    }
    let rows = 1usize << atoms.len();
    let mut table = Table {
        words: rows.div_ceil(64),
        atoms: atoms.into_iter().enumerate().map(|(i, a)| (a, i)).collect(),
        memo: BTreeMap::new(),
    };
    let col = table.column(phi);
    let full_words = rows / 64;
    if col[..full_words].iter().any(|w| *w != u64::MAX) {
        return Ok(false);
    }
    let tail = rows % 64;
    Ok(tail == 0 || col[full_words] & ((1u64 << tail) - 1) == (1u64 << tail) - 1)
}

/// `(⋀_{i≤c} num(i) ≠ num(c+1)) → ¬⋁_{i≤c} (num(i) = num(c+1) ∧ φ_i)`
pub fn tag_exclusion(phis: &[Formula]) -> Result<Formula, DerivError> {
    let c1 = num_u64(phis.len() as u64);
    let neqs: Vec<Formula> = (0..phis.len())
        .map(|i| Formula::not(Formula::equals(num_u64(i as u64), c1.clone())))
        .collect();
    let tagged: Vec<Formula> = phis
        .iter()
        .enumerate()
        .map(|(i, f)| Formula::and(Formula::equals(num_u64(i as u64), c1.clone()), f.clone()))
        .collect();
    Ok(Formula::implies(bigwedge(&neqs)?, Formula::not(bigvee(&tagged)?)))
}
