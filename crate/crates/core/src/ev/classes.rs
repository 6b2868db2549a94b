use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;

use crate::syntax::Formula;

use super::{template, EvError};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimilarityClass {
    pub template: Formula,
    pub members: Vec<Formula>,
}

/// Similarity classes of an environment with the direct-subformula order
/// between them. `edges` holds `(a, b)` when some member of `a` is a direct
/// subformula of some member of `b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassGraph {
    pub classes: Vec<SimilarityClass>,
    pub edges: BTreeSet<(usize, usize)>,
    pub ranks: Vec<usize>,
    index: BTreeMap<Formula, usize>,
}

impl ClassGraph {
    pub fn class_of(&self, f: &Formula) -> Option<usize> {
        self.index.get(f).copied()
    }

    pub fn max_rank(&self) -> usize {
        self.ranks.iter().copied().max().unwrap_or(0)
    }
}

/// Longest-chain ranks of `n` nodes under `edges`.
pub(crate) fn longest_chain_ranks(n: usize, edges: &BTreeSet<(usize, usize)>) -> Result<Vec<usize>, EvError> {
    let mut indegree = alloc::vec![0usize; n];
    let mut out: Vec<Vec<usize>> = alloc::vec![Vec::new(); n];
    for &(a, b) in edges {
        indegree[b] += 1;
        out[a].push(b);
    }
    let mut ranks = alloc::vec![0usize; n];
    let mut ready: Vec<usize> = (0..n).filter(|&i| indegree[i] == 0).collect();
    let mut done = 0;
    while let Some(a) = ready.pop() {
        done += 1;
        for &b in &out[a] {
            ranks[b] = ranks[b].max(ranks[a] + 1);
            indegree[b] -= 1;
            if indegree[b] == 0 {
                ready.push(b);
            }
        }
    }
    if done == n {
        Ok(ranks)
    } else {
        Err(EvError::Cycle)
    }
}

fn template_depth(f: &Formula) -> u32 {
    template(f).template.depth()
}

pub fn class_graph(env: &BTreeSet<Formula>) -> Result<ClassGraph, EvError> {
    let mut by_template: BTreeMap<Formula, Vec<Formula>> = BTreeMap::new();
    for f in env {
        by_template.entry(template(f).template).or_default().push(f.clone());
    }
    let classes: Vec<SimilarityClass> =
        by_template.into_iter().map(|(template, members)| SimilarityClass { template, members }).collect();
    let mut index = BTreeMap::new();
    for (i, c) in classes.iter().enumerate() {
        for m in &c.members {
            index.insert(m.clone(), i);
        }
    }
    let mut edges = BTreeSet::new();
    for (b, c) in classes.iter().enumerate() {
        for m in &c.members {
            for g in m.direct_subformulas() {
                if let Some(&a) = index.get(&g) {
                    if template_depth(&g) >= template_depth(m) {
                        return Err(EvError::Cycle);
                    }
                    edges.insert((a, b));
                }
            }
        }
    }
    let ranks = longest_chain_ranks(classes.len(), &edges)?;
    Ok(ClassGraph { classes, edges, ranks, index })
}
