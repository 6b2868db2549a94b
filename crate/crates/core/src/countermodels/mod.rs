//! Finite cut surrogates for the two separating constructions: a set that
//! satisfies sequential order induction while living inside the cut, and a
//! set that satisfies sequential induction while containing the cut.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::principles::{check_seqind, check_seqoind, PrincipleReport};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CountermodelError {
    #[error("invalid cut model: {0}")]
    InvalidModel(String),
    #[error("no fresh element below the cut at step {step}")]
    FreshExhausted { step: usize },
    #[error("element {element} entered both sets at step {step}")]
    Disjointness { step: usize, element: u64 },
}

/// Universe `[0, size)`, with the elements below `cut` playing the
/// standard ones, and an enumeration of sequences over the universe.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CutModel {
    pub size: u64,
    pub cut: u64,
    pub sequences: Vec<Vec<u64>>,
    /// Distinct-value count from which construction B treats a sequence as
    /// having infinitely many values.
    pub long_threshold: usize,
}

impl CutModel {
    pub fn new(size: u64, cut: u64, sequences: Vec<Vec<u64>>) -> Result<CutModel, CountermodelError> {
        let long_threshold = (cut / 10).max(1) as usize;
        CutModel { size, cut, sequences, long_threshold }.validated()
    }

    pub fn with_long_threshold(mut self, long_threshold: usize) -> CutModel {
        self.long_threshold = long_threshold;
        self
    }

    pub fn validated(self) -> Result<CutModel, CountermodelError> {
        if self.cut >= self.size {
            return Err(CountermodelError::InvalidModel(format!("cut {} is not below size {}", self.cut, self.size)));
        }
        for (i, s) in self.sequences.iter().enumerate() {
            if let Some(x) = s.iter().find(|x| **x >= self.size) {
                return Err(CountermodelError::InvalidModel(format!("sequence {i} has entry {x} outside the universe")));
            }
        }
        Ok(self)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Construction {
    /// Order induction holds, induction over the cut fails.
    A,
    /// Induction holds, order induction fails.
    B,
}

impl Construction {
    pub fn name(self) -> &'static str {
        match self {
            Construction::A => "A",
            Construction::B => "B",
        }
    }

    pub fn from_name(s: &str) -> Option<Construction> {
        match s {
            "A" | "a" => Some(Construction::A),
            "B" | "b" => Some(Construction::B),
            _ => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StepAction {
    /// Nothing to do for this sequence.
    Keep,
    /// `a` joins the positive side and `b` the negative side.
    Extend { a: u64, b: u64 },
    /// Construction B could not find the element overspill would give.
    Skip { reason: String },
}

/// The run of a construction. Snapshots are stored as the step deltas on
/// top of the initial positive set; `snapshot` replays them.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ApproxTrace {
    pub which: Construction,
    pub initial: BTreeSet<u64>,
    pub steps: Vec<StepAction>,
    /// Union of the positive sets.
    pub t: BTreeSet<u64>,
}

impl ApproxTrace {
    /// `(A_i, B_i)`, the sets before step `i`.
    pub fn snapshot(&self, i: usize) -> (BTreeSet<u64>, BTreeSet<u64>) {
        let mut a = self.initial.clone();
        let mut b = BTreeSet::new();
        for step in &self.steps[..i.min(self.steps.len())] {
            if let StepAction::Extend { a: x, b: y } = step {
                a.insert(*x);
                b.insert(*y);
            }
        }
        (a, b)
    }

    pub fn extensions(&self) -> usize {
        self.steps.iter().filter(|s| matches!(s, StepAction::Extend { .. })).count()
    }

    /// Steps skipped, with their reasons.
    pub fn skips(&self) -> Vec<(usize, &str)> {
        self.steps
            .iter()
            .enumerate()
            .filter_map(|(i, s)| match s {
                StepAction::Skip { reason } => Some((i, reason.as_str())),
                _ => None,
            })
            .collect()
    }
}

fn extend(
    a: &mut BTreeSet<u64>,
    b: &mut BTreeSet<u64>,
    step: usize,
    x: u64,
    y: u64,
) -> Result<StepAction, CountermodelError> {
    if b.contains(&x) || x == y {
        return Err(CountermodelError::Disjointness { step, element: x });
    }
    if a.contains(&y) {
        return Err(CountermodelError::Disjointness { step, element: y });
    }
    a.insert(x);
    b.insert(y);
    Ok(StepAction::Extend { a: x, b: y })
}

/// Keeps the positive set below the cut: for each sequence, its first value
/// outside the positive set goes to the negative side, paired with the
/// least fresh element below the cut.
pub fn construct_a(m: &CutModel) -> Result<ApproxTrace, CountermodelError> {
    let (mut a, mut b) = (BTreeSet::new(), BTreeSet::new());
    let mut steps = Vec::with_capacity(m.sequences.len());
    for (i, s) in m.sequences.iter().enumerate() {
        let Some(&bad) = s.iter().find(|x| !a.contains(*x)) else {
            steps.push(StepAction::Keep);
            continue;
        };
        let fresh = (0..m.cut)
            .find(|x| *x != bad && !a.contains(x) && !b.contains(x))
            .ok_or(CountermodelError::FreshExhausted { step: i })?;
        steps.push(extend(&mut a, &mut b, i, fresh, bad)?);
    }
    Ok(ApproxTrace { which: Construction::A, initial: BTreeSet::new(), steps, t: a })
}

fn distinct(s: &[u64]) -> usize {
    s.iter().collect::<BTreeSet<_>>().len()
}

/// Starts from the whole cut and, for each sequence with many values and
/// at least one at or above the cut, plants an adjacent pair with the left
/// entry in and the right entry out.
pub fn construct_b(m: &CutModel) -> Result<ApproxTrace, CountermodelError> {
    let initial: BTreeSet<u64> = (0..m.cut).collect();
    let (mut a, mut b) = (initial.clone(), BTreeSet::new());
    let mut steps = Vec::with_capacity(m.sequences.len());
    for (i, s) in m.sequences.iter().enumerate() {
        if distinct(s) < m.long_threshold || s.iter().all(|x| *x < m.cut) {
            steps.push(StepAction::Keep);
            continue;
        }
        let in_b: Vec<usize> = (0..s.len()).filter(|&j| b.contains(&s[j])).collect();
        let j0 = in_b.len();
        let initial_segment = in_b.iter().enumerate().all(|(k, &j)| k == j);
        let pair = if initial_segment {
            (j0 + 1..s.len()).find(|&j| !a.contains(&s[j]) && s[j] != s[j - 1]).map(|j| (s[j - 1], s[j]))
        } else {
            (0..s.len() - 1).find(|&j| !b.contains(&s[j]) && b.contains(&s[j + 1])).map(|j| (s[j], s[j + 1]))
        };
        match pair {
            Some((x, y)) if b.contains(&y) => {
                a.insert(x);
                steps.push(StepAction::Extend { a: x, b: y });
            }
            Some((x, y)) => steps.push(extend(&mut a, &mut b, i, x, y)?),
            None => steps.push(StepAction::Skip {
                reason: format!("no entry after position {j0} is outside the positive set"),
            }),
        }
    }
    Ok(ApproxTrace { which: Construction::B, initial, steps, t: a })
}

/// Position `l` with every earlier entry in `t` and entry `l` outside it.
fn first_gap(s: &[u64], t: &BTreeSet<u64>) -> Option<usize> {
    s.iter().position(|x| !t.contains(x))
}

fn adjacent_pair(s: &[u64], t: &BTreeSet<u64>) -> bool {
    s.windows(2).any(|w| t.contains(&w[0]) && !t.contains(&w[1]))
}

/// Replays the trace and audits what the finite data can certify.
pub fn audit_construction(trace: &ApproxTrace, m: &CutModel) -> PrincipleReport {
    let mut r = PrincipleReport::new(match trace.which {
        Construction::A => "construction-a",
        Construction::B => "construction-b",
    });
    let (mut a, mut b) = (trace.initial.clone(), BTreeSet::new());
    if trace.steps.len() != m.sequences.len() {
        r.violate(
            "trace",
            format!("{} steps", trace.steps.len()),
            format!("the model enumerates {} sequences", m.sequences.len()),
        );
    }
    for (i, step) in trace.steps.iter().enumerate() {
        r.instances += 1;
        if let StepAction::Extend { a: x, b: y } = step {
            a.insert(*x);
            b.insert(*y);
        }
        if let Some(x) = a.intersection(&b).next() {
            r.violate("disjoint", format!("step {i}"), format!("{x} is on both sides"));
            break;
        }
    }
    if trace.t != a {
        r.violate("union", "T".to_string(), "T differs from the union of the positive sets".to_string());
    }
    if let Some(x) = trace.t.intersection(&b).next() {
        r.violate("disjoint", "T".to_string(), format!("{x} is in T and on the negative side"));
    }
    let t = &trace.t;
    match trace.which {
        Construction::A => {
            if let Some(x) = t.iter().find(|x| **x >= m.cut) {
                r.violate("cut", "T".to_string(), format!("{x} is not below the cut"));
            }
            if t.len() != trace.extensions() {
                r.violate(
                    "count",
                    "T".to_string(),
                    format!("|T| = {} but {} steps extended it", t.len(), trace.extensions()),
                );
            }
            r.absorb(check_seqoind(t, &m.sequences));
            for (i, s) in m.sequences.iter().enumerate() {
                r.instances += 1;
                if let Some(l) = first_gap(s, t) {
                    if !b.contains(&s[l]) {
                        r.violate("witness", format!("sequence {i}"), format!("entry {l} is outside T but unrecorded"));
                    }
                }
            }
        }
        Construction::B => {
            if let Some(x) = (0..m.cut).find(|x| !t.contains(x)) {
                r.violate("cut", "T".to_string(), format!("{x} is below the cut but not in T"));
            }
            r.absorb(check_seqind(t, &m.sequences));
            for (i, (s, step)) in m.sequences.iter().zip(&trace.steps).enumerate() {
                if let StepAction::Extend { .. } = step {
                    r.instances += 1;
                    if !adjacent_pair(s, t) {
                        r.violate("witness", format!("sequence {i}"), "no adjacent entries in then out of T".to_string());
                    }
                }
            }
            for (i, reason) in trace.skips() {
                r.notes.push(format!("step {i} skipped: {reason}"));
            }
        }
    }
    r
}

/// Runs the chosen construction.
pub fn construct(m: &CutModel, which: Construction) -> Result<ApproxTrace, CountermodelError> {
    match which {
        Construction::A => construct_a(m),
        Construction::B => construct_b(m),
    }
}

/// A random model: uniform sequences, runs of consecutive values and
/// sequences that climb across the cut. Draws are read from `next`.
pub fn random_cut_model(
    next: &mut dyn FnMut() -> u64,
    size: u64,
    cut: u64,
    count: usize,
    max_len: usize,
) -> Result<CutModel, CountermodelError> {
    let mut sequences = Vec::with_capacity(count);
    for _ in 0..count {
        let len = (next() % max_len as u64) as usize + 1;
        let s: Vec<u64> = match next() % 3 {
            0 => (0..len).map(|_| next() % size).collect(),
            1 => {
                let start = next() % size;
                (0..len as u64).map(|k| (start + k) % size).collect()
            }
            _ => {
                let start = cut.saturating_sub(next() % (len as u64 + 1));
                (0..len as u64).map(|k| (start + k).min(size - 1)).collect()
            }
        };
        sequences.push(s);
    }
    CutModel::new(size, cut, sequences)
}
