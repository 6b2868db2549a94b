use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::ToString;
use alloc::vec::Vec;

use num_bigint::BigUint;

use crate::principles::PrincipleReport;
use crate::semantics::term_eval;
use crate::syntax::{instantiate, Assignment, Formula, FormulaKind, Var};

use super::{value_key, EvError};

/// Pairs `(φ, α)` with the domain they are compositional on. Assignments
/// are restricted to exactly the free variables of their formula and take
/// values in `0..=max_value`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PartialSatClass {
    pub pairs: BTreeSet<(Formula, Assignment)>,
    pub domain: BTreeSet<Formula>,
}

impl PartialSatClass {
    pub fn new() -> PartialSatClass {
        PartialSatClass::default()
    }

    pub fn holds(&self, phi: &Formula, alpha: &Assignment) -> bool {
        self.pairs.contains(&(phi.clone(), alpha.clone()))
    }

    pub fn insert(&mut self, phi: Formula, alpha: Assignment) -> bool {
        self.pairs.insert((phi, alpha))
    }

    /// Formulas occurring in some pair.
    pub fn formulas(&self) -> BTreeSet<Formula> {
        self.pairs.iter().map(|(f, _)| f.clone()).collect()
    }
}

/// All assignments on `vars` with values up to `max_value`.
pub fn assignments(vars: &[Var], max_value: u64) -> Vec<Assignment> {
    let mut out = alloc::vec![Assignment::new()];
    for v in vars {
        out = out.iter().flat_map(|a| (0..=max_value).map(move |n| a.with(*v, n))).collect();
    }
    out
}

/// `Asn(φ)` over the finite universe.
pub fn asn(phi: &Formula, max_value: u64) -> Vec<Assignment> {
    assignments(phi.free_vars(), max_value)
}

fn eq_holds(phi: &Formula, alpha: &Assignment) -> bool {
    let FormulaKind::Eq(s, t) = phi.kind() else { return false };
    term_eval(s, alpha).ok() == term_eval(t, alpha).ok()
}

/// The right-hand side of the compositional clause for `φ` at `α`, reading
/// the direct subformulas through `holds`.
pub(crate) fn clause_value(
    holds: &dyn Fn(&Formula, &Assignment) -> bool,
    phi: &Formula,
    alpha: &Assignment,
    max_value: u64,
) -> bool {
    let at = |g: &Formula, a: &Assignment| holds(g, &a.restrict(g.free_vars()));
    match phi.kind() {
        FormulaKind::Eq(..) => eq_holds(phi, alpha),
        FormulaKind::Not(a) => !at(a, alpha),
        FormulaKind::Or(a, b) => at(a, alpha) || at(b, alpha),
        FormulaKind::And(a, b) => at(a, alpha) && at(b, alpha),
        FormulaKind::Exists(v, a) => (0..=max_value).any(|x| at(a, &alpha.with(*v, x))),
        FormulaKind::Forall(v, a) => (0..=max_value).all(|x| at(a, &alpha.with(*v, x))),
    }
}

/// First assignment at which `Comp(φ)` fails.
pub fn comp_failure(s: &PartialSatClass, phi: &Formula, max_value: u64) -> Option<Assignment> {
    let holds = |g: &Formula, a: &Assignment| s.holds(g, a);
    asn(phi, max_value).into_iter().find(|a| s.holds(phi, a) != clause_value(&holds, phi, a, max_value))
}

/// Truth in the finite structure: quantifiers range over `0..=max_value`.
pub fn bounded_truth(phi: &Formula, alpha: &Assignment, max_value: u64) -> bool {
    fn go(phi: &Formula, alpha: &Assignment, max_value: u64) -> bool {
        let holds = |g: &Formula, a: &Assignment| go(g, a, max_value);
        clause_value(&holds, phi, alpha, max_value)
    }
    go(phi, &alpha.restrict(phi.free_vars()), max_value)
}

/// The satisfaction class of bounded truth on a subformula-closed `domain`,
/// completed with the negations of its false pairs.
pub fn bounded_truth_class(domain: &BTreeSet<Formula>, max_value: u64) -> PartialSatClass {
    let mut s = PartialSatClass { pairs: BTreeSet::new(), domain: domain.clone() };
    for f in domain {
        for a in asn(f, max_value) {
            if bounded_truth(f, &a, max_value) {
                s.insert(f.clone(), a);
            } else {
                s.insert(Formula::not(f.clone()), a);
            }
        }
    }
    s
}

/// Largest subset of `candidates` closed under direct subformulas on which
/// every formula satisfies its compositional clause.
pub fn maximal_domain(s: &PartialSatClass, candidates: &BTreeSet<Formula>, max_value: u64) -> BTreeSet<Formula> {
    let mut d: BTreeSet<Formula> =
        candidates.iter().filter(|f| comp_failure(s, f, max_value).is_none()).cloned().collect();
    loop {
        let drop: Vec<Formula> = d
            .iter()
            .filter(|f| f.direct_subformulas().iter().any(|g| !d.contains(g)))
            .cloned()
            .collect();
        if drop.is_empty() {
            return d;
        }
        for f in drop {
            d.remove(&f);
        }
    }
}

fn subformula_closure<'a>(fs: impl IntoIterator<Item = &'a Formula>) -> BTreeSet<Formula> {
    let mut out = BTreeSet::new();
    for f in fs {
        out.extend(f.subformulas());
    }
    out
}

/// One-step completion of a pre-satisfaction class: enlarge the domain to
/// the maximal one among the given formulas, their subformulas and
/// `extra`, then add `(¬φ, α)` for every unsatisfied `(φ, α)` on it.
pub fn complete_presat(
    s: &PartialSatClass,
    extra: &BTreeSet<Formula>,
    max_value: u64,
) -> Result<PartialSatClass, EvError> {
    for f in &s.domain {
        if f.direct_subformulas().iter().any(|g| !s.domain.contains(g)) {
            return Err(EvError::NotPresat { clause: "domain not closed under direct subformulas", formula: f.clone() });
        }
        if comp_failure(s, f, max_value).is_some() {
            return Err(EvError::NotPresat { clause: "compositional clause fails on the domain", formula: f.clone() });
        }
    }
    for (f, _) in &s.pairs {
        if !s.domain.contains(f) {
            return Err(EvError::NotPresat { clause: "pair outside the domain", formula: f.clone() });
        }
    }
    let mut candidates = subformula_closure(s.domain.iter().chain(extra));
    candidates.extend(s.formulas());
    let domain = maximal_domain(s, &candidates, max_value);
    let mut out = PartialSatClass { pairs: s.pairs.clone(), domain };
    for f in &out.domain {
        for a in asn(f, max_value) {
            if !s.holds(f, &a) {
                out.pairs.insert((Formula::not(f.clone()), a));
            }
        }
    }
    Ok(out)
}

/// Audits every condition of a satisfaction class against the stated
/// domain, plus regularity over `env` when given.
pub fn validate_sat_class(s: &PartialSatClass, max_value: u64, env: Option<&BTreeSet<Formula>>) -> PrincipleReport {
    let mut r = PrincipleReport::new("satclass");
    let max = BigUint::from(max_value);
    for (f, a) in &s.pairs {
        r.instances += 1;
        let vars: Vec<Var> = a.iter().map(|(v, _)| v).collect();
        if vars != f.free_vars() || a.iter().any(|(_, n)| *n > max) {
            r.violate("assignment", f.to_string(), format!("{a:?} is not an assignment for the formula"));
        }
        let on_domain = s.domain.contains(f)
            || matches!(f.kind(), FormulaKind::Not(g) if s.domain.contains(g));
        if !on_domain {
            r.violate("off-domain", f.to_string(), "satisfied pair outside the domain and its negations".to_string());
        }
    }
    let mut compositional: BTreeSet<Formula> = s.formulas();
    compositional.extend(s.domain.iter().cloned());
    for f in &compositional {
        r.instances += 1;
        if let Some(a) = comp_failure(s, f, max_value) {
            r.violate("comp", f.to_string(), format!("compositional clause fails at {a:?}"));
        }
    }
    for f in &s.domain {
        r.instances += 1;
        if let Some(g) = f.direct_subformulas().into_iter().find(|g| !s.domain.contains(g)) {
            r.violate("closure", f.to_string(), format!("direct subformula {g} is not in the domain"));
        }
        let neg = Formula::not(f.clone());
        if let Some(a) = asn(f, max_value).into_iter().find(|a| !s.holds(f, a) && !s.holds(&neg, a)) {
            r.violate("decided", f.to_string(), format!("neither the formula nor its negation holds at {a:?}"));
        }
    }
    if let Some(env) = env {
        regularity_audit(&mut r, env, max_value, |f, a| s.holds(f, a));
    }
    r
}

/// `(φ,α) ≃ (ψ,β)` must imply equal membership, over all of `env`.
pub(crate) fn regularity_audit(
    r: &mut PrincipleReport,
    env: &BTreeSet<Formula>,
    max_value: u64,
    holds: impl Fn(&Formula, &Assignment) -> bool,
) {
    let mut seen: BTreeMap<(Formula, Vec<BigUint>), (Formula, Assignment, bool)> = BTreeMap::new();
    for f in env {
        for a in asn(f, max_value) {
            let key = value_key(&instantiate(f, &a).expect("assignment covers the formula"));
            let here = holds(f, &a);
            match seen.get(&key) {
                Some((g, b, there)) => {
                    r.instances += 1;
                    if *there != here {
                        r.violate(
                            "regularity",
                            format!("{f} at {a:?}"),
                            format!("membership {here} differs from the equivalent {g} at {b:?}"),
                        );
                    }
                }
                None => {
                    seen.insert(key, (f.clone(), a, here));
                }
            }
        }
    }
}

/// Internal induction for `φ` in `S`, for `x ≤ budget`.
pub fn check_internal_induction(s: &PartialSatClass, phi: &Formula, budget: u64) -> Result<PrincipleReport, EvError> {
    let fv = phi.free_vars();
    if fv.len() > 1 {
        return Err(EvError::TooManyFreeVars { count: fv.len() });
    }
    let mut r = PrincipleReport::new("internal-induction");
    let Some(&v) = fv.first() else {
        r.notes.push("no free variable: nothing to induct on".to_string());
        return Ok(r);
    };
    r.instances = 1;
    let member: Vec<bool> = (0..=budget).map(|x| s.holds(phi, &Assignment::new().with(v, x))).collect();
    if !member[0] {
        r.vacuous = 1;
        r.notes.push("base case fails".to_string());
    } else if let Some(n) = member.windows(2).position(|w| w[0] && !w[1]) {
        r.vacuous = 1;
        r.notes.push(format!("step {n} -> {} fails", n + 1));
    } else if let Some(n) = member.iter().position(|b| !b) {
        r.violate("internal-induction", phi.to_string(), format!("hypotheses hold but {n} is missing"));
    }
    Ok(r)
}
