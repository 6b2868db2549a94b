use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::ToString;
use alloc::vec::Vec;

use num_bigint::BigUint;

use crate::ev::value_key;
use crate::semantics::{evaluate, val};
use crate::syntax::{substitute, Formula, FormulaKind, Term, Var};

use super::{PrincipleReport, QuantifierVariant, TruthValuation};

fn kleene_or(xs: impl IntoIterator<Item = Option<bool>>) -> Option<bool> {
    let mut unknown = false;
    for x in xs {
        match x {
            Some(true) => return Some(true),
            Some(false) => {}
            None => unknown = true,
        }
    }
    if unknown {
        None
    } else {
        Some(false)
    }
}

fn kleene_and(xs: impl IntoIterator<Item = Option<bool>>) -> Option<bool> {
    kleene_or(xs.into_iter().map(|x| x.map(|b| !b))).map(|b| !b)
}

struct Audit<'a> {
    v: &'a TruthValuation,
    instances: Vec<Term>,
    report: PrincipleReport,
}

impl Audit<'_> {
    fn compare(&mut self, family: &'static str, f: &Formula, actual: bool, expected: Option<bool>, why: &str) {
        self.report.instances += 1;
        match expected {
            Some(e) if e != actual => {
                self.report.violate(family, f.to_string(), format!("T = {actual} but {why} gives {e}"))
            }
            Some(_) => {}
            None => self.report.undetermined += 1,
        }
    }

    fn instance_values(&self, v: Var, body: &Formula) -> Vec<Option<bool>> {
        self.instances
            .iter()
            .map(|t| substitute(body, v, t).ok().and_then(|g| self.v.get(&g)))
            .collect()
    }

    fn sentence(&mut self, f: &Formula, b: bool) {
        match f.kind() {
            FormulaKind::Eq(s, t) => {
                let e = val(s).ok().zip(val(t).ok()).map(|(x, y)| x == y);
                self.compare("equality", f, b, e, "comparing values");
            }
            FormulaKind::Not(a) => {
                let e = self.v.get(a).map(|x| !x);
                self.compare("negation", f, b, e, "the negated sentence");
            }
            FormulaKind::Or(a, c) => {
                let e = kleene_or([self.v.get(a), self.v.get(c)]);
                self.compare("disjunction", f, b, e, "the disjuncts");
            }
            FormulaKind::And(a, c) => {
                let e = kleene_and([self.v.get(a), self.v.get(c)]);
                self.compare("conjunction", f, b, e, "the conjuncts");
            }
            FormulaKind::Exists(v, body) => {
                let e = kleene_or(self.instance_values(*v, body));
                self.compare("existential", f, b, e, "the instances in range");
            }
            FormulaKind::Forall(v, body) => {
                let e = kleene_and(self.instance_values(*v, body));
                self.compare("universal", f, b, e, "the instances in range");
            }
        }
    }
}

/// Audits the compositional clauses and regularity on the valuation's
/// sentences. Quantifier clauses read the instances given by `variant` and
/// `budget`; a pass therefore means no violation within that range.
pub fn check_ct_minus(v: &TruthValuation, variant: QuantifierVariant, budget: u64) -> PrincipleReport {
    let mut audit = Audit { v, instances: variant.instance_terms(budget), report: PrincipleReport::new("ctminus") };
    for (f, b) in v.iter() {
        audit.sentence(f, b);
    }
    let mut report = audit.report;
    let mut groups: BTreeMap<(Formula, Vec<BigUint>), (&Formula, bool)> = BTreeMap::new();
    for (f, b) in v.iter() {
        let key = value_key(f);
        match groups.get(&key) {
            Some((g, c)) => {
                report.instances += 1;
                if *c != b {
                    report.violate(
                        "regularity",
                        f.to_string(),
                        format!("T = {b} but T = {c} on {g}, which differs only in closed terms of equal value"),
                    );
                }
            }
            None => {
                groups.insert(key, (f, b));
            }
        }
    }
    report
}

/// Every quantifier-free sentence that evaluates true must be in T.
pub fn check_qfc(v: &TruthValuation) -> PrincipleReport {
    let mut report = PrincipleReport::new("qfc");
    for (f, b) in v.iter().filter(|(f, _)| f.is_quantifier_free()) {
        report.instances += 1;
        let truth = evaluate(f, 0).map(|r| r.is_true()).unwrap_or(false);
        if truth && !b {
            report.violate("qfc", f.to_string(), "true quantifier-free sentence is not in T".to_string());
        }
    }
    report
}
