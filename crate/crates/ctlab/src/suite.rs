//! The reproducible check suite: one check per acceptance criterion, each
//! seeded from the suite seed and its own stream.

use std::collections::BTreeSet;

use ctlab_core::coding::{decode, encode, Syntax};
use ctlab_core::countermodels::{audit_construction, construct_a, construct_b, random_cut_model, ApproxTrace};
use ctlab_core::derivations::{
    check_yablo_claim, is_tautology, tag_exclusion, yablo_transform, DerivError, HypothesisFailure,
};
use ctlab_core::disjunctions::{balanced, is_append_step, BuilderKind, Disjoin};
use ctlab_core::ev::{
    class_graph, ev_construct, ext_equiv, random_scenario, template, validate_sat_class, SyntacticTemplate,
    MAX_CLASSES, MAX_ENVIRONMENT,
};
use ctlab_core::principles::{
    check_ct_minus, check_dc, check_outer_contract, check_qfc, DcDirection, Outcome, PrincipleError,
    PrincipleReport, QuantifierVariant, TruthValuation,
};
use ctlab_core::semantics::{term_eval, val, val_seq, Evaluator, TruthOracle};
use ctlab_core::syntax::{parse_formula, parse_term};
use ctlab_core::{Assignment, Formula, FormulaKind, SentenceSeq, Term, Var};
use num_bigint::BigUint;
use rand::seq::IteratorRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Map, Value};

use crate::gen::{self, QUANT_BOUND};
use crate::oracle::enumerate_truth;
use crate::report::{exit_code, SCHEMA_VERSION};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteConfig {
    pub seed: u64,
    pub budget: u64,
    /// Run only checks whose id starts with this.
    pub only: Option<String>,
}

impl Default for SuiteConfig {
    fn default() -> SuiteConfig {
        SuiteConfig { seed: 0, budget: ctlab_core::semantics::DEFAULT_BUDGET, only: None }
    }
}

#[derive(Clone, Debug)]
pub struct CheckResult {
    pub id: &'static str,
    pub criterion: u8,
    pub samples: usize,
    pub failures: usize,
    pub undetermined: usize,
    /// First few failure descriptions.
    pub examples: Vec<String>,
    pub details: Map<String, Value>,
}

const MAX_EXAMPLES: usize = 5;

impl CheckResult {
    fn new(id: &'static str, criterion: u8) -> CheckResult {
        CheckResult { id, criterion, samples: 0, failures: 0, undetermined: 0, examples: Vec::new(), details: Map::new() }
    }

    pub fn status(&self) -> Outcome {
        if self.failures > 0 {
            Outcome::Fail
        } else if self.undetermined > 0 {
            Outcome::Undetermined
        } else {
            Outcome::Pass
        }
    }

    fn fail(&mut self, what: impl Into<String>) {
        self.failures += 1;
        if self.examples.len() < MAX_EXAMPLES {
            self.examples.push(what.into());
        }
    }

    fn expect(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.samples += 1;
        if !ok {
            self.fail(what());
        }
    }

    fn detail(&mut self, key: &str, v: impl Into<Value>) {
        self.details.insert(key.into(), v.into());
    }

    pub fn to_json(&self) -> Value {
        json!({
            "id": self.id,
            "criterion": self.criterion,
            "status": self.status().label(),
            "samples": self.samples,
            "failures": self.failures,
            "undetermined": self.undetermined,
            "examples": self.examples,
            "details": self.details,
        })
    }
}

type CheckFn = fn(&SuiteConfig) -> CheckResult;

/// Check ids with their criterion numbers, in report order.
pub const CHECKS: [(&str, u8, CheckFn); 11] = [
    ("balanced-separation", 7, balanced_separation),
    ("coding-roundtrip", 2, coding_roundtrip),
    ("cut-a", 9, cut_a),
    ("cut-b", 10, cut_b),
    ("dc-standard", 4, dc_standard),
    ("eval-oracle", 3, eval_oracle),
    ("ev-construct", 8, ev_scenarios),
    ("fault-injection", 11, fault_injection),
    ("outer-contract", 6, outer_contract),
    ("worked-examples", 1, worked_examples),
    ("yablo-replay", 5, yablo_replay),
];

pub fn run_check(id: &str, cfg: &SuiteConfig) -> Option<CheckResult> {
    CHECKS.iter().find(|c| c.0 == id).map(|c| (c.2)(cfg))
}

pub fn run_suite(cfg: &SuiteConfig) -> Vec<CheckResult> {
    CHECKS
        .iter()
        .filter(|c| cfg.only.as_deref().is_none_or(|p| c.0.starts_with(p)))
        .map(|c| (c.2)(cfg))
        .collect()
}

pub fn overall(results: &[CheckResult]) -> Outcome {
    let all: Vec<Outcome> = results.iter().map(CheckResult::status).collect();
    if all.contains(&Outcome::Fail) {
        Outcome::Fail
    } else if all.contains(&Outcome::Undetermined) {
        Outcome::Undetermined
    } else {
        Outcome::Pass
    }
}

pub fn suite_json(cfg: &SuiteConfig, results: &[CheckResult]) -> Value {
    json!({
        "schema_version": SCHEMA_VERSION,
        "command": "suite",
        "seed": cfg.seed,
        "budget": cfg.budget,
        "only": cfg.only,
        "verdict": overall(results).label(),
        "exit_code": exit_code(overall(results)),
        "checks": results.iter().map(CheckResult::to_json).collect::<Vec<_>>(),
    })
}

fn rng_for(cfg: &SuiteConfig, criterion: u8) -> ChaCha8Rng {
    gen::stream(cfg.seed, u64::from(criterion))
}

fn p(s: &str) -> Formula {
    parse_formula(s).expect("fixed formula parses")
}

fn t(s: &str) -> Term {
    parse_term(s).expect("fixed term parses")
}

fn big(n: u64) -> BigUint {
    BigUint::from(n)
}

fn worked_examples(_: &SuiteConfig) -> CheckResult {
    let mut r = CheckResult::new("worked-examples", 1);

    let v = val(&t("(S(0)+S(S(0)))")).ok();
    r.expect(v == Some(big(3)), || format!("value of S0+SS0 is {v:?}"));
    r.detail("sum_value", v.map(|x| x.to_string()));

    // x = x0, y = x1
    let alpha: Assignment = [(Var(0), big(2)), (Var(1), big(5))].into_iter().collect();
    let v = term_eval(&t("(S(S(x0))*S(x1))"), &alpha).ok();
    r.expect(v == Some(big(24)), || format!("value of SSx*Sy is {v:?}"));
    r.detail("product_value", v.map(|x| x.to_string()));

    let tp = template(&p("E x0.(S(S(x0))+S(x1))=((x2*(x1+S(0)))*x0)"));
    let want = p("E x0.(S(S(x0))+x1)=(x2*x0)");
    r.expect(tp.template == want, || format!("template is {}", tp.template));
    r.detail("template", tp.template.to_string());

    let phi = p("E x0.(x0+x1)=S(S(0))");
    let psi = p("E x0.(x0+(x1*x2))=(x3+S(0))");
    let a: Assignment = [(Var(1), big(2))].into_iter().collect();
    let b: Assignment = [(Var(1), big(2)), (Var(2), big(1)), (Var(3), big(1))].into_iter().collect();
    match ext_equiv((&phi, &a), (&psi, &b)) {
        Ok(Some(w)) => {
            let left = val_seq(&w.left).ok();
            let right = val_seq(&w.right).ok();
            let ok = w.template == p("E x0.(x0+x1)=x2")
                && left == Some(vec![big(2), big(2)])
                && right == Some(vec![big(2), big(2)]);
            r.expect(ok, || format!("witness {} with {left:?} and {right:?}", w.template));
            r.detail("equivalence_template", w.template.to_string());
        }
        other => r.expect(false, || format!("no equivalence witness: {other:?}")),
    }
    r
}

fn coding_roundtrip(cfg: &SuiteConfig) -> CheckResult {
    let mut r = CheckResult::new("coding-roundtrip", 2);
    let mut rng = rng_for(cfg, 2);
    let mut max_bits = 0;
    for _ in 0..10_000 {
        let x = gen::syntax_tree(&mut rng, 8);
        let c = encode(&x);
        max_bits = max_bits.max(c.bits());
        let back = decode(&c).ok();
        r.expect(back.as_ref() == Some(&x), || format!("{x:?} decodes to {back:?}"));
    }
    r.detail("max_code_bits", max_bits);
    r
}

fn eval_oracle(cfg: &SuiteConfig) -> CheckResult {
    let mut r = CheckResult::new("eval-oracle", 3);
    let mut rng = rng_for(cfg, 3);
    let mut ev = Evaluator::new(cfg.budget);
    let (mut trues, mut falses) = (0usize, 0usize);
    for _ in 0..1000 {
        let f = gen::decidable_sentence(&mut rng, 3);
        let want = enumerate_truth(&f, QUANT_BOUND).expect("generated sentences are closed");
        match ev.truth(&f) {
            None => {
                r.samples += 1;
                r.undetermined += 1;
            }
            Some(got) => {
                r.expect(got == want, || format!("{f}: evaluator {got}, enumeration {want}"));
                if got {
                    trues += 1;
                } else {
                    falses += 1;
                }
            }
        }
    }
    r.detail("true", trues);
    r.detail("false", falses);
    r
}

const STANDARD_BUILDERS: [BuilderKind; 4] =
    [BuilderKind::LeftGrouped, BuilderKind::Balanced, BuilderKind::QuantifiedOuter, BuilderKind::NegatedConjunction];

/// Truth of the built sentence against truth of some element, for each
/// builder on each sample.
fn biconditional(r: &mut CheckResult, kinds: &[BuilderKind], samples: &[Vec<Formula>], budget: u64) {
    let mut ev = Evaluator::new(budget);
    for seq in samples {
        let parts: Option<Vec<bool>> = seq.iter().map(|f| ev.truth(f)).collect();
        for kind in kinds {
            let built = kind.build(seq).expect("samples are nonempty");
            match (ev.truth(&built), &parts) {
                (Some(whole), Some(parts)) => {
                    let some = parts.iter().any(|b| *b);
                    r.expect(whole == some, || format!("{}: built {whole}, some element {some}", kind.name()));
                }
                _ => {
                    r.samples += 1;
                    r.undetermined += 1;
                }
            }
        }
    }
}

fn dc_standard(cfg: &SuiteConfig) -> CheckResult {
    let mut r = CheckResult::new("dc-standard", 4);
    let mut rng = rng_for(cfg, 4);
    let samples: Vec<Vec<Formula>> = (0..200).map(|_| gen::decidable_sequence(&mut rng, 32, 2)).collect();
    biconditional(&mut r, &STANDARD_BUILDERS, &samples, cfg.budget);
    r.detail("builders", STANDARD_BUILDERS.iter().map(|k| k.name()).collect::<Vec<_>>());
    r
}

fn yablo_replay(cfg: &SuiteConfig) -> CheckResult {
    let mut r = CheckResult::new("yablo-replay", 5);
    let mut rng = rng_for(cfg, 5);
    let mut worst_ratio = 0.0f64;
    for _ in 0..200 {
        let len = rng.random_range(1..=64);
        let items: Vec<Formula> = (0..len).map(|_| gen::true_sentence(&mut rng)).collect();
        let ys = yablo_transform(&items).expect("nonempty sentences");
        let c = items.len() as u64;
        let sizes: u64 = items.iter().map(Formula::flat_size).sum();
        let dag = ys.dag_size() as u64;
        worst_ratio = worst_ratio.max(dag as f64 / (c + sizes) as f64);
        r.expect(dag <= 10 * (c + sizes), || format!("DAG of {dag} nodes for length {c}"));
        match check_yablo_claim(&ys, cfg.budget) {
            Ok(rep) => r.expect(rep.passed(), || format!("claim fails: {rep:?}")),
            Err(DerivError::Hypothesis { failure: HypothesisFailure::Undetermined, .. })
            | Err(DerivError::OracleUndetermined { .. }) => {
                r.samples += 1;
                r.undetermined += 1;
            }
            Err(e) => r.expect(false, || format!("error: {e}")),
        }
    }
    let items: Vec<Formula> = (0..=20).map(|_| gen::true_sentence(&mut rng)).collect();
    let flat = yablo_transform(&items).expect("nonempty").last_flat_size();
    r.expect(flat > 1 << 19, || format!("flat size {flat} at c = 20"));
    r.detail("flat_size_c20", flat);
    r.detail("max_dag_ratio", (worst_ratio * 1000.0).round() / 1000.0);
    r
}

fn outer_contract(cfg: &SuiteConfig) -> CheckResult {
    let mut r = CheckResult::new("outer-contract", 6);
    let mut rng = rng_for(cfg, 6);
    let mut ev = Evaluator::new(cfg.budget);
    for _ in 0..200 {
        let seq = SentenceSeq::new(gen::decidable_sequence(&mut rng, 16, 2)).expect("sentences");
        match check_outer_contract(BuilderKind::QuantifiedOuter, &mut ev, std::slice::from_ref(&seq)) {
            Ok(rep) => r.expect(rep.passed(), || format!("contract fails: {:?}", rep.violations)),
            Err(PrincipleError::OracleUndetermined(_)) => {
                r.samples += 1;
                r.undetermined += 1;
            }
            Err(e) => r.expect(false, || format!("error: {e}")),
        }
    }
    let pool: Vec<Formula> = (0..3)
        .map(|_| loop {
            let f = gen::decidable_sentence(&mut rng, 2);
            if matches!(f.kind(), FormulaKind::Eq(..) | FormulaKind::Exists(..) | FormulaKind::Forall(..)) {
                break f;
            }
        })
        .collect();
    for c in 0..=10usize {
        let phis: Vec<Formula> =
            (0..=c).map(|i| Formula::or(pool[i % 3].clone(), Formula::not(pool[(i + 1) % 3].clone()))).collect();
        let taut = tag_exclusion(&phis).and_then(|f| is_tautology(&f));
        r.expect(matches!(taut, Ok(true)), || format!("tag exclusion at c = {c}: {taut:?}"));
    }
    r
}

fn balanced_separation(cfg: &SuiteConfig) -> CheckResult {
    let mut r = CheckResult::new("balanced-separation", 7);
    let mut rng = rng_for(cfg, 7);
    let mut triples = vec![[p("0=0"), p("S(0)=0"), p("0=S(S(0))")]];
    triples.extend((0..20).map(|_| std::array::from_fn(|_| gen::decidable_sentence(&mut rng, 2))));
    for [a, b, c] in &triples {
        let prev = balanced(&[a.clone(), b.clone()]);
        let next = balanced(&[a.clone(), b.clone(), c.clone()]);
        r.expect(next != Formula::or(prev.clone(), c.clone()), || format!("{next} is an append step"));
        r.expect(!is_append_step(BuilderKind::Balanced, &prev, &next, c), || format!("{next} passes the append clause"));
    }
    let samples: Vec<Vec<Formula>> = (0..200).map(|_| gen::decidable_sequence(&mut rng, 32, 2)).collect();
    biconditional(&mut r, &[BuilderKind::Balanced], &samples, cfg.budget);
    r.detail("triples", triples.len());
    r
}

fn ev_scenarios(cfg: &SuiteConfig) -> CheckResult {
    let mut r = CheckResult::new("ev-construct", 8);
    let mut rng = rng_for(cfg, 8);
    let (mut max_classes, mut max_stages, mut max_env) = (0, 0, 0);
    for i in 0..100usize {
        let long_cut = 3 + i % 6;
        let sc = random_scenario(&mut gen::draws(&mut rng), long_cut, 2);
        let classes = class_graph(&sc.environment).map(|g| g.classes.len()).unwrap_or(usize::MAX);
        max_classes = max_classes.max(classes);
        max_env = max_env.max(sc.environment.len());
        r.expect(sc.environment.len() <= MAX_ENVIRONMENT && classes <= MAX_CLASSES, || {
            format!("scenario {i} has {} formulas in {classes} classes", sc.environment.len())
        });
        match ev_construct(&sc) {
            Ok((result, report)) => {
                max_stages = max_stages.max(report.stages);
                r.expect(report.passed(), || {
                    let failed: Vec<&str> =
                        report.audits.iter().filter(|a| !a.passed()).map(|a| a.principle).collect();
                    format!("scenario {i}: audits {failed:?} fail")
                });
                r.expect(report.stages <= report.classes, || format!("scenario {i}: {} stages", report.stages));
                r.expect(validate_sat_class(&result, sc.max_value, None).passed(), || {
                    format!("scenario {i}: extracted class is invalid")
                });
            }
            Err(e) => r.expect(false, || format!("scenario {i}: {e}")),
        }
    }
    r.detail("max_classes", max_classes);
    r.detail("max_environment", max_env);
    r.detail("max_stages", max_stages);
    r
}

fn cut_check(cfg: &SuiteConfig, id: &'static str, criterion: u8, b: bool) -> CheckResult {
    let mut r = CheckResult::new(id, criterion);
    let mut rng = rng_for(cfg, criterion);
    let (mut extensions, mut skips) = (0, 0);
    for i in 0..100 {
        let m = random_cut_model(&mut gen::draws(&mut rng), 2000, 1000, 300, 50)
            .expect("generated models are valid")
            .with_long_threshold(20);
        let trace = if b { construct_b(&m) } else { construct_a(&m) };
        match trace {
            Ok(tr) => {
                extensions += tr.extensions();
                skips += tr.skips().len();
                let rep = audit_construction(&tr, &m);
                r.expect(rep.passed(), || format!("model {i}: {:?}", rep.violations));
            }
            Err(e) => r.expect(false, || format!("model {i}: {e}")),
        }
    }
    r.detail("extensions", extensions);
    r.detail("skips", skips);
    r
}

fn cut_a(cfg: &SuiteConfig) -> CheckResult {
    cut_check(cfg, "cut-a", 9, false)
}

fn cut_b(cfg: &SuiteConfig) -> CheckResult {
    cut_check(cfg, "cut-b", 10, true)
}

fn own_family(f: &Formula) -> &'static str {
    match f.kind() {
        FormulaKind::Eq(..) => "equality",
        FormulaKind::Not(..) => "negation",
        FormulaKind::Or(..) => "disjunction",
        FormulaKind::And(..) => "conjunction",
        FormulaKind::Exists(..) => "existential",
        FormulaKind::Forall(..) => "universal",
    }
}

/// Flips the oracle's answer on one sentence.
struct Flipped<'a> {
    inner: &'a mut dyn TruthOracle,
    target: Formula,
}

impl TruthOracle for Flipped<'_> {
    fn truth(&mut self, phi: &Formula) -> Option<bool> {
        let b = self.inner.truth(phi)?;
        Some(if *phi == self.target { !b } else { b })
    }
}

enum Injected {
    Detected,
    Missed(String),
    Undetermined,
}

fn caught(before: &PrincipleReport, after: &PrincipleReport, family: &str) -> Injected {
    if !before.passed() {
        return Injected::Missed(format!("{} baseline already fails: {:?}", before.principle, before.violations));
    }
    if after.families().contains(family) {
        Injected::Detected
    } else {
        Injected::Missed(format!("{} flip not reported as {family}: {:?}", after.principle, after.families()))
    }
}

fn valuation(roots: &[Formula], budget: u64) -> Option<TruthValuation> {
    TruthValuation::evaluated(roots, &QuantifierVariant::Numeral.instance_terms(QUANT_BOUND), budget).ok()
}

fn sentence_with_slot(rng: &mut ChaCha8Rng) -> (Formula, SyntacticTemplate) {
    loop {
        let f = gen::decidable_sentence(rng, 2);
        let tp = template(&f);
        if !tp.slots.is_empty() {
            return (f, tp);
        }
    }
}

fn sequence_with_truth(rng: &mut ChaCha8Rng, some_true: bool) -> Vec<Formula> {
    let len = rng.random_range(2..=6);
    let mut items: Vec<Formula> = (0..len)
        .map(|_| {
            let f = gen::true_sentence(rng);
            if some_true && rng.random_bool(0.5) {
                f
            } else {
                Formula::not(f)
            }
        })
        .collect();
    if some_true {
        let k = rng.random_range(0..len);
        items[k] = gen::true_sentence(rng);
    }
    items
}

fn inject(kind: usize, rng: &mut ChaCha8Rng, budget: u64) -> Injected {
    let none = Injected::Undetermined;
    match kind {
        0 => {
            let roots: Vec<Formula> = (0..3).map(|_| gen::decidable_sentence(rng, 2)).collect();
            let Some(mut v) = valuation(&roots, budget) else { return none };
            let before = check_ct_minus(&v, QuantifierVariant::Numeral, QUANT_BOUND);
            let f = v.sentences().choose(rng).expect("nonempty").clone();
            v.flip(&f);
            caught(&before, &check_ct_minus(&v, QuantifierVariant::Numeral, QUANT_BOUND), own_family(&f))
        }
        1 => {
            let (f, tp) = sentence_with_slot(rng);
            let mut slots = tp.slots.clone();
            slots[0] = Term::add(slots[0].clone(), Term::zero());
            let twin = SyntacticTemplate { slots, ..tp }.reconstruct();
            let Some(mut v) = valuation(&[f, twin.clone()], budget) else { return none };
            let before = check_ct_minus(&v, QuantifierVariant::Numeral, QUANT_BOUND);
            v.flip(&twin);
            caught(&before, &check_ct_minus(&v, QuantifierVariant::Numeral, QUANT_BOUND), "regularity")
        }
        2 => {
            let mut roots: Vec<Formula> = (0..4).map(|_| gen::qf_sentence(rng, 2)).collect();
            roots.push(Formula::not(roots[0].clone()));
            let Some(mut v) = valuation(&roots, budget) else { return none };
            let before = check_qfc(&v);
            let f = v.iter().filter(|(_, b)| *b).map(|(f, _)| f.clone()).choose(rng).expect("a true sentence");
            v.flip(&f);
            caught(&before, &check_qfc(&v), "qfc")
        }
        3 | 4 => {
            let dcin = kind == 3;
            let items = sequence_with_truth(rng, dcin);
            let d = BuilderKind::LeftGrouped.build(&items).expect("nonempty");
            let mut roots = items.clone();
            roots.push(d.clone());
            let Some(mut v) = valuation(&roots, budget) else { return none };
            let seqs = [SentenceSeq::new(items).expect("sentences")];
            let Ok(before) = check_dc(&v, &seqs, DcDirection::Both) else { return none };
            v.flip(&d);
            let Ok(after) = check_dc(&v, &seqs, DcDirection::Both) else { return none };
            caught(&before, &after, if dcin { "dcin" } else { "dcout" })
        }
        5 => {
            let seq = SentenceSeq::new(gen::decidable_sequence(rng, 8, 2)).expect("sentences");
            let kind = BuilderKind::QuantifiedOuter;
            let mut ev = Evaluator::new(budget);
            let Ok(before) = check_outer_contract(kind, &mut ev, std::slice::from_ref(&seq)) else { return none };
            let target = kind.build(&seq).expect("nonempty");
            let mut flipped = Flipped { inner: &mut ev, target };
            let Ok(after) = check_outer_contract(kind, &mut flipped, std::slice::from_ref(&seq)) else { return none };
            caught(&before, &after, "biconditional")
        }
        6 | 7 => {
            let sc = random_scenario(&mut gen::draws(rng), 4, 2);
            let mut s = sc.base.clone();
            let before = validate_sat_class(&s, 2, None);
            let family = if kind == 6 {
                let pair = s.pairs.iter().choose(rng).expect("base pairs").clone();
                s.pairs.remove(&pair);
                "decided"
            } else {
                let f = s.domain.iter().choose(rng).expect("base domain").clone();
                let missing = ctlab_core::ev::asn(&f, 2).into_iter().find(|a| !s.holds(&f, a));
                match missing {
                    Some(a) => s.insert(f, a),
                    None => s.insert(Formula::not(f.clone()), ctlab_core::ev::asn(&f, 2).remove(0)),
                };
                "comp"
            };
            caught(&before, &validate_sat_class(&s, 2, None), family)
        }
        _ => {
            let b = kind == 9;
            let m = random_cut_model(&mut gen::draws(rng), 200, 100, 30, 10).expect("valid").with_long_threshold(4);
            let Ok(tr) = (if b { construct_b(&m) } else { construct_a(&m) }) else { return none };
            let before = audit_construction(&tr, &m);
            let mut bad: ApproxTrace = tr.clone();
            let family = if b {
                let x = *bad.t.iter().next().expect("the cut is in T");
                bad.t.remove(&x);
                "cut"
            } else {
                let negative = tr.snapshot(tr.steps.len()).1;
                let Some(&x) = negative.iter().choose(rng) else { return none };
                bad.t.insert(x);
                "disjoint"
            };
            caught(&before, &audit_construction(&bad, &m), family)
        }
    }
}

const INJECTION_KINDS: [&str; 10] =
    ["ctminus", "regularity", "qfc", "dcin", "dcout", "outer", "satclass-decided", "satclass-comp", "cut-a", "cut-b"];

fn fault_injection(cfg: &SuiteConfig) -> CheckResult {
    let mut r = CheckResult::new("fault-injection", 11);
    let mut rng = rng_for(cfg, 11);
    let mut detected: BTreeSet<&str> = BTreeSet::new();
    for round in 0..5 {
        for (kind, name) in INJECTION_KINDS.iter().enumerate() {
            match inject(kind, &mut rng, cfg.budget) {
                Injected::Detected => {
                    r.samples += 1;
                    detected.insert(name);
                }
                Injected::Missed(why) => r.expect(false, || format!("round {round}, {name}: {why}")),
                Injected::Undetermined => {
                    r.samples += 1;
                    r.undetermined += 1;
                }
            }
        }
    }
    r.detail("kinds_detected", detected.into_iter().collect::<Vec<_>>());
    r
}

/// Decoding helper for the CLI: the kind of a decoded object.
pub fn syntax_kind(x: &Syntax) -> &'static str {
    match x {
        Syntax::Term(_) => "term",
        Syntax::Formula(_) => "formula",
    }
}
