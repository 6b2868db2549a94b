use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;

use super::*;
use crate::disjunctions::{bigvee, BuilderKind};
use crate::semantics::{bounded_forall, leq, Evaluator};
use crate::syntax::{num_u64, parse_formula, SentenceSeq, Var};

fn p(s: &str) -> Formula {
    parse_formula(s).unwrap()
}

fn seq(items: &[&str]) -> SentenceSeq {
    SentenceSeq::new(items.iter().map(|s| p(s)).collect()).unwrap()
}

fn numerals(b: u64) -> Vec<Term> {
    QuantifierVariant::Numeral.instance_terms(b)
}

/// `∀x0 ≤ 3 φ`
fn below3(phi: Formula) -> Formula {
    bounded_forall(Var(0), Var(9), num_u64(3), phi)
}

fn sample_valuation() -> TruthValuation {
    let roots = [
        p("!(0=S(0))"),
        p("(0=0|S(0)=0)"),
        p("(S(0)=S(0)&!0=0)"),
        p("E x0.(x0+S(0))=S(S(0))"),
        below3(p("!S(x0)=0")),
        p("E x0.(x0*x0)=S(S(S(S(0))))"),
    ];
    TruthValuation::evaluated(&roots, &numerals(3), 3).unwrap()
}

#[test]
fn closure_contains_instances() {
    let c = sentence_closure(&[p("E x0.x0=S(0)")], &numerals(2)).unwrap();
    let expect: BTreeSet<Formula> =
        ["E x0.x0=S(0)", "0=S(0)", "S(0)=S(0)", "S(S(0))=S(0)"].iter().map(|s| p(s)).collect();
    assert_eq!(c, expect);
    assert!(sentence_closure(&[p("x0=0")], &[]).is_err());
}

#[test]
fn closed_term_instances_by_code() {
    // codes of closed terms up to 500 are those of 0 (21) and S0 (427)
    assert_eq!(QuantifierVariant::ClosedTerm.instance_terms(500), vec![Term::zero(), num_u64(1)]);
    assert_eq!(QuantifierVariant::ClosedTerm.instance_terms(20), vec![]);
}

#[test]
fn evaluated_valuation_passes_ct() {
    let v = sample_valuation();
    let r = check_ct_minus(&v, QuantifierVariant::Numeral, 3);
    assert!(r.passed(), "{r:?}");
    assert!(r.instances >= v.len());
    assert!(check_qfc(&v).passed());
}

#[test]
fn term_variant_on_term_closure() {
    let terms = QuantifierVariant::ClosedTerm.instance_terms(500);
    let v = TruthValuation::evaluated(&[p("E x0.x0=S(0)"), p("E x0.!(x0+x0)=0")], &terms, 3).unwrap();
    assert!(check_ct_minus(&v, QuantifierVariant::ClosedTerm, 500).passed());
    let mut w = v.clone();
    w.flip(&p("E x0.x0=S(0)"));
    assert!(check_ct_minus(&w, QuantifierVariant::ClosedTerm, 500).families().contains("existential"));
}

#[test]
fn negation_flip_is_one_negation_violation() {
    let mut v = sample_valuation();
    let neg = p("!(0=S(0))");
    v.flip(&neg);
    let r = check_ct_minus(&v, QuantifierVariant::Numeral, 3);
    assert_eq!(r.violations.iter().filter(|x| x.family == "negation").count(), 1);
    assert_eq!(r.verdict(), Outcome::Fail);
}

#[test]
fn regularity_violation() {
    let (a, b) = (p("(S(0)+S(0))=S(S(0))"), p("S(S(0))=(S(0)*S(S(0)))"));
    let mut v = TruthValuation::new();
    v.insert(a, true);
    v.insert(b, false);
    let r = check_ct_minus(&v, QuantifierVariant::Numeral, 0);
    assert!(r.families().contains("regularity"));
}

#[test]
fn undetermined_outside_closure() {
    let mut v = TruthValuation::new();
    v.insert(p("!0=0"), false);
    let r = check_ct_minus(&v, QuantifierVariant::Numeral, 0);
    assert_eq!(r.verdict(), Outcome::Undetermined);
    assert_eq!(r.undetermined, 1);
}

#[test]
fn quantifier_flip_detected() {
    let roots = [p("E x0.(x0+S(0))=S(S(0))"), below3(p("!S(x0)=0")), p("E x0.(x0*x0)=S(S(S(S(0))))")];
    for f in roots {
        let mut v = sample_valuation();
        if !v.contains(&f) {
            v = TruthValuation::evaluated(std::slice::from_ref(&f), &numerals(3), 3).unwrap();
        }
        v.flip(&f);
        let r = check_ct_minus(&v, QuantifierVariant::Numeral, 3);
        let fam = if matches!(f.kind(), crate::FormulaKind::Exists(..)) { "existential" } else { "universal" };
        assert!(r.families().contains(fam), "{f}: {r:?}");
    }
}

#[test]
fn qfc_examples() {
    let mut v = TruthValuation::new();
    v.insert(p("0=0"), false);
    assert_eq!(check_qfc(&v).violations.len(), 1);
    let mut q = TruthValuation::new();
    q.insert(p("E x0.x0=0"), true);
    let r = check_qfc(&q);
    assert!(r.passed());
    assert_eq!(r.instances, 0);
}

#[test]
fn dc_examples() {
    let s = seq(&["0=S(0)", "S(0)=S(0)", "0=S(S(0))"]);
    let d = bigvee(&s).unwrap();
    let mut v = TruthValuation::evaluated(std::slice::from_ref(&d), &[], 0).unwrap();
    assert!(check_dc(&v, std::slice::from_ref(&s), DcDirection::Both).unwrap().passed());

    v.insert(p("S(0)=S(0)"), false);
    let r = check_dc(&v, std::slice::from_ref(&s), DcDirection::Out).unwrap();
    assert_eq!(r.families(), ["dcout"].into_iter().collect());
    assert!(check_dc(&v, std::slice::from_ref(&s), DcDirection::In).unwrap().passed());

    let single = seq(&["0=S(0)"]);
    let w = TruthValuation::evaluated(&single, &[], 0).unwrap();
    assert!(check_dc(&w, &[single], DcDirection::Both).unwrap().passed());

    let missing = seq(&["0=0", "S(S(0))=0"]);
    assert!(matches!(
        check_dc(&w, &[missing], DcDirection::Both),
        Err(PrincipleError::ClosureMiss(_))
    ));
}

#[test]
fn seqind_examples() {
    let t: BTreeSet<u64> = [1, 2, 3].into_iter().collect();
    assert!(check_seqind(&t, &[vec![1, 2, 3, 1]]).passed());
    let r = check_seqind(&t, &[vec![1, 9]]);
    assert!(r.passed());
    assert_eq!(r.vacuous, 1);
    // T = {s₀}, s = [s₀, s₀, x]: base holds, step 0→1 holds, step 1→2 fails
    let t: BTreeSet<u64> = [5].into_iter().collect();
    let r = check_seqind(&t, &[vec![5, 5, 7]]);
    assert!(r.passed());
    assert_eq!(r.vacuous, 1);
}

#[test]
fn seqoind_examples() {
    let t: BTreeSet<u64> = [1, 2, 3, 4, 5].into_iter().collect();
    assert!(check_seqoind(&t, &[vec![1, 2, 3, 4, 5]]).passed());
    let r = check_seqoind(&t, &[vec![9, 1, 2]]);
    assert!(r.passed());
    assert_eq!(r.vacuous, 1);
    // a finite progressive sequence is complete, so an incomplete one is
    // never progressive
    let r = check_seqoind(&t, &[vec![1, 2, 3, 4, 9]]);
    assert_eq!((r.vacuous, r.violations.len()), (1, 0));
}

#[test]
fn int_examples() {
    let phi = p("x0=x0");
    assert!(check_int(&mut Evaluator::new(4), &phi, 10).unwrap().passed());

    let below_five = |f: &Formula| {
        let crate::FormulaKind::Not(inner) = f.kind() else { return None };
        let n = inner.to_string().matches('S').count();
        Some(n < 5)
    };
    let mut oracle = below_five;
    let r = check_int(&mut oracle, &p("!x0=0"), 10).unwrap();
    assert!(r.passed());
    assert_eq!(r.vacuous, 1);
    assert_eq!(r.notes, vec!["step 4 -> 5 fails".to_string()]);

    let r = check_int(&mut Evaluator::new(4), &p("0=0"), 10).unwrap();
    assert_eq!((r.instances, r.passed()), (1, true));
    assert_eq!(
        check_int(&mut Evaluator::new(4), &p("x0=x1"), 3).unwrap_err(),
        PrincipleError::TooManyFreeVars { count: 2 }
    );
}

#[test]
fn outer_contract_by_builder() {
    let samples = [seq(&["0=S(0)", "S(0)=S(0)", "0=S(S(0))"]), seq(&["0=S(0)", "S(0)=0"]), seq(&["0=0"])];
    for kind in [BuilderKind::LeftGrouped, BuilderKind::QuantifiedOuter, BuilderKind::NegatedConjunction] {
        let r = check_outer_contract(kind, &mut Evaluator::new(4), &samples).unwrap();
        assert!(r.passed(), "{kind:?}: {r:?}");
    }
    let r = check_outer_contract(BuilderKind::Balanced, &mut Evaluator::new(4), &samples[..1]).unwrap();
    assert_eq!(r.families(), ["append-structural"].into_iter().collect());
}

mod props {
    use super::*;
    use crate::semantics::evaluate;
    use crate::testgen::arb_sentence;
    use proptest::prelude::*;

    /// Comparisons are decided exactly, so a true one may need a witness
    /// beyond the quantifier range.
    fn witness_in_range(v: &TruthValuation, budget: u64) -> bool {
        v.sentences().filter_map(crate::semantics::as_comparison).all(|(s, t)| {
            let (s, t) = (crate::semantics::val(s).unwrap(), crate::semantics::val(t).unwrap());
            s > t || t - s <= budget.into()
        })
    }

    /// Keeps the roots whose whole closure evaluates conclusively, with
    /// witnesses inside the quantifier range.
    fn decidable(roots: Vec<Formula>, budget: u64) -> Option<TruthValuation> {
        let inst = numerals(budget);
        let kept: Vec<Formula> = roots
            .into_iter()
            .filter(|r| {
                TruthValuation::evaluated(core::slice::from_ref(r), &inst, budget)
                    .is_ok_and(|v| witness_in_range(&v, budget))
            })
            .collect();
        if kept.is_empty() {
            return None;
        }
        TruthValuation::evaluated(&kept, &inst, budget).ok()
    }

    fn family_of(f: &Formula) -> &'static str {
        match f.kind() {
            crate::FormulaKind::Eq(..) => "equality",
            crate::FormulaKind::Not(_) => "negation",
            crate::FormulaKind::Or(..) => "disjunction",
            crate::FormulaKind::And(..) => "conjunction",
            crate::FormulaKind::Exists(..) => "existential",
            crate::FormulaKind::Forall(..) => "universal",
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn evaluated_valuations_pass(roots in proptest::collection::vec(arb_sentence(3), 1..6)) {
            let Some(v) = decidable(roots, 3) else { return Ok(()) };
            let r = check_ct_minus(&v, QuantifierVariant::Numeral, 3);
            prop_assert!(r.passed(), "{:?}", r);
            prop_assert!(check_qfc(&v).passed());
        }

        #[test]
        fn any_flip_is_caught_in_its_family(roots in proptest::collection::vec(arb_sentence(3), 1..6), pick in any::<usize>()) {
            let Some(mut v) = decidable(roots, 3) else { return Ok(()) };
            let f = v.sentences().nth(pick % v.len()).unwrap().clone();
            v.flip(&f);
            let r = check_ct_minus(&v, QuantifierVariant::Numeral, 3);
            prop_assert!(r.families().contains(family_of(&f)), "{} {:?}", f, r);
        }

        #[test]
        fn dc_holds_for_evaluation(items in proptest::collection::vec(arb_sentence(2), 1..8)) {
            let items: Vec<Formula> = items.into_iter().filter(|f| evaluate(f, 3).unwrap().is_determined()).collect();
            prop_assume!(!items.is_empty());
            let s = SentenceSeq::new(items).unwrap();
            let d = bigvee(&s).unwrap();
            let v = TruthValuation::from_oracle(
                s.iter().cloned().chain([d]),
                &mut Evaluator::new(3),
            ).unwrap();
            prop_assert!(check_dc(&v, std::slice::from_ref(&s), DcDirection::Both).unwrap().passed());
            for kind in [BuilderKind::LeftGrouped, BuilderKind::QuantifiedOuter, BuilderKind::NegatedConjunction] {
                let r = check_outer_contract(kind, &mut Evaluator::new(8), std::slice::from_ref(&s)).unwrap();
                prop_assert!(r.passed(), "{:?} {:?}", kind, r);
            }
        }

        // Schemes over finite sets of numbers cannot fail; the vacuous count
        // must match a direct reading of the hypotheses.
        #[test]
        fn sequence_schemes(t in proptest::collection::btree_set(0u8..12, 0..12),
                            seqs in proptest::collection::vec(proptest::collection::vec(0u8..12, 0..10), 1..20)) {
            let a = check_seqind(&t, &seqs);
            let b = check_seqoind(&t, &seqs);
            prop_assert!(a.violations.is_empty() && b.violations.is_empty());
            let all_in = |s: &Vec<u8>| s.iter().all(|x| t.contains(x));
            let vac = seqs.iter().filter(|s| !all_in(s)).count();
            // both hypotheses fail exactly on incomplete sequences
            prop_assert_eq!(a.vacuous, vac);
            prop_assert_eq!(b.vacuous, vac);
        }

        // Order induction replayed through the negated-conjunction chain:
        // any T passing sequential induction on the chain and DCout on the
        // sample also passes order induction on the sample.
        #[test]
        fn order_induction_from_chain(items in proptest::collection::vec(arb_sentence(2), 1..6), flips in proptest::collection::vec(any::<usize>(), 0..3)) {
            let items: Vec<Formula> = items.into_iter().filter(|f| evaluate(f, 3).unwrap().is_determined()).collect();
            prop_assume!(!items.is_empty());
            let chain: Vec<Formula> = (0..items.len())
                .map(|j| Formula::not(bigvee(&items[..=j].iter().cloned().map(Formula::not).collect::<Vec<_>>()).unwrap()))
                .collect();
            let s = SentenceSeq::new(items.clone()).unwrap();
            let mut v = TruthValuation::from_oracle(
                items.iter().cloned().chain(chain.iter().cloned()).chain([bigvee(&s).unwrap()]),
                &mut Evaluator::new(3),
            ).unwrap();
            for k in flips {
                let f = v.sentences().nth(k % v.len()).unwrap().clone();
                v.flip(&f);
            }
            // number sentences by their position in the valuation
            let index = |f: &Formula| v.sentences().position(|g| g == f).unwrap();
            let codes: BTreeSet<usize> = v.iter().filter(|(_, b)| *b).map(|(f, _)| index(f)).collect();
            let code_seq = |fs: &[Formula]| fs.iter().map(index).collect::<Vec<_>>();
            let passes_chain = check_seqind(&codes, &[code_seq(&chain)]).passed()
                && check_dc(&v, std::slice::from_ref(&s), DcDirection::Out).unwrap().passed();
            if passes_chain {
                prop_assert!(check_seqoind(&codes, &[code_seq(&items)]).passed());
            }
        }
    }
}

#[test]
fn comparison_chain_is_decidable() {
    let items: Vec<Formula> = (0..4).map(|j| leq(num_u64(j), num_u64(3))).collect();
    let s = SentenceSeq::new(items).unwrap();
    let r = check_outer_contract(BuilderKind::QuantifiedOuter, &mut Evaluator::new(4), &[s]).unwrap();
    assert!(r.passed());
}
