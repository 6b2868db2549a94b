use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigUint;

use super::*;
use crate::disjunctions::bigvee;
use crate::syntax::{num_u64, parse_formula, parse_term, Assignment, FormulaKind, Term, Var};

fn p(s: &str) -> Formula {
    parse_formula(s).unwrap()
}

fn t(s: &str) -> Term {
    parse_term(s).unwrap()
}

fn at(pairs: &[(u32, u64)]) -> Assignment {
    pairs.iter().map(|&(v, n)| (Var(v), BigUint::from(n))).collect()
}

fn set(fs: &[&str]) -> BTreeSet<Formula> {
    fs.iter().map(|s| p(s)).collect()
}

fn closed_env(roots: &[Formula]) -> BTreeSet<Formula> {
    roots.iter().flat_map(|r| r.subformulas()).collect()
}

fn atom(k: u64) -> Formula {
    Formula::equals(Term::var(Var(0)), num_u64(k))
}

#[test]
fn template_examples() {
    // x = x0, y = x1, z = x2
    let t1 = template(&p("E x0.(S(S(x0))+S(x1))=((x2*(x1+S(0)))*x0)"));
    assert_eq!(t1.template, p("E x0.(S(S(x0))+x1)=(x2*x0)"));
    assert_eq!(t1.slots, vec![t("S(x1)"), t("(x2*(x1+S(0)))")]);

    let t2 = template(&p("E x0.(x0+x1)=S(S(0))"));
    assert_eq!(t2.template, p("E x0.(x0+x1)=x2"));
    assert_eq!(t2.slots, vec![t("x1"), t("S(S(0))")]);

    let t3 = template(&p("0=0"));
    assert_eq!(t3.template, p("x0=x1"));
    assert_eq!(t3.slots, vec![Term::zero(), Term::zero()]);
}

#[test]
fn template_renames_binders_and_reconstructs() {
    let f = p("A x7.E x3.(x3+x5)=x7");
    let tf = template(&f);
    assert_eq!(tf.template, p("A x0.E x1.(x1+x2)=x0"));
    assert_eq!(tf.binders, vec![Var(7), Var(3)]);
    assert_eq!(tf.reconstruct(), f);
}

#[test]
fn ext_equiv_example() {
    let phi = p("E x0.(x0+x1)=S(S(0))");
    let psi = p("E x0.(x0+(x1*x2))=(x3+S(0))");
    let w = ext_equiv((&phi, &at(&[(1, 2)])), (&psi, &at(&[(1, 2), (2, 1), (3, 1)]))).unwrap().unwrap();
    assert_eq!(w.template, p("E x0.(x0+x1)=x2"));
    assert_eq!(w.left, vec![t("S(S(0))"), t("S(S(0))")]);
    assert_eq!(w.right, vec![t("(S(S(0))*S(0))"), t("(S(0)+S(0))")]);
    assert_eq!(w.values, vec![BigUint::from(2u8), BigUint::from(2u8)]);

    assert!(ext_equiv((&phi, &at(&[(1, 2)])), (&psi, &at(&[(1, 2), (2, 1), (3, 0)]))).unwrap().is_none());
    assert!(ext_equiv((&phi, &at(&[(1, 2)])), (&phi, &at(&[(1, 2)]))).unwrap().is_some());
    assert!(ext_equiv((&p("0=0"), &at(&[])), (&p("!0=0"), &at(&[]))).unwrap().is_none());
}

#[test]
fn class_graph_examples() {
    let g = class_graph(&set(&["0=0"])).unwrap();
    assert_eq!(g.classes.len(), 1);
    assert_eq!(g.ranks, vec![0]);

    let g = class_graph(&set(&["0=0", "!0=0"])).unwrap();
    let (a, na) = (g.class_of(&p("0=0")).unwrap(), g.class_of(&p("!0=0")).unwrap());
    assert!(g.edges.contains(&(a, na)));
    assert_eq!((g.ranks[a], g.ranks[na]), (0, 1));

    let g = class_graph(&set(&["0=0", "S(0)=S(0)", "!0=0", "!S(0)=S(0)"])).unwrap();
    assert_eq!(g.classes.len(), 2);
    assert_eq!(g.class_of(&p("!0=0")), g.class_of(&p("!S(0)=S(0)")));
    assert_eq!(g.max_rank(), 1);
}

#[test]
fn completion_examples() {
    let empty = complete_presat(&PartialSatClass::new(), &BTreeSet::new(), 2).unwrap();
    assert_eq!(empty, PartialSatClass::new());

    let mut s = PartialSatClass { pairs: BTreeSet::new(), domain: set(&["0=0"]) };
    s.insert(p("0=0"), Assignment::new());
    assert_eq!(complete_presat(&s, &BTreeSet::new(), 2).unwrap(), s);

    let s = PartialSatClass { pairs: BTreeSet::new(), domain: set(&["0=S(0)"]) };
    let c = complete_presat(&s, &BTreeSet::new(), 2).unwrap();
    assert_eq!(c.pairs, [(p("!0=S(0)"), Assignment::new())].into_iter().collect());
    assert!(validate_sat_class(&c, 2, None).passed());
}

#[test]
fn completion_enlarges_domain_to_maximal() {
    // `!0=S(0)` is compositional once its argument is in the domain
    let mut s = PartialSatClass { pairs: BTreeSet::new(), domain: set(&["0=S(0)", "!0=S(0)"]) };
    s.insert(p("!0=S(0)"), Assignment::new());
    let c = complete_presat(&s, &set(&["!!0=S(0)", "(0=0|0=S(0))"]), 2).unwrap();
    assert!(c.domain.contains(&p("!!0=S(0)")));
    assert!(!c.domain.contains(&p("(0=0|0=S(0))")));
    // `0=0` has no pair, so it fails its clause
    assert!(!c.domain.contains(&p("0=0")));
    assert!(!c.holds(&p("!!0=S(0)"), &Assignment::new()));
    assert!(c.holds(&p("!!!0=S(0)"), &Assignment::new()));
    assert!(validate_sat_class(&c, 2, None).passed());
}

#[test]
fn completion_rejects_non_presat() {
    let mut s = PartialSatClass { pairs: BTreeSet::new(), domain: set(&["0=0"]) };
    s.insert(p("S(0)=S(0)"), Assignment::new());
    s.insert(p("0=0"), Assignment::new());
    let e = complete_presat(&s, &BTreeSet::new(), 2).unwrap_err();
    assert_eq!(e, EvError::NotPresat { clause: "pair outside the domain", formula: p("S(0)=S(0)") });

    let s = PartialSatClass { pairs: BTreeSet::new(), domain: set(&["0=0"]) };
    assert!(matches!(
        complete_presat(&s, &BTreeSet::new(), 2),
        Err(EvError::NotPresat { clause: "compositional clause fails on the domain", .. })
    ));

    let s = PartialSatClass { pairs: BTreeSet::new(), domain: set(&["!0=S(0)"]) };
    assert!(matches!(complete_presat(&s, &BTreeSet::new(), 2), Err(EvError::NotPresat { .. })));
}

#[test]
fn validation_catches_injected_faults() {
    let d = closed_env(&[p("(x0=0|x0=S(0))")]);
    let good = bounded_truth_class(&d, 2);
    assert!(validate_sat_class(&good, 2, Some(&d)).passed());

    let mut bad = good.clone();
    bad.insert(p("(x0=0|x0=S(0))"), at(&[(0, 2)]));
    assert!(validate_sat_class(&bad, 2, None).families().contains("comp"));

    let mut bad = good.clone();
    bad.domain.remove(&p("x0=S(0)"));
    assert!(validate_sat_class(&bad, 2, None).families().contains("closure"));

    let mut bad = good.clone();
    bad.insert(p("x0=0"), at(&[(0, 0), (1, 1)]));
    assert!(validate_sat_class(&bad, 2, None).families().contains("assignment"));

    let mut bad = good.clone();
    bad.insert(p("0=0"), Assignment::new());
    assert!(validate_sat_class(&bad, 2, None).families().contains("off-domain"));

    let mut bad = good.clone();
    bad.pairs.retain(|(f, a)| !(*f == p("!x0=0") && *a == at(&[(0, 2)])));
    assert!(validate_sat_class(&bad, 2, None).families().contains("decided"));

    let mut env = d.clone();
    env.insert(p("x1=0"));
    assert!(validate_sat_class(&good, 2, Some(&env)).families().contains("regularity"));
}

#[test]
fn internal_induction_examples() {
    let phi = p("x0=x0");
    let member = |xs: &[u64]| {
        let mut s = PartialSatClass::new();
        for &x in xs {
            s.insert(phi.clone(), at(&[(0, x)]));
        }
        s
    };
    let r = check_internal_induction(&member(&[0, 1, 2, 3, 4, 5]), &phi, 5).unwrap();
    assert!(r.passed() && r.vacuous == 0);

    // a hole at 3 with 2 also missing: the step from 1 fails first
    let r = check_internal_induction(&member(&[0, 1, 4, 5]), &phi, 5).unwrap();
    assert!(r.passed());
    assert_eq!((r.vacuous, r.notes.clone()), (1, vec![alloc::string::String::from("step 1 -> 2 fails")]));

    let r = check_internal_induction(&member(&[1, 2]), &phi, 5).unwrap();
    assert_eq!(r.notes, vec![alloc::string::String::from("base case fails")]);

    assert_eq!(
        check_internal_induction(&member(&[]), &p("x0=x1"), 5).unwrap_err(),
        EvError::TooManyFreeVars { count: 2 }
    );
    let closed = check_internal_induction(&member(&[]), &p("0=0"), 5).unwrap();
    assert!(closed.passed() && closed.instances == 0);
}

#[test]
fn construct_forces_equations() {
    let sc = EvScenario {
        environment: set(&["0=0", "!0=0"]),
        base: PartialSatClass::new(),
        targets: vec![p("!0=0")],
        long_cut: 4,
        max_value: 2,
    };
    let (result, report) = ev_construct(&sc).unwrap();
    assert!(report.passed(), "{report:?}");
    assert!(result.holds(&p("0=0"), &Assignment::new()));
    assert!(!result.holds(&p("!0=0"), &Assignment::new()));
    assert_eq!(report.stages, 1);
}

#[test]
fn construct_long_disjunction_in_base() {
    let long = bigvee(&(0..8).map(atom).collect::<Vec<_>>()).unwrap();
    let domain = closed_env(core::slice::from_ref(&long));
    let base = bounded_truth_class(&domain, 2);
    let mut env = domain.clone();
    env.extend(domain.iter().map(|f| Formula::not(f.clone())));
    let sc = EvScenario { environment: env, base, targets: vec![long.clone()], long_cut: 4, max_value: 2 };
    let (result, report) = ev_construct(&sc).unwrap();
    assert!(report.passed(), "{report:?}");
    for name in ["preservation", "disjunction", "compositionality", "satclass"] {
        assert!(report.audit(name).unwrap().instances > 0, "{name}");
    }
    assert!(report.audit("eldiag").unwrap().notes.len() == 1);
    for x in 0..=2 {
        assert!(result.holds(&long, &at(&[(0, x)])));
    }
}

#[test]
fn construct_long_disjunction_with_false_disjuncts() {
    // every disjunct is false in the universe, yet the long disjunction is
    // satisfied and still compositional, through its long left part
    let long = bigvee(&(5..13).map(atom).collect::<Vec<_>>()).unwrap();
    let atoms: BTreeSet<Formula> = (5..13).map(atom).collect();
    let base = bounded_truth_class(&atoms, 2);
    let mut env = closed_env(core::slice::from_ref(&long));
    env.extend(atoms.iter().map(|f| Formula::not(f.clone())));
    let sc = EvScenario { environment: env, base, targets: vec![long.clone()], long_cut: 4, max_value: 2 };
    let (result, report) = ev_construct(&sc).unwrap();
    assert!(report.passed(), "{report:?}");
    assert_eq!(report.audit("disjunction").unwrap().instances, 3);
    assert!(!result.domain.contains(&long));
    assert!(!bounded_truth(&long, &at(&[(0, 0)]), 2));
}

#[test]
fn construct_rejects_bad_scenarios() {
    let d = set(&["x0=0"]);
    let mut env = set(&["x0=0", "!x0=0", "x1=0"]);
    let irregular =
        EvScenario { environment: env.clone(), base: bounded_truth_class(&d, 2), targets: vec![], long_cut: 4, max_value: 2 };
    let e = ev_construct(&irregular).unwrap_err();
    assert!(matches!(&e, EvError::Scenario(m) if m.contains("regularity")), "{e:?}");

    env.remove(&p("x1=0"));
    let outside = EvScenario {
        environment: env.clone(),
        base: PartialSatClass::new(),
        targets: vec![p("0=0")],
        long_cut: 4,
        max_value: 2,
    };
    assert!(matches!(ev_construct(&outside), Err(EvError::Scenario(_))));

    let long = bigvee(&(0..4).map(atom).collect::<Vec<_>>()).unwrap();
    let sc = EvScenario {
        environment: closed_env(core::slice::from_ref(&long)),
        base: PartialSatClass::new(),
        targets: vec![long],
        long_cut: 4,
        max_value: 2,
    };
    assert!(matches!(ev_construct(&sc), Err(EvError::Scenario(m)) if m.contains("short left")));
}

fn splitmix(mut state: u64) -> impl FnMut() -> u64 {
    move || {
        state = state.wrapping_add(0x9e37_79b9_7f4a_7c15);
        let mut z = state;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
        z ^ (z >> 31)
    }
}

/// Pairwise regularity through the witness-producing relation, independent
/// of the grouping the audits use.
fn pairwise_regular(s: &PartialSatClass, env: &BTreeSet<Formula>, max: u64) -> bool {
    let all: Vec<(Formula, Assignment)> =
        env.iter().flat_map(|f| asn(f, max).into_iter().map(move |a| (f.clone(), a))).collect();
    all.iter().enumerate().all(|(i, (f, a))| {
        all[i + 1..].iter().all(|(g, b)| {
            ext_equiv((f, a), (g, b)).unwrap().is_none() || s.holds(f, a) == s.holds(g, b)
        })
    })
}

#[test]
fn generated_scenarios_fit_the_limits() {
    for seed in 0..20 {
        let sc = random_scenario(&mut splitmix(seed), 3 + (seed as usize % 6), 2);
        assert!(sc.environment.len() <= MAX_ENVIRONMENT);
        assert!(class_graph(&sc.environment).unwrap().classes.len() <= MAX_CLASSES);
        check_scenario(&sc).unwrap();
    }
}

mod props {
    use super::*;
    use crate::syntax::instantiate;
    use crate::testgen::arb_formula;
    use proptest::prelude::*;

    proptest! {
        #[test]
        fn template_is_idempotent(f in arb_formula(4)) {
            let once = template(&f).template;
            prop_assert_eq!(template(&once).template, once.clone());
            prop_assert_eq!(template(&f).reconstruct(), f);
        }

        #[test]
        fn equivalence_implies_similarity(f in arb_formula(3), seed in any::<u64>()) {
            let mut next = splitmix(seed);
            let alpha: Assignment = f.free_vars().iter().map(|v| (*v, BigUint::from(next() % 4))).collect();
            let g = instantiate(&f, &alpha).unwrap();
            prop_assert_eq!(template(&g).template, template(&f).template);
            prop_assert!(ext_equiv((&f, &alpha), (&g, &Assignment::new())).unwrap().is_some());
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(100))]

        #[test]
        fn construction_passes_every_audit(seed in any::<u64>(), long_cut in 3usize..=8) {
            let sc = random_scenario(&mut splitmix(seed), long_cut, 2);
            let (result, report) = ev_construct(&sc).unwrap();
            prop_assert!(report.passed(), "{:?}", report);
            prop_assert!(report.stages <= report.classes);
            prop_assert_eq!(ev_construct(&sc).unwrap(), (result.clone(), report.clone()));

            let rel = &report.relation;
            prop_assert!(validate_sat_class(&result, 2, None).passed());
            prop_assert!(sc.base.pairs.is_subset(&rel.pairs));
            prop_assert!(sc.base.pairs.is_subset(&result.pairs));
            prop_assert!(pairwise_regular(rel, &sc.environment, 2));
            for t in &sc.targets {
                for a in asn(t, 2) {
                    prop_assert_eq!(rel.holds(t, &a), naive_clause(rel, t, &a), "{} at {:?}", t, a);
                    if is_long(t, long_cut) {
                        prop_assert!(rel.holds(t, &a));
                    }
                }
            }
        }
    }
}

/// The compositional clause written out by hand, with quantifiers over
/// `0..=2`.
fn naive_clause(s: &PartialSatClass, f: &Formula, a: &Assignment) -> bool {
    let sat = |g: &Formula, b: &Assignment| {
        let r: Assignment = b.iter().filter(|(v, _)| g.free_vars().contains(v)).map(|(v, n)| (v, n.clone())).collect();
        s.holds(g, &r)
    };
    match f.kind() {
        FormulaKind::Eq(..) => bounded_truth(f, a, 0),
        FormulaKind::Not(g) => !sat(g, a),
        FormulaKind::Or(g, h) => sat(g, a) || sat(h, a),
        FormulaKind::And(g, h) => sat(g, a) && sat(h, a),
        FormulaKind::Exists(v, g) => (0..=2u64).any(|x| sat(g, &a.with(*v, x))),
        FormulaKind::Forall(v, g) => (0..=2u64).all(|x| sat(g, &a.with(*v, x))),
    }
}
