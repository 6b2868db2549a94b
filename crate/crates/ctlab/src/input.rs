//! Input files for `check`, `ev run` and `cutmodel run`.

use std::collections::BTreeSet;

use anyhow::{anyhow, bail, ensure, Context, Result};
use ctlab_core::disjunctions::{bigvee, BuilderKind, Disjoin};
use ctlab_core::ev::{bounded_truth_class, PartialSatClass, DEFAULT_MAX_VALUE};
use ctlab_core::principles::{
    check_ct_minus, check_dc, check_int, check_outer_contract, check_qfc, check_seqind, check_seqoind, DcDirection,
    PrincipleReport, QuantifierVariant, TruthValuation,
};
use ctlab_core::semantics::{Evaluator, TruthOracle};
use ctlab_core::{Assignment, Formula, SentenceSeq, Var};
use serde_json::Value;

use crate::ast::{formula_from_json, formulas_from_json};
use crate::report::SCHEMA_VERSION;

pub const PRINCIPLES: [&str; 9] = ["ctminus", "dc", "dcin", "dcout", "seqind", "seqoind", "int", "qfc", "outer"];

pub fn read_json(path: &str) -> Result<Value> {
    let text = std::fs::read_to_string(path).with_context(|| format!("cannot read {path}"))?;
    serde_json::from_str(&text).with_context(|| format!("{path} is not valid JSON"))
}

fn check_version(v: &Value) -> Result<()> {
    if let Some(n) = v.get("schema_version") {
        ensure!(n.as_u64() == Some(SCHEMA_VERSION.into()), "unsupported schema_version {n}");
    }
    Ok(())
}

fn array<'a>(v: &'a Value, key: &str) -> Result<Option<&'a [Value]>> {
    match v.get(key) {
        None | Some(Value::Null) => Ok(None),
        Some(Value::Array(a)) => Ok(Some(a)),
        Some(other) => bail!("\"{key}\" must be an array, got {other}"),
    }
}

fn sentence_seqs(v: &Value, key: &str) -> Result<Vec<SentenceSeq>> {
    let Some(items) = array(v, key)? else { return Ok(Vec::new()) };
    items
        .iter()
        .enumerate()
        .map(|(i, s)| {
            let fs = s.as_array().ok_or_else(|| anyhow!("{key}[{i}] must be an array of sentences"))?;
            let fs = formulas_from_json(fs).with_context(|| format!("in {key}[{i}]"))?;
            SentenceSeq::new(fs).with_context(|| format!("in {key}[{i}]"))
        })
        .collect()
}

fn number_seqs(v: &Value, key: &str) -> Result<Vec<Vec<u64>>> {
    let Some(items) = array(v, key)? else { return Ok(Vec::new()) };
    items
        .iter()
        .enumerate()
        .map(|(i, s)| {
            s.as_array()
                .and_then(|a| a.iter().map(Value::as_u64).collect::<Option<Vec<u64>>>())
                .ok_or_else(|| anyhow!("{key}[{i}] must be an array of natural numbers"))
        })
        .collect()
}

/// Explicit truth values, or the evaluator's values on the closure of the
/// given roots.
fn valuation(v: &Value, extra_roots: Vec<Formula>, variant: QuantifierVariant, budget: u64) -> Result<TruthValuation> {
    if let Some(entries) = array(v, "valuation")? {
        let mut out = TruthValuation::new();
        for (i, e) in entries.iter().enumerate() {
            let f = formula_from_json(e.get("sentence").ok_or_else(|| anyhow!("valuation[{i}] has no sentence"))?)?;
            ensure!(f.is_sentence(), "valuation[{i}] is not a sentence: {f}");
            let b = e.get("value").and_then(Value::as_bool).ok_or_else(|| anyhow!("valuation[{i}] has no boolean value"))?;
            out.insert(f, b);
        }
        return Ok(out);
    }
    let mut roots = match array(v, "roots")? {
        Some(r) => formulas_from_json(r)?,
        None => Vec::new(),
    };
    roots.extend(extra_roots);
    ensure!(!roots.is_empty(), "input needs \"valuation\" or \"roots\"");
    Ok(TruthValuation::evaluated(&roots, &variant.instance_terms(budget), budget)?)
}

fn oracle_for(v: &Value, variant: QuantifierVariant, budget: u64) -> Result<Box<dyn TruthOracle>> {
    if array(v, "valuation")?.is_some() {
        Ok(Box::new(valuation(v, Vec::new(), variant, budget)?))
    } else {
        Ok(Box::new(Evaluator::new(budget)))
    }
}

pub fn run_check(principle: &str, v: &Value, variant: QuantifierVariant, budget: u64) -> Result<PrincipleReport> {
    check_version(v)?;
    Ok(match principle {
        "ctminus" => check_ct_minus(&valuation(v, Vec::new(), variant, budget)?, variant, budget),
        "qfc" => check_qfc(&valuation(v, Vec::new(), variant, budget)?),
        "dc" | "dcin" | "dcout" => {
            let direction = match principle {
                "dcin" => DcDirection::In,
                "dcout" => DcDirection::Out,
                _ => DcDirection::Both,
            };
            let seqs = sentence_seqs(v, "sequences")?;
            let mut extra = Vec::new();
            for s in &seqs {
                extra.extend(s.iter().cloned());
                extra.push(bigvee(s)?);
            }
            check_dc(&valuation(v, extra, variant, budget)?, &seqs, direction)?
        }
        "seqind" | "seqoind" => {
            let set: BTreeSet<u64> = match array(v, "set")? {
                Some(a) => a
                    .iter()
                    .map(Value::as_u64)
                    .collect::<Option<_>>()
                    .ok_or_else(|| anyhow!("\"set\" must hold natural numbers"))?,
                None => bail!("input needs \"set\""),
            };
            let seqs = number_seqs(v, "sequences")?;
            if principle == "seqind" {
                check_seqind(&set, &seqs)
            } else {
                check_seqoind(&set, &seqs)
            }
        }
        "int" => {
            let phi = formula_from_json(v.get("formula").ok_or_else(|| anyhow!("input needs \"formula\""))?)?;
            check_int(oracle_for(v, variant, budget)?.as_mut(), &phi, budget)?
        }
        "outer" => {
            let kind = match v.get("builder").and_then(Value::as_str) {
                Some(name) => BuilderKind::from_name(name).ok_or_else(|| anyhow!("unknown builder \"{name}\""))?,
                None => BuilderKind::QuantifiedOuter,
            };
            let samples = sentence_seqs(v, "samples")?;
            check_outer_contract(kind, oracle_for(v, variant, budget)?.as_mut(), &samples)?
        }
        other => bail!("unknown principle \"{other}\"; expected one of {}", PRINCIPLES.join(", ")),
    })
}

fn assignment(v: &Value) -> Result<Assignment> {
    let Some(map) = v.as_object() else { bail!("assignment must be an object, got {v}") };
    let mut out = Assignment::new();
    for (k, n) in map {
        let idx: u32 = k
            .strip_prefix('x')
            .and_then(|d| d.parse().ok())
            .ok_or_else(|| anyhow!("assignment key {k:?} is not a variable like \"x0\""))?;
        let n = n.as_u64().ok_or_else(|| anyhow!("value of {k} must be a natural number"))?;
        out.insert(Var(idx), n);
    }
    Ok(out)
}

/// An ev scenario. A base with a domain and no `pairs` is filled with
/// bounded truth on the subformula closure of that domain. Without an
/// explicit environment, the subformula closure of the targets and base
/// formulas is used.
pub fn ev_scenario(v: &Value, long_cut: Option<usize>) -> Result<ctlab_core::ev::EvScenario> {
    check_version(v)?;
    let targets = formulas_from_json(array(v, "targets")?.unwrap_or(&[]))?;
    let max_value = v.get("max_value").and_then(Value::as_u64).unwrap_or(DEFAULT_MAX_VALUE);
    let mut base = PartialSatClass::new();
    if let Some(b) = v.get("base") {
        let domain: BTreeSet<Formula> = formulas_from_json(array(b, "domain")?.unwrap_or(&[]))?.into_iter().collect();
        match array(b, "pairs")? {
            None => {
                let closed = domain.iter().flat_map(Formula::subformulas).collect();
                base = bounded_truth_class(&closed, max_value);
            }
            Some(pairs) => {
                base.domain = domain;
                for (i, pair) in pairs.iter().enumerate() {
                    let f = formula_from_json(pair.get("formula").ok_or_else(|| anyhow!("base pair {i} has no formula"))?)?;
                    let a = match pair.get("assignment") {
                        Some(a) => assignment(a).with_context(|| format!("in base pair {i}"))?,
                        None => Assignment::new(),
                    };
                    base.insert(f, a);
                }
            }
        }
    }
    let environment: BTreeSet<Formula> = match array(v, "environment")? {
        Some(e) => formulas_from_json(e)?.into_iter().collect(),
        None => targets
            .iter()
            .chain(base.domain.iter())
            .chain(base.pairs.iter().map(|(f, _)| f))
            .flat_map(Formula::subformulas)
            .collect(),
    };
    let file_cut = v.get("long_cut").and_then(Value::as_u64).map(|n| n as usize);
    Ok(ctlab_core::ev::EvScenario {
        environment,
        base,
        targets,
        long_cut: long_cut.or(file_cut).unwrap_or(3),
        max_value,
    })
}

/// Sequences for a cut model: `{"sequences": [[...]]}` or a bare array.
pub fn cut_sequences(v: &Value) -> Result<Vec<Vec<u64>>> {
    if v.is_array() {
        let wrapped = serde_json::json!({ "sequences": v });
        return number_seqs(&wrapped, "sequences");
    }
    check_version(v)?;
    ensure!(v.get("sequences").is_some(), "input needs \"sequences\"");
    number_seqs(v, "sequences")
}

/// A sentence sequence given on the command line.
pub fn sentences(items: &[String]) -> Result<Vec<Formula>> {
    items
        .iter()
        .enumerate()
        .map(|(i, s)| {
            let f = ctlab_core::syntax::parse_formula(s).with_context(|| format!("item {i}: cannot parse {s:?}"))?;
            ensure!(f.is_sentence(), "item {i} is not a sentence: {f}");
            Ok(f)
        })
        .collect()
}

pub fn build(kind: BuilderKind, items: &[Formula]) -> Result<Formula> {
    Ok(kind.build(items)?)
}
