//! JSON form of terms and formulas: `{"op": ..., "args": [...]}`, with
//! variables written `{"op": "var", "args": [index]}`. Wherever a formula is
//! expected, the concrete string syntax is accepted too.

use anyhow::{anyhow, bail, Context, Result};
use ctlab_core::syntax::{parse_formula, parse_term};
use ctlab_core::{Formula, FormulaKind, Term, TermKind, Var};
use serde_json::{json, Value};

pub fn term_to_json(t: &Term) -> Value {
    match t.kind() {
        TermKind::Zero => json!({"op": "zero"}),
        TermKind::Succ(a) => json!({"op": "succ", "args": [term_to_json(a)]}),
        TermKind::Add(a, b) => json!({"op": "add", "args": [term_to_json(a), term_to_json(b)]}),
        TermKind::Mul(a, b) => json!({"op": "mul", "args": [term_to_json(a), term_to_json(b)]}),
        TermKind::Var(v) => json!({"op": "var", "args": [v.0]}),
    }
}

pub fn formula_to_json(f: &Formula) -> Value {
    match f.kind() {
        FormulaKind::Eq(s, t) => json!({"op": "eq", "args": [term_to_json(s), term_to_json(t)]}),
        FormulaKind::Not(a) => json!({"op": "not", "args": [formula_to_json(a)]}),
        FormulaKind::Or(a, b) => json!({"op": "or", "args": [formula_to_json(a), formula_to_json(b)]}),
        FormulaKind::And(a, b) => json!({"op": "and", "args": [formula_to_json(a), formula_to_json(b)]}),
        FormulaKind::Exists(v, a) => json!({"op": "exists", "args": [v.0, formula_to_json(a)]}),
        FormulaKind::Forall(v, a) => json!({"op": "forall", "args": [v.0, formula_to_json(a)]}),
    }
}

fn op_args(v: &Value) -> Result<(&str, &[Value])> {
    let op = v.get("op").and_then(Value::as_str).ok_or_else(|| anyhow!("missing \"op\" in {v}"))?;
    let args = v.get("args").and_then(Value::as_array).map_or(&[][..], Vec::as_slice);
    Ok((op, args))
}

fn arity<'a>(op: &str, args: &'a [Value], n: usize) -> Result<&'a [Value]> {
    if args.len() != n {
        bail!("\"{op}\" takes {n} arguments, got {}", args.len());
    }
    Ok(args)
}

fn var_index(v: &Value) -> Result<Var> {
    let n = v.as_u64().ok_or_else(|| anyhow!("variable index must be a natural number, got {v}"))?;
    Ok(Var(u32::try_from(n).context("variable index too large")?))
}

pub fn term_from_json(v: &Value) -> Result<Term> {
    if let Some(s) = v.as_str() {
        return Ok(parse_term(s)?);
    }
    let (op, args) = op_args(v)?;
    Ok(match op {
        "zero" => {
            arity(op, args, 0)?;
            Term::zero()
        }
        "succ" => Term::succ(term_from_json(&arity(op, args, 1)?[0])?),
        "add" => {
            let a = arity(op, args, 2)?;
            Term::add(term_from_json(&a[0])?, term_from_json(&a[1])?)
        }
        "mul" => {
            let a = arity(op, args, 2)?;
            Term::mul(term_from_json(&a[0])?, term_from_json(&a[1])?)
        }
        "var" => Term::var(var_index(&arity(op, args, 1)?[0])?),
        _ => bail!("unknown term op \"{op}\""),
    })
}

pub fn formula_from_json(v: &Value) -> Result<Formula> {
    if let Some(s) = v.as_str() {
        return parse_formula(s).with_context(|| format!("cannot parse {s:?}"));
    }
    let (op, args) = op_args(v)?;
    Ok(match op {
        "eq" => {
            let a = arity(op, args, 2)?;
            Formula::equals(term_from_json(&a[0])?, term_from_json(&a[1])?)
        }
        "not" => Formula::not(formula_from_json(&arity(op, args, 1)?[0])?),
        "or" | "and" => {
            let a = arity(op, args, 2)?;
            let (l, r) = (formula_from_json(&a[0])?, formula_from_json(&a[1])?);
            if op == "or" {
                Formula::or(l, r)
            } else {
                Formula::and(l, r)
            }
        }
        "exists" | "forall" => {
            let a = arity(op, args, 2)?;
            let (x, body) = (var_index(&a[0])?, formula_from_json(&a[1])?);
            if op == "exists" {
                Formula::exists(x, body)
            } else {
                Formula::forall(x, body)
            }
        }
        _ => bail!("unknown formula op \"{op}\""),
    })
}

pub fn formulas_from_json(vs: &[Value]) -> Result<Vec<Formula>> {
    vs.iter().map(formula_from_json).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roundtrip_through_json() {
        let f = parse_formula("A x1.(E x0.(x0+S(x1))=(x2*0)|!0=S(0))").unwrap();
        assert_eq!(formula_from_json(&formula_to_json(&f)).unwrap(), f);
        assert_eq!(formula_from_json(&json!("0=0")).unwrap(), parse_formula("0=0").unwrap());
        assert!(formula_from_json(&json!({"op": "not", "args": []})).is_err());
        assert!(formula_from_json(&json!({"op": "nand"})).is_err());
    }
}
