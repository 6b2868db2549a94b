//! Gödel coding by recursive tagged Cantor pairing.
//!
//! `code(node) = pair(tag, payload)`. The tag fixes the arity, so the
//! payload is a fixed-length pair list: `0` for `Zero`, the child's code for
//! `S` and `¬`, `pair(a, b)` for binary nodes, `pair(v, body)` for
//! quantifiers and the bare index for a variable. Tags 0 to 5 are formula
//! constructors and 6 to 10 term constructors.

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};

use crate::syntax::{Formula, FormulaKind, Term, TermKind, Var};

pub use crate::syntax::{num, num_u64};

const EQ: u32 = 0;
const NOT: u32 = 1;
const OR: u32 = 2;
const AND: u32 = 3;
const EXISTS: u32 = 4;
const FORALL: u32 = 5;
const ZERO: u32 = 6;
const SUCC: u32 = 7;
const ADD: u32 = 8;
const MUL: u32 = 9;
const VAR: u32 = 10;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CodingError {
    #[error("{0} is not the code of a term or formula")]
    NotACode(BigUint),
}

/// A decoded syntax object.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Syntax {
    Term(Term),
    Formula(Formula),
}

impl From<Term> for Syntax {
    fn from(t: Term) -> Syntax {
        Syntax::Term(t)
    }
}

impl From<Formula> for Syntax {
    fn from(f: Formula) -> Syntax {
        Syntax::Formula(f)
    }
}

pub fn pair(x: &BigUint, y: &BigUint) -> BigUint {
    let s = x + y;
    let tri = (&s * (&s + 1u32)) >> 1;
    tri + y
}

/// Integer square root.
pub fn isqrt(n: &BigUint) -> BigUint {
    sqrt_rem(n).0
}

/// `(s, n - s^2)` with `s = floor(sqrt(n))`. Recurses on the top half of
/// the bits; the recursive remainder gives the Newton residual directly and
/// the quotient is taken on truncated operands, so each level costs one
/// unbalanced product and one square of a quarter-width number.
fn sqrt_rem(n: &BigUint) -> (BigUint, BigUint) {
    let bits = n.bits();
    if bits <= 128 {
        let s = n.sqrt();
        let rem = n - &s * &s;
        return (s, rem);
    }
    let k = bits / 4;
    let (r0, rem0) = sqrt_rem(&(n >> (2 * k)));
    let low = n - ((n >> (2 * k)) << (2 * k));
    let r: BigUint = r0 << k;
    // n - r^2
    let delta: BigUint = (rem0 << (2 * k)) + low;
    let two_r: BigUint = &r << 1;
    let keep = delta.bits().saturating_sub(two_r.bits()) + 64;
    let drop = two_r.bits().saturating_sub(keep);
    let q = (&delta >> drop) / (&two_r >> drop);
    // (r + q)^2 - r^2
    let mut used = &two_r * &q + &q * &q;
    let mut x = r + q;
    while used > delta {
        used -= (&x << 1) - 1u32;
        x -= 1u32;
    }
    let mut rem = delta - used;
    loop {
        let step: BigUint = (&x << 1) + 1u32;
        if rem < step {
            return (x, rem);
        }
        rem -= step;
        x += 1u32;
    }
}

pub fn unpair(z: &BigUint) -> (BigUint, BigUint) {
    // s = floor(sqrt(8z + 1)), w = floor((s - 1) / 2); the remainder of the
    // root gives z - w(w+1)/2 without another product.
    let disc: BigUint = (z << 3) + 1u32;
    let (s, rem) = sqrt_rem(&disc);
    let w: BigUint = (&s - 1u32) >> 1;
    let y: BigUint = if s.bit(0) { rem >> 3 } else { (rem + (&w << 2) + 3u32) >> 3 };
    let x = &w - &y;
    (x, y)
}

fn node(tag: u32, payload: &BigUint) -> BigUint {
    pair(&BigUint::from(tag), payload)
}

fn node2(tag: u32, a: &BigUint, b: &BigUint) -> BigUint {
    node(tag, &pair(a, b))
}

pub fn encode_term(t: &Term) -> BigUint {
    match t.kind() {
        TermKind::Zero => node(ZERO, &BigUint::zero()),
        TermKind::Succ(a) => node(SUCC, &encode_term(a)),
        TermKind::Add(a, b) => node2(ADD, &encode_term(a), &encode_term(b)),
        TermKind::Mul(a, b) => node2(MUL, &encode_term(a), &encode_term(b)),
        TermKind::Var(v) => node(VAR, &BigUint::from(v.0)),
    }
}

pub fn encode_formula(f: &Formula) -> BigUint {
    match f.kind() {
        FormulaKind::Eq(s, t) => node2(EQ, &encode_term(s), &encode_term(t)),
        FormulaKind::Not(a) => node(NOT, &encode_formula(a)),
        FormulaKind::Or(a, b) => node2(OR, &encode_formula(a), &encode_formula(b)),
        FormulaKind::And(a, b) => node2(AND, &encode_formula(a), &encode_formula(b)),
        FormulaKind::Exists(v, a) => node2(EXISTS, &BigUint::from(v.0), &encode_formula(a)),
        FormulaKind::Forall(v, a) => node2(FORALL, &BigUint::from(v.0), &encode_formula(a)),
    }
}

pub fn encode(x: &Syntax) -> BigUint {
    match x {
        Syntax::Term(t) => encode_term(t),
        Syntax::Formula(f) => encode_formula(f),
    }
}

fn split(c: &BigUint) -> Option<(u32, BigUint)> {
    let (tag, payload) = unpair(c);
    Some((tag.to_u32().filter(|t| *t <= VAR)?, payload))
}

fn term_of(c: &BigUint) -> Option<Term> {
    let (tag, payload) = split(c)?;
    Some(match tag {
        ZERO if payload.is_zero() => Term::zero(),
        SUCC => Term::succ(term_of(&payload)?),
        ADD | MUL => {
            let (a, b) = unpair(&payload);
            let (a, b) = (term_of(&a)?, term_of(&b)?);
            if tag == ADD {
                Term::add(a, b)
            } else {
                Term::mul(a, b)
            }
        }
        VAR => Term::var(Var(payload.to_u32()?)),
        _ => return None,
    })
}

fn formula_of(c: &BigUint) -> Option<Formula> {
    let (tag, payload) = split(c)?;
    Some(match tag {
        EQ => {
            let (s, t) = unpair(&payload);
            Formula::equals(term_of(&s)?, term_of(&t)?)
        }
        NOT => Formula::not(formula_of(&payload)?),
        OR | AND => {
            let (a, b) = unpair(&payload);
            let (a, b) = (formula_of(&a)?, formula_of(&b)?);
            if tag == OR {
                Formula::or(a, b)
            } else {
                Formula::and(a, b)
            }
        }
        EXISTS | FORALL => {
            let (v, a) = unpair(&payload);
            let (v, a) = (Var(v.to_u32()?), formula_of(&a)?);
            if tag == EXISTS {
                Formula::exists(v, a)
            } else {
                Formula::forall(v, a)
            }
        }
        _ => return None,
    })
}

pub fn decode(c: &BigUint) -> Result<Syntax, CodingError> {
    let not_a_code = || CodingError::NotACode(c.clone());
    let (tag, _) = split(c).ok_or_else(not_a_code)?;
    if tag >= ZERO {
        term_of(c).map(Syntax::Term).ok_or_else(not_a_code)
    } else {
        formula_of(c).map(Syntax::Formula).ok_or_else(not_a_code)
    }
}

pub fn decode_formula(c: &BigUint) -> Result<Formula, CodingError> {
    formula_of(c).ok_or_else(|| CodingError::NotACode(c.clone()))
}

pub fn decode_term(c: &BigUint) -> Result<Term, CodingError> {
    term_of(c).ok_or_else(|| CodingError::NotACode(c.clone()))
}

/// Bit length of `encode_formula(f)`, for callers that only need a size.
pub fn code_bits(f: &Formula) -> u64 {
    encode_formula(f).bits()
}
