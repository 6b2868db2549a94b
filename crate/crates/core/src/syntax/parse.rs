//! Recursive-descent parser for the concrete grammar
//!
//! ```text
//! term    ::= 0 | S(term) | (term+term) | (term*term) | x<digits>
//! formula ::= term=term | !formula | (formula|formula) | (formula&formula)
//!           | E x<digits>.formula | A x<digits>.formula | (formula)
//! ```
//!
//! Whitespace between tokens is ignored. Bare lowercase letters (`x`, `y`,
//! `z`, ...) are accepted as named variables and mapped to the smallest
//! indices not used explicitly in the same input, in order of first
//! appearance.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;

use super::formula::Formula;
use super::term::{Term, Var};
use super::SyntaxError;

pub fn parse_formula(text: &str) -> Result<Formula, SyntaxError> {
    let mut p = Parser::new(text);
    let f = p.formula()?;
    p.skip_ws();
    if p.pos < p.src.len() {
        return Err(p.error("trailing input"));
    }
    Ok(f)
}

pub fn parse_term(text: &str) -> Result<Term, SyntaxError> {
    let mut p = Parser::new(text);
    let t = p.term()?;
    p.skip_ws();
    if p.pos < p.src.len() {
        return Err(p.error("trailing input"));
    }
    Ok(t)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    names: BTreeMap<u8, Var>,
    explicit: BTreeSet<u32>,
}

impl<'a> Parser<'a> {
    fn new(text: &'a str) -> Self {
        let src = text.as_bytes();
        let mut explicit = BTreeSet::new();
        let mut i = 0;
        while i < src.len() {
            if src[i] == b'x' && src.get(i + 1).is_some_and(u8::is_ascii_digit) {
                let start = i + 1;
                let mut end = start;
                while end < src.len() && src[end].is_ascii_digit() {
                    end += 1;
                }
                if let Ok(n) = core::str::from_utf8(&src[start..end]).unwrap_or("").parse() {
                    explicit.insert(n);
                }
                i = end;
            } else {
                i += 1;
            }
        }
        Parser { src, pos: 0, names: BTreeMap::new(), explicit }
    }

    fn error(&self, msg: &str) -> SyntaxError {
        SyntaxError::Parse { pos: self.pos, msg: String::from(msg) }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expect(&mut self, c: u8) -> Result<(), SyntaxError> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            let mut msg = String::from("expected '");
            msg.push(c as char);
            msg.push('\'');
            Err(self.error(&msg))
        }
    }

    fn var(&mut self) -> Result<Var, SyntaxError> {
        match self.peek() {
            Some(b'x') if self.src.get(self.pos + 1).is_some_and(u8::is_ascii_digit) => {
                self.pos += 1;
                let start = self.pos;
                while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
                let digits = core::str::from_utf8(&self.src[start..self.pos]).unwrap_or("");
                digits.parse().map(Var).map_err(|_| self.error("variable index out of range"))
            }
            Some(c) if c.is_ascii_lowercase() => {
                self.pos += 1;
                if let Some(v) = self.names.get(&c) {
                    return Ok(*v);
                }
                let taken: BTreeSet<u32> = self.names.values().map(|v| v.0).collect();
                let idx = (0..)
                    .find(|i| !self.explicit.contains(i) && !taken.contains(i))
                    .expect("unbounded index range");
                self.names.insert(c, Var(idx));
                Ok(Var(idx))
            }
            _ => Err(self.error("expected variable")),
        }
    }

    fn term(&mut self) -> Result<Term, SyntaxError> {
        match self.peek() {
            Some(b'0') => {
                self.pos += 1;
                Ok(Term::zero())
            }
            Some(b'S') => {
                self.pos += 1;
                self.expect(b'(')?;
                let t = self.term()?;
                self.expect(b')')?;
                Ok(Term::succ(t))
            }
            Some(b'(') => {
                self.pos += 1;
                let a = self.term()?;
                let op = self.peek();
                match op {
                    Some(b'+') | Some(b'*') => self.pos += 1,
                    _ => return Err(self.error("expected '+' or '*'")),
                }
                let b = self.term()?;
                self.expect(b')')?;
                Ok(if op == Some(b'+') { Term::add(a, b) } else { Term::mul(a, b) })
            }
            Some(c) if c.is_ascii_lowercase() => Ok(Term::var(self.var()?)),
            None => Err(self.error("unexpected end of input")),
            _ => Err(self.error("expected term")),
        }
    }

    /// Finds the operator at nesting level one inside the parenthesised group
    /// starting at `self.pos`. `+`/`*` mark a term group, `|`/`&` a formula group.
    fn group_operator(&self) -> Option<u8> {
        let mut depth = 0usize;
        for &c in &self.src[self.pos..] {
            match c {
                b'(' => depth += 1,
                b')' => {
                    depth = depth.checked_sub(1)?;
                    if depth == 0 {
                        return None;
                    }
                }
                b'+' | b'*' | b'|' | b'&' if depth == 1 => return Some(c),
                _ => {}
            }
        }
        None
    }

    fn formula(&mut self) -> Result<Formula, SyntaxError> {
        match self.peek() {
            Some(b'!') => {
                self.pos += 1;
                Ok(Formula::not(self.formula()?))
            }
            Some(q @ (b'E' | b'A')) => {
                self.pos += 1;
                let v = self.var()?;
                self.expect(b'.')?;
                let body = self.formula()?;
                Ok(if q == b'E' { Formula::exists(v, body) } else { Formula::forall(v, body) })
            }
            Some(b'(') if matches!(self.group_operator(), Some(b'|' | b'&')) => {
                self.pos += 1;
                let a = self.formula()?;
                let op = self.peek();
                match op {
                    Some(b'|') | Some(b'&') => self.pos += 1,
                    _ => return Err(self.error("expected '|' or '&'")),
                }
                let b = self.formula()?;
                self.expect(b')')?;
                Ok(if op == Some(b'|') { Formula::or(a, b) } else { Formula::and(a, b) })
            }
            // a parenthesised formula without a top-level connective,
            // such as `((x0+x1)=S(0))`
            Some(b'(') if self.group_operator().is_none() => {
                self.pos += 1;
                let f = self.formula()?;
                self.expect(b')')?;
                Ok(f)
            }
            None => Err(self.error("unexpected end of input")),
            _ => {
                let s = self.term()?;
                self.expect(b'=')?;
                let t = self.term()?;
                Ok(Formula::equals(s, t))
            }
        }
    }
}
