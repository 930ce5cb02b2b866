//! Compact prefix notation for terms, e.g. `•(inv(x), x)`.
//!
//! A bare identifier is a variable iff it is listed in `vars`; everything
//! else is a function symbol. Identifiers are maximal runs of characters
//! other than whitespace, parentheses and commas.

use thiserror::Error;

use super::{Equation, Rule, Term};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("notation error at byte {offset}: {reason}")]
pub struct NotationError {
    pub offset: usize,
    pub reason: String,
}

struct Cursor<'a> {
    src: &'a str,
    pos: usize,
    vars: &'a [&'a str],
}

impl<'a> Cursor<'a> {
    fn err<T>(&self, reason: impl Into<String>) -> Result<T, NotationError> {
        Err(NotationError { offset: self.pos, reason: reason.into() })
    }

    fn skip_ws(&mut self) {
        let rest = &self.src[self.pos..];
        self.pos += rest.len() - rest.trim_start().len();
    }

    fn peek(&self) -> Option<char> {
        self.src[self.pos..].chars().next()
    }

    fn ident(&mut self) -> Result<&'a str, NotationError> {
        self.skip_ws();
        let rest = &self.src[self.pos..];
        let len = rest
            .find(|c: char| c.is_whitespace() || matches!(c, '(' | ')' | ','))
            .unwrap_or(rest.len());
        if len == 0 {
            return self.err("expected an identifier");
        }
        self.pos += len;
        Ok(&rest[..len])
    }

    fn term(&mut self) -> Result<Term, NotationError> {
        let name = self.ident()?;
        self.skip_ws();
        if self.peek() != Some('(') {
            return Ok(if self.vars.contains(&name) { Term::var(name) } else { Term::constant(name) });
        }
        self.pos += 1;
        let mut args = Vec::new();
        self.skip_ws();
        if self.peek() == Some(')') {
            self.pos += 1;
            return Ok(Term::app(name, args));
        }
        loop {
            args.push(self.term()?);
            self.skip_ws();
            match self.peek() {
                Some(',') => self.pos += 1,
                Some(')') => {
                    self.pos += 1;
                    return Ok(Term::app(name, args));
                }
                _ => return self.err("expected ',' or ')'"),
            }
        }
    }
}

pub fn parse_term(src: &str, vars: &[&str]) -> Result<Term, NotationError> {
    let mut c = Cursor { src, pos: 0, vars };
    let t = c.term()?;
    c.skip_ws();
    if c.pos != src.len() {
        return c.err("trailing input");
    }
    Ok(t)
}

fn split_once<'a>(src: &'a str, sep: &str) -> Result<(&'a str, &'a str), NotationError> {
    src.split_once(sep)
        .ok_or_else(|| NotationError { offset: 0, reason: format!("missing '{sep}'") })
}

/// Parses `lhs -> rhs`. Invariants are not checked here.
pub fn parse_rule(src: &str, vars: &[&str]) -> Result<Rule, NotationError> {
    let (l, r) = split_once(src, "->")?;
    Ok(Rule::new(parse_term(l, vars)?, parse_term(r, vars)?))
}

/// One rule per non-empty line.
pub fn parse_rules(src: &str, vars: &[&str]) -> Result<Vec<Rule>, NotationError> {
    src.lines().filter(|l| !l.trim().is_empty()).map(|l| parse_rule(l, vars)).collect()
}

/// One `lhs = rhs` equation per non-empty line.
pub fn parse_equations(src: &str, vars: &[&str]) -> Result<Vec<Equation>, NotationError> {
    src.lines()
        .filter(|l| !l.trim().is_empty())
        .map(|l| {
            let (a, b) = split_once(l, "=")?;
            Ok(Equation::new(parse_term(a, vars)?, parse_term(b, vars)?))
        })
        .collect()
}
