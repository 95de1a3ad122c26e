//! Rational sequences written as formulas in the index `n`.
//!
//! ```text
//! spec  := 'sum' '(' iexpr ',' IDENT '=' INT '..' 'n' ')' | iexpr
//! iexpr := term (('+' | '-') term)*
//! term  := unary (('*' | '/') unary)*
//! unary := '-' unary | power
//! power := atom ('^' unary)?
//! atom  := number | variable | '(' iexpr ')'
//! ```
//!
//! Examples: `1/2^n`, `1/3^n`, `5^-n`, `sum(1/2^k, k=1..n)`. Exponents must
//! be integer-valued (no division, no decimals). A zero denominator makes
//! that term `0`, so `1/n` is usable from index 0.

use std::sync::Arc;

use creal::{Rat, RatSeq};

use crate::error::{CliError, ParseError};
use crate::lex::{tokenize, Cursor, Tok};

#[derive(Debug, Clone, PartialEq)]
enum Term {
    Num(Rat),
    Var,
    Neg(Box<Term>),
    Add(Box<Term>, Box<Term>),
    Sub(Box<Term>, Box<Term>),
    Mul(Box<Term>, Box<Term>),
    Div(Box<Term>, Box<Term>),
    Pow(Box<Term>, Box<Exponent>),
}

/// Integer-valued exponent expression.
#[derive(Debug, Clone, PartialEq)]
enum Exponent {
    Int(i64),
    Var,
    Neg(Box<Exponent>),
    Add(Box<Exponent>, Box<Exponent>),
    Sub(Box<Exponent>, Box<Exponent>),
    Mul(Box<Exponent>, Box<Exponent>),
}

impl Term {
    fn eval(&self, v: i64) -> Rat {
        match self {
            Term::Num(q) => q.clone(),
            Term::Var => Rat::from_integer(v),
            Term::Neg(a) => a.eval(v).negate(),
            Term::Add(a, b) => a.eval(v).add(&b.eval(v)),
            Term::Sub(a, b) => a.eval(v).sub(&b.eval(v)),
            Term::Mul(a, b) => a.eval(v).mul(&b.eval(v)),
            Term::Div(a, b) => a.eval(v).checked_div(&b.eval(v)).unwrap_or_else(|_| Rat::zero()),
            Term::Pow(a, e) => a.eval(v).pow(e.eval(v)).unwrap_or_else(|_| Rat::zero()),
        }
    }

    /// Restates the term as an exponent, if it is integer-valued by shape.
    fn into_exponent(self, offset: usize) -> Result<Exponent, ParseError> {
        let bad =
            || ParseError::new(offset, "exponent must be an integer expression in the index", &["integer", "variable"]);
        let sub = |t: Box<Term>| t.into_exponent(offset).map(Box::new);
        Ok(match self {
            Term::Num(q) => {
                if q.denominator() != &creal::Int::one() {
                    return Err(bad());
                }
                Exponent::Int(q.to_decimal_string(0).parse().map_err(|_| bad())?)
            }
            Term::Var => Exponent::Var,
            Term::Neg(a) => Exponent::Neg(sub(a)?),
            Term::Add(a, b) => Exponent::Add(sub(a)?, sub(b)?),
            Term::Sub(a, b) => Exponent::Sub(sub(a)?, sub(b)?),
            Term::Mul(a, b) => Exponent::Mul(sub(a)?, sub(b)?),
            Term::Div(..) | Term::Pow(..) => return Err(bad()),
        })
    }
}

impl Exponent {
    fn eval(&self, v: i64) -> i64 {
        match self {
            Exponent::Int(k) => *k,
            Exponent::Var => v,
            Exponent::Neg(a) => a.eval(v).saturating_neg(),
            Exponent::Add(a, b) => a.eval(v).saturating_add(b.eval(v)),
            Exponent::Sub(a, b) => a.eval(v).saturating_sub(b.eval(v)),
            Exponent::Mul(a, b) => a.eval(v).saturating_mul(b.eval(v)),
        }
    }
}

struct Parser {
    cur: Cursor,
    /// The index variable; `None` until a sum term first mentions one.
    var: Option<String>,
}

impl Parser {
    fn iexpr(&mut self) -> Result<Term, ParseError> {
        let mut lhs = self.term()?;
        loop {
            if self.cur.eat('+') {
                lhs = Term::Add(Box::new(lhs), Box::new(self.term()?));
            } else if self.cur.eat('-') {
                lhs = Term::Sub(Box::new(lhs), Box::new(self.term()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn term(&mut self) -> Result<Term, ParseError> {
        let mut lhs = self.unary()?;
        loop {
            if self.cur.eat('*') {
                lhs = Term::Mul(Box::new(lhs), Box::new(self.unary()?));
            } else if self.cur.eat('/') {
                lhs = Term::Div(Box::new(lhs), Box::new(self.unary()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn unary(&mut self) -> Result<Term, ParseError> {
        if self.cur.eat('-') {
            return Ok(Term::Neg(Box::new(self.unary()?)));
        }
        let base = self.atom()?;
        if self.cur.eat('^') {
            let offset = self.cur.peek().offset;
            let exp = self.unary()?.into_exponent(offset)?;
            return Ok(Term::Pow(Box::new(base), Box::new(exp)));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Term, ParseError> {
        let t = self.cur.peek().clone();
        match t.tok {
            Tok::Num(q) => {
                self.cur.bump();
                Ok(Term::Num(q))
            }
            Tok::Ident(name) => match &self.var {
                Some(v) if *v != name => {
                    Err(ParseError::new(t.offset, format!("unknown variable '{name}'"), &[&format!("'{v}'")]))
                }
                _ => {
                    self.var = Some(name);
                    self.cur.bump();
                    Ok(Term::Var)
                }
            },
            Tok::Sym('(') => {
                self.cur.bump();
                let e = self.iexpr()?;
                self.cur.expect(')')?;
                Ok(e)
            }
            _ => Err(self.cur.unexpected(&["number", "variable", "'('", "'-'"])),
        }
    }

    fn ident(&mut self) -> Result<String, ParseError> {
        match self.cur.peek().tok.clone() {
            Tok::Ident(s) => {
                self.cur.bump();
                Ok(s)
            }
            _ => Err(self.cur.unexpected(&["variable name"])),
        }
    }

    fn natural(&mut self) -> Result<usize, ParseError> {
        let t = self.cur.peek().clone();
        if let Tok::Num(q) = &t.tok {
            if let Ok(k) = q.to_decimal_string(0).parse::<usize>() {
                if q.denominator() == &creal::Int::one() {
                    self.cur.bump();
                    return Ok(k);
                }
            }
        }
        Err(self.cur.unexpected(&["non-negative integer"]))
    }
}

/// Parses a sequence spec into a [`RatSeq`] indexed from 0.
pub fn parse_seq(text: &str) -> Result<RatSeq, CliError> {
    let toks = tokenize(text, false)?;
    let is_sum =
        matches!(&toks[0].tok, Tok::Ident(s) if s == "sum") && toks.get(1).is_some_and(|t| t.tok == Tok::Sym('('));
    let mut p = Parser { cur: Cursor::new(toks), var: (!is_sum).then(|| "n".to_string()) };
    let desc = format!("<{}>", text.trim());
    if !is_sum {
        let t = p.iexpr()?;
        p.cur.finish()?;
        return Ok(RatSeq::new(desc, move |n| t.eval(n as i64)));
    }
    p.cur.bump();
    p.cur.bump();
    let t = p.iexpr()?;
    p.cur.expect(',')?;
    let at = p.cur.peek().offset;
    let bound = p.ident()?;
    if bound == "n" || p.var.as_ref().is_some_and(|v| *v != bound) {
        let used = p.var.clone().unwrap_or_default();
        return Err(ParseError::new(
            at,
            format!("sum must bind the variable its term uses ('{used}'), other than 'n'"),
            &[&format!("'{used}'")],
        )
        .into());
    }
    p.cur.expect('=')?;
    let first = p.natural()?;
    if p.cur.peek().tok != Tok::DotDot {
        return Err(p.cur.unexpected(&["'..'"]).into());
    }
    p.cur.bump();
    match p.cur.peek().tok.clone() {
        Tok::Ident(s) if s == "n" => {
            p.cur.bump();
        }
        _ => return Err(p.cur.unexpected(&["'n'"]).into()),
    }
    p.cur.expect(')')?;
    p.cur.finish()?;
    let t = Arc::new(t);
    Ok(RatSeq::partial_sums(desc, first, move |k| t.eval(k as i64)))
}
