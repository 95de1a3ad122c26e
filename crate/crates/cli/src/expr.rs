//! Surface syntax for real-number expressions.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := factor (('*' | '/') factor)*
//! factor := literal | 'pi' | 'e' | 'sqrt' '(' expr ')' | 'x' | '(' expr ')' | '-' factor
//! ```
//!
//! Literals are integers, decimals (`2.75`) or fractions written without
//! spaces (`3/4`); all are exact.

use std::fmt;

use creal::calculus::Poly;
use creal::real::{const_e, const_pi, const_sqrt};
use creal::{Rat, Real};

use crate::error::{CliError, ParseError};
use crate::lex::{tokenize, Cursor, Tok};

/// Byte range in the source text.
pub type Span = (usize, usize);

#[derive(Debug, Clone)]
pub enum Expr {
    Lit(Rat),
    Pi,
    E,
    X,
    Sqrt(Box<Expr>),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    /// The span covers the denominator, for error reporting.
    Div(Box<Expr>, Box<Expr>, Span),
}

/// Structural equality; source spans are ignored.
impl PartialEq for Expr {
    fn eq(&self, other: &Expr) -> bool {
        use Expr::*;
        match (self, other) {
            (Lit(a), Lit(b)) => a == b,
            (Pi, Pi) | (E, E) | (X, X) => true,
            (Sqrt(a), Sqrt(b)) | (Neg(a), Neg(b)) => a == b,
            (Add(a, b), Add(c, d)) | (Sub(a, b), Sub(c, d)) | (Mul(a, b), Mul(c, d)) | (Div(a, b, _), Div(c, d, _)) => {
                a == c && b == d
            }
            _ => false,
        }
    }
}

pub fn parse_expr(text: &str) -> Result<Expr, ParseError> {
    let mut cur = Cursor::new(tokenize(text, true)?);
    let e = expr(&mut cur)?;
    cur.finish()?;
    Ok(e)
}

fn expr(cur: &mut Cursor) -> Result<Expr, ParseError> {
    let mut lhs = term(cur)?;
    loop {
        if cur.eat('+') {
            lhs = Expr::Add(Box::new(lhs), Box::new(term(cur)?));
        } else if cur.eat('-') {
            lhs = Expr::Sub(Box::new(lhs), Box::new(term(cur)?));
        } else {
            return Ok(lhs);
        }
    }
}

fn term(cur: &mut Cursor) -> Result<Expr, ParseError> {
    let mut lhs = factor(cur)?;
    loop {
        if cur.eat('*') {
            lhs = Expr::Mul(Box::new(lhs), Box::new(factor(cur)?));
        } else if cur.eat('/') {
            let start = cur.peek().offset;
            let rhs = factor(cur)?;
            let end = cur.peek().offset;
            lhs = Expr::Div(Box::new(lhs), Box::new(rhs), (start, end));
        } else {
            return Ok(lhs);
        }
    }
}

const FACTOR_START: &[&str] = &["number", "'pi'", "'e'", "'sqrt'", "'x'", "'('", "'-'"];

fn factor(cur: &mut Cursor) -> Result<Expr, ParseError> {
    let t = cur.peek().clone();
    match t.tok {
        Tok::Num(q) => {
            cur.bump();
            Ok(Expr::Lit(q))
        }
        Tok::Sym('(') => {
            cur.bump();
            let e = expr(cur)?;
            cur.expect(')')?;
            Ok(e)
        }
        Tok::Sym('-') => {
            cur.bump();
            Ok(Expr::Neg(Box::new(factor(cur)?)))
        }
        Tok::Ident(ref name) => {
            let node = match name.as_str() {
                "pi" => Expr::Pi,
                "e" => Expr::E,
                "x" => Expr::X,
                "sqrt" => {
                    cur.bump();
                    cur.expect('(')?;
                    let arg = expr(cur)?;
                    cur.expect(')')?;
                    return Ok(Expr::Sqrt(Box::new(arg)));
                }
                _ => return Err(ParseError::new(t.offset, format!("unknown name '{name}'"), FACTOR_START)),
            };
            cur.bump();
            Ok(node)
        }
        _ => Err(cur.unexpected(FACTOR_START)),
    }
}

/// Minimal-parenthesis rendering that parses back to the same tree.
pub fn render(e: &Expr) -> String {
    e.to_string()
}

impl Expr {
    fn precedence(&self) -> u8 {
        match self {
            Expr::Add(..) | Expr::Sub(..) => 1,
            Expr::Mul(..) | Expr::Div(..) => 2,
            _ => 3,
        }
    }

    fn fmt_at(&self, f: &mut fmt::Formatter<'_>, min: u8) -> fmt::Result {
        if self.precedence() < min {
            write!(f, "(")?;
            self.fmt_at(f, 0)?;
            return write!(f, ")");
        }
        match self {
            Expr::Lit(q) => write!(f, "{q}"),
            Expr::Pi => f.write_str("pi"),
            Expr::E => f.write_str("e"),
            Expr::X => f.write_str("x"),
            Expr::Sqrt(a) => {
                f.write_str("sqrt(")?;
                a.fmt_at(f, 0)?;
                f.write_str(")")
            }
            Expr::Neg(a) => {
                f.write_str("-")?;
                a.fmt_at(f, 3)
            }
            Expr::Add(a, b) => binary(f, a, " + ", b, 1),
            Expr::Sub(a, b) => binary(f, a, " - ", b, 1),
            Expr::Mul(a, b) => binary(f, a, " * ", b, 2),
            Expr::Div(a, b, _) => binary(f, a, " / ", b, 2),
        }
    }

    pub fn has_var(&self) -> bool {
        match self {
            Expr::X => true,
            Expr::Lit(_) | Expr::Pi | Expr::E => false,
            Expr::Sqrt(a) | Expr::Neg(a) => a.has_var(),
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) | Expr::Div(a, b, _) => a.has_var() || b.has_var(),
        }
    }
}

/// Left-associative: the right operand binds one level tighter.
fn binary(f: &mut fmt::Formatter<'_>, a: &Expr, op: &str, b: &Expr, level: u8) -> fmt::Result {
    a.fmt_at(f, level)?;
    f.write_str(op)?;
    b.fmt_at(f, level + 1)
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_at(f, 0)
    }
}

/// Steps tried when searching for a denominator's apartness witness.
pub const APARTNESS_BUDGET: usize = 96;

/// Value of a constant-free subtree, folded exactly.
pub fn exact_value(e: &Expr) -> Option<Result<Rat, CliError>> {
    Some(match e {
        Expr::Lit(q) => Ok(q.clone()),
        Expr::Pi | Expr::E | Expr::X | Expr::Sqrt(_) => return None,
        Expr::Neg(a) => exact_value(a)?.map(|a| a.negate()),
        Expr::Add(a, b) => both(a, b)?.map(|(a, b)| a.add(&b)),
        Expr::Sub(a, b) => both(a, b)?.map(|(a, b)| a.sub(&b)),
        Expr::Mul(a, b) => both(a, b)?.map(|(a, b)| a.mul(&b)),
        Expr::Div(a, b, span) => both(a, b)?.and_then(|(a, b)| {
            if b.is_zero() {
                Err(apartness_error(b.to_string(), *span))
            } else {
                Ok(a.checked_div(&b).expect("nonzero"))
            }
        }),
    })
}

fn both(a: &Expr, b: &Expr) -> Option<Result<(Rat, Rat), CliError>> {
    let (a, b) = (exact_value(a)?, exact_value(b)?);
    Some(a.and_then(|a| b.map(|b| (a, b))))
}

fn apartness_error(what: String, span: Span) -> CliError {
    CliError::Engine(creal::Error::InvalidApartness(format!(
        "denominator `{what}` at bytes {}..{} is not provably apart from zero",
        span.0, span.1
    )))
}

/// Compiles to a [`Real`]. Divisions need a machine-found apartness witness
/// for the denominator.
pub fn to_real(e: &Expr) -> Result<Real, CliError> {
    if let Some(q) = exact_value(e) {
        return Ok(Real::from_rat(q?));
    }
    Ok(match e {
        Expr::Lit(q) => Real::from_rat(q.clone()),
        Expr::Pi => const_pi(),
        Expr::E => const_e(),
        Expr::X => return Err(CliError::Usage("free variable 'x' outside a derivative".into())),
        Expr::Sqrt(a) => match exact_value(a) {
            Some(q) => const_sqrt(&q?)?,
            None => to_real(a)?.sqrt()?,
        },
        Expr::Neg(a) => to_real(a)?.neg(),
        Expr::Add(a, b) => to_real(a)?.add(&to_real(b)?),
        Expr::Sub(a, b) => to_real(a)?.sub(&to_real(b)?),
        Expr::Mul(a, b) => to_real(a)?.mul(&to_real(b)?),
        Expr::Div(a, b, span) => {
            let (x, y) = (to_real(a)?, to_real(b)?);
            let w = y.find_apartness(APARTNESS_BUDGET).ok_or_else(|| apartness_error(b.to_string(), *span))?;
            x.div(&y, &w)?
        }
    })
}

/// Compiles a polynomial in `x`: literals, `x`, `+`, `-`, `*`, and division
/// by exact nonzero constants.
pub fn to_poly(e: &Expr) -> Result<Poly, CliError> {
    let not_poly = |what: &str| CliError::Usage(format!("not a rational polynomial in x: {what}"));
    Ok(match e {
        Expr::Lit(q) => Poly::constant(q.clone()),
        Expr::X => Poly::x(),
        Expr::Pi | Expr::E | Expr::Sqrt(_) => return Err(not_poly(&e.to_string())),
        Expr::Neg(a) => to_poly(a)?.neg(),
        Expr::Add(a, b) => to_poly(a)?.add(&to_poly(b)?),
        Expr::Sub(a, b) => to_poly(a)?.sub(&to_poly(b)?),
        Expr::Mul(a, b) => to_poly(a)?.mul(&to_poly(b)?),
        Expr::Div(a, b, _) => {
            let d = exact_value(b).ok_or_else(|| not_poly(&format!("division by {b}")))??;
            let inv = d.recip().map_err(|_| not_poly(&format!("division by zero in {e}")))?;
            to_poly(a)?.scale(&inv)
        }
    })
}
