//! Tokenizer shared by the expression and sequence-spec parsers.

use std::fmt;

use creal::Rat;

use crate::error::ParseError;

#[derive(Debug, Clone, PartialEq)]
pub enum Tok {
    /// Unsigned literal, already exact.
    Num(Rat),
    Ident(String),
    Sym(char),
    DotDot,
    End,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Num(q) => write!(f, "number {q}"),
            Tok::Ident(s) => write!(f, "'{s}'"),
            Tok::Sym(c) => write!(f, "'{c}'"),
            Tok::DotDot => f.write_str("'..'"),
            Tok::End => f.write_str("end of input"),
        }
    }
}

#[derive(Debug, Clone)]
pub struct Token {
    pub tok: Tok,
    pub offset: usize,
}

/// Splits `text` into tokens. With `glue_fractions`, `12/5` written without
/// spaces is a single rational literal (a positive denominator is
/// required; `1/0` lexes as a division).
pub fn tokenize(text: &str, glue_fractions: bool) -> Result<Vec<Token>, ParseError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        match c {
            b' ' | b'\t' | b'\r' | b'\n' => i += 1,
            b'0'..=b'9' => {
                i = digits_end(bytes, i);
                let mut value: Rat = text[start..i].parse().expect("digits");
                if i + 1 < bytes.len() && bytes[i] == b'.' && bytes[i + 1].is_ascii_digit() {
                    i = digits_end(bytes, i + 1);
                    value = text[start..i].parse().expect("decimal literal");
                } else if glue_fractions && i + 1 < bytes.len() && bytes[i] == b'/' && bytes[i + 1].is_ascii_digit() {
                    let end = digits_end(bytes, i + 1);
                    let den: Rat = text[i + 1..end].parse().expect("digits");
                    let followed_by_dot = end < bytes.len() && bytes[end] == b'.';
                    if !den.is_zero() && !followed_by_dot {
                        value = value.checked_div(&den).expect("nonzero denominator");
                        i = end;
                    }
                }
                out.push(Token { tok: Tok::Num(value), offset: start });
            }
            b'a'..=b'z' | b'A'..=b'Z' | b'_' => {
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                out.push(Token { tok: Tok::Ident(text[start..i].to_string()), offset: start });
            }
            b'.' if bytes.get(i + 1) == Some(&b'.') => {
                i += 2;
                out.push(Token { tok: Tok::DotDot, offset: start });
            }
            b'+' | b'-' | b'*' | b'/' | b'^' | b'(' | b')' | b',' | b'=' => {
                i += 1;
                out.push(Token { tok: Tok::Sym(c as char), offset: start });
            }
            _ => {
                let ch = text[start..].chars().next().expect("in bounds");
                return Err(ParseError::new(start, format!("unexpected character {ch:?}"), &["a token"]));
            }
        }
    }
    out.push(Token { tok: Tok::End, offset: text.len() });
    Ok(out)
}

fn digits_end(bytes: &[u8], mut i: usize) -> usize {
    while i < bytes.len() && bytes[i].is_ascii_digit() {
        i += 1;
    }
    i
}

/// Cursor over a token list.
pub struct Cursor {
    toks: Vec<Token>,
    pos: usize,
}

impl Cursor {
    pub fn new(toks: Vec<Token>) -> Cursor {
        Cursor { toks, pos: 0 }
    }

    pub fn peek(&self) -> &Token {
        &self.toks[self.pos]
    }

    pub fn bump(&mut self) -> Token {
        let t = self.toks[self.pos].clone();
        if t.tok != Tok::End {
            self.pos += 1;
        }
        t
    }

    pub fn eat(&mut self, c: char) -> bool {
        if self.peek().tok == Tok::Sym(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    pub fn expect(&mut self, c: char) -> Result<usize, ParseError> {
        let t = self.peek().clone();
        if self.eat(c) {
            Ok(t.offset)
        } else {
            Err(self.unexpected(&[&format!("'{c}'")]))
        }
    }

    pub fn unexpected(&self, expected: &[&str]) -> ParseError {
        let t = self.peek();
        ParseError::new(t.offset, format!("unexpected {}", t.tok), expected)
    }

    pub fn finish(&self) -> Result<(), ParseError> {
        if self.peek().tok == Tok::End {
            Ok(())
        } else {
            Err(self.unexpected(&["operator", "end of input"]))
        }
    }
}
