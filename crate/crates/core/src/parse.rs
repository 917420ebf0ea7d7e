//! Recursive-descent parser for the scalar and element text grammars.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary (('*' | '/' | '.') unary)*
//! unary  := ('-' | '+') unary | power
//! power  := atom ('^' ['-' | '+'] integer)?
//! atom   := integer | 'q' | 'e' integer | '(' expr ')'
//! ```
//!
//! Values are word combinations; a scalar is a combination supported on the
//! empty word. `*` and `.` are both the concatenation product, `/` divides by
//! a nonzero scalar.

use num_bigint::BigInt;
use thiserror::Error;

use crate::scalar::{LaurentPoly, Rational, Scalar};
use crate::tensor::{concat_words, Letter, LinComb, Word};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("parse error at position {pos}: {message}")]
pub struct ParseError {
    pub pos: usize,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Int(BigInt),
    Q,
    Letter(u64),
    Plus,
    Minus,
    Star,
    Slash,
    Dot,
    Caret,
    LParen,
    RParen,
}

fn tokenize(text: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        let tok = match c {
            b' ' | b'\t' | b'\n' | b'\r' => {
                i += 1;
                continue;
            }
            b'0'..=b'9' => {
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                out.push((start, Tok::Int(text[start..i].parse().unwrap())));
                continue;
            }
            b'e' => {
                i += 1;
                let digits = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                if digits == i {
                    return Err(err(start, "expected a letter index after 'e'"));
                }
                let idx = text[digits..i]
                    .parse()
                    .map_err(|_| err(start, "letter index too large"))?;
                out.push((start, Tok::Letter(idx)));
                continue;
            }
            b'q' => Tok::Q,
            b'+' => Tok::Plus,
            b'-' => Tok::Minus,
            b'*' => Tok::Star,
            b'/' => Tok::Slash,
            b'.' => Tok::Dot,
            b'^' => Tok::Caret,
            b'(' => Tok::LParen,
            b')' => Tok::RParen,
            _ => {
                let ch = text[i..].chars().next().unwrap();
                return Err(err(start, &format!("unexpected character '{ch}'")));
            }
        };
        out.push((start, tok));
        i += 1;
    }
    Ok(out)
}

fn err(pos: usize, message: &str) -> ParseError {
    ParseError {
        pos,
        message: message.to_string(),
    }
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    at: usize,
    end: usize,
    /// `None` for the scalar grammar (letters rejected).
    dim: Option<usize>,
}

type Value = LinComb<Word>;

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|(_, t)| t)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.at).map(|(p, _)| *p).unwrap_or(self.end)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.at).map(|(_, t)| t.clone());
        self.at += 1;
        t
    }

    fn expr(&mut self) -> Result<Value, ParseError> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.bump();
                    let rhs = self.term()?;
                    acc.add_assign(&rhs);
                }
                Some(Tok::Minus) => {
                    self.bump();
                    let rhs = self.term()?;
                    acc = acc.sub(&rhs);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Value, ParseError> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some(Tok::Star) | Some(Tok::Dot) => {
                    self.bump();
                    let rhs = self.unary()?;
                    acc = concat_words(&acc, &rhs);
                }
                Some(Tok::Slash) => {
                    self.bump();
                    let pos = self.pos();
                    let rhs = self.unary()?;
                    let d = as_scalar(&rhs).ok_or_else(|| err(pos, "divisor must be a scalar"))?;
                    let inv = d.inv().map_err(|_| err(pos, "division by zero"))?;
                    acc = acc.scaled(&inv);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<Value, ParseError> {
        match self.peek() {
            Some(Tok::Minus) => {
                self.bump();
                Ok(self.unary()?.neg())
            }
            Some(Tok::Plus) => {
                self.bump();
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<Value, ParseError> {
        let base_pos = self.pos();
        let base = self.atom()?;
        if self.peek() != Some(&Tok::Caret) {
            return Ok(base);
        }
        self.bump();
        let negative = match self.peek() {
            Some(Tok::Minus) => {
                self.bump();
                true
            }
            Some(Tok::Plus) => {
                self.bump();
                false
            }
            _ => false,
        };
        let pos = self.pos();
        let Some(Tok::Int(n)) = self.bump() else {
            return Err(err(pos, "expected an integer exponent"));
        };
        let n: i64 = i64::try_from(&n).map_err(|_| err(pos, "exponent too large"))?;
        let exp = if negative { -n } else { n };
        if let Some(s) = as_scalar(&base) {
            let p = s.pow(exp).map_err(|_| err(base_pos, "negative power of zero"))?;
            return Ok(LinComb::single(Word::empty(), p));
        }
        if exp < 0 {
            return Err(err(base_pos, "negative power of a non-scalar"));
        }
        let mut acc = LinComb::basis(Word::empty());
        for _ in 0..exp {
            acc = concat_words(&acc, &base);
        }
        Ok(acc)
    }

    fn atom(&mut self) -> Result<Value, ParseError> {
        let pos = self.pos();
        match self.bump() {
            Some(Tok::Int(n)) => Ok(scalar_value(Scalar::from_rational(Rational::from_integer(n)))),
            Some(Tok::Q) => Ok(scalar_value(Scalar::from_laurent(LaurentPoly::q()))),
            Some(Tok::Letter(idx)) => {
                let Some(dim) = self.dim else {
                    return Err(err(pos, "letters are not allowed in a scalar"));
                };
                if idx == 0 || idx > dim as u64 {
                    return Err(err(pos, &format!("letter e{idx} out of range for dimension {dim}")));
                }
                Ok(LinComb::basis(Word::letter(idx as Letter)))
            }
            Some(Tok::LParen) => {
                let inner = self.expr()?;
                let close = self.pos();
                match self.bump() {
                    Some(Tok::RParen) => Ok(inner),
                    _ => Err(err(close, "expected ')'")),
                }
            }
            Some(t) => Err(err(pos, &format!("unexpected token {t:?}"))),
            None => Err(err(pos, "unexpected end of input")),
        }
    }
}

fn scalar_value(s: Scalar) -> Value {
    LinComb::single(Word::empty(), s)
}

fn as_scalar(v: &Value) -> Option<Scalar> {
    if v.keys().all(Word::is_empty) {
        Some(v.coeff(&Word::empty()))
    } else {
        None
    }
}

fn run(text: &str, dim: Option<usize>) -> Result<Value, ParseError> {
    let toks = tokenize(text)?;
    if toks.is_empty() {
        return Err(err(0, "empty input"));
    }
    let mut p = Parser {
        toks,
        at: 0,
        end: text.len(),
        dim,
    };
    let v = p.expr()?;
    if p.at < p.toks.len() {
        return Err(err(p.pos(), "unexpected trailing input"));
    }
    Ok(v)
}

pub(crate) fn parse_scalar(text: &str) -> Result<Scalar, ParseError> {
    let v = run(text, None)?;
    Ok(as_scalar(&v).expect("scalar grammar yields scalars"))
}

pub(crate) fn parse_element(text: &str, dim: usize) -> Result<LinComb<Word>, ParseError> {
    run(text, Some(dim))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn errors_carry_positions() {
        let e = parse_scalar("1 + * q").unwrap_err();
        assert_eq!(e.pos, 4);
        let e = parse_scalar("(1+q").unwrap_err();
        assert_eq!(e.pos, 4);
        let e = parse_scalar("3/0").unwrap_err();
        assert_eq!(e.pos, 2);
        assert!(parse_scalar("e1").is_err());
        assert!(parse_scalar("").is_err());
        assert!(parse_scalar("2 q").is_err());
    }

    #[test]
    fn element_grammar() {
        let v = parse_element("e1.e2", 2).unwrap();
        assert_eq!(v, LinComb::basis(Word::new(&[1, 2])));
        let v = parse_element("(1+q)*e1.e1 - q^-1*e2", 2).unwrap();
        assert_eq!(v.len(), 2);
        assert_eq!(v.coeff(&Word::new(&[2])), parse_scalar("-q^-1").unwrap());
        let e = parse_element("e3", 2).unwrap_err();
        assert_eq!(e.pos, 0);
        assert!(e.message.contains("out of range"));
        assert!(parse_element("e1/e2", 2).is_err());
        assert_eq!(parse_element("e1^2", 2).unwrap(), LinComb::basis(Word::new(&[1, 1])));
    }
}
