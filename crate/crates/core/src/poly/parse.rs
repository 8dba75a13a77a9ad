//! Recursive-descent parser for edge-label expressions.
//!
//! ```text
//! expr   := ('+'|'-')? term (('+'|'-') term)*
//! term   := factor ('*' factor)*
//! factor := base ('^' natural)?
//! base   := literal | variable | '(' expr ')'
//! literal:= digits ('/' digits)?
//! ```
//!
//! Whitespace is ignored between tokens. Juxtaposition (`2x`) is rejected.

use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use thiserror::Error;

use super::{CoeffRing, Polynomial};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{kind} at position {position}")]
pub struct ParseError {
    pub kind: ParseErrorKind,
    /// Character offset into the input.
    pub position: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("empty input")]
    EmptyInput,
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("malformed literal `{0}`")]
    MalformedLiteral(String),
    #[error("negative exponent")]
    NegativeExponent,
    #[error("malformed exponent")]
    MalformedExponent,
    #[error("unexpected character `{0}`")]
    Unexpected(char),
    #[error("unexpected end of input")]
    UnexpectedEnd,
}

struct Parser<'a> {
    chars: Vec<char>,
    pos: usize,
    coeffs: CoeffRing,
    vars: &'a Arc<[String]>,
}

pub(super) fn parse(
    text: &str,
    coeffs: CoeffRing,
    vars: Arc<[String]>,
) -> Result<Polynomial, ParseError> {
    let mut p = Parser {
        chars: text.chars().collect(),
        pos: 0,
        coeffs,
        vars: &vars,
    };
    p.skip_ws();
    if p.peek().is_none() {
        return Err(p.error(ParseErrorKind::EmptyInput));
    }
    let value = p.expr()?;
    p.skip_ws();
    match p.peek() {
        None => Ok(value),
        Some(c) => Err(p.error(ParseErrorKind::Unexpected(c))),
    }
}

impl Parser<'_> {
    fn error(&self, kind: ParseErrorKind) -> ParseError {
        ParseError {
            kind,
            position: self.pos,
        }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(char::is_whitespace) {
            self.pos += 1;
        }
    }

    fn eat(&mut self, c: char) -> bool {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Polynomial, ParseError> {
        let negate = if self.eat('-') {
            true
        } else {
            self.eat('+');
            false
        };
        let first = self.term()?;
        let mut acc = if negate { -first } else { first };
        loop {
            if self.eat('+') {
                acc = &acc + &self.term()?;
            } else if self.eat('-') {
                acc = &acc - &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial, ParseError> {
        let mut acc = self.factor()?;
        while self.eat('*') {
            acc = &acc * &self.factor()?;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Polynomial, ParseError> {
        let base = self.base()?;
        if !self.eat('^') {
            return Ok(base);
        }
        self.skip_ws();
        match self.peek() {
            Some('-') => Err(self.error(ParseErrorKind::NegativeExponent)),
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                let digits = self.digits();
                digits
                    .parse::<u32>()
                    .map(|e| base.pow(e))
                    .map_err(|_| ParseError {
                        kind: ParseErrorKind::MalformedExponent,
                        position: start,
                    })
            }
            Some(_) => Err(self.error(ParseErrorKind::MalformedExponent)),
            None => Err(self.error(ParseErrorKind::UnexpectedEnd)),
        }
    }

    fn base(&mut self) -> Result<Polynomial, ParseError> {
        self.skip_ws();
        let start = self.pos;
        match self.peek() {
            None => Err(self.error(ParseErrorKind::UnexpectedEnd)),
            Some('(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.eat(')') {
                    Ok(inner)
                } else {
                    self.skip_ws();
                    match self.peek() {
                        None => Err(self.error(ParseErrorKind::UnexpectedEnd)),
                        Some(c) => Err(self.error(ParseErrorKind::Unexpected(c))),
                    }
                }
            }
            Some(c) if c.is_ascii_digit() => self.literal(start),
            Some(c) if c.is_alphabetic() || c == '_' => {
                while self
                    .peek()
                    .is_some_and(|c| c.is_alphanumeric() || c == '_')
                {
                    self.pos += 1;
                }
                let name: String = self.chars[start..self.pos].iter().collect();
                match self.vars.iter().position(|v| *v == name) {
                    Some(i) => Ok(Polynomial::variable(self.coeffs, self.vars.clone(), i)),
                    None => Err(ParseError {
                        kind: ParseErrorKind::UnknownVariable(name),
                        position: start,
                    }),
                }
            }
            Some(c) => Err(self.error(ParseErrorKind::Unexpected(c))),
        }
    }

    fn digits(&mut self) -> String {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        self.chars[start..self.pos].iter().collect()
    }

    fn literal(&mut self, start: usize) -> Result<Polynomial, ParseError> {
        let numer = self.digits();
        let mut denom = None;
        if self.peek() == Some('/') {
            self.pos += 1;
            denom = Some(self.digits());
        }
        // a literal glued to an identifier, e.g. `2x`
        if self.peek().is_some_and(|c| c.is_alphanumeric() || c == '_' || c == '.') {
            while self
                .peek()
                .is_some_and(|c| c.is_alphanumeric() || c == '_' || c == '.')
            {
                self.pos += 1;
            }
        }
        let text: String = self.chars[start..self.pos].iter().collect();
        let malformed = || ParseError {
            kind: ParseErrorKind::MalformedLiteral(text.clone()),
            position: start,
        };
        if text.len() != numer.len() + denom.as_ref().map_or(0, |d| d.len() + 1) {
            return Err(malformed());
        }
        let n: BigInt = numer.parse().map_err(|_| malformed())?;
        let value = match denom {
            None => BigRational::from_integer(n),
            Some(d) => {
                let d: BigInt = d.parse().map_err(|_| malformed())?;
                if d.is_zero() {
                    return Err(malformed());
                }
                BigRational::new(n, d)
            }
        };
        if self.coeffs == CoeffRing::Int && !value.is_integer() {
            return Err(malformed());
        }
        Ok(Polynomial::constant(self.coeffs, self.vars.clone(), value))
    }
}
