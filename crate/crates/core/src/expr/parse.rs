//! Recursive-descent parser for profile formulas.
//!
//! Precedence, tightest first: `^` (right associative), unary `-`/`+`,
//! `*` `/`, binary `+` `-`. Identifiers are the variable `s`, the constants
//! `pi` and `i`, and the builtin function names.

use num_complex::Complex64;
use thiserror::Error;

use super::{Expression, Func, Node};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ParseError {
    #[error("syntax error at offset {offset}: expected {}, found {found}", expected.join(" or "))]
    Syntax {
        offset: usize,
        expected: Vec<String>,
        found: String,
    },
    #[error("unknown identifier `{name}` at offset {offset}")]
    UnknownIdentifier { name: String, offset: usize },
}

impl ParseError {
    pub fn offset(&self) -> usize {
        match self {
            ParseError::Syntax { offset, .. } | ParseError::UnknownIdentifier { offset, .. } => *offset,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(f64),
    Ident(String),
    Sym(char),
    End,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Num(v) => format!("number {v}"),
            Tok::Ident(name) => format!("identifier `{name}`"),
            Tok::Sym(c) => format!("`{c}`"),
            Tok::End => "end of input".to_string(),
        }
    }
}

struct Lexer<'a> {
    text: &'a str,
    pos: usize,
}

impl<'a> Lexer<'a> {
    fn tokenize(text: &'a str) -> Result<Vec<(usize, Tok)>, ParseError> {
        let mut lx = Lexer { text, pos: 0 };
        let mut out = Vec::new();
        loop {
            let (at, tok) = lx.next_token()?;
            let end = tok == Tok::End;
            out.push((at, tok));
            if end {
                return Ok(out);
            }
        }
    }

    fn peek_byte(&self) -> Option<u8> {
        self.text.as_bytes().get(self.pos).copied()
    }

    fn next_token(&mut self) -> Result<(usize, Tok), ParseError> {
        while matches!(self.peek_byte(), Some(b) if b.is_ascii_whitespace()) {
            self.pos += 1;
        }
        let start = self.pos;
        let Some(b) = self.peek_byte() else {
            return Ok((start, Tok::End));
        };
        if b.is_ascii_digit() || b == b'.' {
            return self.number(start).map(|v| (start, Tok::Num(v)));
        }
        if b.is_ascii_alphabetic() || b == b'_' {
            while matches!(self.peek_byte(), Some(c) if c.is_ascii_alphanumeric() || c == b'_') {
                self.pos += 1;
            }
            return Ok((start, Tok::Ident(self.text[start..self.pos].to_string())));
        }
        if b"+-*/^()".contains(&b) {
            self.pos += 1;
            return Ok((start, Tok::Sym(b as char)));
        }
        let found = self.text[start..].chars().next().unwrap_or('?');
        Err(ParseError::Syntax {
            offset: start,
            expected: vec!["a number, identifier, operator or parenthesis".into()],
            found: format!("`{found}`"),
        })
    }

    fn number(&mut self, start: usize) -> Result<f64, ParseError> {
        let digits = |lx: &mut Lexer| {
            let from = lx.pos;
            while matches!(lx.peek_byte(), Some(c) if c.is_ascii_digit()) {
                lx.pos += 1;
            }
            lx.pos - from
        };
        let mut count = digits(self);
        if self.peek_byte() == Some(b'.') {
            self.pos += 1;
            count += digits(self);
        }
        if count == 0 {
            return Err(ParseError::Syntax {
                offset: start,
                expected: vec!["digits".into()],
                found: "`.`".into(),
            });
        }
        if matches!(self.peek_byte(), Some(b'e' | b'E')) {
            let mark = self.pos;
            self.pos += 1;
            if matches!(self.peek_byte(), Some(b'+' | b'-')) {
                self.pos += 1;
            }
            if digits(self) == 0 {
                // not an exponent; leave `e` for the identifier rule
                self.pos = mark;
            }
        }
        let lit = &self.text[start..self.pos];
        lit.parse::<f64>().map_err(|_| ParseError::Syntax {
            offset: start,
            expected: vec!["a numeric literal".into()],
            found: format!("`{lit}`"),
        })
    }
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    idx: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.idx].1
    }

    fn offset(&self) -> usize {
        self.toks[self.idx].0
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.idx].1.clone();
        if self.idx + 1 < self.toks.len() {
            self.idx += 1;
        }
        t
    }

    fn error(&self, expected: &[&str]) -> ParseError {
        ParseError::Syntax {
            offset: self.offset(),
            expected: expected.iter().map(|s| s.to_string()).collect(),
            found: self.peek().describe(),
        }
    }

    fn expect(&mut self, c: char) -> Result<(), ParseError> {
        if *self.peek() == Tok::Sym(c) {
            self.bump();
            Ok(())
        } else {
            Err(self.error(&[&format!("`{c}`")]))
        }
    }

    fn expr(&mut self) -> Result<Expression, ParseError> {
        let mut lhs = self.term()?;
        loop {
            match self.peek() {
                Tok::Sym('+') => {
                    self.bump();
                    lhs = Expression::new(Node::Add(lhs, self.term()?));
                }
                Tok::Sym('-') => {
                    self.bump();
                    lhs = Expression::new(Node::Sub(lhs, self.term()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<Expression, ParseError> {
        let mut lhs = self.unary()?;
        loop {
            match self.peek() {
                Tok::Sym('*') => {
                    self.bump();
                    lhs = Expression::new(Node::Mul(lhs, self.unary()?));
                }
                Tok::Sym('/') => {
                    self.bump();
                    lhs = Expression::new(Node::Div(lhs, self.unary()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn unary(&mut self) -> Result<Expression, ParseError> {
        match self.peek() {
            Tok::Sym('-') => {
                self.bump();
                Ok(Expression::new(Node::Neg(self.unary()?)))
            }
            Tok::Sym('+') => {
                self.bump();
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<Expression, ParseError> {
        let base = self.primary()?;
        if *self.peek() != Tok::Sym('^') {
            return Ok(base);
        }
        self.bump();
        let exponent = self.unary()?;
        Ok(match integer_exponent(&exponent) {
            Some(k) => Expression::new(Node::Powi(base, k)),
            None => Expression::new(Node::Pow(base, exponent)),
        })
    }

    fn primary(&mut self) -> Result<Expression, ParseError> {
        let at = self.offset();
        if matches!(self.peek(), Tok::End | Tok::Sym(')' | '*' | '/' | '^' | '+' | '-')) {
            return Err(self.error(&["number", "identifier", "`(`"]));
        }
        match self.bump() {
            Tok::Num(v) => Ok(Expression::real(v)),
            Tok::Sym('(') => {
                let inner = self.expr()?;
                self.expect(')')?;
                Ok(inner)
            }
            Tok::Ident(name) => match name.as_str() {
                "s" => Ok(Expression::var()),
                "pi" => Ok(Expression::real(std::f64::consts::PI)),
                "i" => Ok(Expression::constant(Complex64::new(0.0, 1.0))),
                _ => match Func::from_name(&name) {
                    Some(func) => {
                        self.expect('(')?;
                        let arg = self.expr()?;
                        self.expect(')')?;
                        Ok(Expression::apply(func, arg))
                    }
                    None => Err(ParseError::UnknownIdentifier { name, offset: at }),
                },
            },
            other => unreachable!("unexpected token {other:?}"),
        }
    }
}

fn integer_exponent(e: &Expression) -> Option<i32> {
    let value = match e.node() {
        Node::Const(c) => *c,
        Node::Neg(inner) => -inner.as_const()?,
        _ => return None,
    };
    let re = value.re;
    (value.im == 0.0 && re.fract() == 0.0 && re.abs() <= i32::MAX as f64).then_some(re as i32)
}

/// Parses a formula in the variable `s`.
pub fn parse(text: &str) -> Result<Expression, ParseError> {
    let toks = Lexer::tokenize(text)?;
    let mut p = Parser { toks, idx: 0 };
    let e = p.expr()?;
    if *p.peek() != Tok::End {
        return Err(p.error(&["operator", "end of input"]));
    }
    Ok(e)
}
