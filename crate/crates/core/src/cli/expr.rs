//! Infix arithmetic over sexagesimal literals.
//!
//! ```text
//! expr    := term (("+" | "-" | "−") term)*
//! term    := unary (("*" | "×" | "/" | "÷") unary)*
//! unary   := ("-" | "−") unary | atom
//! atom    := literal | "(" expr ")"
//! literal := run of digits, "," and ";" (or ":")
//! ```

use std::fmt;

use crate::error::Error;
use crate::procedures::divide_by_recognition;
use crate::sexcore::Sexa;

/// How `/` is carried out.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Division {
    /// Multiply by the reciprocal; the divisor must be regular.
    #[default]
    Scribal,
    /// Any divisor, as long as the quotient terminates.
    Recognize,
    /// Exact rational division.
    Oracle,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expr {
    Lit(Sexa),
    Neg(Box<Expr>),
    Bin(Op, Box<Expr>, Box<Expr>),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Op {
    Add,
    Sub,
    Mul,
    Div,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ExprError {
    #[error("column {column}: {message}")]
    Syntax { column: usize, message: String },
    #[error("column {column}: {source}")]
    Literal {
        column: usize,
        #[source]
        source: Error,
    },
}

struct Parser<'a> {
    chars: Vec<(usize, char)>,
    pos: usize,
    src: &'a str,
}

impl Parser<'_> {
    fn peek(&mut self) -> Option<char> {
        while self.chars.get(self.pos).is_some_and(|(_, c)| c.is_whitespace()) {
            self.pos += 1;
        }
        self.chars.get(self.pos).map(|&(_, c)| c)
    }

    fn column(&self) -> usize {
        self.pos + 1
    }

    fn syntax(&self, message: impl Into<String>) -> ExprError {
        ExprError::Syntax {
            column: self.column(),
            message: message.into(),
        }
    }

    fn expr(&mut self) -> Result<Expr, ExprError> {
        let mut lhs = self.term()?;
        while let Some(c @ ('+' | '-' | '−')) = self.peek() {
            self.pos += 1;
            let op = if c == '+' { Op::Add } else { Op::Sub };
            lhs = Expr::Bin(op, Box::new(lhs), Box::new(self.term()?));
        }
        Ok(lhs)
    }

    fn term(&mut self) -> Result<Expr, ExprError> {
        let mut lhs = self.unary()?;
        while let Some(c @ ('*' | '×' | '/' | '÷')) = self.peek() {
            self.pos += 1;
            let op = if matches!(c, '*' | '×') { Op::Mul } else { Op::Div };
            lhs = Expr::Bin(op, Box::new(lhs), Box::new(self.unary()?));
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Expr, ExprError> {
        if let Some('-' | '−') = self.peek() {
            self.pos += 1;
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        self.atom()
    }

    fn atom(&mut self) -> Result<Expr, ExprError> {
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(')') {
                    return Err(self.syntax("expected `)`"));
                }
                self.pos += 1;
                Ok(e)
            }
            Some(c) if is_literal_char(c) => {
                let column = self.column();
                let start = self.chars[self.pos].0;
                while self.chars.get(self.pos).is_some_and(|&(_, c)| is_literal_char(c)) {
                    self.pos += 1;
                }
                let end = self.chars.get(self.pos).map_or(self.src.len(), |&(i, _)| i);
                Sexa::parse(&self.src[start..end])
                    .map(Expr::Lit)
                    .map_err(|source| ExprError::Literal { column, source })
            }
            Some(c) => Err(self.syntax(format!("unexpected {c:?}"))),
            None => Err(self.syntax("unexpected end of expression")),
        }
    }
}

fn is_literal_char(c: char) -> bool {
    c.is_ascii_digit() || matches!(c, ',' | ';' | ':')
}

pub fn parse_expr(src: &str) -> Result<Expr, ExprError> {
    let mut p = Parser {
        chars: src.char_indices().collect(),
        pos: 0,
        src,
    };
    let e = p.expr()?;
    if let Some(c) = p.peek() {
        return Err(p.syntax(format!("unexpected {c:?}")));
    }
    Ok(e)
}

impl Expr {
    pub fn eval(&self, division: Division) -> Result<Sexa, Error> {
        match self {
            Expr::Lit(v) => Ok(v.clone()),
            Expr::Neg(e) => Ok(-e.eval(division)?),
            Expr::Bin(op, a, b) => {
                let (a, b) = (a.eval(division)?, b.eval(division)?);
                match op {
                    Op::Add => Ok(a + b),
                    Op::Sub => Ok(a - b),
                    Op::Mul => Ok(a * b),
                    Op::Div => match division {
                        Division::Scribal => Ok(a * b.reciprocal()?),
                        Division::Recognize => divide_by_recognition(&a, &b),
                        Division::Oracle => a.exact_quotient(&b),
                    },
                }
            }
        }
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Lit(v) => write!(f, "{v}"),
            Expr::Neg(e) => write!(f, "(-{e})"),
            Expr::Bin(op, a, b) => {
                let sym = match op {
                    Op::Add => "+",
                    Op::Sub => "-",
                    Op::Mul => "*",
                    Op::Div => "/",
                };
                write!(f, "({a} {sym} {b})")
            }
        }
    }
}
