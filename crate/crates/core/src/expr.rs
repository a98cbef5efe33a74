//! Rational expressions in the degree `n`, e.g. `(n-1)/(2n)` or `-n/(2n+1)`.
//!
//! Supports numbers, `n`, `+ - * /`, integer powers `^`, parentheses and
//! implicit multiplication (`2n`, `n(n+1)`).

use std::fmt;

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
enum Node {
    Num(f64),
    N,
    Neg(Box<Node>),
    Add(Box<Node>, Box<Node>),
    Sub(Box<Node>, Box<Node>),
    Mul(Box<Node>, Box<Node>),
    Div(Box<Node>, Box<Node>),
    Pow(Box<Node>, i32),
}

impl Node {
    fn eval(&self, n: f64) -> f64 {
        match self {
            Node::Num(v) => *v,
            Node::N => n,
            Node::Neg(a) => -a.eval(n),
            Node::Add(a, b) => a.eval(n) + b.eval(n),
            Node::Sub(a, b) => a.eval(n) - b.eval(n),
            Node::Mul(a, b) => a.eval(n) * b.eval(n),
            Node::Div(a, b) => a.eval(n) / b.eval(n),
            Node::Pow(a, p) => a.eval(n).powi(*p),
        }
    }
}

/// A parsed expression in `n`.
#[derive(Debug, Clone, PartialEq)]
pub struct Expr {
    source: String,
    root: Node,
}

impl Expr {
    pub fn parse(source: &str) -> Result<Self> {
        let mut p = Parser {
            src: source,
            chars: source.chars().filter(|c| !c.is_whitespace()).collect(),
            pos: 0,
        };
        if p.chars.is_empty() {
            return Err(p.error("empty expression"));
        }
        let root = p.expr()?;
        if p.pos != p.chars.len() {
            return Err(p.error(&format!("unexpected `{}`", p.chars[p.pos])));
        }
        Ok(Self {
            source: source.trim().to_string(),
            root,
        })
    }

    pub fn constant(v: f64) -> Self {
        Self {
            source: format!("{v}"),
            root: Node::Num(v),
        }
    }

    pub fn eval(&self, n: usize) -> f64 {
        self.root.eval(n as f64)
    }

    pub fn source(&self) -> &str {
        &self.source
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.source)
    }
}

struct Parser<'a> {
    src: &'a str,
    chars: Vec<char>,
    pos: usize,
}

impl Parser<'_> {
    fn error(&self, reason: &str) -> Error {
        Error::Expression {
            expr: self.src.to_string(),
            reason: reason.to_string(),
        }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<Node> {
        let mut lhs = self.term()?;
        while let Some(c @ ('+' | '-')) = self.peek() {
            self.pos += 1;
            let rhs = self.term()?;
            lhs = if c == '+' {
                Node::Add(Box::new(lhs), Box::new(rhs))
            } else {
                Node::Sub(Box::new(lhs), Box::new(rhs))
            };
        }
        Ok(lhs)
    }

    fn term(&mut self) -> Result<Node> {
        let mut lhs = self.unary()?;
        loop {
            match self.peek() {
                Some('*') => {
                    self.pos += 1;
                    lhs = Node::Mul(Box::new(lhs), Box::new(self.unary()?));
                }
                Some('/') => {
                    self.pos += 1;
                    lhs = Node::Div(Box::new(lhs), Box::new(self.unary()?));
                }
                Some(c) if c == 'n' || c == '(' || c.is_ascii_digit() || c == '.' => {
                    lhs = Node::Mul(Box::new(lhs), Box::new(self.power()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn unary(&mut self) -> Result<Node> {
        match self.peek() {
            Some('-') => {
                self.pos += 1;
                Ok(Node::Neg(Box::new(self.unary()?)))
            }
            Some('+') => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<Node> {
        let base = self.primary()?;
        if self.peek() == Some('^') {
            self.pos += 1;
            let negative = if self.peek() == Some('-') {
                self.pos += 1;
                true
            } else {
                false
            };
            let start = self.pos;
            while self.peek().is_some_and(|c| c.is_ascii_digit()) {
                self.pos += 1;
            }
            let digits: String = self.chars[start..self.pos].iter().collect();
            if self.peek() == Some('.') {
                return Err(self.error("exponent must be an integer"));
            }
            let p: i32 = digits.parse().map_err(|_| self.error("exponent must be an integer"))?;
            return Ok(Node::Pow(Box::new(base), if negative { -p } else { p }));
        }
        Ok(base)
    }

    fn primary(&mut self) -> Result<Node> {
        match self.peek() {
            Some('n') => {
                self.pos += 1;
                Ok(Node::N)
            }
            Some('(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(')') {
                    return Err(self.error("missing `)`"));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() || c == '.' => {
                let start = self.pos;
                while self.peek().is_some_and(|c| c.is_ascii_digit() || c == '.') {
                    self.pos += 1;
                }
                let text: String = self.chars[start..self.pos].iter().collect();
                text.parse()
                    .map(Node::Num)
                    .map_err(|_| self.error(&format!("bad number `{text}`")))
            }
            Some(c) => Err(self.error(&format!("unexpected `{c}`"))),
            None => Err(self.error("unexpected end of expression")),
        }
    }
}
