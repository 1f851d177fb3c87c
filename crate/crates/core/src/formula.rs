//! A tiny expression language for index-dependent coefficients such as
//! `3 + sin(nπ/8)`.
//!
//! Grammar: `n`, `pi`/`π`, decimal literals, `+ - * /` (also `× ÷ −`),
//! `sin(..)`, `cos(..)`, parentheses, unary minus and implicit
//! multiplication (`2n`, `nπ/8`). Formulas always evaluate in `f64`.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BinOp {
    Add,
    Sub,
    Mul,
    Div,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Func {
    Sin,
    Cos,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    Num(f64),
    Index,
    Pi,
    Neg(Box<Expr>),
    Bin(BinOp, Box<Expr>, Box<Expr>),
    Call(Func, Box<Expr>),
}

impl Expr {
    fn eval(&self, n: f64) -> f64 {
        match self {
            Expr::Num(x) => *x,
            Expr::Index => n,
            Expr::Pi => std::f64::consts::PI,
            Expr::Neg(e) => -e.eval(n),
            Expr::Bin(op, l, r) => {
                let (l, r) = (l.eval(n), r.eval(n));
                match op {
                    BinOp::Add => l + r,
                    BinOp::Sub => l - r,
                    BinOp::Mul => l * r,
                    BinOp::Div => l / r,
                }
            }
            Expr::Call(Func::Sin, e) => e.eval(n).sin(),
            Expr::Call(Func::Cos, e) => e.eval(n).cos(),
        }
    }

    fn precedence(&self) -> u8 {
        match self {
            Expr::Bin(BinOp::Add | BinOp::Sub, ..) => 1,
            Expr::Bin(BinOp::Mul | BinOp::Div, ..) => 2,
            Expr::Neg(_) => 3,
            _ => 4,
        }
    }

    fn is_constant(&self) -> bool {
        match self {
            Expr::Num(_) | Expr::Pi => true,
            Expr::Index => false,
            Expr::Neg(e) | Expr::Call(_, e) => e.is_constant(),
            Expr::Bin(_, l, r) => l.is_constant() && r.is_constant(),
        }
    }
}

fn write_child(f: &mut fmt::Formatter<'_>, child: &Expr, parens: bool) -> fmt::Result {
    if parens {
        write!(f, "({child})")
    } else {
        write!(f, "{child}")
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Num(x) => {
                if x.fract() == 0.0 && x.abs() < 1e15 {
                    write!(f, "{}", *x as i64)
                } else {
                    write!(f, "{x:?}")
                }
            }
            Expr::Index => f.write_str("n"),
            Expr::Pi => f.write_str("pi"),
            Expr::Neg(e) => {
                f.write_str("-")?;
                write_child(f, e, e.precedence() < 3)
            }
            Expr::Bin(op, l, r) => {
                let p = self.precedence();
                write_child(f, l, l.precedence() < p)?;
                f.write_str(match op {
                    BinOp::Add => " + ",
                    BinOp::Sub => " - ",
                    BinOp::Mul => " * ",
                    BinOp::Div => " / ",
                })?;
                write_child(f, r, r.precedence() <= p)
            }
            Expr::Call(func, e) => {
                let name = match func {
                    Func::Sin => "sin",
                    Func::Cos => "cos",
                };
                write!(f, "{name}({e})")
            }
        }
    }
}

/// A parsed coefficient formula in the index `n`.
#[derive(Debug, Clone, PartialEq)]
pub struct Formula {
    expr: Expr,
}

impl Formula {
    pub fn parse(src: &str) -> Result<Self> {
        let tokens = tokenize(src)?;
        let mut parser = Parser {
            src,
            tokens,
            pos: 0,
        };
        let expr = parser.expr()?;
        if parser.pos != parser.tokens.len() {
            return Err(Error::parse(
                "formula",
                src,
                format!("unexpected {:?}", parser.tokens[parser.pos]),
            ));
        }
        Ok(Formula { expr })
    }

    pub fn constant(x: f64) -> Self {
        let expr = if x.is_sign_negative() {
            Expr::Neg(Box::new(Expr::Num(-x)))
        } else {
            Expr::Num(x)
        };
        Formula { expr }
    }

    pub fn eval(&self, n: usize) -> f64 {
        self.expr.eval(n as f64)
    }

    pub fn expr(&self) -> &Expr {
        &self.expr
    }

    /// True when the formula does not mention `n`.
    pub fn is_constant(&self) -> bool {
        self.expr.is_constant()
    }

    pub(crate) fn combine(op: BinOp, lhs: &Formula, rhs: &Formula) -> Formula {
        Formula {
            expr: Expr::Bin(op, Box::new(lhs.expr.clone()), Box::new(rhs.expr.clone())),
        }
    }
}

impl FromStr for Formula {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Formula::parse(s)
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.expr.fmt(f)
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Num(f64),
    Ident(String),
    Pi,
    Op(char),
    LParen,
    RParen,
}

fn tokenize(src: &str) -> Result<Vec<Token>> {
    let mut out = Vec::new();
    let chars: Vec<char> = src.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        match c {
            c if c.is_whitespace() => i += 1,
            '0'..='9' | '.' => {
                let start = i;
                while i < chars.len() && (chars[i].is_ascii_digit() || chars[i] == '.') {
                    i += 1;
                }
                let text: String = chars[start..i].iter().collect();
                let value = text
                    .parse::<f64>()
                    .map_err(|_| Error::parse("formula", src, format!("bad number {text:?}")))?;
                out.push(Token::Num(value));
            }
            'a'..='z' | 'A'..='Z' => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_alphabetic() {
                    i += 1;
                }
                let word: String = chars[start..i].iter().collect();
                if word == "pi" {
                    out.push(Token::Pi);
                } else if word.len() > 1 && word.starts_with('n') && !is_function(&word) {
                    // `npi` style juxtaposition: split off the index.
                    out.push(Token::Ident("n".into()));
                    let rest = &word[1..];
                    if rest == "pi" {
                        out.push(Token::Pi);
                    } else {
                        return Err(Error::parse("formula", src, format!("unknown name {word:?}")));
                    }
                } else {
                    out.push(Token::Ident(word));
                }
            }
            'π' => {
                out.push(Token::Pi);
                i += 1;
            }
            '+' | '-' | '*' | '/' => {
                out.push(Token::Op(c));
                i += 1;
            }
            '−' => {
                out.push(Token::Op('-'));
                i += 1;
            }
            '×' | '·' => {
                out.push(Token::Op('*'));
                i += 1;
            }
            '÷' => {
                out.push(Token::Op('/'));
                i += 1;
            }
            '(' => {
                out.push(Token::LParen);
                i += 1;
            }
            ')' => {
                out.push(Token::RParen);
                i += 1;
            }
            other => {
                return Err(Error::parse(
                    "formula",
                    src,
                    format!("unexpected character {other:?}"),
                ))
            }
        }
    }
    Ok(out)
}

fn is_function(word: &str) -> bool {
    matches!(word, "sin" | "cos")
}

struct Parser<'a> {
    src: &'a str,
    tokens: Vec<Token>,
    pos: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn next(&mut self) -> Option<Token> {
        let t = self.tokens.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn fail(&self, detail: impl Into<String>) -> Error {
        Error::parse("formula", self.src, detail)
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut lhs = self.term()?;
        while let Some(Token::Op(c @ ('+' | '-'))) = self.peek().cloned() {
            self.pos += 1;
            let rhs = self.term()?;
            let op = if c == '+' { BinOp::Add } else { BinOp::Sub };
            lhs = Expr::Bin(op, Box::new(lhs), Box::new(rhs));
        }
        Ok(lhs)
    }

    fn term(&mut self) -> Result<Expr> {
        let mut lhs = self.unary()?;
        loop {
            let op = match self.peek() {
                Some(Token::Op('*')) => {
                    self.pos += 1;
                    BinOp::Mul
                }
                Some(Token::Op('/')) => {
                    self.pos += 1;
                    BinOp::Div
                }
                Some(Token::Num(_) | Token::Ident(_) | Token::Pi | Token::LParen) => BinOp::Mul,
                _ => break,
            };
            let rhs = self.unary()?;
            lhs = Expr::Bin(op, Box::new(lhs), Box::new(rhs));
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Expr> {
        match self.peek() {
            Some(Token::Op('-')) => {
                self.pos += 1;
                Ok(Expr::Neg(Box::new(self.unary()?)))
            }
            Some(Token::Op('+')) => {
                self.pos += 1;
                self.unary()
            }
            _ => self.primary(),
        }
    }

    fn primary(&mut self) -> Result<Expr> {
        match self.next() {
            Some(Token::Num(x)) => Ok(Expr::Num(x)),
            Some(Token::Pi) => Ok(Expr::Pi),
            Some(Token::Ident(name)) => match name.as_str() {
                "n" => Ok(Expr::Index),
                "sin" | "cos" => {
                    let func = if name == "sin" { Func::Sin } else { Func::Cos };
                    if self.next() != Some(Token::LParen) {
                        return Err(self.fail(format!("expected '(' after {name}")));
                    }
                    let arg = self.expr()?;
                    if self.next() != Some(Token::RParen) {
                        return Err(self.fail("missing ')'"));
                    }
                    Ok(Expr::Call(func, Box::new(arg)))
                }
                _ => Err(self.fail(format!("unknown name {name:?}"))),
            },
            Some(Token::LParen) => {
                let inner = self.expr()?;
                if self.next() != Some(Token::RParen) {
                    return Err(self.fail("missing ')'"));
                }
                Ok(inner)
            }
            Some(t) => Err(self.fail(format!("unexpected {t:?}"))),
            None => Err(self.fail("unexpected end of input")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn figure_one_coefficients() {
        let a = Formula::parse("3 + sin(nπ/8)").unwrap();
        let b = Formula::parse("2 + cos(n*pi/8)").unwrap();
        for n in 0..40 {
            let x = n as f64 * PI / 8.0;
            assert_eq!(a.eval(n), 3.0 + x.sin());
            assert_eq!(b.eval(n), 2.0 + x.cos());
        }
    }

    #[test]
    fn precedence_and_unary_minus() {
        let f = Formula::parse("-2 - 3 * n / 2 + (1 - n)").unwrap();
        assert_eq!(f.eval(4), -2.0 - 6.0 + (1.0 - 4.0));
        assert_eq!(Formula::parse("2n").unwrap().eval(3), 6.0);
        assert_eq!(Formula::parse("1 ÷ 4 × n").unwrap().eval(2), 0.5);
        assert_eq!(Formula::parse("−n").unwrap().eval(2), -2.0);
        assert_eq!(Formula::parse("npi").unwrap().eval(1), PI);
    }

    #[test]
    fn display_round_trips() {
        for src in [
            "3 + sin(nπ/8)",
            "(2 - n) / (n - (1 - n))",
            "-(n + 1) * cos(-n)",
            "1 / (2 / n)",
            "0.25",
        ] {
            let f = Formula::parse(src).unwrap();
            let again = Formula::parse(&f.to_string()).unwrap();
            assert_eq!(f, again, "{src} -> {f}");
        }
        let c = Formula::constant(-1.5);
        assert_eq!(Formula::parse(&c.to_string()).unwrap(), c);
    }

    #[test]
    fn rejects_garbage() {
        for bad in ["", "3 +", "sin n", "exp(n)", "(1", "1)", "2 $ 3", "x"] {
            assert!(Formula::parse(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn constant_detection() {
        assert!(Formula::parse("2 + pi").unwrap().is_constant());
        assert!(!Formula::parse("sin(n)").unwrap().is_constant());
    }
}
