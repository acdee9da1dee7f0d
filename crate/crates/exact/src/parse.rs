//! Parser for the textual form of polynomials and scalars, e.g.
//! `"qh^2*th - 3*z1 + 1"` or `"(th^2 - 1)/(qh^4)"`.

use crate::error::ExactError;
use crate::int::Int;
use crate::poly::{var_index, Poly};
use crate::scalar::Scalar;

#[derive(Debug, Clone)]
enum Ast {
    Num(Int),
    Var(usize),
    Add(Box<Ast>, Box<Ast>),
    Sub(Box<Ast>, Box<Ast>),
    Mul(Box<Ast>, Box<Ast>),
    Div(Box<Ast>, Box<Ast>),
    Neg(Box<Ast>),
    Pow(Box<Ast>, i64),
}

struct Parser<'a> {
    s: &'a [u8],
    i: usize,
}

impl<'a> Parser<'a> {
    fn err(&self, msg: &str) -> ExactError {
        ExactError::Parse(format!("{msg} at offset {}", self.i))
    }

    fn ws(&mut self) {
        while self.i < self.s.len() && self.s[self.i].is_ascii_whitespace() {
            self.i += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.ws();
        self.s.get(self.i).copied()
    }

    fn expr(&mut self) -> Result<Ast, ExactError> {
        let mut lhs = self.term()?;
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.i += 1;
                    let r = self.term()?;
                    lhs = Ast::Add(Box::new(lhs), Box::new(r));
                }
                Some(b'-') => {
                    self.i += 1;
                    let r = self.term()?;
                    lhs = Ast::Sub(Box::new(lhs), Box::new(r));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<Ast, ExactError> {
        let mut lhs = self.unary()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.i += 1;
                    let r = self.unary()?;
                    lhs = Ast::Mul(Box::new(lhs), Box::new(r));
                }
                Some(b'/') => {
                    self.i += 1;
                    let r = self.unary()?;
                    lhs = Ast::Div(Box::new(lhs), Box::new(r));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn unary(&mut self) -> Result<Ast, ExactError> {
        if self.peek() == Some(b'-') {
            self.i += 1;
            let x = self.unary()?;
            return Ok(Ast::Neg(Box::new(x)));
        }
        if self.peek() == Some(b'+') {
            self.i += 1;
            return self.unary();
        }
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.i += 1;
            let neg = if self.peek() == Some(b'-') {
                self.i += 1;
                true
            } else {
                false
            };
            self.ws();
            let st = self.i;
            while self.i < self.s.len() && self.s[self.i].is_ascii_digit() {
                self.i += 1;
            }
            if st == self.i {
                return Err(self.err("expected exponent"));
            }
            let e: i64 = std::str::from_utf8(&self.s[st..self.i])
                .unwrap()
                .parse()
                .map_err(|_| self.err("bad exponent"))?;
            return Ok(Ast::Pow(Box::new(base), if neg { -e } else { e }));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Ast, ExactError> {
        match self.peek() {
            Some(b'(') => {
                self.i += 1;
                let e = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.err("expected ')'"));
                }
                self.i += 1;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let st = self.i;
                while self.i < self.s.len() && self.s[self.i].is_ascii_digit() {
                    self.i += 1;
                }
                let v: Int = std::str::from_utf8(&self.s[st..self.i])
                    .unwrap()
                    .parse()
                    .map_err(|_| self.err("bad integer"))?;
                Ok(Ast::Num(v))
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let st = self.i;
                while self.i < self.s.len() && self.s[self.i].is_ascii_alphanumeric() {
                    self.i += 1;
                }
                let name = std::str::from_utf8(&self.s[st..self.i]).unwrap();
                match var_index(name) {
                    Some(v) => Ok(Ast::Var(v)),
                    None => Err(ExactError::Parse(format!("unknown symbol '{name}'"))),
                }
            }
            _ => Err(self.err("unexpected input")),
        }
    }
}

fn parse_ast(s: &str) -> Result<Ast, ExactError> {
    let mut p = Parser { s: s.as_bytes(), i: 0 };
    let a = p.expr()?;
    if p.peek().is_some() {
        return Err(p.err("trailing input"));
    }
    Ok(a)
}

fn eval_poly(a: &Ast) -> Result<Poly, ExactError> {
    Ok(match a {
        Ast::Num(v) => Poly::constant(v.clone()),
        Ast::Var(i) => Poly::var(*i),
        Ast::Add(x, y) => eval_poly(x)?.add(&eval_poly(y)?),
        Ast::Sub(x, y) => eval_poly(x)?.sub(&eval_poly(y)?),
        Ast::Mul(x, y) => eval_poly(x)?.mul(&eval_poly(y)?),
        Ast::Neg(x) => eval_poly(x)?.neg(),
        Ast::Pow(x, e) => {
            if *e < 0 {
                return Err(ExactError::Parse("negative power in polynomial".into()));
            }
            eval_poly(x)?.pow(*e as u32)
        }
        Ast::Div(..) => return Err(ExactError::Parse("division in polynomial".into())),
    })
}

fn eval_scalar(a: &Ast) -> Result<Scalar, ExactError> {
    Ok(match a {
        Ast::Num(v) => Scalar::from_int(v.clone()),
        Ast::Var(i) => Scalar::var(*i),
        Ast::Add(x, y) => eval_scalar(x)?.add(&eval_scalar(y)?),
        Ast::Sub(x, y) => eval_scalar(x)?.sub(&eval_scalar(y)?),
        Ast::Mul(x, y) => eval_scalar(x)?.mul(&eval_scalar(y)?),
        Ast::Div(x, y) => eval_scalar(x)?.div(&eval_scalar(y)?)?,
        Ast::Neg(x) => eval_scalar(x)?.neg(),
        Ast::Pow(x, e) => eval_scalar(x)?.powi(*e)?,
    })
}

pub fn parse_poly(s: &str) -> Result<Poly, ExactError> {
    eval_poly(&parse_ast(s)?)
}

pub fn parse_scalar(s: &str) -> Result<Scalar, ExactError> {
    eval_scalar(&parse_ast(s)?)
}
