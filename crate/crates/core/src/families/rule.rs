//! Closed-form integer sequence rules such as `m*(j+2)^2` or `14^(i+1)`.
//!
//! Grammar: `+ - * /`, right-associative `^` with an integer exponent,
//! parentheses, decimal literals, variables, and the functions `floor`,
//! `isqrt` and `mod(a, b)`. Values are exact rationals.

use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use std::fmt;

#[derive(Clone, Debug, PartialEq, Eq)]
enum Node {
    Num(BigInt),
    Var(String),
    Neg(Box<Node>),
    Bin(char, Box<Node>, Box<Node>),
    Call(String, Vec<Node>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rule {
    src: String,
    ast: Node,
}

impl Rule {
    pub fn parse(src: &str) -> Result<Rule> {
        let toks = tokenize(src)?;
        let mut p = Parser { toks, pos: 0 };
        let ast = p.expr()?;
        if p.pos != p.toks.len() {
            return Err(Error::Parse(format!("trailing input in rule `{src}`")));
        }
        Ok(Rule { src: src.to_string(), ast })
    }

    pub fn source(&self) -> &str {
        &self.src
    }

    pub fn eval(&self, vars: &[(&str, BigInt)]) -> Result<BigRational> {
        eval(&self.ast, vars).map_err(|e| Error::InvalidConfig(format!("rule `{}`: {e}", self.src)))
    }

    pub fn eval_int(&self, vars: &[(&str, BigInt)]) -> Result<BigInt> {
        let v = self.eval(vars)?;
        if !v.is_integer() {
            return Err(Error::InvalidConfig(format!("rule `{}` gave non-integer {v}", self.src)));
        }
        Ok(v.to_integer())
    }

    pub fn uses(&self, var: &str) -> bool {
        fn walk(n: &Node, var: &str) -> bool {
            match n {
                Node::Num(_) => false,
                Node::Var(v) => v == var,
                Node::Neg(a) => walk(a, var),
                Node::Bin(_, a, b) => walk(a, var) || walk(b, var),
                Node::Call(_, args) => args.iter().any(|a| walk(a, var)),
            }
        }
        walk(&self.ast, var)
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.src)
    }
}

fn eval(n: &Node, vars: &[(&str, BigInt)]) -> std::result::Result<BigRational, String> {
    Ok(match n {
        Node::Num(v) => BigRational::from_integer(v.clone()),
        Node::Var(name) => match vars.iter().find(|(k, _)| k == name) {
            Some((_, v)) => BigRational::from_integer(v.clone()),
            None => return Err(format!("unbound variable `{name}`")),
        },
        Node::Neg(a) => -eval(a, vars)?,
        Node::Bin(op, a, b) => {
            let (x, y) = (eval(a, vars)?, eval(b, vars)?);
            match op {
                '+' => x + y,
                '-' => x - y,
                '*' => x * y,
                '/' => {
                    if y.is_zero() {
                        return Err("division by zero".into());
                    }
                    x / y
                }
                '^' => {
                    if !y.is_integer() {
                        return Err("non-integer exponent".into());
                    }
                    let e = y.to_integer().to_i32().ok_or("exponent too large")?;
                    if e < 0 && x.is_zero() {
                        return Err("zero to a negative power".into());
                    }
                    num_traits::pow::Pow::pow(&x, e)
                }
                _ => unreachable!(),
            }
        }
        Node::Call(f, args) => {
            let vals: Vec<BigRational> = args.iter().map(|a| eval(a, vars)).collect::<std::result::Result<_, _>>()?;
            match (f.as_str(), vals.as_slice()) {
                ("floor", [x]) => BigRational::from_integer(x.floor().to_integer()),
                ("isqrt", [x]) => {
                    let v = x.floor().to_integer();
                    if v.is_negative() {
                        return Err("isqrt of a negative value".into());
                    }
                    BigRational::from_integer(v.sqrt())
                }
                ("mod", [a, b]) if a.is_integer() && b.is_integer() && !b.is_zero() => {
                    use num_integer::Integer;
                    BigRational::from_integer(a.to_integer().mod_floor(&b.to_integer()))
                }
                _ => return Err(format!("bad call `{f}` with {} argument(s)", vals.len())),
            }
        }
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Op(char),
}

fn tokenize(s: &str) -> Result<Vec<Tok>> {
    let b = s.as_bytes();
    let mut i = 0;
    let mut out = Vec::new();
    while i < b.len() {
        let c = b[i] as char;
        if c.is_ascii_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let st = i;
            while i < b.len() && b[i].is_ascii_digit() {
                i += 1;
            }
            out.push(Tok::Num(s[st..i].parse().expect("digits")));
        } else if c.is_ascii_alphabetic() || c == '_' {
            let st = i;
            while i < b.len() && (b[i].is_ascii_alphanumeric() || b[i] == b'_') {
                i += 1;
            }
            out.push(Tok::Ident(s[st..i].to_string()));
        } else if "+-*/^(),".contains(c) {
            out.push(Tok::Op(c));
            i += 1;
        } else {
            return Err(Error::Parse(format!("unexpected `{c}` in rule `{s}`")));
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<Tok>,
    pos: usize,
}

impl Parser {
    fn peek_op(&self) -> Option<char> {
        match self.toks.get(self.pos) {
            Some(Tok::Op(c)) => Some(*c),
            _ => None,
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.peek_op() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(Error::Parse(format!("expected `{c}` in rule")))
        }
    }

    fn expr(&mut self) -> Result<Node> {
        let mut lhs = self.term()?;
        while let Some(c @ ('+' | '-')) = self.peek_op() {
            self.pos += 1;
            let rhs = self.term()?;
            lhs = Node::Bin(c, Box::new(lhs), Box::new(rhs));
        }
        Ok(lhs)
    }

    fn term(&mut self) -> Result<Node> {
        let mut lhs = self.unary()?;
        while let Some(c @ ('*' | '/')) = self.peek_op() {
            self.pos += 1;
            let rhs = self.unary()?;
            lhs = Node::Bin(c, Box::new(lhs), Box::new(rhs));
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Node> {
        if self.peek_op() == Some('-') {
            self.pos += 1;
            return Ok(Node::Neg(Box::new(self.unary()?)));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Node> {
        let base = self.atom()?;
        if self.peek_op() == Some('^') {
            self.pos += 1;
            let e = self.unary()?;
            return Ok(Node::Bin('^', Box::new(base), Box::new(e)));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Node> {
        match self.toks.get(self.pos).cloned() {
            Some(Tok::Num(v)) => {
                self.pos += 1;
                Ok(Node::Num(v))
            }
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                if self.peek_op() == Some('(') {
                    self.pos += 1;
                    let mut args = vec![self.expr()?];
                    while self.peek_op() == Some(',') {
                        self.pos += 1;
                        args.push(self.expr()?);
                    }
                    self.expect(')')?;
                    Ok(Node::Call(name, args))
                } else {
                    Ok(Node::Var(name))
                }
            }
            Some(Tok::Op('(')) => {
                self.pos += 1;
                let e = self.expr()?;
                self.expect(')')?;
                Ok(e)
            }
            _ => Err(Error::Parse("unexpected end of rule".into())),
        }
    }
}
