//! Integer expressions used by the catalog templates.
//!
//! Grammar: `||`, `&&`, comparisons, `+ -`, `* / %`, unary `- !`, integers,
//! parameter names and parentheses. Booleans are `0` and `1`. Weight
//! expressions are sums of `[coef *] letter(index)` such as
//! `pi(n-k) + 2*phi(1)`.

use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ExprError {
    #[error("unexpected character {0:?} in {1:?}")]
    BadChar(char, String),
    #[error("syntax error in {0:?}")]
    Syntax(String),
    #[error("unknown variable {0}")]
    UnknownVar(String),
    #[error("division by zero")]
    DivisionByZero,
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Int(i64),
    Ident(String),
    Op(&'static str),
    LParen,
    RParen,
}

const OPS: [&str; 16] = ["||", "&&", "==", "!=", "<=", ">=", "<", ">", "+", "-", "*", "/", "%", "!", "(", ")"];

fn lex(src: &str) -> Result<Vec<Tok>, ExprError> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            out.push(Tok::Int(s.parse().map_err(|_| ExprError::Syntax(src.into()))?));
        } else if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push(Tok::Ident(chars[start..i].iter().collect()));
        } else {
            let rest: String = chars[i..].iter().collect();
            let op = OPS.iter().find(|op| rest.starts_with(**op)).ok_or_else(|| ExprError::BadChar(c, src.into()))?;
            out.push(match *op {
                "(" => Tok::LParen,
                ")" => Tok::RParen,
                op => Tok::Op(op),
            });
            i += op.len();
        }
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<Tok>,
    pos: usize,
    env: &'a BTreeMap<String, i64>,
    src: &'a str,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str, env: &'a BTreeMap<String, i64>) -> Result<Self, ExprError> {
        Ok(Parser { toks: lex(src)?, pos: 0, env, src })
    }

    fn syntax(&self) -> ExprError {
        ExprError::Syntax(self.src.to_string())
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn eat_op(&mut self, ops: &[&str]) -> Option<&'static str> {
        match self.peek() {
            Some(Tok::Op(op)) if ops.contains(op) => {
                let op = *op;
                self.pos += 1;
                Some(op)
            }
            _ => None,
        }
    }

    fn expect(&mut self, t: Tok) -> Result<(), ExprError> {
        if self.peek() == Some(&t) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.syntax())
        }
    }

    fn finish(&self) -> Result<(), ExprError> {
        if self.pos == self.toks.len() {
            Ok(())
        } else {
            Err(self.syntax())
        }
    }

    fn or(&mut self) -> Result<i64, ExprError> {
        let mut v = self.and()?;
        while self.eat_op(&["||"]).is_some() {
            let r = self.and()?;
            v = i64::from(v != 0 || r != 0);
        }
        Ok(v)
    }

    fn and(&mut self) -> Result<i64, ExprError> {
        let mut v = self.cmp()?;
        while self.eat_op(&["&&"]).is_some() {
            let r = self.cmp()?;
            v = i64::from(v != 0 && r != 0);
        }
        Ok(v)
    }

    fn cmp(&mut self) -> Result<i64, ExprError> {
        let v = self.sum()?;
        match self.eat_op(&["==", "!=", "<=", ">=", "<", ">"]) {
            None => Ok(v),
            Some(op) => {
                let r = self.sum()?;
                Ok(i64::from(match op {
                    "==" => v == r,
                    "!=" => v != r,
                    "<=" => v <= r,
                    ">=" => v >= r,
                    "<" => v < r,
                    _ => v > r,
                }))
            }
        }
    }

    fn sum(&mut self) -> Result<i64, ExprError> {
        let mut v = self.product()?;
        while let Some(op) = self.eat_op(&["+", "-"]) {
            let r = self.product()?;
            v = if op == "+" { v + r } else { v - r };
        }
        Ok(v)
    }

    fn product(&mut self) -> Result<i64, ExprError> {
        let mut v = self.unary()?;
        while let Some(op) = self.eat_op(&["*", "/", "%"]) {
            let r = self.unary()?;
            v = match op {
                "*" => v * r,
                _ if r == 0 => return Err(ExprError::DivisionByZero),
                "/" => v.div_euclid(r),
                _ => v.rem_euclid(r),
            };
        }
        Ok(v)
    }

    fn unary(&mut self) -> Result<i64, ExprError> {
        match self.eat_op(&["-", "!"]) {
            Some("-") => Ok(-self.unary()?),
            Some(_) => Ok(i64::from(self.unary()? == 0)),
            None => self.atom(),
        }
    }

    fn atom(&mut self) -> Result<i64, ExprError> {
        match self.peek().cloned() {
            Some(Tok::Int(v)) => {
                self.pos += 1;
                Ok(v)
            }
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                self.env.get(&name).copied().ok_or(ExprError::UnknownVar(name))
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let v = self.or()?;
                self.expect(Tok::RParen)?;
                Ok(v)
            }
            _ => Err(self.syntax()),
        }
    }

    /// `letter(index)` where `letter` is one of `letters`.
    fn factor_ref(&mut self, letters: &[&str]) -> Result<Option<(usize, i64)>, ExprError> {
        if let (Some(Tok::Ident(name)), Some(Tok::LParen)) = (self.toks.get(self.pos), self.toks.get(self.pos + 1)) {
            if let Some(f) = letters.iter().position(|l| l == name) {
                self.pos += 2;
                let idx = self.or()?;
                self.expect(Tok::RParen)?;
                return Ok(Some((f, idx)));
            }
        }
        Ok(None)
    }
}

/// Evaluates an integer (or boolean) expression.
pub fn eval(src: &str, env: &BTreeMap<String, i64>) -> Result<i64, ExprError> {
    let mut p = Parser::new(src, env)?;
    let v = p.or()?;
    p.finish()?;
    Ok(v)
}

pub fn eval_bool(src: &str, env: &BTreeMap<String, i64>) -> Result<bool, ExprError> {
    Ok(eval(src, env)? != 0)
}

/// Parses a weight expression into `(factor, 1-based index, coefficient)`
/// terms; `letters[f]` names factor `f`.
pub fn eval_weight(src: &str, letters: &[&str], env: &BTreeMap<String, i64>) -> Result<Vec<(usize, i64, i64)>, ExprError> {
    let mut p = Parser::new(src, env)?;
    let mut terms = Vec::new();
    loop {
        let term = match p.factor_ref(letters)? {
            Some((f, idx)) => (f, idx, 1),
            None => {
                let coef = p.unary()?;
                if p.eat_op(&["*"]).is_none() {
                    return Err(p.syntax());
                }
                let (f, idx) = p.factor_ref(letters)?.ok_or_else(|| p.syntax())?;
                (f, idx, coef)
            }
        };
        terms.push(term);
        if p.eat_op(&["+"]).is_none() {
            break;
        }
    }
    p.finish()?;
    Ok(terms)
}
