//! Tokenizer and parser for the sum-of-products notation shared by every text
//! format in the crate:
//!
//! ```text
//! sum     := term (('+' | '-') term)*
//! term    := ['+' | '-'] factor ('*' factor)*
//! factor  := rational | ident ['^' k] | 'd/d' ident | '(' sum ')' ['^' k]
//! ```
//!
//! Products are kept in the written order; interpreting them (commutative
//! polynomial, enveloping algebra word, Weyl composition) is up to the caller.

use crate::rational::{parse_rational, Rational};

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Number(Rational),
    Ident(String),
    Deriv(String),
    Star,
    Caret,
    Plus,
    Minus,
    LParen,
    RParen,
}

fn is_ident_start(c: char) -> bool {
    c.is_ascii_alphabetic()
}

fn is_ident_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_'
}

fn tokenize(text: &str) -> Result<Vec<Token>, String> {
    let chars: Vec<char> = text.chars().collect();
    let mut tokens = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        match c {
            c if c.is_whitespace() => i += 1,
            '*' => {
                tokens.push(Token::Star);
                i += 1;
            }
            '^' => {
                tokens.push(Token::Caret);
                i += 1;
            }
            '+' => {
                tokens.push(Token::Plus);
                i += 1;
            }
            '-' => {
                tokens.push(Token::Minus);
                i += 1;
            }
            '(' => {
                tokens.push(Token::LParen);
                i += 1;
            }
            ')' => {
                tokens.push(Token::RParen);
                i += 1;
            }
            c if c.is_ascii_digit() => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                if i + 1 < chars.len() && chars[i] == '/' && chars[i + 1].is_ascii_digit() {
                    i += 1;
                    while i < chars.len() && chars[i].is_ascii_digit() {
                        i += 1;
                    }
                }
                let lit: String = chars[start..i].iter().collect();
                let q = parse_rational(&lit).ok_or_else(|| format!("invalid rational `{lit}`"))?;
                tokens.push(Token::Number(q));
            }
            c if is_ident_start(c) => {
                let start = i;
                while i < chars.len() && is_ident_char(chars[i]) {
                    i += 1;
                }
                let ident: String = chars[start..i].iter().collect();
                let derivative = ident == "d"
                    && i + 2 < chars.len()
                    && chars[i] == '/'
                    && chars[i + 1] == 'd'
                    && is_ident_start(chars[i + 2]);
                if derivative {
                    i += 2;
                    let vstart = i;
                    while i < chars.len() && is_ident_char(chars[i]) {
                        i += 1;
                    }
                    tokens.push(Token::Deriv(chars[vstart..i].iter().collect()));
                } else {
                    tokens.push(Token::Ident(ident));
                }
            }
            other => return Err(format!("unexpected character `{other}`")),
        }
    }
    Ok(tokens)
}

#[derive(Debug, Clone, PartialEq)]
pub enum Factor {
    Number(Rational),
    Symbol { name: String, power: u32 },
    Derivative(String),
    Group { sum: Sum, power: u32 },
}

/// A signed product of factors, in written order.
#[derive(Debug, Clone, PartialEq)]
pub struct Product {
    pub negative: bool,
    pub factors: Vec<Factor>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Sum {
    pub terms: Vec<Product>,
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn next(&mut self) -> Option<Token> {
        let t = self.tokens.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn sum(&mut self) -> Result<Sum, String> {
        let mut terms = vec![self.term(true)?];
        while let Some(t) = self.peek() {
            match t {
                Token::Plus | Token::Minus => terms.push(self.term(false)?),
                _ => break,
            }
        }
        Ok(Sum { terms })
    }

    fn term(&mut self, first: bool) -> Result<Product, String> {
        let mut negative = false;
        match self.peek() {
            Some(Token::Minus) => {
                negative = true;
                self.pos += 1;
            }
            Some(Token::Plus) => self.pos += 1,
            _ if !first => return Err("expected `+` or `-`".into()),
            _ => {}
        }
        let mut factors = vec![self.factor()?];
        while self.peek() == Some(&Token::Star) {
            self.pos += 1;
            factors.push(self.factor()?);
        }
        Ok(Product { negative, factors })
    }

    fn power(&mut self) -> Result<u32, String> {
        if self.peek() != Some(&Token::Caret) {
            return Ok(1);
        }
        self.pos += 1;
        match self.next() {
            Some(Token::Number(q)) if q.is_integer() => {
                u32::try_from(q.to_integer()).map_err(|_| "exponent out of range".to_string())
            }
            _ => Err("expected a non-negative integer exponent after `^`".into()),
        }
    }

    fn factor(&mut self) -> Result<Factor, String> {
        match self.next() {
            Some(Token::Number(q)) => Ok(Factor::Number(q)),
            Some(Token::Ident(name)) => {
                let power = self.power()?;
                Ok(Factor::Symbol { name, power })
            }
            Some(Token::Deriv(var)) => Ok(Factor::Derivative(var)),
            Some(Token::LParen) => {
                let sum = self.sum()?;
                if self.next() != Some(Token::RParen) {
                    return Err("expected `)`".into());
                }
                let power = self.power()?;
                Ok(Factor::Group { sum, power })
            }
            Some(t) => Err(format!("unexpected token {t:?}")),
            None => Err("unexpected end of expression".into()),
        }
    }
}

/// Parses a full sum; trailing tokens are an error.
pub fn parse_sum(text: &str) -> Result<Sum, String> {
    let tokens = tokenize(text)?;
    if tokens.is_empty() {
        return Err("empty expression".into());
    }
    let mut p = Parser { tokens, pos: 0 };
    let sum = p.sum()?;
    if p.pos < p.tokens.len() {
        return Err(format!("unexpected trailing token {:?}", p.tokens[p.pos]));
    }
    Ok(sum)
}

/// Strips `#` comments and joins lines, for multi-line expression files.
pub fn strip_comments(text: &str) -> String {
    text.lines()
        .map(|l| l.split('#').next().unwrap_or(""))
        .collect::<Vec<_>>()
        .join(" ")
}
