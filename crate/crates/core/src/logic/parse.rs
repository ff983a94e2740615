//! S-expression reader for formulas.
//!
//! ```text
//! (= a b) (<p a b) (<v a b)
//! (not f) (and f...) (or f...) (imp f g) (iff f g)
//! (E x f) (A x f)
//! ```
//! Variables match `[a-z][a-z0-9]*`.

use alloc::boxed::Box;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use super::formula::{Formula, Relation};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
enum Token<'a> {
    Open,
    Close,
    Word(&'a str),
}

struct Lexer<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Lexer<'a> {
    fn skip_ws(&mut self) {
        let bytes = self.src.as_bytes();
        while self.pos < bytes.len() && bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<(usize, Token<'a>)> {
        let save = self.pos;
        let t = self.next_token();
        self.pos = save;
        t
    }

    fn next_token(&mut self) -> Option<(usize, Token<'a>)> {
        self.skip_ws();
        let bytes = self.src.as_bytes();
        let start = self.pos;
        match bytes.get(start)? {
            b'(' => {
                self.pos += 1;
                Some((start, Token::Open))
            }
            b')' => {
                self.pos += 1;
                Some((start, Token::Close))
            }
            _ => {
                while self.pos < bytes.len()
                    && !bytes[self.pos].is_ascii_whitespace()
                    && bytes[self.pos] != b'('
                    && bytes[self.pos] != b')'
                {
                    self.pos += 1;
                }
                Some((start, Token::Word(&self.src[start..self.pos])))
            }
        }
    }
}

fn syntax(pos: usize, msg: impl Into<String>) -> Error {
    Error::Syntax {
        pos,
        msg: msg.into(),
    }
}

fn is_var(w: &str) -> bool {
    let mut chars = w.chars();
    matches!(chars.next(), Some('a'..='z')) && chars.all(|c| c.is_ascii_lowercase() || c.is_ascii_digit())
}

struct Parser<'a> {
    lex: Lexer<'a>,
}

impl<'a> Parser<'a> {
    fn expect_close(&mut self) -> Result<()> {
        match self.lex.next_token() {
            Some((_, Token::Close)) => Ok(()),
            Some((p, _)) => Err(syntax(p, "expected `)`")),
            None => Err(syntax(self.lex.src.len(), "unexpected end of input, expected `)`")),
        }
    }

    fn var(&mut self) -> Result<String> {
        match self.lex.next_token() {
            Some((p, Token::Word(w))) => {
                if is_var(w) {
                    Ok(w.to_string())
                } else {
                    Err(syntax(p, format!("invalid variable name `{w}`")))
                }
            }
            Some((p, _)) => Err(syntax(p, "expected a variable")),
            None => Err(syntax(self.lex.src.len(), "unexpected end of input, expected a variable")),
        }
    }

    fn formula(&mut self) -> Result<Formula> {
        let (p, tok) = self
            .lex
            .next_token()
            .ok_or_else(|| syntax(self.lex.src.len(), "unexpected end of input"))?;
        if tok != Token::Open {
            return Err(syntax(p, "expected `(`"));
        }
        let (hp, head) = match self.lex.next_token() {
            Some((hp, Token::Word(w))) => (hp, w),
            Some((hp, _)) => return Err(syntax(hp, "expected an operator")),
            None => return Err(syntax(self.lex.src.len(), "unexpected end of input")),
        };
        let f = match head {
            "=" | "<p" | "<v" => {
                let rel = match head {
                    "=" => Relation::Eq,
                    "<p" => Relation::LtP,
                    _ => Relation::LtV,
                };
                let a = self.var()?;
                let b = self.var()?;
                Formula::Atom(rel, a, b)
            }
            "not" => Formula::Not(Box::new(self.formula()?)),
            "and" | "or" => {
                let mut fs = Vec::new();
                while let Some((_, t)) = self.lex.peek() {
                    if t == Token::Close {
                        break;
                    }
                    fs.push(self.formula()?);
                }
                if head == "and" {
                    Formula::And(fs)
                } else {
                    Formula::Or(fs)
                }
            }
            "imp" | "iff" => {
                let f = Box::new(self.formula()?);
                let g = Box::new(self.formula()?);
                if head == "imp" {
                    Formula::Implies(f, g)
                } else {
                    Formula::Iff(f, g)
                }
            }
            "E" | "A" => {
                let x = self.var()?;
                let body = Box::new(self.formula()?);
                if head == "E" {
                    Formula::Exists(x, body)
                } else {
                    Formula::Forall(x, body)
                }
            }
            other => return Err(syntax(hp, format!("unknown operator `{other}`"))),
        };
        self.expect_close()?;
        Ok(f)
    }
}

/// Parses one formula (free variables allowed).
pub fn parse_formula(text: &str) -> Result<Formula> {
    let mut parser = Parser {
        lex: Lexer { src: text, pos: 0 },
    };
    let f = parser.formula()?;
    if let Some((p, _)) = parser.lex.next_token() {
        return Err(syntax(p, "trailing input after formula"));
    }
    Ok(f)
}

/// Parses a sentence, rejecting free variables.
pub fn parse_sentence(text: &str) -> Result<Formula> {
    let f = parse_formula(text)?;
    if let Some(v) = f.free_vars().into_iter().next() {
        return Err(Error::UnboundVariable(v));
    }
    Ok(f)
}
