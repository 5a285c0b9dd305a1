//! Recursive-descent parser for the query language.
//!
//! ```text
//! formula := iff
//! iff     := imp ("<->" imp)*
//! imp     := or ("->" imp)?
//! or      := and (("|" | "∨") and)*
//! and     := unary (("&" | "∧") unary)*
//! unary   := ("~" | "¬") unary | atom | "(" formula ")" | "true" | "false"
//!          | ("forall" | "exists") IDENT "." formula
//! atom    := IDENT ("(" IDENT ("," IDENT)* ")")?
//! ```
//!
//! `↔`, `→`, `⊤` and `⊥` are accepted alongside the ASCII spellings.

use super::formula::Formula;
use super::vocab::Vocabulary;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
enum Token {
    Ident(String),
    LParen,
    RParen,
    Comma,
    Dot,
    Not,
    And,
    Or,
    Implies,
    Iff,
}

impl Token {
    fn describe(&self) -> String {
        match self {
            Token::Ident(s) => format!("`{s}`"),
            Token::LParen => "`(`".into(),
            Token::RParen => "`)`".into(),
            Token::Comma => "`,`".into(),
            Token::Dot => "`.`".into(),
            Token::Not => "`~`".into(),
            Token::And => "`&`".into(),
            Token::Or => "`|`".into(),
            Token::Implies => "`->`".into(),
            Token::Iff => "`<->`".into(),
        }
    }
}

/// Positions are character offsets into the input.
fn tokenize(text: &str) -> Result<Vec<(usize, Token)>> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let start = i;
        let tok = match c {
            c if c.is_whitespace() => {
                i += 1;
                continue;
            }
            '(' => Token::LParen,
            ')' => Token::RParen,
            ',' => Token::Comma,
            '.' => Token::Dot,
            '~' | '!' | '¬' => Token::Not,
            '&' | '∧' => Token::And,
            '|' | '∨' => Token::Or,
            '→' => Token::Implies,
            '↔' => Token::Iff,
            '⊤' => Token::Ident("true".into()),
            '⊥' => Token::Ident("false".into()),
            '∀' => Token::Ident("forall".into()),
            '∃' => Token::Ident("exists".into()),
            '-' if chars.get(i + 1) == Some(&'>') => {
                i += 1;
                Token::Implies
            }
            '<' if chars.get(i + 1) == Some(&'-') && chars.get(i + 2) == Some(&'>') => {
                i += 2;
                Token::Iff
            }
            c if c.is_alphabetic() || c == '_' => {
                while i + 1 < chars.len()
                    && (chars[i + 1].is_alphanumeric() || matches!(chars[i + 1], '_' | '\''))
                {
                    i += 1;
                }
                Token::Ident(chars[start..=i].iter().collect())
            }
            other => {
                return Err(Error::Syntax {
                    position: start,
                    message: format!("unexpected character `{other}`"),
                })
            }
        };
        out.push((start, tok));
        i += 1;
    }
    Ok(out)
}

struct Parser<'a> {
    tokens: Vec<(usize, Token)>,
    pos: usize,
    end: usize,
    vocab: &'a Vocabulary,
    bound: Vec<String>,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.tokens.get(self.pos).map_or(self.end, |(p, _)| *p)
    }

    fn error<T>(&self, message: impl Into<String>) -> Result<T> {
        let message = match self.peek() {
            Some(t) => format!("{} (found {})", message.into(), t.describe()),
            None => format!("{} (found end of input)", message.into()),
        };
        Err(Error::Syntax {
            position: self.offset(),
            message,
        })
    }

    fn eat(&mut self, tok: &Token) -> bool {
        if self.peek() == Some(tok) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, tok: Token) -> Result<()> {
        if self.eat(&tok) {
            Ok(())
        } else {
            self.error(format!("expected {}", tok.describe()))
        }
    }

    fn ident(&mut self) -> Result<String> {
        match self.peek() {
            Some(Token::Ident(s)) => {
                let s = s.clone();
                self.pos += 1;
                Ok(s)
            }
            _ => self.error("expected identifier"),
        }
    }

    fn formula(&mut self) -> Result<Formula> {
        let mut lhs = self.implication()?;
        while self.eat(&Token::Iff) {
            let rhs = self.implication()?;
            lhs = Formula::iff(lhs, rhs);
        }
        Ok(lhs)
    }

    fn implication(&mut self) -> Result<Formula> {
        let lhs = self.disjunction()?;
        if self.eat(&Token::Implies) {
            let rhs = self.implication()?;
            return Ok(Formula::implies(lhs, rhs));
        }
        Ok(lhs)
    }

    fn disjunction(&mut self) -> Result<Formula> {
        let mut lhs = self.conjunction()?;
        while self.eat(&Token::Or) {
            let rhs = self.conjunction()?;
            lhs = Formula::or(lhs, rhs);
        }
        Ok(lhs)
    }

    fn conjunction(&mut self) -> Result<Formula> {
        let mut lhs = self.unary()?;
        while self.eat(&Token::And) {
            let rhs = self.unary()?;
            lhs = Formula::and(lhs, rhs);
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Formula> {
        match self.peek() {
            Some(Token::Not) => {
                self.pos += 1;
                Ok(Formula::not(self.unary()?))
            }
            Some(Token::LParen) => {
                self.pos += 1;
                let f = self.formula()?;
                self.expect(Token::RParen)?;
                Ok(f)
            }
            Some(Token::Ident(name)) => {
                let name = name.clone();
                self.pos += 1;
                match name.as_str() {
                    "true" => Ok(Formula::Top),
                    "false" => Ok(Formula::Bottom),
                    "forall" | "exists" => self.quantified(name == "forall"),
                    _ => self.atom(name),
                }
            }
            _ => self.error("expected a formula"),
        }
    }

    fn quantified(&mut self, universal: bool) -> Result<Formula> {
        let var = self.ident()?;
        self.expect(Token::Dot)?;
        self.bound.push(var.clone());
        let body = self.formula();
        self.bound.pop();
        let body = Box::new(body?);
        Ok(if universal {
            Formula::ForAll(var, body)
        } else {
            Formula::Exists(var, body)
        })
    }

    fn atom(&mut self, name: String) -> Result<Formula> {
        let start = self.tokens[self.pos - 1].0;
        if !self.eat(&Token::LParen) {
            return Formula::atom(self.vocab, &name);
        }
        let mut args = vec![self.ident()?];
        while self.eat(&Token::Comma) {
            args.push(self.ident()?);
        }
        self.expect(Token::RParen)?;

        let pred = self
            .vocab
            .predicate(&name)
            .ok_or_else(|| Error::UnknownSymbol(name.clone()))?;
        if pred.arity != args.len() {
            return Err(Error::Syntax {
                position: start,
                message: format!(
                    "`{name}` takes {} arguments, got {}",
                    pred.arity,
                    args.len()
                ),
            });
        }
        let mut has_var = false;
        for arg in &args {
            if self.bound.contains(arg) {
                has_var = true;
            } else if !self.vocab.is_constant(arg) {
                return Err(Error::UnknownSymbol(arg.clone()));
            }
        }
        if has_var {
            Ok(Formula::Pred { name, args })
        } else {
            Formula::atom(self.vocab, &format!("{}({})", name, args.join(",")))
        }
    }
}

/// Parses one formula, resolving atoms against `vocab`. Quantifiers are kept;
/// call [`Formula::ground`] to expand them.
pub fn parse(text: &str, vocab: &Vocabulary) -> Result<Formula> {
    let tokens = tokenize(text)?;
    let mut parser = Parser {
        tokens,
        pos: 0,
        end: text.chars().count(),
        vocab,
        bound: Vec::new(),
    };
    let f = parser.formula()?;
    if parser.pos < parser.tokens.len() {
        return parser.error("unexpected trailing input");
    }
    Ok(f)
}

/// Parses and grounds in one step.
pub fn parse_ground(text: &str, vocab: &Vocabulary) -> Result<Formula> {
    parse(text, vocab)?.ground(vocab)
}

/// Parses a `;`-separated premise list. Blank segments are skipped.
pub fn parse_premises(text: &str, vocab: &Vocabulary) -> Result<Vec<Formula>> {
    text.split(';')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| parse_ground(s, vocab))
        .collect()
}
