//! Words in named generators.
//!
//! Grammar, whitespace insignificant:
//!
//! ```text
//! word := term ('*' term)*
//! term := NAME ('^' INT)? | 'e'
//! ```
//!
//! `NAME` is `[A-Za-z][A-Za-z0-9_]*` with `e` reserved for the identity.

use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use crate::{Error, Result};

/// The identity symbol.
pub const IDENTITY: &str = "e";

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Word {
    letters: Vec<(String, i64)>,
}

impl Word {
    pub fn empty() -> Self {
        Word::default()
    }

    /// Builds a word from `(name, exponent)` pairs. Zero exponents are dropped.
    pub fn from_letters<S: Into<String>, I: IntoIterator<Item = (S, i64)>>(letters: I) -> Self {
        Word {
            letters: letters
                .into_iter()
                .filter(|(_, exp)| *exp != 0)
                .map(|(name, exp)| (name.into(), exp))
                .collect(),
        }
    }

    pub fn letters(&self) -> &[(String, i64)] {
        &self.letters
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return f.write_str(IDENTITY);
        }
        for (i, (name, exp)) in self.letters.iter().enumerate() {
            if i > 0 {
                f.write_str("*")?;
            }
            f.write_str(name)?;
            if *exp != 1 {
                write!(f, "^{exp}")?;
            }
        }
        Ok(())
    }
}

pub fn is_identifier(name: &str) -> bool {
    let mut chars = name.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic())
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// A valid generator name: an identifier other than the identity symbol.
pub fn is_generator_name(name: &str) -> bool {
    is_identifier(name) && name != IDENTITY
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Token<'a> {
    Name(&'a str),
    Int(&'a str),
    Star,
    Caret,
    Minus,
    Plus,
}

fn tokenize(text: &str) -> Result<Vec<(usize, Token<'_>)>> {
    let bytes = text.as_bytes();
    let mut tokens = Vec::new();
    let mut pos = 0;
    while pos < bytes.len() {
        let c = bytes[pos];
        let start = pos;
        let token = match c {
            b' ' | b'\t' | b'\n' | b'\r' => {
                pos += 1;
                continue;
            }
            b'*' => Token::Star,
            b'^' => Token::Caret,
            b'-' => Token::Minus,
            b'+' => Token::Plus,
            c if c.is_ascii_alphabetic() => {
                while pos + 1 < bytes.len()
                    && (bytes[pos + 1].is_ascii_alphanumeric() || bytes[pos + 1] == b'_')
                {
                    pos += 1;
                }
                Token::Name(&text[start..=pos])
            }
            c if c.is_ascii_digit() => {
                while pos + 1 < bytes.len() && bytes[pos + 1].is_ascii_digit() {
                    pos += 1;
                }
                Token::Int(&text[start..=pos])
            }
            _ => {
                return Err(syntax(start, "unexpected character"));
            }
        };
        tokens.push((start, token));
        pos += 1;
    }
    Ok(tokens)
}

fn syntax(offset: usize, message: &str) -> Error {
    Error::Syntax { offset, message: message.to_string() }
}

struct Parser<'a> {
    tokens: Vec<(usize, Token<'a>)>,
    pos: usize,
    end: usize,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Token<'a>> {
        self.tokens.get(self.pos).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.tokens.get(self.pos).map_or(self.end, |(o, _)| *o)
    }

    fn term(&mut self, letters: &mut Vec<(String, i64)>) -> Result<()> {
        let name = match self.peek() {
            Some(Token::Name(name)) => *name,
            _ => return Err(syntax(self.offset(), "expected a generator name or `e`")),
        };
        self.pos += 1;
        if name == IDENTITY {
            if self.peek() == Some(&Token::Caret) {
                return Err(syntax(self.offset(), "the identity takes no exponent"));
            }
            return Ok(());
        }
        let mut exp = 1i64;
        if self.peek() == Some(&Token::Caret) {
            self.pos += 1;
            exp = self.int()?;
        }
        letters.push((name.to_string(), exp));
        Ok(())
    }

    fn int(&mut self) -> Result<i64> {
        let start = self.offset();
        let negative = match self.peek() {
            Some(Token::Minus) => {
                self.pos += 1;
                true
            }
            Some(Token::Plus) => {
                self.pos += 1;
                false
            }
            _ => false,
        };
        let digits = match self.peek() {
            Some(Token::Int(digits)) => *digits,
            _ => return Err(syntax(self.offset(), "expected an integer exponent")),
        };
        self.pos += 1;
        let magnitude: i64 = digits.parse().map_err(|_| syntax(start, "exponent out of range"))?;
        let exp = if negative { -magnitude } else { magnitude };
        if exp == 0 {
            return Err(syntax(start, "exponent must be nonzero"));
        }
        Ok(exp)
    }
}

/// Parses a word; `e` is the empty word.
pub fn parse_word(text: &str) -> Result<Word> {
    let mut parser = Parser { tokens: tokenize(text)?, pos: 0, end: text.len() };
    let mut letters = Vec::new();
    parser.term(&mut letters)?;
    while parser.peek() == Some(&Token::Star) {
        parser.pos += 1;
        parser.term(&mut letters)?;
    }
    if parser.pos < parser.tokens.len() {
        return Err(syntax(parser.offset(), "expected `*` or end of input"));
    }
    Ok(Word { letters })
}
