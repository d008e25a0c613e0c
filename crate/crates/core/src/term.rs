//! Raw expressions and their text syntax.
//!
//! ```text
//! term   := factor ('*' factor)*
//! factor := 'I' | 'L' | 'R' | '<' term ',' term '>' | '(' term ')'
//! ```
//!
//! `*` associates to the left and whitespace is ignored. Adjacent letters may
//! omit the `*`, so `RRL` reads as `R*R*L`. Patterns additionally allow
//! variables written `?name`.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::word::{Letter, ShiftWord};

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Term {
    I,
    L,
    R,
    Compose(Box<Term>, Box<Term>),
    Pair(Box<Term>, Box<Term>),
}

impl Term {
    pub fn compose(left: Term, right: Term) -> Term {
        Term::Compose(Box::new(left), Box::new(right))
    }

    pub fn pair(first: Term, second: Term) -> Term {
        Term::Pair(Box::new(first), Box::new(second))
    }

    pub fn letter(letter: Letter) -> Term {
        match letter {
            Letter::L => Term::L,
            Letter::R => Term::R,
        }
    }

    /// Left-associated product of the factors; `I` when there are none.
    pub fn product(factors: impl IntoIterator<Item = Term>) -> Term {
        factors.into_iter().reduce(Term::compose).unwrap_or(Term::I)
    }

    pub fn shift(word: &ShiftWord) -> Term {
        Term::product(word.letters().iter().map(|&l| Term::letter(l)))
    }

    pub fn node_count(&self) -> usize {
        match self {
            Term::I | Term::L | Term::R => 1,
            Term::Compose(a, b) | Term::Pair(a, b) => 1 + a.node_count() + b.node_count(),
        }
    }

    pub fn parse(text: &str) -> Result<Term, ParseError> {
        let pattern = Parser::new(text, false).parse_all()?;
        Ok(pattern
            .into_term()
            .expect("variables are rejected while parsing terms"))
    }
}

impl FromStr for Term {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Term::parse(s)
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::I => write!(f, "I"),
            Term::L => write!(f, "L"),
            Term::R => write!(f, "R"),
            Term::Pair(a, b) => write!(f, "<{a},{b}>"),
            Term::Compose(a, b) => match **b {
                Term::Compose(..) => write!(f, "{a}*({b})"),
                _ => write!(f, "{a}*{b}"),
            },
        }
    }
}

/// A term whose leaves may also be named variables.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Pattern {
    I,
    L,
    R,
    Var(String),
    Compose(Box<Pattern>, Box<Pattern>),
    Pair(Box<Pattern>, Box<Pattern>),
}

impl Pattern {
    pub fn compose(left: Pattern, right: Pattern) -> Pattern {
        Pattern::Compose(Box::new(left), Box::new(right))
    }

    pub fn pair(first: Pattern, second: Pattern) -> Pattern {
        Pattern::Pair(Box::new(first), Box::new(second))
    }

    pub fn var(name: impl Into<String>) -> Pattern {
        Pattern::Var(name.into())
    }

    pub fn product(factors: impl IntoIterator<Item = Pattern>) -> Pattern {
        factors
            .into_iter()
            .reduce(Pattern::compose)
            .unwrap_or(Pattern::I)
    }

    pub fn parse(text: &str) -> Result<Pattern, ParseError> {
        Parser::new(text, true).parse_all()
    }

    /// Variable occurrences, left to right, with repetition.
    pub fn variables(&self) -> Vec<&str> {
        let mut out = Vec::new();
        self.collect_vars(&mut out);
        out
    }

    fn collect_vars<'a>(&'a self, out: &mut Vec<&'a str>) {
        match self {
            Pattern::Var(name) => out.push(name),
            Pattern::Compose(a, b) | Pattern::Pair(a, b) => {
                a.collect_vars(out);
                b.collect_vars(out);
            }
            _ => {}
        }
    }

    /// Substitutes every variable; `None` if some variable is unbound.
    pub fn substitute(&self, lookup: &impl Fn(&str) -> Option<Term>) -> Option<Term> {
        Some(match self {
            Pattern::I => Term::I,
            Pattern::L => Term::L,
            Pattern::R => Term::R,
            Pattern::Var(name) => lookup(name)?,
            Pattern::Compose(a, b) => Term::compose(a.substitute(lookup)?, b.substitute(lookup)?),
            Pattern::Pair(a, b) => Term::pair(a.substitute(lookup)?, b.substitute(lookup)?),
        })
    }

    pub fn into_term(self) -> Option<Term> {
        self.substitute(&|_| None)
    }
}

impl From<&Term> for Pattern {
    fn from(term: &Term) -> Self {
        match term {
            Term::I => Pattern::I,
            Term::L => Pattern::L,
            Term::R => Pattern::R,
            Term::Compose(a, b) => Pattern::compose(Pattern::from(&**a), Pattern::from(&**b)),
            Term::Pair(a, b) => Pattern::pair(Pattern::from(&**a), Pattern::from(&**b)),
        }
    }
}

impl fmt::Display for Pattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Pattern::I => write!(f, "I"),
            Pattern::L => write!(f, "L"),
            Pattern::R => write!(f, "R"),
            Pattern::Var(name) => write!(f, "?{name}"),
            Pattern::Pair(a, b) => write!(f, "<{a},{b}>"),
            Pattern::Compose(a, b) => match **b {
                Pattern::Compose(..) => write!(f, "{a}*({b})"),
                _ => write!(f, "{a}*{b}"),
            },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("syntax error at offset {offset}: {message}")]
pub struct ParseError {
    pub offset: usize,
    pub message: String,
}

struct Parser<'a> {
    text: &'a str,
    pos: usize,
    allow_vars: bool,
}

impl<'a> Parser<'a> {
    fn new(text: &'a str, allow_vars: bool) -> Self {
        Parser {
            text,
            pos: 0,
            allow_vars,
        }
    }

    fn error<T>(&self, offset: usize, message: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError {
            offset,
            message: message.into(),
        })
    }

    fn skip_ws(&mut self) {
        while let Some(c) = self.text[self.pos..].chars().next() {
            if !c.is_whitespace() {
                break;
            }
            self.pos += c.len_utf8();
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.text[self.pos..].chars().next()
    }

    fn expect(&mut self, want: char) -> Result<(), ParseError> {
        match self.peek() {
            Some(c) if c == want => {
                self.pos += c.len_utf8();
                Ok(())
            }
            Some(c) => self.error(self.pos, format!("expected {want:?}, found {c:?}")),
            None => self.error(self.pos, format!("expected {want:?}, found end of input")),
        }
    }

    fn parse_all(mut self) -> Result<Pattern, ParseError> {
        let term = self.parse_term()?;
        match self.peek() {
            None => Ok(term),
            Some(c) => self.error(self.pos, format!("unexpected {c:?} after term")),
        }
    }

    fn parse_term(&mut self) -> Result<Pattern, ParseError> {
        let mut acc = self.parse_factor()?;
        loop {
            match self.peek() {
                Some('*') => {
                    self.pos += 1;
                    let rhs = self.parse_factor()?;
                    acc = Pattern::compose(acc, rhs);
                }
                Some('I' | 'L' | 'R') => {
                    let rhs = self.parse_factor()?;
                    acc = Pattern::compose(acc, rhs);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn parse_factor(&mut self) -> Result<Pattern, ParseError> {
        let start = {
            self.skip_ws();
            self.pos
        };
        match self.peek() {
            Some('I') => {
                self.pos += 1;
                Ok(Pattern::I)
            }
            Some('L') => {
                self.pos += 1;
                Ok(Pattern::L)
            }
            Some('R') => {
                self.pos += 1;
                Ok(Pattern::R)
            }
            Some('<') => {
                self.pos += 1;
                let first = self.parse_term()?;
                self.expect(',')?;
                let second = self.parse_term()?;
                self.expect('>')?;
                Ok(Pattern::pair(first, second))
            }
            Some('(') => {
                self.pos += 1;
                let inner = self.parse_term()?;
                self.expect(')')?;
                Ok(inner)
            }
            Some('?') if self.allow_vars => {
                self.pos += 1;
                let name_start = self.pos;
                let name: String = self.text[name_start..]
                    .chars()
                    .take_while(|c| c.is_ascii_alphanumeric() || *c == '_')
                    .collect();
                if name.is_empty() {
                    return self.error(name_start, "expected a variable name after '?'");
                }
                self.pos += name.len();
                Ok(Pattern::Var(name))
            }
            Some(c) => self.error(start, format!("unexpected {c:?}")),
            None => self.error(start, "unexpected end of input"),
        }
    }
}
