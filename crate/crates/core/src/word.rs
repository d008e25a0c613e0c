//! Words over the two projections.
//!
//! The same letters are read in two orientations throughout the crate:
//!
//! * [`ShiftWord`] stores letters in *composition* order. The word `s1 s2 .. sk`
//!   denotes the product `s1*s2*..*sk`, and when it multiplies a normal form on
//!   the left the last letter acts first.
//! * [`Config`] stores letters in *consumption* order, the order in which a
//!   stack machine pops them. The front of a config is the top of the stack.
//!
//! `Config::from(&ShiftWord)` and `ShiftWord::from(&Config)` reverse the
//! letters; the two conversions are mutually inverse.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Letter {
    L,
    R,
}

impl Letter {
    pub const ALL: [Letter; 2] = [Letter::L, Letter::R];

    pub fn as_char(self) -> char {
        match self {
            Letter::L => 'L',
            Letter::R => 'R',
        }
    }

    pub fn side(self) -> Side {
        match self {
            Letter::L => Side::First,
            Letter::R => Side::Second,
        }
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_char())
    }
}

/// Which component of a pair a path step selects.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Side {
    First,
    Second,
}

impl Side {
    pub fn letter(self) -> Letter {
        match self {
            Side::First => Letter::L,
            Side::Second => Letter::R,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("invalid word at offset {offset}: {message}")]
pub struct WordParseError {
    pub offset: usize,
    pub message: String,
}

/// A shift: a word over `{L, R}` in composition order. The empty word is `I`.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ShiftWord(Vec<Letter>);

impl ShiftWord {
    pub fn empty() -> Self {
        ShiftWord(Vec::new())
    }

    pub fn new(letters: Vec<Letter>) -> Self {
        ShiftWord(letters)
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `self * other` as words.
    pub fn concat(&self, other: &ShiftWord) -> ShiftWord {
        let mut letters = self.0.clone();
        letters.extend_from_slice(&other.0);
        ShiftWord(letters)
    }

    /// `letter * self`.
    pub fn prepend(&self, letter: Letter) -> ShiftWord {
        let mut letters = Vec::with_capacity(self.0.len() + 1);
        letters.push(letter);
        letters.extend_from_slice(&self.0);
        ShiftWord(letters)
    }

    pub fn is_suffix_of(&self, other: &ShiftWord) -> bool {
        other.0.ends_with(&self.0)
    }

    /// The compact spelling, e.g. `RRL`, or `I` for the empty word.
    pub fn compact(&self) -> String {
        if self.0.is_empty() {
            "I".to_string()
        } else {
            self.0.iter().map(|l| l.as_char()).collect()
        }
    }
}

impl From<Vec<Letter>> for ShiftWord {
    fn from(letters: Vec<Letter>) -> Self {
        ShiftWord(letters)
    }
}

impl From<&Config> for ShiftWord {
    fn from(config: &Config) -> Self {
        ShiftWord(config.0.iter().rev().copied().collect())
    }
}

/// Prints in term syntax: `R*R*L`, or `I` when empty.
impl fmt::Display for ShiftWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "I");
        }
        for (i, letter) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, "*")?;
            }
            write!(f, "{letter}")?;
        }
        Ok(())
    }
}

/// Accepts `R*R*L`, the compact `RRL`, and `I` factors anywhere (`I` alone is
/// the empty word).
impl Serialize for ShiftWord {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl FromStr for ShiftWord {
    type Err = WordParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut letters = Vec::new();
        let mut saw_factor = false;
        let mut expect_factor = true;
        for (offset, c) in s.char_indices() {
            match c {
                'L' | 'R' | 'I' => {
                    if c == 'L' {
                        letters.push(Letter::L);
                    } else if c == 'R' {
                        letters.push(Letter::R);
                    }
                    saw_factor = true;
                    expect_factor = false;
                }
                '*' if !expect_factor => expect_factor = true,
                c if c.is_whitespace() => {}
                _ => {
                    return Err(WordParseError {
                        offset,
                        message: format!("unexpected {c:?}"),
                    })
                }
            }
        }
        if !saw_factor || expect_factor {
            return Err(WordParseError {
                offset: s.len(),
                message: "expected L, R or I".into(),
            });
        }
        Ok(ShiftWord(letters))
    }
}

/// Stack contents in consumption order; the front is the top of the stack.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Config(Vec<Letter>);

impl Config {
    pub fn empty() -> Self {
        Config(Vec::new())
    }

    pub fn new(letters: Vec<Letter>) -> Self {
        Config(letters)
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn starts_with(&self, prefix: &Config) -> bool {
        self.0.starts_with(&prefix.0)
    }

    /// Replaces the prefix of length `pop_len` with `push`.
    pub fn rewrite_prefix(&self, pop_len: usize, push: &Config) -> Config {
        let mut letters = Vec::with_capacity(push.0.len() + self.0.len() - pop_len);
        letters.extend_from_slice(&push.0);
        letters.extend_from_slice(&self.0[pop_len..]);
        Config(letters)
    }
}

impl From<Vec<Letter>> for Config {
    fn from(letters: Vec<Letter>) -> Self {
        Config(letters)
    }
}

impl From<&ShiftWord> for Config {
    fn from(word: &ShiftWord) -> Self {
        Config(word.0.iter().rev().copied().collect())
    }
}

/// Letters followed by the bottom marker: `RRL^`, or `^` when empty.
impl fmt::Display for Config {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for letter in &self.0 {
            write!(f, "{letter}")?;
        }
        write!(f, "^")
    }
}

impl FromStr for Config {
    type Err = WordParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let body = s.trim();
        let body = body.strip_suffix('^').unwrap_or(body);
        let mut letters = Vec::with_capacity(body.len());
        for (offset, c) in body.char_indices() {
            match c {
                'L' => letters.push(Letter::L),
                'R' => letters.push(Letter::R),
                _ => {
                    return Err(WordParseError {
                        offset,
                        message: format!("unexpected {c:?} in config"),
                    })
                }
            }
        }
        Ok(Config(letters))
    }
}

/// A root-to-leaf path in a normal form.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LeafAddress(Vec<Side>);

impl LeafAddress {
    pub fn root() -> Self {
        LeafAddress(Vec::new())
    }

    pub fn new(path: Vec<Side>) -> Self {
        LeafAddress(path)
    }

    pub fn path(&self) -> &[Side] {
        &self.0
    }

    pub fn child(&self, side: Side) -> LeafAddress {
        let mut path = self.0.clone();
        path.push(side);
        LeafAddress(path)
    }

    /// The path as a stack configuration: first step on top.
    pub fn as_config(&self) -> Config {
        Config(self.0.iter().map(|s| s.letter()).collect())
    }

    /// The shift that extracts this position: path letters reversed.
    pub fn access_word(&self) -> ShiftWord {
        ShiftWord::from(&self.as_config())
    }
}

impl fmt::Display for LeafAddress {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "root");
        }
        for (i, side) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ".")?;
            }
            match side {
                Side::First => write!(f, "first")?,
                Side::Second => write!(f, "second")?,
            }
        }
        Ok(())
    }
}
