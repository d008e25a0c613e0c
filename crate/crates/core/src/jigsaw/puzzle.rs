//! Jigsaw puzzles: linear pattern matching against a fixed multiset of pieces.
//!
//! Text format, one directive per line, `#` starting a comment:
//!
//! ```text
//! mode CQ
//! policy exact-once
//! var y1
//! gadget <I,R>
//! identity L*?y1 = I
//! ```

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::normal::{equal, Mode};
use crate::term::{ParseError, Pattern, Term};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum UsagePolicy {
    /// Every piece is used by exactly one variable.
    #[default]
    ExactOnce,
    /// No piece is used twice; some may be left over.
    AtMostOnce,
}

impl fmt::Display for UsagePolicy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            UsagePolicy::ExactOnce => "exact-once",
            UsagePolicy::AtMostOnce => "at-most-once",
        })
    }
}

impl FromStr for UsagePolicy {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "exact-once" => Ok(UsagePolicy::ExactOnce),
            "at-most-once" => Ok(UsagePolicy::AtMostOnce),
            _ => Err(format!("unknown policy {s:?}")),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Identity {
    pub lhs: Pattern,
    pub rhs: Term,
}

impl fmt::Display for Identity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} = {}", self.lhs, self.rhs)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PuzzleInstance {
    pub variables: Vec<String>,
    pub identities: Vec<Identity>,
    /// A multiset: equal pieces may repeat.
    pub gadgets: Vec<Term>,
    pub mode: Mode,
    pub policy: UsagePolicy,
}

/// Each variable mapped to the index of the piece it takes.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct PuzzleAssignment {
    pub slots: BTreeMap<String, usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PuzzleError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("line {line}: {source}")]
    Term { line: usize, source: ParseError },
    #[error("variable {0} occurs more than once")]
    NotLinear(String),
    #[error("variable {0} is not declared")]
    Undeclared(String),
    #[error("variable {0} is declared twice")]
    Redeclared(String),
}

impl PuzzleInstance {
    pub fn new(variables: Vec<String>, identities: Vec<Identity>, gadgets: Vec<Term>) -> Self {
        PuzzleInstance {
            variables,
            identities,
            gadgets,
            mode: Mode::CQ,
            policy: UsagePolicy::ExactOnce,
        }
    }

    /// Every variable is declared once and occurs at most once overall.
    pub fn check_linear(&self) -> Result<(), PuzzleError> {
        let mut declared = BTreeSet::new();
        for v in &self.variables {
            if !declared.insert(v.as_str()) {
                return Err(PuzzleError::Redeclared(v.clone()));
            }
        }
        let mut used = BTreeSet::new();
        for identity in &self.identities {
            for v in identity.lhs.variables() {
                if !declared.contains(v) {
                    return Err(PuzzleError::Undeclared(v.to_string()));
                }
                if !used.insert(v) {
                    return Err(PuzzleError::NotLinear(v.to_string()));
                }
            }
        }
        Ok(())
    }

    pub fn to_text(&self) -> String {
        self.to_string()
    }

    pub fn parse(text: &str) -> Result<PuzzleInstance, PuzzleError> {
        let mut p = PuzzleInstance::new(vec![], vec![], vec![]);
        for (n, raw) in text.lines().enumerate() {
            let line = n + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let (keyword, rest) = content
                .split_once(char::is_whitespace)
                .unwrap_or((content, ""));
            let rest = rest.trim();
            let syntax = |message: String| PuzzleError::Syntax { line, message };
            let term =
                |s: &str| Term::parse(s).map_err(|source| PuzzleError::Term { line, source });
            match keyword {
                "var" => {
                    if rest.is_empty() || rest.contains(char::is_whitespace) {
                        return Err(syntax(format!("bad variable name {rest:?}")));
                    }
                    p.variables.push(rest.to_string());
                }
                "gadget" => p.gadgets.push(term(rest)?),
                "identity" => {
                    let (lhs, rhs) = rest
                        .split_once('=')
                        .ok_or_else(|| syntax("identity needs '='".into()))?;
                    let lhs = Pattern::parse(lhs.trim())
                        .map_err(|source| PuzzleError::Term { line, source })?;
                    p.identities.push(Identity {
                        lhs,
                        rhs: term(rhs.trim())?,
                    });
                }
                "mode" => p.mode = rest.parse().map_err(syntax)?,
                "policy" => p.policy = rest.parse().map_err(syntax)?,
                _ => return Err(syntax(format!("unknown directive {keyword:?}"))),
            }
        }
        p.check_linear()?;
        Ok(p)
    }

    /// Substitutes the assignment into one identity and compares both sides.
    pub fn identity_holds(
        &self,
        identity: &Identity,
        lookup: &impl Fn(&str) -> Option<Term>,
    ) -> bool {
        identity
            .lhs
            .substitute(lookup)
            .is_some_and(|lhs| equal(&lhs, &identity.rhs, self.mode))
    }
}

impl fmt::Display for PuzzleInstance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "mode {}", self.mode)?;
        writeln!(f, "policy {}", self.policy)?;
        for v in &self.variables {
            writeln!(f, "var {v}")?;
        }
        for g in &self.gadgets {
            writeln!(f, "gadget {g}")?;
        }
        for identity in &self.identities {
            writeln!(f, "identity {identity}")?;
        }
        Ok(())
    }
}

impl PuzzleAssignment {
    pub fn render(&self, p: &PuzzleInstance) -> String {
        p.variables
            .iter()
            .filter_map(|v| {
                self.slots
                    .get(v)
                    .map(|&g| format!("{v} = {}\n", p.gadgets[g]))
            })
            .collect()
    }
}

/// Checks the usage policy and every identity.
pub fn verify_assignment(p: &PuzzleInstance, a: &PuzzleAssignment) -> bool {
    if p.variables.len() != a.slots.len() || p.variables.iter().any(|v| !a.slots.contains_key(v)) {
        return false;
    }
    let used: BTreeSet<usize> = a.slots.values().copied().collect();
    if used.len() != a.slots.len() || used.iter().any(|&g| g >= p.gadgets.len()) {
        return false;
    }
    if p.policy == UsagePolicy::ExactOnce && used.len() != p.gadgets.len() {
        return false;
    }
    let lookup = |name: &str| a.slots.get(name).map(|&g| p.gadgets[g].clone());
    p.identities
        .iter()
        .all(|identity| p.identity_holds(identity, &lookup))
}
