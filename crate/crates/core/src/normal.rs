//! Normal forms, their product, and the two word problems.
//!
//! A [`NormalForm`] is a binary pair-tree with shift words at its leaves.
//! Every expression of the free quasiproduct monoid has exactly one such form
//! (the projection, pointwise-lifting and identity rules exhausted). The
//! Cartesian normal form is obtained from it by collapsing, bottom-up, every
//! pair of sibling leaves `<L*w, R*w>` into `w`; the case `w = I` turns
//! `<L,R>` into `I`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::term::{ParseError, Term};
use crate::word::{Config, LeafAddress, Letter, ShiftWord, Side};

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum NormalForm {
    Leaf(ShiftWord),
    Node(Box<NormalForm>, Box<NormalForm>),
}

/// Which monoid a word problem is posed in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Mode {
    /// Free categorical quasiproduct monoid: no surjectivity.
    CQ,
    /// Free Cartesian monoid.
    CM,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Mode::CQ => write!(f, "CQ"),
            Mode::CM => write!(f, "CM"),
        }
    }
}

impl FromStr for Mode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "CQ" | "cq" => Ok(Mode::CQ),
            "CM" | "cm" => Ok(Mode::CM),
            other => Err(format!("unknown mode {other:?}")),
        }
    }
}

impl NormalForm {
    pub fn identity() -> Self {
        NormalForm::Leaf(ShiftWord::empty())
    }

    pub fn leaf(word: ShiftWord) -> Self {
        NormalForm::Leaf(word)
    }

    pub fn node(first: NormalForm, second: NormalForm) -> Self {
        NormalForm::Node(Box::new(first), Box::new(second))
    }

    pub fn is_identity(&self) -> bool {
        matches!(self, NormalForm::Leaf(w) if w.is_empty())
    }

    pub fn is_leaf(&self) -> bool {
        matches!(self, NormalForm::Leaf(_))
    }

    pub fn leaf_word(&self) -> Option<&ShiftWord> {
        match self {
            NormalForm::Leaf(w) => Some(w),
            NormalForm::Node(..) => None,
        }
    }

    /// Parses a term and returns its quasiproduct normal form.
    pub fn parse(text: &str) -> Result<NormalForm, ParseError> {
        Term::parse(text).map(|t| cq_normalize(&t))
    }

    pub fn to_term(&self) -> Term {
        match self {
            NormalForm::Leaf(w) => Term::shift(w),
            NormalForm::Node(a, b) => Term::pair(a.to_term(), b.to_term()),
        }
    }

    pub fn leaf_count(&self) -> usize {
        match self {
            NormalForm::Leaf(_) => 1,
            NormalForm::Node(a, b) => a.leaf_count() + b.leaf_count(),
        }
    }

    pub fn internal_count(&self) -> usize {
        match self {
            NormalForm::Leaf(_) => 0,
            NormalForm::Node(a, b) => 1 + a.internal_count() + b.internal_count(),
        }
    }

    pub fn depth(&self) -> usize {
        match self {
            NormalForm::Leaf(_) => 0,
            NormalForm::Node(a, b) => 1 + a.depth().max(b.depth()),
        }
    }

    /// Total letters plus nodes; a rough size measure for search bounds.
    pub fn size(&self) -> usize {
        match self {
            NormalForm::Leaf(w) => 1 + w.len(),
            NormalForm::Node(a, b) => 1 + a.size() + b.size(),
        }
    }

    pub fn child(&self, side: Side) -> Option<&NormalForm> {
        match (self, side) {
            (NormalForm::Node(a, _), Side::First) => Some(a),
            (NormalForm::Node(_, b), Side::Second) => Some(b),
            (NormalForm::Leaf(_), _) => None,
        }
    }

    pub fn subtree(&self, path: &[Side]) -> Option<&NormalForm> {
        path.iter().try_fold(self, |nf, &side| nf.child(side))
    }

    /// Paths of the internal nodes in pre-order; the root first when it is a node.
    pub fn internal_paths(&self) -> Vec<LeafAddress> {
        let mut out = Vec::new();
        fn walk(nf: &NormalForm, here: LeafAddress, out: &mut Vec<LeafAddress>) {
            if let NormalForm::Node(a, b) = nf {
                out.push(here.clone());
                walk(a, here.child(Side::First), out);
                walk(b, here.child(Side::Second), out);
            }
        }
        walk(self, LeafAddress::root(), &mut out);
        out
    }

    /// Rebuilds a tree from `(address, word)` entries. Returns `None` unless the
    /// addresses form exactly the leaves of a binary tree.
    pub fn from_shifts(entries: &[(LeafAddress, ShiftWord)]) -> Option<NormalForm> {
        fn build(entries: &[(&[Side], &ShiftWord)]) -> Option<NormalForm> {
            match entries {
                [] => None,
                [([], word)] => Some(NormalForm::Leaf((*word).clone())),
                _ => {
                    let mut first = Vec::new();
                    let mut second = Vec::new();
                    for (path, word) in entries {
                        match path.split_first() {
                            Some((Side::First, rest)) => first.push((rest, *word)),
                            Some((Side::Second, rest)) => second.push((rest, *word)),
                            None => return None,
                        }
                    }
                    Some(NormalForm::node(build(&first)?, build(&second)?))
                }
            }
        }
        let borrowed: Vec<(&[Side], &ShiftWord)> =
            entries.iter().map(|(a, w)| (a.path(), w)).collect();
        build(&borrowed)
    }
}

impl fmt::Display for NormalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NormalForm::Leaf(w) => write!(f, "{w}"),
            NormalForm::Node(a, b) => write!(f, "<{a},{b}>"),
        }
    }
}

impl Serialize for NormalForm {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl FromStr for NormalForm {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        NormalForm::parse(s)
    }
}

/// The quasiproduct normal form of `t`.
pub fn cq_normalize(t: &Term) -> NormalForm {
    match t {
        Term::I => NormalForm::identity(),
        Term::L => NormalForm::Leaf(ShiftWord::new(vec![Letter::L])),
        Term::R => NormalForm::Leaf(ShiftWord::new(vec![Letter::R])),
        Term::Pair(a, b) => NormalForm::node(cq_normalize(a), cq_normalize(b)),
        Term::Compose(a, b) => multiply(&cq_normalize(a), &cq_normalize(b)),
    }
}

/// The Cartesian normal form of `t`.
pub fn cm_normalize(t: &Term) -> NormalForm {
    collapse(&cq_normalize(t))
}

pub fn normalize(t: &Term, mode: Mode) -> NormalForm {
    match mode {
        Mode::CQ => cq_normalize(t),
        Mode::CM => cm_normalize(t),
    }
}

/// Rewrites `<L*w, R*w>` to `w` bottom-up until none remain.
pub fn collapse(nf: &NormalForm) -> NormalForm {
    match nf {
        NormalForm::Leaf(_) => nf.clone(),
        NormalForm::Node(a, b) => {
            let a = collapse(a);
            let b = collapse(b);
            if let (NormalForm::Leaf(x), NormalForm::Leaf(y)) = (&a, &b) {
                if let (Some((Letter::L, xs)), Some((Letter::R, ys))) =
                    (x.letters().split_first(), y.letters().split_first())
                {
                    if xs == ys {
                        return NormalForm::Leaf(ShiftWord::new(xs.to_vec()));
                    }
                }
            }
            NormalForm::node(a, b)
        }
    }
}

/// The normal form of `a * b`.
pub fn multiply(a: &NormalForm, b: &NormalForm) -> NormalForm {
    match a {
        NormalForm::Node(x, y) => NormalForm::node(multiply(x, b), multiply(y, b)),
        NormalForm::Leaf(w) => apply_shift(w, b),
    }
}

/// The product of several normal forms, left to right; `I` when empty.
pub fn multiply_all<'a>(factors: impl IntoIterator<Item = &'a NormalForm>) -> NormalForm {
    factors
        .into_iter()
        .fold(NormalForm::identity(), |acc, f| multiply(&acc, f))
}

/// The normal form of `s * f`.
///
/// Letters of `s` are consumed from the right, descending into the first
/// component on `L` and the second on `R`. Reaching a leaf `w` with letters
/// `s'` left over yields `s'*w`; running out of letters at a node yields that
/// subtree.
pub fn apply_shift(s: &ShiftWord, f: &NormalForm) -> NormalForm {
    let letters = s.letters();
    let mut here = f;
    let mut remaining = letters.len();
    loop {
        match here {
            NormalForm::Leaf(w) => {
                return NormalForm::Leaf(ShiftWord::new(letters[..remaining].to_vec()).concat(w));
            }
            NormalForm::Node(a, b) => {
                if remaining == 0 {
                    return here.clone();
                }
                remaining -= 1;
                here = match letters[remaining] {
                    Letter::L => a,
                    Letter::R => b,
                };
            }
        }
    }
}

/// Where a configuration lands when run against `f`: the leaf word with the
/// unconsumed letters, or `None` when it stops at an internal node.
pub fn navigate(config: &Config, f: &NormalForm) -> Option<ShiftWord> {
    apply_shift(&ShiftWord::from(config), f)
        .leaf_word()
        .cloned()
}

/// Every leaf with its address, left to right.
pub fn shifts_of(f: &NormalForm) -> Vec<(LeafAddress, ShiftWord)> {
    let mut out = Vec::with_capacity(f.leaf_count());
    fn walk(nf: &NormalForm, here: LeafAddress, out: &mut Vec<(LeafAddress, ShiftWord)>) {
        match nf {
            NormalForm::Leaf(w) => out.push((here, w.clone())),
            NormalForm::Node(a, b) => {
                walk(a, here.child(Side::First), out);
                walk(b, here.child(Side::Second), out);
            }
        }
    }
    walk(f, LeafAddress::root(), &mut out);
    out
}

/// The word problem in the chosen monoid.
pub fn equal(a: &Term, b: &Term, mode: Mode) -> bool {
    normalize(a, mode) == normalize(b, mode)
}

/// Whether `t` equals `I` in the Cartesian monoid, i.e. lies in the kernel of
/// the quotient map from the quasiproduct monoid.
pub fn in_kernel(t: &Term) -> bool {
    cm_normalize(t).is_identity()
}
