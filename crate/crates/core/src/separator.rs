//! Separating two quasiproduct normal forms that the Cartesian monoid identifies.
//!
//! Given distinct normal forms `u0`, `u1` with the same Cartesian normal form,
//! [`cq_separator`] finds `h`, `k` and a side `i` such that `h*u_i*k` is `I`
//! while `h*u_(1-i)*k` is a non-identity element of the kernel.

use thiserror::Error;

use crate::normal::{collapse, NormalForm};
use crate::term::Term;
use crate::word::{Config, Letter, ShiftWord, Side};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Separator {
    pub h: Term,
    pub k: Term,
    /// The side whose product becomes `I`.
    pub index: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeparatorError {
    #[error("the normal forms are identical")]
    Identical,
    #[error("the normal forms differ in the Cartesian monoid")]
    NotCartesianEqual,
}

pub fn cq_separator(u0: &NormalForm, u1: &NormalForm) -> Result<Separator, SeparatorError> {
    if u0 == u1 {
        return Err(SeparatorError::Identical);
    }
    if collapse(u0) != collapse(u1) {
        return Err(SeparatorError::NotCartesianEqual);
    }
    let mut path = Vec::new();
    let (mut a, mut b) = (u0, u1);
    loop {
        match (a, b) {
            (NormalForm::Node(a0, a1), NormalForm::Node(b0, b1)) => {
                // Leftmost disagreement; the children stay Cartesian-equal.
                if a0 != b0 {
                    path.push(Side::First);
                    (a, b) = (a0, b0);
                } else {
                    path.push(Side::Second);
                    (a, b) = (a1, b1);
                }
            }
            (NormalForm::Leaf(w), NormalForm::Node(..)) => return Ok(finish(&path, w, 0)),
            (NormalForm::Node(..), NormalForm::Leaf(w)) => return Ok(finish(&path, w, 1)),
            // Distinct leaves are never Cartesian-equal.
            (NormalForm::Leaf(_), NormalForm::Leaf(_)) => {
                return Err(SeparatorError::NotCartesianEqual)
            }
        }
    }
}

fn finish(path: &[Side], leaf: &ShiftWord, index: usize) -> Separator {
    let descent = Config::new(path.iter().map(|s| s.letter()).collect());
    let h = Term::shift(&ShiftWord::from(&descent));
    let k = collapsing_trie(Config::from(leaf).letters()).to_term();
    Separator { h, k, index }
}

/// A tree of `I` leaves whose shape sends the word with this reversed spelling
/// to `I`.
fn collapsing_trie(path: &[Letter]) -> NormalForm {
    match path.split_first() {
        None => NormalForm::identity(),
        Some((Letter::L, rest)) => NormalForm::node(collapsing_trie(rest), NormalForm::identity()),
        Some((Letter::R, rest)) => NormalForm::node(NormalForm::identity(), collapsing_trie(rest)),
    }
}
