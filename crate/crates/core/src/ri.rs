//! The right-invertible fragment.
//!
//! An element is right invertible in the Cartesian monoid exactly when, in its
//! Cartesian normal form, no leaf word is a suffix of the word at a different
//! leaf. Two leaves carrying the same word also break the condition.

use thiserror::Error;

use crate::normal::{collapse, shifts_of, NormalForm};
use crate::word::{Config, Letter, ShiftWord};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RightInverseError {
    #[error("{0} is not right invertible")]
    NotRightInvertible(NormalForm),
}

pub fn is_right_invertible(f: &NormalForm) -> bool {
    let words: Vec<ShiftWord> = shifts_of(&collapse(f))
        .into_iter()
        .map(|(_, w)| w)
        .collect();
    words.iter().enumerate().all(|(i, a)| {
        words
            .iter()
            .enumerate()
            .all(|(j, b)| i == j || !a.is_suffix_of(b))
    })
}

/// Some `g` with `f * g = I` in the Cartesian monoid.
///
/// Each leaf word `w` of `f` must send `g` to the access word of its leaf. The
/// reversed leaf words are prefix-free, so `g` is the trie over them, with the
/// access words at the trie leaves and `I` in every unconstrained slot.
pub fn right_inverse(f: &NormalForm) -> Result<NormalForm, RightInverseError> {
    if !is_right_invertible(f) {
        return Err(RightInverseError::NotRightInvertible(f.clone()));
    }
    let entries: Vec<(Config, ShiftWord)> = shifts_of(&collapse(f))
        .into_iter()
        .map(|(addr, word)| (Config::from(&word), addr.access_word()))
        .collect();
    let borrowed: Vec<(&[Letter], &ShiftWord)> =
        entries.iter().map(|(c, a)| (c.letters(), a)).collect();
    Ok(build_trie(&borrowed))
}

fn build_trie(entries: &[(&[Letter], &ShiftWord)]) -> NormalForm {
    match entries {
        [] => NormalForm::identity(),
        [([], target)] => NormalForm::Leaf((*target).clone()),
        _ => {
            let mut first = Vec::new();
            let mut second = Vec::new();
            for (path, target) in entries {
                let (head, rest) = path
                    .split_first()
                    .expect("reversed leaf words of a right-invertible element are prefix-free");
                match head {
                    Letter::L => first.push((rest, *target)),
                    Letter::R => second.push((rest, *target)),
                }
            }
            NormalForm::node(build_trie(&first), build_trie(&second))
        }
    }
}
