use std::collections::{HashMap, VecDeque};

use serde::Serialize;

use crate::normal::NormalForm;
use crate::shift::{ShiftAnalysis, Step};
use crate::word::{Config, ShiftWord};

/// Whether some infinite sequence of generators eventually turns every shift
/// into a pair; equivalently, no shift is bad.
pub fn covers_cantor(generators: &[NormalForm]) -> bool {
    !generators.is_empty() && ShiftAnalysis::new(generators).bad_set().is_empty()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "lowercase")]
pub enum Killing {
    Found {
        witness: Vec<usize>,
    },
    /// `exhausted` means the search space closed, so the shift is bad.
    Unknown {
        exhausted: bool,
    },
}

/// The shortest generator sequence, least by index among the shortest, after
/// which `shift` times the product is no longer a shift.
pub fn killing_sequence(shift: &ShiftWord, generators: &[NormalForm], budget: usize) -> Killing {
    let analysis = ShiftAnalysis::new(generators);
    let start = Config::from(shift);
    if analysis.bad_set().accepts(&start) {
        return Killing::Unknown { exhausted: true };
    }
    let system = analysis.system();
    let mut parent: HashMap<Config, Option<(Config, usize)>> =
        HashMap::from([(start.clone(), None)]);
    let mut queue = VecDeque::from([start]);
    let mut spent = 0;
    while let Some(config) = queue.pop_front() {
        if spent == budget {
            return Killing::Unknown { exhausted: false };
        }
        spent += 1;
        for g in 0..generators.len() {
            match system.step(&config, g) {
                Step::Fail => {
                    let mut witness = vec![g];
                    let mut at = &config;
                    while let Some(Some((prev, h))) = parent.get(at) {
                        witness.push(*h);
                        at = prev;
                    }
                    witness.reverse();
                    return Killing::Found { witness };
                }
                Step::Next(next) => {
                    if parent.contains_key(&next) || analysis.bad_set().accepts(&next) {
                        continue;
                    }
                    parent.insert(next.clone(), Some((config.clone(), g)));
                    queue.push_back(next);
                }
            }
        }
    }
    Killing::Unknown { exhausted: true }
}
