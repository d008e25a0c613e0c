//! Whether a finitely generated submonoid is infinite.
//!
//! A nonempty shift among the generators settles it at once. Otherwise, if a
//! run from some leaf of some generator can expand arbitrarily often, the
//! products grow without bound. Failing both, products are explored up to
//! equality of normal forms; a product is closed once every leaf is a bad
//! shift, since multiplying it further only rewrites those leaves in place.
//! When the exploration closes, the monoid is infinite exactly when one of
//! the leaves seen can grow without bound.

use std::collections::{BTreeMap, HashMap, VecDeque};

use super::closure::{closure, Closure};
use super::verdict::{Certificate, Verdict};
use crate::normal::{multiply, shifts_of, NormalForm};
use crate::shift::ShiftAnalysis;
use crate::word::ShiftWord;

pub const DEFAULT_TREE_CAP: usize = 100_000;

pub fn submonoid_infinite(generators: &[NormalForm]) -> Verdict {
    submonoid_infinite_capped(generators, DEFAULT_TREE_CAP)
}

pub fn submonoid_infinite_capped(generators: &[NormalForm], cap: usize) -> Verdict {
    for (g, f) in generators.iter().enumerate() {
        if f.leaf_word().is_some_and(|w| !w.is_empty()) {
            return Verdict::Infinite {
                certificate: Certificate::ShiftGenerator { generator: g },
            };
        }
    }
    let analysis = ShiftAnalysis::new(generators);
    for (g, f) in generators.iter().enumerate() {
        for (_, shift) in shifts_of(f) {
            if analysis.unbounded_expansions(&shift) {
                return Verdict::Infinite {
                    certificate: Certificate::UnboundedExpansions {
                        generator: g,
                        shift,
                    },
                };
            }
        }
    }

    let mut extenuative: BTreeMap<ShiftWord, bool> = BTreeMap::new();
    let mut seen: HashMap<NormalForm, Vec<usize>> = HashMap::new();
    let mut queue = VecDeque::new();
    seen.insert(NormalForm::identity(), vec![]);
    queue.push_back(NormalForm::identity());
    while let Some(product) = queue.pop_front() {
        let sequence = seen[&product].clone();
        let mut closed = true;
        for (_, shift) in shifts_of(&product) {
            if !analysis.is_bad(&shift) {
                closed = false;
            }
            let grows = *extenuative
                .entry(shift.clone())
                .or_insert_with(|| analysis.is_extenuative(&shift));
            if grows {
                return Verdict::Infinite {
                    certificate: Certificate::Extenuative {
                        product: sequence,
                        shift,
                    },
                };
            }
        }
        if closed {
            continue;
        }
        for (g, f) in generators.iter().enumerate() {
            let next = multiply(&product, f);
            if seen.contains_key(&next) {
                continue;
            }
            if seen.len() == cap {
                return Verdict::Unknown {
                    budget_spent: cap,
                    diagnostic: Some(format!("product tree exceeded {cap} nodes without closing")),
                };
            }
            let mut longer = sequence.clone();
            longer.push(g);
            seen.insert(next.clone(), longer);
            queue.push_back(next);
        }
    }
    match closure(generators, cap) {
        Closure::Closed(elements) => Verdict::Finite { elements },
        Closure::Overflow => Verdict::Unknown {
            budget_spent: cap,
            diagnostic: Some(format!("closure exceeded {cap} elements")),
        },
    }
}
