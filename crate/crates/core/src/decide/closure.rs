use std::collections::{BTreeSet, VecDeque};

use crate::normal::{multiply, NormalForm};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Closure {
    Closed(BTreeSet<NormalForm>),
    Overflow,
}

/// All products of `generators`, including the empty one, as long as there
/// are at most `max_elements` of them and none has more than `max_elements`
/// leaves.
pub fn closure(generators: &[NormalForm], max_elements: usize) -> Closure {
    let mut seen = BTreeSet::from([NormalForm::identity()]);
    if seen.len() > max_elements {
        return Closure::Overflow;
    }
    let mut queue = VecDeque::from([NormalForm::identity()]);
    while let Some(p) = queue.pop_front() {
        for g in generators {
            let next = multiply(&p, g);
            if next.leaf_count() > max_elements {
                return Closure::Overflow;
            }
            if seen.insert(next.clone()) {
                if seen.len() > max_elements {
                    return Closure::Overflow;
                }
                queue.push_back(next);
            }
        }
    }
    Closure::Closed(seen)
}
