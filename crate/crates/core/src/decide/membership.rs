//! Membership in a finitely generated submonoid.
//!
//! A product `P` has the normal form `F` exactly when every leaf of `F` is
//! reproduced and every internal node of `F` is present in `P`. Both are
//! properties of single shifts: with `A_i` the access word of leaf `i` and
//! `w_i` its word, `A_i * P` must be the shift `w_i`, and with `A''_i` the path
//! to the parent of leaf `i`, `A''_i * P` must not be a shift. The first kind
//! is tracked by one deterministic stack run per leaf, the second by one run
//! per parent that latches as soon as it fails. A search over the tuple of
//! runs then decides the question up to its budget.

use std::collections::{BTreeSet, HashMap, VecDeque};

use super::verdict::{DecisionError, Verdict};
use crate::normal::{collapse, multiply_all, shifts_of, NormalForm};
use crate::ri::is_right_invertible;
use crate::shift::{pre_star, ConfigAutomaton, PrefixRewriteSystem, ShiftAnalysis, Step};
use crate::word::{Config, LeafAddress, ShiftWord};

pub const DEFAULT_BUDGET: usize = 10_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LeafConstraint {
    pub access: ShiftWord,
    pub word: ShiftWord,
    /// The access word with its deepest step removed; `None` for a root leaf.
    pub truncated: Option<ShiftWord>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MembershipConstraints {
    pub leaves: Vec<LeafConstraint>,
}

impl MembershipConstraints {
    pub fn for_target(f: &NormalForm) -> Self {
        let leaves = shifts_of(f)
            .into_iter()
            .map(|(addr, word)| {
                let path = addr.path();
                let truncated = (!path.is_empty())
                    .then(|| LeafAddress::new(path[..path.len() - 1].to_vec()).access_word());
                LeafConstraint {
                    access: addr.access_word(),
                    word,
                    truncated,
                }
            })
            .collect();
        MembershipConstraints { leaves }
    }

    /// Distinct starting configurations of the runs that must fail.
    pub fn parent_configs(&self) -> BTreeSet<Config> {
        self.leaves
            .iter()
            .filter_map(|l| l.truncated.as_ref().map(Config::from))
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
struct State {
    leaves: Vec<Config>,
    /// `None` once the run has failed.
    parents: Vec<Option<Config>>,
}

/// Whether `f` is a product of `generators`, searched breadth-first with
/// generators tried in index order, so a witness is the shortest and, among
/// those, the lexicographically least.
pub fn is_member(f: &NormalForm, generators: &[NormalForm], budget: usize) -> Verdict {
    if f.is_identity() {
        return Verdict::Yes { witness: vec![] };
    }
    let constraints = MembershipConstraints::for_target(f);
    let analysis = ShiftAnalysis::new(generators);
    let system = analysis.system();
    let targets: Vec<Config> = constraints
        .leaves
        .iter()
        .map(|l| Config::from(&l.word))
        .collect();
    let reach_target: Vec<ConfigAutomaton> = targets
        .iter()
        .map(|t| pre_star(system, &ConfigAutomaton::singleton(t)))
        .collect();

    let start = State {
        leaves: constraints
            .leaves
            .iter()
            .map(|l| Config::from(&l.access))
            .collect(),
        parents: constraints.parent_configs().into_iter().map(Some).collect(),
    };
    let viable = |s: &State| {
        s.leaves
            .iter()
            .zip(&reach_target)
            .all(|(c, a)| a.accepts(c))
            && s.parents
                .iter()
                .flatten()
                .all(|c| analysis.can_fail().accepts(c))
    };
    if !viable(&start) {
        return Verdict::No { exhaustive: true };
    }

    let mut parent: HashMap<State, Option<(State, usize)>> = HashMap::new();
    parent.insert(start.clone(), None);
    let mut queue = VecDeque::from([start]);
    let mut spent = 0;
    while let Some(state) = queue.pop_front() {
        if spent == budget {
            return Verdict::Unknown {
                budget_spent: spent,
                diagnostic: None,
            };
        }
        spent += 1;
        for g in 0..generators.len() {
            let Some(next) = advance(system, &state, g) else {
                continue;
            };
            if parent.contains_key(&next) || !viable(&next) {
                continue;
            }
            parent.insert(next.clone(), Some((state.clone(), g)));
            if accepted(&next, &targets) {
                let witness = trace(&parent, &next);
                let product = multiply_all(witness.iter().map(|&i| &generators[i]));
                assert_eq!(&product, f, "membership witness does not multiply out");
                return Verdict::Yes { witness };
            }
            queue.push_back(next);
        }
    }
    Verdict::No { exhaustive: true }
}

fn advance(system: &PrefixRewriteSystem, state: &State, g: usize) -> Option<State> {
    let mut leaves = Vec::with_capacity(state.leaves.len());
    for c in &state.leaves {
        match system.step(c, g) {
            Step::Next(next) => leaves.push(next),
            Step::Fail => return None,
        }
    }
    let parents = state
        .parents
        .iter()
        .map(|p| match p {
            Some(c) => match system.step(c, g) {
                Step::Next(next) => Some(next),
                Step::Fail => None,
            },
            None => None,
        })
        .collect();
    Some(State { leaves, parents })
}

fn accepted(state: &State, targets: &[Config]) -> bool {
    state.leaves == targets && state.parents.iter().all(Option::is_none)
}

fn trace(parent: &HashMap<State, Option<(State, usize)>>, end: &State) -> Vec<usize> {
    let mut witness = Vec::new();
    let mut at = end;
    while let Some(Some((prev, g))) = parent.get(at) {
        witness.push(*g);
        at = prev;
    }
    witness.reverse();
    witness
}

/// Membership for right-invertible elements, decided up to Cartesian equality.
///
/// For right-invertible factors a product that is Cartesian-equal to a
/// Cartesian normal form other than `I` already reaches it without collapsing,
/// so the quasiproduct search over the collapsed generators is enough. `I`
/// itself is the empty product.
pub fn is_member_ri(
    f: &NormalForm,
    generators: &[NormalForm],
    budget: usize,
) -> Result<Verdict, DecisionError> {
    for g in std::iter::once(f).chain(generators) {
        if !is_right_invertible(g) {
            return Err(DecisionError::NotRightInvertible(g.clone()));
        }
    }
    if &collapse(f) != f {
        return Err(DecisionError::NotCmNormal(f.clone()));
    }
    if f.is_identity() {
        return Ok(Verdict::Yes { witness: vec![] });
    }
    let collapsed: Vec<NormalForm> = generators.iter().map(collapse).collect();
    Ok(is_member(f, &collapsed, budget))
}
