use std::collections::BTreeMap;

use serde::Serialize;

use super::puzzle::{PuzzleAssignment, PuzzleError, PuzzleInstance, UsagePolicy};
use crate::term::Term;

pub const DEFAULT_SOLVER_BUDGET: usize = 1_000_000;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "kebab-case")]
pub enum Solution {
    Solved { assignment: PuzzleAssignment },
    NoSolution,
    Unknown { nodes: usize },
}

struct Search<'a> {
    p: &'a PuzzleInstance,
    /// Distinct pieces in order of first appearance, with their indices.
    kinds: Vec<(Term, Vec<usize>)>,
    used: Vec<usize>,
    /// Identities to test once the variable at this position is assigned.
    due: Vec<Vec<usize>>,
    chosen: Vec<usize>,
    nodes: usize,
    budget: usize,
}

enum Outcome {
    Found,
    Exhausted,
    OutOfBudget,
}

/// Backtracking over variables in declaration order and piece kinds in order
/// of first appearance; identities are tested as soon as all their variables
/// are bound, so the first solution found is the least in that order.
pub fn solve_puzzle(p: &PuzzleInstance, budget: usize) -> Result<Solution, PuzzleError> {
    p.check_linear()?;
    let too_few = p.variables.len() > p.gadgets.len();
    let too_many = p.policy == UsagePolicy::ExactOnce && p.variables.len() < p.gadgets.len();
    if too_few || too_many {
        return Ok(Solution::NoSolution);
    }
    let position: BTreeMap<&str, usize> = p
        .variables
        .iter()
        .enumerate()
        .map(|(i, v)| (v.as_str(), i))
        .collect();
    let mut due = vec![Vec::new(); p.variables.len()];
    for (k, identity) in p.identities.iter().enumerate() {
        let last = identity.lhs.variables().iter().map(|v| position[v]).max();
        match last {
            Some(i) => due[i].push(k),
            None if !p.identity_holds(identity, &|_| None) => return Ok(Solution::NoSolution),
            None => {}
        }
    }
    let mut kinds: Vec<(Term, Vec<usize>)> = Vec::new();
    for (i, g) in p.gadgets.iter().enumerate() {
        match kinds.iter_mut().find(|(t, _)| t == g) {
            Some((_, list)) => list.push(i),
            None => kinds.push((g.clone(), vec![i])),
        }
    }
    let mut search = Search {
        p,
        used: vec![0; kinds.len()],
        kinds,
        due,
        chosen: Vec::new(),
        nodes: 0,
        budget,
    };
    Ok(match search.extend() {
        Outcome::Found => Solution::Solved {
            assignment: search.assignment(),
        },
        Outcome::Exhausted => Solution::NoSolution,
        Outcome::OutOfBudget => Solution::Unknown {
            nodes: search.nodes,
        },
    })
}

impl Search<'_> {
    fn extend(&mut self) -> Outcome {
        let var = self.chosen.len();
        if var == self.p.variables.len() {
            return Outcome::Found;
        }
        for k in 0..self.kinds.len() {
            if self.used[k] == self.kinds[k].1.len() {
                continue;
            }
            if self.nodes == self.budget {
                return Outcome::OutOfBudget;
            }
            self.nodes += 1;
            self.used[k] += 1;
            self.chosen.push(k);
            if self.due_hold(var) {
                match self.extend() {
                    Outcome::Exhausted => {}
                    other => return other,
                }
            }
            self.chosen.pop();
            self.used[k] -= 1;
        }
        Outcome::Exhausted
    }

    fn due_hold(&self, var: usize) -> bool {
        let lookup = |name: &str| {
            let i = self.p.variables.iter().position(|v| v == name)?;
            self.chosen.get(i).map(|&k| self.kinds[k].0.clone())
        };
        self.due[var]
            .iter()
            .all(|&k| self.p.identity_holds(&self.p.identities[k], &lookup))
    }

    /// Equal pieces are handed out in index order.
    fn assignment(&self) -> PuzzleAssignment {
        let mut next = vec![0; self.kinds.len()];
        let mut slots = BTreeMap::new();
        for (v, &k) in self.p.variables.iter().zip(&self.chosen) {
            slots.insert(v.clone(), self.kinds[k].1[next[k]]);
            next[k] += 1;
        }
        PuzzleAssignment { slots }
    }
}
