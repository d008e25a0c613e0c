//! Finite automata over `{L, R}` denoting regular sets of stack configurations.
//!
//! A configuration is accepted when the automaton accepts its letters read
//! top-first; the bottom marker is implicit in end-of-word acceptance.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use thiserror::Error;

use crate::word::{Config, Letter};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConfigAutomaton {
    states: usize,
    initial: BTreeSet<usize>,
    accepting: BTreeSet<usize>,
    transitions: BTreeSet<(usize, Letter, usize)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("automaton text line {line}: {message}")]
pub struct AutomatonParseError {
    pub line: usize,
    pub message: String,
}

impl ConfigAutomaton {
    /// Builds an automaton; panics if a state index is out of range.
    pub fn new(
        states: usize,
        initial: impl IntoIterator<Item = usize>,
        accepting: impl IntoIterator<Item = usize>,
        transitions: impl IntoIterator<Item = (usize, Letter, usize)>,
    ) -> Self {
        let a = ConfigAutomaton {
            states,
            initial: initial.into_iter().collect(),
            accepting: accepting.into_iter().collect(),
            transitions: transitions.into_iter().collect(),
        };
        let in_range = |s: &usize| *s < states;
        assert!(a.initial.iter().all(in_range) && a.accepting.iter().all(in_range));
        assert!(a
            .transitions
            .iter()
            .all(|(p, _, q)| *p < states && *q < states));
        a
    }

    pub fn empty() -> Self {
        ConfigAutomaton::new(1, [0], [], [])
    }

    pub fn universal() -> Self {
        ConfigAutomaton::new(1, [0], [0], [(0, Letter::L, 0), (0, Letter::R, 0)])
    }

    /// The finite set of the given configurations, as a prefix tree.
    pub fn from_configs<'a>(configs: impl IntoIterator<Item = &'a Config>) -> Self {
        let mut states = 1;
        let mut edges: BTreeMap<(usize, Letter), usize> = BTreeMap::new();
        let mut accepting = BTreeSet::new();
        for config in configs {
            let mut here = 0;
            for &letter in config.letters() {
                here = *edges.entry((here, letter)).or_insert_with(|| {
                    states += 1;
                    states - 1
                });
            }
            accepting.insert(here);
        }
        ConfigAutomaton::new(
            states,
            [0],
            accepting,
            edges.into_iter().map(|((p, a), q)| (p, a, q)),
        )
    }

    pub fn singleton(config: &Config) -> Self {
        ConfigAutomaton::from_configs([config])
    }

    pub fn state_count(&self) -> usize {
        self.states
    }

    pub fn initial(&self) -> &BTreeSet<usize> {
        &self.initial
    }

    pub fn accepting(&self) -> &BTreeSet<usize> {
        &self.accepting
    }

    pub fn transitions(&self) -> &BTreeSet<(usize, Letter, usize)> {
        &self.transitions
    }

    fn successors(&self, state: usize, letter: Letter) -> impl Iterator<Item = usize> + '_ {
        self.transitions
            .range((state, letter, 0)..=(state, letter, usize::MAX))
            .map(|&(_, _, q)| q)
    }

    fn step_set(&self, from: &BTreeSet<usize>, letter: Letter) -> BTreeSet<usize> {
        from.iter()
            .flat_map(|&s| self.successors(s, letter))
            .collect()
    }

    pub fn accepts(&self, config: &Config) -> bool {
        let mut current = self.initial.clone();
        for &letter in config.letters() {
            current = self.step_set(&current, letter);
            if current.is_empty() {
                return false;
            }
        }
        current.iter().any(|s| self.accepting.contains(s))
    }

    fn reachable(&self) -> BTreeSet<usize> {
        let mut seen = self.initial.clone();
        let mut queue: VecDeque<usize> = self.initial.iter().copied().collect();
        while let Some(s) = queue.pop_front() {
            for letter in Letter::ALL {
                for q in self.successors(s, letter) {
                    if seen.insert(q) {
                        queue.push_back(q);
                    }
                }
            }
        }
        seen
    }

    fn coreachable(&self) -> BTreeSet<usize> {
        let mut seen = self.accepting.clone();
        let mut changed = true;
        while changed {
            changed = false;
            for &(p, _, q) in &self.transitions {
                if seen.contains(&q) && seen.insert(p) {
                    changed = true;
                }
            }
        }
        seen
    }

    pub fn is_empty(&self) -> bool {
        self.reachable().is_disjoint(&self.accepting)
    }

    /// Whether infinitely many configurations are accepted: some cycle lies on
    /// a path from an initial to an accepting state.
    pub fn is_infinite(&self) -> bool {
        let live: BTreeSet<usize> = self
            .reachable()
            .intersection(&self.coreachable())
            .copied()
            .collect();
        // Kahn's algorithm on the live subgraph; leftovers sit on a cycle.
        let mut indegree: BTreeMap<usize, usize> = live.iter().map(|&s| (s, 0)).collect();
        let live_edges: Vec<(usize, usize)> = self
            .transitions
            .iter()
            .filter(|(p, _, q)| live.contains(p) && live.contains(q))
            .map(|&(p, _, q)| (p, q))
            .collect();
        for &(_, q) in &live_edges {
            *indegree.get_mut(&q).unwrap() += 1;
        }
        let mut queue: VecDeque<usize> = indegree
            .iter()
            .filter(|(_, &d)| d == 0)
            .map(|(&s, _)| s)
            .collect();
        let mut removed = 0;
        while let Some(s) = queue.pop_front() {
            removed += 1;
            for &(p, q) in &live_edges {
                if p == s {
                    let d = indegree.get_mut(&q).unwrap();
                    *d -= 1;
                    if *d == 0 {
                        queue.push_back(q);
                    }
                }
            }
        }
        removed < live.len()
    }

    /// Subset construction; the result is complete over `{L, R}`.
    pub fn determinize(&self) -> ConfigAutomaton {
        let start = self.initial.clone();
        let mut index: BTreeMap<BTreeSet<usize>, usize> = BTreeMap::new();
        let mut order = vec![start.clone()];
        index.insert(start, 0);
        let mut transitions = BTreeSet::new();
        let mut i = 0;
        while i < order.len() {
            let subset = order[i].clone();
            for letter in Letter::ALL {
                let next = self.step_set(&subset, letter);
                let j = *index.entry(next.clone()).or_insert_with(|| {
                    order.push(next);
                    order.len() - 1
                });
                transitions.insert((i, letter, j));
            }
            i += 1;
        }
        let accepting = order
            .iter()
            .enumerate()
            .filter(|(_, set)| set.iter().any(|s| self.accepting.contains(s)))
            .map(|(i, _)| i);
        ConfigAutomaton::new(order.len(), [0], accepting, transitions)
    }

    pub fn complement(&self) -> ConfigAutomaton {
        let dfa = self.determinize();
        let accepting: Vec<usize> = (0..dfa.states)
            .filter(|s| !dfa.accepting.contains(s))
            .collect();
        ConfigAutomaton::new(dfa.states, [0], accepting, dfa.transitions).normalized()
    }

    /// Product construction: the intersection of the two languages.
    pub fn intersect(&self, other: &ConfigAutomaton) -> ConfigAutomaton {
        let pair = |p: usize, q: usize| p * other.states + q;
        let initial: Vec<usize> = self
            .initial
            .iter()
            .flat_map(|&p| other.initial.iter().map(move |&q| pair(p, q)))
            .collect();
        let accepting: Vec<usize> = self
            .accepting
            .iter()
            .flat_map(|&p| other.accepting.iter().map(move |&q| pair(p, q)))
            .collect();
        let mut transitions = Vec::new();
        for &(p, a, p2) in &self.transitions {
            for &(q, b, q2) in &other.transitions {
                if a == b {
                    transitions.push((pair(p, q), a, pair(p2, q2)));
                }
            }
        }
        ConfigAutomaton::new(self.states * other.states, initial, accepting, transitions)
            .normalized()
    }

    pub fn union(&self, other: &ConfigAutomaton) -> ConfigAutomaton {
        let shift = self.states;
        ConfigAutomaton::new(
            self.states + other.states,
            self.initial
                .iter()
                .copied()
                .chain(other.initial.iter().map(|s| s + shift)),
            self.accepting
                .iter()
                .copied()
                .chain(other.accepting.iter().map(|s| s + shift)),
            self.transitions.iter().copied().chain(
                other
                    .transitions
                    .iter()
                    .map(|&(p, a, q)| (p + shift, a, q + shift)),
            ),
        )
        .normalized()
    }

    /// The minimal deterministic automaton for the same language, without its
    /// dead state, numbered breadth-first from the initial state with `L`
    /// before `R`. Equal languages give structurally equal results.
    pub fn normalized(&self) -> ConfigAutomaton {
        let dfa = self.determinize();
        let n = dfa.states;
        let delta = |s: usize, a: Letter| dfa.successors(s, a).next().unwrap();
        // Moore refinement.
        let mut class: Vec<usize> = (0..n)
            .map(|s| usize::from(dfa.accepting.contains(&s)))
            .collect();
        loop {
            let mut signatures: BTreeMap<(usize, usize, usize), usize> = BTreeMap::new();
            let refined: Vec<usize> = (0..n)
                .map(|s| {
                    let sig = (
                        class[s],
                        class[delta(s, Letter::L)],
                        class[delta(s, Letter::R)],
                    );
                    let next = signatures.len();
                    *signatures.entry(sig).or_insert(next)
                })
                .collect();
            let before = class.iter().collect::<BTreeSet<_>>().len();
            let after = signatures.len();
            class = refined;
            if before == after {
                break;
            }
        }
        let accepting_class: BTreeSet<usize> = dfa.accepting.iter().map(|&s| class[s]).collect();
        let mut class_delta: BTreeMap<(usize, Letter), usize> = BTreeMap::new();
        for s in 0..n {
            for a in Letter::ALL {
                class_delta.insert((class[s], a), class[delta(s, a)]);
            }
        }
        // Live classes: those that reach an accepting class.
        let mut live = accepting_class.clone();
        let mut changed = true;
        while changed {
            changed = false;
            for (&(p, _), q) in &class_delta {
                if live.contains(q) && live.insert(p) {
                    changed = true;
                }
            }
        }
        let start = class[0];
        if !live.contains(&start) {
            return ConfigAutomaton::empty();
        }
        let mut number: BTreeMap<usize, usize> = BTreeMap::new();
        number.insert(start, 0);
        let mut queue = VecDeque::from([start]);
        let mut transitions = Vec::new();
        while let Some(c) = queue.pop_front() {
            for a in Letter::ALL {
                let d = class_delta[&(c, a)];
                if !live.contains(&d) {
                    continue;
                }
                let next = number.len();
                let j = *number.entry(d).or_insert_with(|| {
                    queue.push_back(d);
                    next
                });
                transitions.push((number[&c], a, j));
            }
        }
        let accepting: Vec<usize> = number
            .iter()
            .filter(|(c, _)| accepting_class.contains(c))
            .map(|(_, &i)| i)
            .collect();
        ConfigAutomaton::new(number.len(), [0], accepting, transitions)
    }

    pub fn same_language(&self, other: &ConfigAutomaton) -> bool {
        self.normalized() == other.normalized()
    }

    /// Every accepted configuration with at most `max_len` letters.
    pub fn configs_up_to(&self, max_len: usize) -> BTreeSet<Config> {
        let mut out = BTreeSet::new();
        let mut layer: BTreeMap<Vec<Letter>, BTreeSet<usize>> =
            BTreeMap::from([(Vec::new(), self.initial.clone())]);
        for len in 0..=max_len {
            for (word, states) in &layer {
                if states.iter().any(|s| self.accepting.contains(s)) {
                    out.insert(Config::new(word.clone()));
                }
            }
            if len == max_len {
                break;
            }
            let mut next = BTreeMap::new();
            for (word, states) in &layer {
                for a in Letter::ALL {
                    let to = self.step_set(states, a);
                    if !to.is_empty() {
                        let mut w = word.clone();
                        w.push(a);
                        next.insert(w, to);
                    }
                }
            }
            layer = next;
        }
        out
    }

    /// Line-based text form:
    ///
    /// ```text
    /// states 2
    /// initial 0
    /// accepting 1
    /// 0 L 1
    /// 1 R 1
    /// ```
    pub fn to_text(&self) -> String {
        self.to_string()
    }

    pub fn from_text(text: &str) -> Result<ConfigAutomaton, AutomatonParseError> {
        let mut states = None;
        let mut initial = Vec::new();
        let mut accepting = Vec::new();
        let mut transitions = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let err = |message: &str| AutomatonParseError {
                line,
                message: message.to_string(),
            };
            let fields: Vec<&str> = raw.split_whitespace().collect();
            let number = |s: &str| {
                s.parse::<usize>()
                    .map_err(|_| err("expected a state number"))
            };
            match fields.as_slice() {
                [] => {}
                ["states", n] => states = Some(number(n)?),
                ["initial", rest @ ..] => {
                    initial = rest.iter().map(|s| number(s)).collect::<Result<_, _>>()?
                }
                ["accepting", rest @ ..] => {
                    accepting = rest.iter().map(|s| number(s)).collect::<Result<_, _>>()?
                }
                [p, a, q] => {
                    let letter = match *a {
                        "L" => Letter::L,
                        "R" => Letter::R,
                        _ => return Err(err("expected L or R")),
                    };
                    transitions.push((number(p)?, letter, number(q)?));
                }
                _ => return Err(err("unrecognised line")),
            }
        }
        let states = states.ok_or(AutomatonParseError {
            line: 0,
            message: "missing states line".into(),
        })?;
        let in_range = |s: &usize| *s < states;
        if !(initial.iter().all(in_range)
            && accepting.iter().all(in_range)
            && transitions
                .iter()
                .all(|(p, _, q)| in_range(p) && in_range(q)))
        {
            return Err(AutomatonParseError {
                line: 0,
                message: "state index out of range".into(),
            });
        }
        Ok(ConfigAutomaton::new(
            states,
            initial,
            accepting,
            transitions,
        ))
    }
}

impl fmt::Display for ConfigAutomaton {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |set: &BTreeSet<usize>| set.iter().map(|s| format!(" {s}")).collect::<String>();
        writeln!(f, "states {}", self.states)?;
        writeln!(f, "initial{}", join(&self.initial))?;
        writeln!(f, "accepting{}", join(&self.accepting))?;
        for (p, a, q) in &self.transitions {
            writeln!(f, "{p} {a} {q}")?;
        }
        Ok(())
    }
}
