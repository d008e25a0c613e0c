//! The stack machine for a generator set as a prefix-rewriting system.
//!
//! Reading generator `F` with stack `c`, the machine finds the leaf of `F`
//! whose root-to-leaf path is a prefix of `c`, pops that path and pushes the
//! leaf word. If `c` runs out at an internal node of `F` the product is no
//! longer a shift and the run fails.

use std::collections::{BTreeSet, VecDeque};

use crate::normal::{shifts_of, NormalForm};
use crate::word::{Config, ShiftWord};

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Rule {
    pub generator: usize,
    pub pop: Config,
    pub push: Config,
}

/// Fires only when `whole_stack` is the entire stack: the generator would fail
/// there, and the run instead continues inside the subtree at that node.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct ExpansionRule {
    pub generator: usize,
    pub whole_stack: Config,
    pub replacement: Config,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Step {
    Next(Config),
    Fail,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrefixRewriteSystem {
    generators: Vec<NormalForm>,
    rules: Vec<Rule>,
    fail_configs: BTreeSet<Config>,
    expansion_rules: Vec<ExpansionRule>,
}

/// Reads the rules off the generator trees, in generator order and then leaf
/// order.
pub fn build_system(generators: &[NormalForm]) -> PrefixRewriteSystem {
    let mut rules = Vec::new();
    let mut fail_configs = BTreeSet::new();
    let mut expansion_rules = Vec::new();
    for (g, f) in generators.iter().enumerate() {
        let leaves = shifts_of(f);
        for (addr, word) in &leaves {
            rules.push(Rule {
                generator: g,
                pop: addr.as_config(),
                push: Config::from(word),
            });
        }
        for node in f.internal_paths() {
            let node_config = node.as_config();
            fail_configs.insert(node_config.clone());
            for (addr, word) in &leaves {
                if addr.as_config().starts_with(&node_config) {
                    expansion_rules.push(ExpansionRule {
                        generator: g,
                        whole_stack: node_config.clone(),
                        replacement: Config::from(word),
                    });
                }
            }
        }
    }
    PrefixRewriteSystem {
        generators: generators.to_vec(),
        rules,
        fail_configs,
        expansion_rules,
    }
}

impl PrefixRewriteSystem {
    pub fn generators(&self) -> &[NormalForm] {
        &self.generators
    }

    pub fn rules(&self) -> &[Rule] {
        &self.rules
    }

    pub fn fail_configs(&self) -> &BTreeSet<Config> {
        &self.fail_configs
    }

    pub fn expansion_rules(&self) -> &[ExpansionRule] {
        &self.expansion_rules
    }

    /// One move of the machine on generator `generator`.
    pub fn step(&self, config: &Config, generator: usize) -> Step {
        assert!(
            generator < self.generators.len(),
            "generator index out of range"
        );
        self.rules
            .iter()
            .filter(|r| r.generator == generator)
            .find(|r| config.starts_with(&r.pop))
            .map(|r| Step::Next(config.rewrite_prefix(r.pop.len(), &r.push)))
            .unwrap_or(Step::Fail)
    }

    /// Runs a whole input word; `None` when some step fails.
    pub fn run(&self, start: &Config, input: &[usize]) -> Option<Config> {
        input
            .iter()
            .try_fold(start.clone(), |c, &g| match self.step(&c, g) {
                Step::Next(next) => Some(next),
                Step::Fail => None,
            })
    }
}

/// Result of the bounded breadth-first exploration.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Reachable {
    /// Every configuration seen within the bounds, sorted.
    pub configs: BTreeSet<Config>,
    pub saw_failure: bool,
    /// Whether some configuration was dropped for exceeding the length cap or
    /// still had unexplored successors at the depth limit.
    pub truncated: bool,
}

impl Reachable {
    /// No failure found and nothing left unexplored: the start is bad.
    pub fn closed_without_failure(&self) -> bool {
        !self.saw_failure && !self.truncated
    }
}

/// Exhaustive closure of [`PrefixRewriteSystem::step`] from `start`, up to
/// `max_depth` steps and configurations of at most `max_len` letters.
pub fn enumerate_reachable(
    start: &ShiftWord,
    generators: &[NormalForm],
    max_depth: usize,
    max_len: usize,
) -> Reachable {
    let system = build_system(generators);
    let origin = Config::from(start);
    let mut out = Reachable {
        configs: BTreeSet::new(),
        saw_failure: false,
        truncated: false,
    };
    if origin.len() > max_len {
        out.truncated = true;
        return out;
    }
    out.configs.insert(origin.clone());
    let mut queue = VecDeque::from([(origin, 0usize)]);
    while let Some((config, depth)) = queue.pop_front() {
        for g in 0..generators.len() {
            match system.step(&config, g) {
                Step::Fail => out.saw_failure = true,
                Step::Next(next) => {
                    if out.configs.contains(&next) {
                        continue;
                    }
                    if next.len() > max_len || depth == max_depth {
                        out.truncated = true;
                        continue;
                    }
                    out.configs.insert(next.clone());
                    queue.push_back((next, depth + 1));
                }
            }
        }
    }
    out
}
