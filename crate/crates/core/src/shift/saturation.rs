//! Backward and forward reachability by automaton saturation.
//!
//! The prefix-rewriting system is compiled into a pushdown system with one
//! main control state. Multi-letter pops become chains through intermediate
//! control states, one per generator and proper path prefix, so that every
//! compiled rule reads a single stack symbol. Stacks carry an explicit bottom
//! marker, which lets whole-stack expansion rules be written as ordinary rules
//! on the marker; it never appears in the automata handed back to callers.

use std::collections::{BTreeMap, BTreeSet};

use petgraph::algo::tarjan_scc;
use petgraph::graph::DiGraph;

use super::automaton::ConfigAutomaton;
use super::system::PrefixRewriteSystem;
use crate::word::{Config, Letter};

type Sym = u8;
const BOT: Sym = 2;
const SYMS: [Sym; 3] = [0, 1, BOT];
const MAIN: usize = 0;

fn sym(letter: Letter) -> Sym {
    match letter {
        Letter::L => 0,
        Letter::R => 1,
    }
}

fn syms(config: &Config) -> Vec<Sym> {
    config.letters().iter().map(|&l| sym(l)).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
struct PdsRule {
    from: usize,
    top: Sym,
    to: usize,
    push: Vec<Sym>,
    event: bool,
}

#[derive(Clone, Debug)]
struct Pds {
    controls: usize,
    rules: Vec<PdsRule>,
}

impl Pds {
    fn compile(system: &PrefixRewriteSystem, with_expansions: bool) -> Pds {
        let mut ids: BTreeMap<(usize, Vec<Sym>), usize> = BTreeMap::new();
        let mut controls = 1;
        let mut control = |g: usize, prefix: &[Sym]| -> usize {
            if prefix.is_empty() {
                return MAIN;
            }
            *ids.entry((g, prefix.to_vec())).or_insert_with(|| {
                controls += 1;
                controls - 1
            })
        };
        let mut rules = BTreeSet::new();
        for rule in system.rules() {
            let pop = syms(&rule.pop);
            let push = syms(&rule.push);
            if pop.is_empty() {
                for top in SYMS {
                    let mut pushed = push.clone();
                    pushed.push(top);
                    rules.insert(PdsRule {
                        from: MAIN,
                        top,
                        to: MAIN,
                        push: pushed,
                        event: false,
                    });
                }
                continue;
            }
            for j in 1..=pop.len() {
                let from = control(rule.generator, &pop[..j - 1]);
                let (to, pushed) = if j == pop.len() {
                    (MAIN, push.clone())
                } else {
                    (control(rule.generator, &pop[..j]), Vec::new())
                };
                rules.insert(PdsRule {
                    from,
                    top: pop[j - 1],
                    to,
                    push: pushed,
                    event: false,
                });
            }
        }
        if with_expansions {
            for rule in system.expansion_rules() {
                let from = control(rule.generator, &syms(&rule.whole_stack));
                let mut pushed = syms(&rule.replacement);
                pushed.push(BOT);
                rules.insert(PdsRule {
                    from,
                    top: BOT,
                    to: MAIN,
                    push: pushed,
                    event: true,
                });
            }
        }
        Pds {
            controls,
            rules: rules.into_iter().collect(),
        }
    }
}

/// An automaton over stack symbols whose first `controls` states stand for the
/// control states; configurations are read from their control state.
#[derive(Clone, Debug)]
struct PAutomaton {
    states: usize,
    trans: BTreeSet<(usize, Sym, usize)>,
    eps: BTreeSet<(usize, usize)>,
    finals: BTreeSet<usize>,
}

impl PAutomaton {
    /// Embeds `a` as the configurations of the main control state, with the
    /// bottom marker appended to every accepted word.
    fn embed(controls: usize, a: &ConfigAutomaton) -> PAutomaton {
        let offset = controls;
        let bottom = offset + a.state_count();
        let mut trans = BTreeSet::new();
        for &(p, l, q) in a.transitions() {
            trans.insert((p + offset, sym(l), q + offset));
            if a.initial().contains(&p) {
                trans.insert((MAIN, sym(l), q + offset));
            }
        }
        for &s in a.accepting() {
            trans.insert((s + offset, BOT, bottom));
            if a.initial().contains(&s) {
                trans.insert((MAIN, BOT, bottom));
            }
        }
        PAutomaton {
            states: bottom + 1,
            trans,
            eps: BTreeSet::new(),
            finals: BTreeSet::from([bottom]),
        }
    }

    fn successors(&self, state: usize, s: Sym) -> impl Iterator<Item = usize> + '_ {
        self.trans
            .range((state, s, 0)..=(state, s, usize::MAX))
            .map(|&(_, _, q)| q)
    }

    fn eps_closure(&self, state: usize) -> BTreeSet<usize> {
        let mut seen = BTreeSet::from([state]);
        let mut stack = vec![state];
        while let Some(p) = stack.pop() {
            for &(_, q) in self.eps.range((p, 0)..=(p, usize::MAX)) {
                if seen.insert(q) {
                    stack.push(q);
                }
            }
        }
        seen
    }

    /// States reached from `state` by reading `word`, with ε-moves allowed
    /// before each symbol.
    fn read(&self, state: usize, word: &[Sym]) -> BTreeSet<usize> {
        let mut current = BTreeSet::from([state]);
        for &s in word {
            current = current
                .iter()
                .flat_map(|&p| self.eps_closure(p))
                .collect::<BTreeSet<_>>()
                .iter()
                .flat_map(|&p| self.successors(p, s).collect::<Vec<_>>())
                .collect();
        }
        current
    }

    fn accepts_from(&self, state: usize, word: &[Sym]) -> bool {
        self.read(state, word)
            .iter()
            .flat_map(|&q| self.eps_closure(q))
            .any(|q| self.finals.contains(&q))
    }

    /// The configurations of the main control state, over `{L, R}`.
    fn main_language(&self) -> ConfigAutomaton {
        let mut transitions = Vec::new();
        let mut accepting = Vec::new();
        for s in 0..self.states {
            let closure = self.eps_closure(s);
            let mut accepts = false;
            for &q in &closure {
                for l in Letter::ALL {
                    for t in self.successors(q, sym(l)) {
                        transitions.push((s, l, t));
                    }
                }
                accepts |= self
                    .successors(q, BOT)
                    .any(|t| self.eps_closure(t).iter().any(|u| self.finals.contains(u)));
            }
            if accepts {
                accepting.push(s);
            }
        }
        ConfigAutomaton::new(self.states, [MAIN], accepting, transitions).normalized()
    }
}

/// Backward saturation: adds `from --top--> q` whenever the rule's right-hand
/// side already leads from `to` to `q`.
fn saturate_pre(pds: &Pds, auto: &mut PAutomaton) {
    loop {
        let mut added = false;
        for rule in &pds.rules {
            for q in auto.read(rule.to, &rule.push) {
                added |= auto.trans.insert((rule.from, rule.top, q));
            }
        }
        if !added {
            return;
        }
    }
}

/// Forward saturation. Each pushing rule owns a chain of fresh states spelling
/// its push word; the chain is shared by every target it is attached to.
fn saturate_post(pds: &Pds, auto: &mut PAutomaton) {
    let mut chains: Vec<Vec<usize>> = Vec::with_capacity(pds.rules.len());
    for rule in &pds.rules {
        let len = rule.push.len().saturating_sub(1);
        chains.push((auto.states..auto.states + len).collect());
        auto.states += len;
    }
    loop {
        let mut added = false;
        for (rule, chain) in pds.rules.iter().zip(&chains) {
            for q in auto.read(rule.from, &[rule.top]) {
                if rule.push.is_empty() {
                    added |= auto.eps.insert((rule.to, q));
                    continue;
                }
                let mut here = rule.to;
                for (i, &s) in rule.push.iter().enumerate() {
                    let next = if i + 1 == rule.push.len() {
                        q
                    } else {
                        chain[i]
                    };
                    added |= auto.trans.insert((here, s, next));
                    here = next;
                }
            }
        }
        if !added {
            return;
        }
    }
}

/// Configurations from which some run of the ordinary rules reaches `target`.
pub fn pre_star(system: &PrefixRewriteSystem, target: &ConfigAutomaton) -> ConfigAutomaton {
    let pds = Pds::compile(system, false);
    let mut auto = PAutomaton::embed(pds.controls, target);
    saturate_pre(&pds, &mut auto);
    auto.main_language()
}

/// Configurations reachable from `start` by the ordinary rules.
pub fn post_star(system: &PrefixRewriteSystem, start: &ConfigAutomaton) -> ConfigAutomaton {
    let pds = Pds::compile(system, false);
    let mut auto = PAutomaton::embed(pds.controls, start);
    saturate_post(&pds, &mut auto);
    auto.main_language()
}

/// Whether some infinite run from `start`, using ordinary and expansion rules,
/// performs infinitely many expansions.
///
/// A head (control state, top symbol) is repeating when it can reach itself
/// again, with the rest of the stack untouched, through at least one
/// expansion. Such runs exist from `start` exactly when `start` can reach a
/// configuration whose head is repeating.
pub fn has_infinitely_many_expansions(system: &PrefixRewriteSystem, start: &Config) -> bool {
    let pds = Pds::compile(system, true);
    let heads = repeating_heads(&pds);
    if heads.is_empty() {
        return false;
    }
    let sink = pds.controls;
    let mut trans: BTreeSet<(usize, Sym, usize)> = SYMS.iter().map(|&s| (sink, s, sink)).collect();
    for &(c, s) in &heads {
        trans.insert((c, s, sink));
    }
    let mut auto = PAutomaton {
        states: sink + 1,
        trans,
        eps: BTreeSet::new(),
        finals: BTreeSet::from([sink]),
    };
    saturate_pre(&pds, &mut auto);
    let mut word = syms(start);
    word.push(BOT);
    auto.accepts_from(MAIN, &word)
}

fn repeating_heads(pds: &Pds) -> BTreeSet<(usize, Sym)> {
    // pops[(c, s, d)] = best flag over runs from <c, s> that pop s and end in d.
    let mut pops: BTreeMap<(usize, Sym, usize), bool> = BTreeMap::new();
    let read_with_flags = |pops: &BTreeMap<(usize, Sym, usize), bool>,
                           from: usize,
                           word: &[Sym]|
     -> BTreeMap<usize, bool> {
        let mut current = BTreeMap::from([(from, false)]);
        for &s in word {
            let mut next: BTreeMap<usize, bool> = BTreeMap::new();
            for (&p, &flag) in &current {
                for (&(_, _, q), &f) in pops.range((p, s, 0)..=(p, s, usize::MAX)) {
                    let e = next.entry(q).or_insert(false);
                    *e |= flag || f;
                }
            }
            current = next;
        }
        current
    };
    loop {
        let mut changed = false;
        for rule in &pds.rules {
            for (q, flag) in read_with_flags(&pops, rule.to, &rule.push) {
                let flag = flag || rule.event;
                let entry = pops.entry((rule.from, rule.top, q));
                match entry {
                    std::collections::btree_map::Entry::Vacant(v) => {
                        v.insert(flag);
                        changed = true;
                    }
                    std::collections::btree_map::Entry::Occupied(mut o) => {
                        if flag && !*o.get() {
                            o.insert(true);
                            changed = true;
                        }
                    }
                }
            }
        }
        if !changed {
            break;
        }
    }

    let head = |c: usize, s: Sym| c * SYMS.len() + s as usize;
    let mut graph: DiGraph<(), bool> = DiGraph::new();
    let nodes: Vec<_> = (0..pds.controls * SYMS.len())
        .map(|_| graph.add_node(()))
        .collect();
    let mut flagged_edges = Vec::new();
    for rule in &pds.rules {
        let from = head(rule.from, rule.top);
        for j in 0..rule.push.len() {
            for (q, flag) in read_with_flags(&pops, rule.to, &rule.push[..j]) {
                let flag = flag || rule.event;
                let to = head(q, rule.push[j]);
                graph.add_edge(nodes[from], nodes[to], flag);
                if flag {
                    flagged_edges.push((from, to));
                }
            }
        }
    }
    let mut component = vec![0; nodes.len()];
    let sccs = tarjan_scc(&graph);
    for (i, scc) in sccs.iter().enumerate() {
        for n in scc {
            component[n.index()] = i;
        }
    }
    let repeating: BTreeSet<usize> = flagged_edges
        .iter()
        .filter(|(a, b)| component[*a] == component[*b])
        .map(|(a, _)| component[*a])
        .collect();
    (0..nodes.len())
        .filter(|&h| repeating.contains(&component[h]))
        .map(|h| (h / SYMS.len(), (h % SYMS.len()) as Sym))
        .collect()
}
