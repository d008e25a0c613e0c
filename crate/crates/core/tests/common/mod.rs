//! Oracles and generators shared by the integration tests. Nothing here calls
//! into the normalizer or the stack machine.
#![allow(dead_code)]

use std::collections::{BTreeSet, VecDeque};

use cartmon::normal::NormalForm;
use cartmon::term::Term;
use cartmon::word::{Letter, ShiftWord};
use proptest::prelude::*;
use rand::Rng;

/// A term with composition flattened away: `I` is the empty sequence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Atom {
    L,
    R,
    Pair(Vec<Atom>, Vec<Atom>),
}

pub fn flatten(t: &Term) -> Vec<Atom> {
    match t {
        Term::I => vec![],
        Term::L => vec![Atom::L],
        Term::R => vec![Atom::R],
        Term::Compose(a, b) => {
            let mut out = flatten(a);
            out.extend(flatten(b));
            out
        }
        Term::Pair(a, b) => vec![Atom::Pair(flatten(a), flatten(b))],
    }
}

#[derive(Clone, Copy, Debug)]
enum Kind {
    First,
    Second,
    Lift,
    Collapse,
}

#[derive(Clone, Debug)]
struct Redex {
    path: Vec<(usize, bool)>,
    at: usize,
    kind: Kind,
}

fn collect(seq: &[Atom], cartesian: bool, path: &mut Vec<(usize, bool)>, out: &mut Vec<Redex>) {
    for (i, atom) in seq.iter().enumerate() {
        let next_is_pair = matches!(seq.get(i + 1), Some(Atom::Pair(..)));
        let mut push = |kind| {
            out.push(Redex {
                path: path.clone(),
                at: i,
                kind,
            })
        };
        match atom {
            Atom::L if next_is_pair => push(Kind::First),
            Atom::R if next_is_pair => push(Kind::Second),
            Atom::Pair(x, y) => {
                if i + 1 < seq.len() {
                    push(Kind::Lift);
                }
                let collapsible = matches!((x.first(), y.first()), (Some(Atom::L), Some(Atom::R)))
                    && x[1..] == y[1..];
                if cartesian && collapsible {
                    push(Kind::Collapse);
                }
                path.push((i, false));
                collect(x, cartesian, path, out);
                path.pop();
                path.push((i, true));
                collect(y, cartesian, path, out);
                path.pop();
            }
            _ => {}
        }
    }
}

fn locate<'a>(seq: &'a mut Vec<Atom>, path: &[(usize, bool)]) -> &'a mut Vec<Atom> {
    match path.split_first() {
        None => seq,
        Some((&(i, second), rest)) => match &mut seq[i] {
            Atom::Pair(x, y) => locate(if second { y } else { x }, rest),
            _ => unreachable!("redex paths only pass through pairs"),
        },
    }
}

fn apply(seq: &mut Vec<Atom>, redex: &Redex, rng: &mut impl Rng) {
    let s = locate(seq, &redex.path);
    let i = redex.at;
    match redex.kind {
        Kind::First | Kind::Second => {
            let Atom::Pair(x, y) = s[i + 1].clone() else {
                unreachable!()
            };
            let keep = if matches!(redex.kind, Kind::First) {
                x
            } else {
                y
            };
            s.splice(i..i + 2, keep);
        }
        Kind::Lift => {
            // Any nonempty right neighbour segment may be distributed.
            let len = rng.gen_range(1..=s.len() - i - 1);
            let z: Vec<Atom> = s[i + 1..i + 1 + len].to_vec();
            let Atom::Pair(mut x, mut y) = s[i].clone() else {
                unreachable!()
            };
            x.extend(z.iter().cloned());
            y.extend(z);
            s.splice(i..i + 1 + len, [Atom::Pair(x, y)]);
        }
        Kind::Collapse => {
            let Atom::Pair(x, _) = s[i].clone() else {
                unreachable!()
            };
            s.splice(i..i + 1, x[1..].to_vec());
        }
    }
}

/// Rewrites with uniformly chosen redexes until none is left. Quasiproduct
/// rules only unless `cartesian`.
pub fn rewrite_randomly(t: &Term, cartesian: bool, rng: &mut impl Rng) -> NormalForm {
    let mut seq = flatten(t);
    loop {
        let mut redexes = Vec::new();
        collect(&seq, cartesian, &mut Vec::new(), &mut redexes);
        if redexes.is_empty() {
            return to_normal(&seq);
        }
        let r = &redexes[rng.gen_range(0..redexes.len())];
        apply(&mut seq, r, rng);
    }
}

/// The normal form by evaluation: a product grafts, at every leaf `w` of the
/// left factor, whatever `w` reaches in the right factor. Much faster than
/// rewriting when normal forms get large.
pub fn evaluate(t: &Term, cartesian: bool) -> NormalForm {
    let tree = eval_seq(&flatten(t));
    if cartesian {
        collapse_bottom_up(tree)
    } else {
        tree
    }
}

fn eval_seq(seq: &[Atom]) -> NormalForm {
    seq.iter()
        .fold(NormalForm::Leaf(ShiftWord::empty()), |acc, atom| {
            let next = match atom {
                Atom::L => NormalForm::Leaf(ShiftWord::new(vec![Letter::L])),
                Atom::R => NormalForm::Leaf(ShiftWord::new(vec![Letter::R])),
                Atom::Pair(x, y) => NormalForm::Node(Box::new(eval_seq(x)), Box::new(eval_seq(y))),
            };
            graft(&acc, &next)
        })
}

fn graft(a: &NormalForm, b: &NormalForm) -> NormalForm {
    match a {
        NormalForm::Node(x, y) => NormalForm::Node(Box::new(graft(x, b)), Box::new(graft(y, b))),
        NormalForm::Leaf(w) => walk(w.letters(), b),
    }
}

/// `s * f` for a shift `s`.
pub fn walk(s: &[Letter], f: &NormalForm) -> NormalForm {
    let mut rest = s.to_vec();
    let mut at = f;
    loop {
        match at {
            NormalForm::Leaf(w) => {
                rest.extend_from_slice(w.letters());
                return NormalForm::Leaf(ShiftWord::new(rest));
            }
            NormalForm::Node(a, b) => match rest.pop() {
                None => return at.clone(),
                Some(Letter::L) => at = a,
                Some(Letter::R) => at = b,
            },
        }
    }
}

fn collapse_bottom_up(f: NormalForm) -> NormalForm {
    match f {
        NormalForm::Leaf(_) => f,
        NormalForm::Node(a, b) => {
            let (a, b) = (collapse_bottom_up(*a), collapse_bottom_up(*b));
            if let (NormalForm::Leaf(u), NormalForm::Leaf(v)) = (&a, &b) {
                let (u, v) = (u.letters(), v.letters());
                if u.first() == Some(&Letter::L)
                    && v.first() == Some(&Letter::R)
                    && u[1..] == v[1..]
                {
                    return NormalForm::Leaf(ShiftWord::new(u[1..].to_vec()));
                }
            }
            NormalForm::Node(Box::new(a), Box::new(b))
        }
    }
}

fn to_normal(seq: &[Atom]) -> NormalForm {
    match seq {
        [Atom::Pair(x, y)] => NormalForm::Node(Box::new(to_normal(x)), Box::new(to_normal(y))),
        _ => NormalForm::Leaf(ShiftWord::new(
            seq.iter()
                .map(|a| match a {
                    Atom::L => Letter::L,
                    Atom::R => Letter::R,
                    Atom::Pair(..) => panic!("irreducible sequence with a pair inside"),
                })
                .collect(),
        )),
    }
}

/// A random term with exactly `nodes` nodes (at least one).
pub fn random_term(rng: &mut impl Rng, nodes: usize) -> Term {
    if nodes <= 2 {
        return match rng.gen_range(0..3) {
            0 => Term::I,
            1 => Term::L,
            _ => Term::R,
        };
    }
    let left = rng.gen_range(1..nodes - 1);
    let (a, b) = (random_term(rng, left), random_term(rng, nodes - 1 - left));
    if rng.gen_bool(0.5) {
        Term::compose(a, b)
    } else {
        Term::pair(a, b)
    }
}

pub fn random_word(rng: &mut impl Rng, max_len: usize) -> ShiftWord {
    let len = rng.gen_range(0..=max_len);
    ShiftWord::new(
        (0..len)
            .map(|_| {
                if rng.gen_bool(0.5) {
                    Letter::L
                } else {
                    Letter::R
                }
            })
            .collect(),
    )
}

/// A tree of depth at most `depth` whose leaves hold the access words of its
/// own leaves, shuffled. Such elements generate finite groups.
pub fn random_permutation(rng: &mut impl Rng, depth: usize) -> NormalForm {
    use rand::seq::SliceRandom;
    let shape = random_nf(rng, depth, 0);
    let leaves = cartmon::normal::shifts_of(&shape);
    let mut words: Vec<ShiftWord> = leaves.iter().map(|(a, _)| a.access_word()).collect();
    words.shuffle(rng);
    let entries: Vec<_> = leaves.into_iter().map(|(a, _)| a).zip(words).collect();
    NormalForm::from_shifts(&entries).expect("addresses come from a tree")
}

/// A random tree of depth at most `depth` with leaf words of at most
/// `max_word` letters.
pub fn random_nf(rng: &mut impl Rng, depth: usize, max_word: usize) -> NormalForm {
    if depth == 0 || rng.gen_bool(0.4) {
        NormalForm::Leaf(random_word(rng, max_word))
    } else {
        NormalForm::node(
            random_nf(rng, depth - 1, max_word),
            random_nf(rng, depth - 1, max_word),
        )
    }
}

/// `S * F` when it is a shift, by walking `F` with the letters of `S`, last
/// letter first.
pub fn shift_times(s: &[Letter], f: &NormalForm) -> Option<Vec<Letter>> {
    let mut rest = s.to_vec();
    let mut at = f;
    loop {
        match at {
            NormalForm::Leaf(w) => {
                rest.extend_from_slice(w.letters());
                return Some(rest);
            }
            NormalForm::Node(a, b) => {
                at = match rest.pop()? {
                    Letter::L => a,
                    Letter::R => b,
                };
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Orbit {
    /// Some product turned the shift into a pair.
    pub killed: bool,
    /// Every shift reachable stayed within the caps and was expanded.
    pub closed: bool,
    pub longest: usize,
}

/// Breadth-first over all shifts `S * F_1 * .. * F_k`.
pub fn orbit(s: &ShiftWord, gens: &[NormalForm], max_len: usize, max_states: usize) -> Orbit {
    let mut seen = BTreeSet::from([s.letters().to_vec()]);
    let mut queue = VecDeque::from([s.letters().to_vec()]);
    let mut out = Orbit {
        killed: false,
        closed: true,
        longest: s.len(),
    };
    while let Some(w) = queue.pop_front() {
        for f in gens {
            match shift_times(&w, f) {
                None => {
                    out.killed = true;
                    return out;
                }
                Some(next) => {
                    out.longest = out.longest.max(next.len());
                    if next.len() > max_len || seen.len() >= max_states {
                        out.closed = false;
                        continue;
                    }
                    if seen.insert(next.clone()) {
                        queue.push_back(next);
                    }
                }
            }
        }
    }
    out
}

/// Bad by brute force, when the exploration is conclusive.
pub fn oracle_bad(
    s: &ShiftWord,
    gens: &[NormalForm],
    max_len: usize,
    max_states: usize,
) -> Option<bool> {
    let o = orbit(s, gens, max_len, max_states);
    if o.killed {
        Some(false)
    } else if o.closed {
        Some(true)
    } else {
        None
    }
}

/// Right invertibility straight from the definition on a collapsed form: no
/// leaf word ends with the word of another leaf.
pub fn suffix_free(words: &[Vec<Letter>]) -> bool {
    for (i, a) in words.iter().enumerate() {
        for (j, b) in words.iter().enumerate() {
            if i != j && b.len() >= a.len() && b[b.len() - a.len()..] == a[..] {
                return false;
            }
        }
    }
    true
}

pub fn leaf_words(f: &NormalForm) -> Vec<Vec<Letter>> {
    match f {
        NormalForm::Leaf(w) => vec![w.letters().to_vec()],
        NormalForm::Node(a, b) => {
            let mut out = leaf_words(a);
            out.extend(leaf_words(b));
            out
        }
    }
}

pub fn all_words(max_len: usize) -> Vec<ShiftWord> {
    let mut out = vec![ShiftWord::empty()];
    let mut layer = vec![vec![]];
    for _ in 0..max_len {
        layer = layer
            .iter()
            .flat_map(|w: &Vec<Letter>| {
                Letter::ALL.iter().map(move |&l| {
                    let mut v = w.clone();
                    v.push(l);
                    v
                })
            })
            .collect();
        out.extend(layer.iter().cloned().map(ShiftWord::new));
    }
    out
}

pub fn arb_term() -> impl Strategy<Value = Term> {
    let leaf = prop_oneof![Just(Term::I), Just(Term::L), Just(Term::R)];
    leaf.prop_recursive(5, 24, 2, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Term::compose(a, b)),
            (inner.clone(), inner).prop_map(|(a, b)| Term::pair(a, b)),
        ]
    })
}

pub fn arb_word(max_len: usize) -> impl Strategy<Value = ShiftWord> {
    prop::collection::vec(prop_oneof![Just(Letter::L), Just(Letter::R)], 0..=max_len)
        .prop_map(ShiftWord::new)
}

pub fn arb_nf(depth: u32, max_word: usize) -> impl Strategy<Value = NormalForm> {
    arb_word(max_word)
        .prop_map(NormalForm::Leaf)
        .prop_recursive(depth, 16, 2, |inner| {
            (inner.clone(), inner).prop_map(|(a, b)| NormalForm::node(a, b))
        })
}
