//! From a CNF to a jigsaw puzzle.
//!
//! Variable `x_i` of `n` gets two pieces, combs of `n + 1` teeth ending in `I`:
//! `i - 1` copies of `<I,I>`, then `L` (for `G_i`) or `R` (for `H_i`), then
//! `n - i + 1` copies of `<I,I>`. `L*R^j` picks tooth `j + 1`.
//!
//! Each clause becomes one identity `C# = I`, a product with one factor per
//! literal occurrence:
//!
//! * positive `x_a`: `L*R^a*?y*<I,<I,I>>`
//! * negative `x_b`: `L*R^b*?y*<<I,I>,I>`
//!
//! with the positive literals first. Each variable with `m` occurrences gets
//! fresh `z_1 .. z_m` and the identity `B*<I,I> = I`, where `B_1 = L*z_1`,
//! `B_(j+1) = B_j*z_(j+1)*<<L,<I,I>>,<<I,I>,R>>` and `B = B_m`; a variable
//! that never occurs gets `B = L`. The pieces are `m` copies each of `G_i`
//! and `H_i`, so there are exactly as many pieces as variables.
//!
//! [`GadgetLayout`] chooses between `R^a` as written and `R^(a-1)`, which puts
//! the accessor on the tooth holding the letter. [`NegativeIndex`] chooses
//! how the `k + j`-th factor of a clause with `k` positive literals picks its
//! negative literal.

use std::fmt;

use serde::Serialize;

use super::cnf::Cnf;
use super::puzzle::{Identity, PuzzleInstance, UsagePolicy};
use crate::normal::Mode;
use crate::term::{Pattern, Term};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum GadgetLayout {
    /// Accessor `L*R^a`, which lands on the tooth after the letter.
    Printed,
    /// Accessor `L*R^(a-1)`, which lands on the letter.
    Aligned,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum NegativeIndex {
    /// `b(k - i)` counted from the end of the list: the last negative first.
    Wrapped,
    /// `b(i - k)`: negatives in order.
    Offset,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct EncoderConfig {
    pub layout: GadgetLayout,
    pub negative_index: NegativeIndex,
    pub mode: Mode,
    pub policy: UsagePolicy,
}

impl Default for EncoderConfig {
    fn default() -> Self {
        EncoderConfig {
            layout: GadgetLayout::Aligned,
            negative_index: NegativeIndex::Offset,
            mode: Mode::CQ,
            policy: UsagePolicy::ExactOnce,
        }
    }
}

impl EncoderConfig {
    /// Every combination of layout, negative index and mode, exact-once.
    pub fn all() -> Vec<EncoderConfig> {
        let mut out = Vec::new();
        for layout in [GadgetLayout::Printed, GadgetLayout::Aligned] {
            for negative_index in [NegativeIndex::Wrapped, NegativeIndex::Offset] {
                for mode in [Mode::CQ, Mode::CM] {
                    out.push(EncoderConfig {
                        layout,
                        negative_index,
                        mode,
                        policy: UsagePolicy::ExactOnce,
                    });
                }
            }
        }
        out
    }
}

impl fmt::Display for EncoderConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let layout = match self.layout {
            GadgetLayout::Printed => "printed",
            GadgetLayout::Aligned => "aligned",
        };
        let negative = match self.negative_index {
            NegativeIndex::Wrapped => "wrapped",
            NegativeIndex::Offset => "offset",
        };
        write!(
            f,
            "layout={layout} negative-index={negative} mode={} policy={}",
            self.mode, self.policy
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Encoding {
    pub instance: PuzzleInstance,
    /// `(G_i, H_i)` for every variable, used or not.
    pub kinds: Vec<(Term, Term)>,
}

fn ii() -> Term {
    Term::pair(Term::I, Term::I)
}

pub fn gadget(i: usize, n: usize, letter: Term) -> Term {
    let teeth: Vec<Term> = (1..i)
        .map(|_| ii())
        .chain([letter])
        .chain((i..=n).map(|_| ii()))
        .collect();
    teeth
        .into_iter()
        .rev()
        .fold(Term::I, |tail, tooth| Term::pair(tooth, tail))
}

fn pat(t: &Term) -> Pattern {
    Pattern::from(t)
}

pub fn encode(cnf: &Cnf) -> PuzzleInstance {
    encode_with(cnf, &EncoderConfig::default()).instance
}

pub fn encode_with(cnf: &Cnf, config: &EncoderConfig) -> Encoding {
    let n = cnf.vars;
    let kinds: Vec<(Term, Term)> = (1..=n)
        .map(|i| (gadget(i, n, Term::L), gadget(i, n, Term::R)))
        .collect();
    let accessor = |a: usize| match config.layout {
        GadgetLayout::Printed => a,
        GadgetLayout::Aligned => a - 1,
    };
    let mut variables = Vec::new();
    let mut identities = Vec::new();

    for clause in &cnf.clauses {
        let positives: Vec<usize> = clause
            .iter()
            .filter(|&&l| l > 0)
            .map(|&l| l as usize)
            .collect();
        let negatives: Vec<usize> = clause
            .iter()
            .filter(|&&l| l < 0)
            .map(|&l| l.unsigned_abs() as usize)
            .collect();
        let (k, m) = (positives.len(), negatives.len());
        let mut factors = Vec::new();
        for i in 1..=k + m {
            let (var, tail) = if i <= k {
                (positives[i - 1], Term::pair(Term::I, ii()))
            } else {
                let index = match config.negative_index {
                    NegativeIndex::Wrapped => m - (i - k),
                    NegativeIndex::Offset => i - k - 1,
                };
                (negatives[index], Term::pair(ii(), Term::I))
            };
            let y = format!("y{}", variables.len() + 1);
            variables.push(y.clone());
            let mut parts = vec![Pattern::L];
            parts.extend((0..accessor(var)).map(|_| Pattern::R));
            parts.push(Pattern::var(y));
            parts.push(pat(&tail));
            factors.push(Pattern::product(parts));
        }
        identities.push(Identity {
            lhs: Pattern::product(factors),
            rhs: Term::I,
        });
    }

    let occurrences = cnf.occurrences();
    let link = Term::pair(Term::pair(Term::L, ii()), Term::pair(ii(), Term::R));
    for (i, &m) in occurrences.iter().enumerate() {
        let z = |j: usize| format!("z{}_{}", i + 1, j);
        let mut b = Pattern::L;
        for j in 1..=m {
            variables.push(z(j));
            b = if j == 1 {
                Pattern::compose(b, Pattern::var(z(1)))
            } else {
                Pattern::product([b, Pattern::var(z(j)), pat(&link)])
            };
        }
        identities.push(Identity {
            lhs: Pattern::compose(b, pat(&ii())),
            rhs: Term::I,
        });
    }

    let mut gadgets = Vec::new();
    for ((g, h), &m) in kinds.iter().zip(&occurrences) {
        gadgets.extend(std::iter::repeat_n(g.clone(), m));
        gadgets.extend(std::iter::repeat_n(h.clone(), m));
    }
    let mut instance = PuzzleInstance::new(variables, identities, gadgets);
    instance.mode = config.mode;
    instance.policy = config.policy;
    Encoding { instance, kinds }
}
