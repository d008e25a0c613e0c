//! Bad shifts, extenuative shifts and unbounded expansion.
//!
//! A shift is bad for a generator set when no product of generators turns it
//! into a pair. Bad shifts are the complement of the configurations that can
//! reach a failing configuration, so they form a regular set.

use super::automaton::ConfigAutomaton;
use super::saturation::{has_infinitely_many_expansions, post_star, pre_star};
use super::system::{build_system, PrefixRewriteSystem};
use crate::normal::NormalForm;
use crate::word::{Config, ShiftWord};

/// The machine for one generator set with its bad set computed once.
#[derive(Clone, Debug)]
pub struct ShiftAnalysis {
    system: PrefixRewriteSystem,
    doomed: ConfigAutomaton,
    bad: ConfigAutomaton,
}

impl ShiftAnalysis {
    pub fn new(generators: &[NormalForm]) -> Self {
        let system = build_system(generators);
        let fail = ConfigAutomaton::from_configs(system.fail_configs());
        let doomed = pre_star(&system, &fail);
        let bad = doomed.complement();
        ShiftAnalysis {
            system,
            doomed,
            bad,
        }
    }

    pub fn system(&self) -> &PrefixRewriteSystem {
        &self.system
    }

    /// Configurations from which some input makes the machine fail.
    pub fn can_fail(&self) -> &ConfigAutomaton {
        &self.doomed
    }

    pub fn bad_set(&self) -> &ConfigAutomaton {
        &self.bad
    }

    pub fn is_bad(&self, shift: &ShiftWord) -> bool {
        self.bad.accepts(&Config::from(shift))
    }

    pub fn reachable_from(&self, shift: &ShiftWord) -> ConfigAutomaton {
        post_star(
            &self.system,
            &ConfigAutomaton::singleton(&Config::from(shift)),
        )
    }

    /// Bad, and the machine can grow the stack past any bound.
    pub fn is_extenuative(&self, shift: &ShiftWord) -> bool {
        self.is_bad(shift) && self.reachable_from(shift).is_infinite()
    }

    pub fn unbounded_expansions(&self, shift: &ShiftWord) -> bool {
        has_infinitely_many_expansions(&self.system, &Config::from(shift))
    }
}

pub fn bad_set(generators: &[NormalForm]) -> ConfigAutomaton {
    ShiftAnalysis::new(generators).bad
}

pub fn is_bad(shift: &ShiftWord, generators: &[NormalForm]) -> bool {
    ShiftAnalysis::new(generators).is_bad(shift)
}

pub fn is_extenuative(shift: &ShiftWord, generators: &[NormalForm]) -> bool {
    ShiftAnalysis::new(generators).is_extenuative(shift)
}

/// Whether runs from `shift` can perform arbitrarily many expansions, where an
/// expansion continues a failed step inside the subtree the stack ran out at.
/// Decided as the existence of an infinite run with infinitely many of them.
pub fn unbounded_expansions(shift: &ShiftWord, generators: &[NormalForm]) -> bool {
    ShiftAnalysis::new(generators).unbounded_expansions(shift)
}
