//! Shift dynamics: the stack machine that multiplies a shift by generators,
//! regular sets of its configurations, and the analyses built on them.

mod analysis;
mod automaton;
mod saturation;
mod system;

pub use analysis::{bad_set, is_bad, is_extenuative, unbounded_expansions, ShiftAnalysis};
pub use automaton::{AutomatonParseError, ConfigAutomaton};
pub use saturation::{has_infinitely_many_expansions, post_star, pre_star};
pub use system::{
    build_system, enumerate_reachable, ExpansionRule, PrefixRewriteSystem, Reachable, Rule, Step,
};
