//! Decision procedures built on the stack-machine analysis.

mod cantor;
mod closure;
mod infinite;
mod membership;
mod verdict;

pub use cantor::{covers_cantor, killing_sequence, Killing};
pub use closure::{closure, Closure};
pub use infinite::{submonoid_infinite, submonoid_infinite_capped, DEFAULT_TREE_CAP};
pub use membership::{
    is_member, is_member_ri, LeafConstraint, MembershipConstraints, DEFAULT_BUDGET,
};
pub use verdict::{Certificate, DecisionError, Verdict};
