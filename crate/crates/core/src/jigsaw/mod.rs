//! Encoding satisfiability as jigsaw puzzles, and checking the encoding.

mod cnf;
mod encode;
mod puzzle;
mod report;
mod solver;

pub use cnf::{parse_dimacs, sat_brute, Cnf, CnfError, MAX_BRUTE_VARS};
pub use encode::{
    encode, encode_with, gadget, EncoderConfig, Encoding, GadgetLayout, NegativeIndex,
};
pub use puzzle::{
    verify_assignment, Identity, PuzzleAssignment, PuzzleError, PuzzleInstance, UsagePolicy,
};
pub use report::{
    curated_corpus, fidelity_report, verify_reduction, Agreement, ConfigSummary, FidelityReport,
    JigsawError, ReductionReport, MAX_REPORT_CLAUSES, MAX_REPORT_VARS,
};
pub use solver::{solve_puzzle, Solution, DEFAULT_SOLVER_BUDGET};
