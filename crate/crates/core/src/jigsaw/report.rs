//! Checking the reduction against a truth table.

use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use super::cnf::{sat_brute, Cnf, CnfError};
use super::encode::{encode_with, EncoderConfig};
use super::puzzle::{verify_assignment, PuzzleError, PuzzleInstance};
use super::solver::{solve_puzzle, Solution};

pub const MAX_REPORT_VARS: usize = 4;
pub const MAX_REPORT_CLAUSES: usize = 4;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum JigsawError {
    #[error("{vars} variables and {clauses} clauses exceed the desk-scale limit of {MAX_REPORT_VARS} and {MAX_REPORT_CLAUSES}")]
    TooLarge { vars: usize, clauses: usize },
    #[error(transparent)]
    Cnf(#[from] CnfError),
    #[error(transparent)]
    Puzzle(#[from] PuzzleError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Agreement {
    Agree,
    Disagree,
    /// The solver ran out of budget.
    Undetermined,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductionReport {
    pub cnf: Cnf,
    pub config: EncoderConfig,
    pub instance: PuzzleInstance,
    pub sat: Option<Vec<bool>>,
    pub puzzle: Solution,
    /// Both witnesses, where present, were checked again independently of the
    /// search that found them.
    pub witnesses_verified: bool,
    pub agreement: Agreement,
}

pub fn verify_reduction(
    cnf: &Cnf,
    config: &EncoderConfig,
    budget: usize,
) -> Result<ReductionReport, JigsawError> {
    if cnf.vars > MAX_REPORT_VARS || cnf.clauses.len() > MAX_REPORT_CLAUSES {
        return Err(JigsawError::TooLarge {
            vars: cnf.vars,
            clauses: cnf.clauses.len(),
        });
    }
    let instance = encode_with(cnf, config).instance;
    let sat = sat_brute(cnf)?;
    let puzzle = solve_puzzle(&instance, budget)?;
    let sat_ok = sat.as_ref().is_none_or(|a| cnf.satisfied_by(a));
    let puzzle_ok = match &puzzle {
        Solution::Solved { assignment } => verify_assignment(&instance, assignment),
        _ => true,
    };
    let agreement = match &puzzle {
        Solution::Unknown { .. } => Agreement::Undetermined,
        Solution::Solved { .. } if sat.is_some() => Agreement::Agree,
        Solution::NoSolution if sat.is_none() => Agreement::Agree,
        _ => Agreement::Disagree,
    };
    Ok(ReductionReport {
        cnf: cnf.clone(),
        config: *config,
        instance,
        sat,
        puzzle,
        witnesses_verified: sat_ok && puzzle_ok,
        agreement,
    })
}

fn clause_list(cnf: &Cnf) -> String {
    if cnf.clauses.is_empty() {
        return "(empty)".into();
    }
    cnf.clauses
        .iter()
        .map(|c| {
            let lits: Vec<String> = c
                .iter()
                .map(|&l| {
                    if l > 0 {
                        format!("x{l}")
                    } else {
                        format!("-x{}", -l)
                    }
                })
                .collect();
            format!("({})", lits.join(" | "))
        })
        .collect::<Vec<_>>()
        .join(" & ")
}

impl fmt::Display for ReductionReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "formula: {} over {} variables",
            clause_list(&self.cnf),
            self.cnf.vars
        )?;
        writeln!(f, "encoder: {}", self.config)?;
        match &self.sat {
            Some(a) => {
                let bits: Vec<String> = a
                    .iter()
                    .enumerate()
                    .map(|(i, &b)| format!("x{}={}", i + 1, u8::from(b)))
                    .collect();
                writeln!(f, "truth table: satisfiable [{}]", bits.join(" "))?;
            }
            None => writeln!(f, "truth table: unsatisfiable")?,
        }
        match &self.puzzle {
            Solution::Solved { assignment } => {
                writeln!(f, "puzzle: solved")?;
                for line in assignment.render(&self.instance).lines() {
                    writeln!(f, "  {line}")?;
                }
            }
            Solution::NoSolution => writeln!(f, "puzzle: no solution")?,
            Solution::Unknown { nodes } => writeln!(f, "puzzle: unknown after {nodes} nodes")?,
        }
        writeln!(
            f,
            "witnesses: {}",
            if self.witnesses_verified {
                "verified"
            } else {
                "FAILED VERIFICATION"
            }
        )?;
        let verdict = match self.agreement {
            Agreement::Agree => "agree",
            Agreement::Disagree => "DISAGREE",
            Agreement::Undetermined => "undetermined",
        };
        writeln!(f, "agreement: {verdict}")
    }
}

/// Every formula over one or two variables with at most two clauses of one
/// or two literals, up to reordering literals and clauses, plus the empty
/// formula over no variables.
pub fn curated_corpus() -> Vec<Cnf> {
    let mut out = vec![Cnf::new(0, vec![])];
    for n in 1..=2i32 {
        let literals: Vec<i32> = (1..=n).flat_map(|v| [v, -v]).collect();
        let mut clauses: Vec<Vec<i32>> = Vec::new();
        for (i, &a) in literals.iter().enumerate() {
            clauses.push(vec![a]);
            for &b in &literals[i..] {
                clauses.push(vec![a, b]);
            }
        }
        let mut formulas: BTreeSet<Vec<Vec<i32>>> = BTreeSet::new();
        formulas.insert(vec![]);
        for (i, c) in clauses.iter().enumerate() {
            formulas.insert(vec![c.clone()]);
            for d in &clauses[i..] {
                formulas.insert(vec![c.clone(), d.clone()]);
            }
        }
        out.extend(formulas.into_iter().map(|cl| Cnf::new(n as usize, cl)));
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConfigSummary {
    pub config: EncoderConfig,
    pub agree: usize,
    pub disagree: usize,
    pub undetermined: usize,
    pub unverified: usize,
    pub disagreements: Vec<ReductionReport>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FidelityReport {
    pub formulas: usize,
    pub shipped: EncoderConfig,
    pub rows: Vec<ConfigSummary>,
}

/// Runs every encoder configuration over `corpus`.
pub fn fidelity_report(corpus: &[Cnf], budget: usize) -> Result<FidelityReport, JigsawError> {
    let mut rows = Vec::new();
    for config in EncoderConfig::all() {
        let mut row = ConfigSummary {
            config,
            agree: 0,
            disagree: 0,
            undetermined: 0,
            unverified: 0,
            disagreements: Vec::new(),
        };
        for cnf in corpus {
            let report = verify_reduction(cnf, &config, budget)?;
            if !report.witnesses_verified {
                row.unverified += 1;
            }
            match report.agreement {
                Agreement::Agree => row.agree += 1,
                Agreement::Undetermined => row.undetermined += 1,
                Agreement::Disagree => {
                    row.disagree += 1;
                    row.disagreements.push(report);
                }
            }
        }
        rows.push(row);
    }
    Ok(FidelityReport {
        formulas: corpus.len(),
        shipped: EncoderConfig::default(),
        rows,
    })
}

impl FidelityReport {
    pub fn row(&self, config: &EncoderConfig) -> Option<&ConfigSummary> {
        self.rows.iter().find(|r| &r.config == config)
    }

    pub fn shipped_row(&self) -> &ConfigSummary {
        self.row(&self.shipped)
            .expect("the shipped configuration is always run")
    }
}

impl fmt::Display for FidelityReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "reduction fidelity over {} formulas", self.formulas)?;
        for row in &self.rows {
            let mark = if row.config == self.shipped {
                " (shipped)"
            } else {
                ""
            };
            writeln!(
                f,
                "  {}{mark}: agree {} disagree {} undetermined {} unverified {}",
                row.config, row.agree, row.disagree, row.undetermined, row.unverified
            )?;
        }
        let shipped = self.shipped_row();
        if shipped.disagree == 0 && shipped.undetermined == 0 {
            writeln!(
                f,
                "the shipped encoder agrees with the truth table on every formula"
            )?;
        } else {
            writeln!(
                f,
                "the shipped encoder disagrees with the truth table on {} of {} formulas:",
                shipped.disagree, self.formulas
            )?;
            for report in &shipped.disagreements {
                let sat = if report.sat.is_some() {
                    "satisfiable"
                } else {
                    "unsatisfiable"
                };
                let puzzle = match report.puzzle {
                    Solution::Solved { .. } => "solved",
                    Solution::NoSolution => "no solution",
                    Solution::Unknown { .. } => "unknown",
                };
                writeln!(
                    f,
                    "  {} [{}]: {sat}, puzzle {puzzle}",
                    clause_list(&report.cnf),
                    report.cnf.vars
                )?;
            }
        }
        Ok(())
    }
}
