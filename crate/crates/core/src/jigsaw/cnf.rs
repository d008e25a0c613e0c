use std::fmt;

use thiserror::Error;

/// A formula in conjunctive normal form. Literals are signed variable indices
/// starting at 1; a clause may repeat a literal.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Cnf {
    pub vars: usize,
    pub clauses: Vec<Vec<i32>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CnfError {
    #[error("line {line}: {message}")]
    Malformed { line: usize, message: String },
    #[error("line {line}: variable index {index} out of range 1..={vars}")]
    OutOfRange {
        line: usize,
        index: i32,
        vars: usize,
    },
    #[error("{vars} variables is too many for a truth-table check")]
    TooLarge { vars: usize },
}

pub const MAX_BRUTE_VARS: usize = 20;

impl Cnf {
    pub fn new(vars: usize, clauses: Vec<Vec<i32>>) -> Self {
        Cnf { vars, clauses }
    }

    pub fn satisfied_by(&self, assignment: &[bool]) -> bool {
        self.clauses.iter().all(|clause| {
            clause
                .iter()
                .any(|&lit| assignment[lit.unsigned_abs() as usize - 1] == (lit > 0))
        })
    }

    /// How often each variable occurs, counting repeats.
    pub fn occurrences(&self) -> Vec<usize> {
        let mut counts = vec![0; self.vars];
        for lit in self.clauses.iter().flatten() {
            counts[lit.unsigned_abs() as usize - 1] += 1;
        }
        counts
    }

    pub fn to_dimacs(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for Cnf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "p cnf {} {}", self.vars, self.clauses.len())?;
        for clause in &self.clauses {
            for lit in clause {
                write!(f, "{lit} ")?;
            }
            writeln!(f, "0")?;
        }
        Ok(())
    }
}

pub fn parse_dimacs(text: &str) -> Result<Cnf, CnfError> {
    let mut header: Option<(usize, usize)> = None;
    let mut clauses = Vec::new();
    let mut current = Vec::new();
    let mut last_line = 0;
    for (n, raw) in text.lines().enumerate() {
        let line = n + 1;
        last_line = line;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('c') {
            continue;
        }
        if trimmed.starts_with('%') {
            break;
        }
        if trimmed.starts_with('p') {
            let fields: Vec<&str> = trimmed.split_whitespace().collect();
            let parsed = match fields.as_slice() {
                ["p", "cnf", v, c] => v.parse().ok().zip(c.parse().ok()),
                _ => None,
            };
            if header.is_some() || parsed.is_none() {
                return Err(CnfError::Malformed {
                    line,
                    message: format!("bad header {trimmed:?}"),
                });
            }
            header = parsed;
            continue;
        }
        let Some((vars, _)) = header else {
            return Err(CnfError::Malformed {
                line,
                message: "clause before header".into(),
            });
        };
        for token in trimmed.split_whitespace() {
            let lit: i32 = token.parse().map_err(|_| CnfError::Malformed {
                line,
                message: format!("bad literal {token:?}"),
            })?;
            if lit == 0 {
                clauses.push(std::mem::take(&mut current));
            } else if lit.unsigned_abs() as usize > vars {
                return Err(CnfError::OutOfRange {
                    line,
                    index: lit,
                    vars,
                });
            } else {
                current.push(lit);
            }
        }
    }
    let Some((vars, count)) = header else {
        return Err(CnfError::Malformed {
            line: last_line,
            message: "missing header".into(),
        });
    };
    if !current.is_empty() {
        clauses.push(current);
    }
    if clauses.len() != count {
        return Err(CnfError::Malformed {
            line: last_line,
            message: format!("header declares {count} clauses, found {}", clauses.len()),
        });
    }
    Ok(Cnf { vars, clauses })
}

/// The first satisfying assignment in binary counting order, with variable 1
/// as the most significant bit.
pub fn sat_brute(cnf: &Cnf) -> Result<Option<Vec<bool>>, CnfError> {
    if cnf.vars > MAX_BRUTE_VARS {
        return Err(CnfError::TooLarge { vars: cnf.vars });
    }
    let n = cnf.vars;
    for mask in 0u32..(1 << n) {
        let assignment: Vec<bool> = (0..n).map(|i| mask >> (n - 1 - i) & 1 == 1).collect();
        if cnf.satisfied_by(&assignment) {
            return Ok(Some(assignment));
        }
    }
    Ok(None)
}
