use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::normal::NormalForm;
use crate::word::ShiftWord;

/// Answer of a decision procedure. Serializes with a `verdict` tag and only the
/// fields that variant carries.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "lowercase")]
pub enum Verdict {
    Yes {
        witness: Vec<usize>,
    },
    No {
        exhaustive: bool,
    },
    Unknown {
        budget_spent: usize,
        #[serde(skip_serializing_if = "Option::is_none")]
        diagnostic: Option<String>,
    },
    Infinite {
        certificate: Certificate,
    },
    Finite {
        elements: BTreeSet<NormalForm>,
    },
}

/// Why a generated submonoid is infinite.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Certificate {
    /// The generator is a nonempty shift; its powers are all distinct.
    ShiftGenerator { generator: usize },
    /// Starting from a leaf of this generator, runs can keep expanding.
    UnboundedExpansions { generator: usize, shift: ShiftWord },
    /// A leaf of this product grows without bound and never turns into a pair.
    Extenuative {
        product: Vec<usize>,
        shift: ShiftWord,
    },
}

impl Verdict {
    pub fn is_yes(&self) -> bool {
        matches!(self, Verdict::Yes { .. })
    }

    pub fn is_unknown(&self) -> bool {
        matches!(self, Verdict::Unknown { .. })
    }

    /// Process exit status: 0 for yes or infinite, 1 for no or finite, 2 when
    /// undetermined.
    pub fn exit_code(&self) -> i32 {
        match self {
            Verdict::Yes { .. } | Verdict::Infinite { .. } => 0,
            Verdict::No { .. } | Verdict::Finite { .. } => 1,
            Verdict::Unknown { .. } => 2,
        }
    }
}

fn indices(list: &[usize]) -> String {
    list.iter()
        .map(|i| i.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

impl fmt::Display for Certificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Certificate::ShiftGenerator { generator } => {
                write!(f, "generator {generator} is a shift")
            }
            Certificate::UnboundedExpansions { generator, shift } => {
                write!(
                    f,
                    "unbounded expansions from shift {shift} of generator {generator}"
                )
            }
            Certificate::Extenuative { product, shift } => {
                write!(
                    f,
                    "shift {shift} of product [{}] is extenuative",
                    indices(product)
                )
            }
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Yes { witness } => write!(f, "yes: {}", indices(witness)),
            Verdict::No { exhaustive: true } => write!(f, "no"),
            Verdict::No { exhaustive: false } => write!(f, "no (not exhaustive)"),
            Verdict::Unknown {
                budget_spent,
                diagnostic,
            } => {
                write!(f, "unknown after {budget_spent} nodes")?;
                match diagnostic {
                    Some(d) => write!(f, ": {d}"),
                    None => Ok(()),
                }
            }
            Verdict::Infinite { certificate } => write!(f, "infinite: {certificate}"),
            Verdict::Finite { elements } => {
                write!(f, "finite:")?;
                for e in elements {
                    write!(f, " {e}")?;
                }
                Ok(())
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DecisionError {
    #[error("{0} is not right invertible")]
    NotRightInvertible(NormalForm),
    #[error("target {0} is not in Cartesian normal form")]
    NotCmNormal(NormalForm),
}
