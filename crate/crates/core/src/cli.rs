//! The `cartmon` command line.
//!
//! Exit status: 0 for true, yes, infinite or solved; 1 for false, no, finite
//! or unsolved; 2 when a search ran out of budget; 64 for usage, parse and
//! precondition errors.

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::decide::{
    covers_cantor, is_member, is_member_ri, killing_sequence, submonoid_infinite, Killing, Verdict,
    DEFAULT_BUDGET,
};
use crate::jigsaw::{
    curated_corpus, encode_with, fidelity_report, parse_dimacs, solve_puzzle, verify_reduction,
    EncoderConfig, GadgetLayout, NegativeIndex, PuzzleInstance, Solution, DEFAULT_SOLVER_BUDGET,
};
use crate::normal::{apply_shift, equal, in_kernel, normalize, shifts_of, Mode, NormalForm};
use crate::ri::{is_right_invertible, right_inverse};
use crate::separator::cq_separator;
use crate::shift::ShiftAnalysis;
use crate::term::Term;
use crate::word::ShiftWord;

pub const EXIT_USAGE: i32 = 64;

#[derive(Parser, Debug)]
#[command(
    name = "cartmon",
    version,
    about = "Normal forms and decision procedures for Cartesian and quasiproduct monoids"
)]
struct Cli {
    /// Print machine-readable JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Generators {
    /// A generator; repeat for more. Indices in answers follow this order.
    #[arg(long = "gen", value_name = "TERM")]
    gens: Vec<String>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print the normal form of a term.
    Normalize {
        #[arg(long)]
        cm: bool,
        term: String,
    },
    /// Decide whether two terms are equal.
    Eq {
        #[arg(long)]
        cm: bool,
        left: String,
        right: String,
    },
    /// Multiply a shift on the left of a term.
    Apply { shift: String, term: String },
    /// List the leaves of a term with their shift words.
    Shifts { term: String },
    /// Decide right invertibility in the Cartesian monoid.
    RiCheck { term: String },
    /// Print a right inverse.
    RightInverse { term: String },
    /// Separate two Cartesian-equal, quasiproduct-distinct terms.
    Separate { left: String, right: String },
    /// Decide whether a term is equal to I in the Cartesian monoid only.
    Kernel { term: String },
    /// Decide whether a shift is bad for the generators.
    Bad {
        #[command(flatten)]
        gens: Generators,
        shift: String,
    },
    /// Decide whether a shift is extenuative for the generators.
    Extenuative {
        #[command(flatten)]
        gens: Generators,
        shift: String,
    },
    /// Decide whether the generators cover Cantor space.
    Covers {
        #[command(flatten)]
        gens: Generators,
    },
    /// Decide whether the generated submonoid is infinite.
    Infinite {
        #[command(flatten)]
        gens: Generators,
    },
    /// Find a shortest generator sequence that turns the shift into a pair.
    Kill {
        #[command(flatten)]
        gens: Generators,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: usize,
        shift: String,
    },
    /// Decide whether a term is a product of the generators.
    Member {
        #[command(flatten)]
        gens: Generators,
        /// Right-invertible inputs, equality in the Cartesian monoid.
        #[arg(long)]
        ri: bool,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: usize,
        target: String,
    },
    /// Jigsaw puzzles from CNF formulas.
    #[command(subcommand)]
    Jigsaw(JigsawCommand),
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum LayoutArg {
    Printed,
    Aligned,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum NegativeArg {
    Wrapped,
    Offset,
}

#[derive(Args, Debug)]
struct EncoderArgs {
    #[arg(long, value_enum, default_value = "aligned")]
    layout: LayoutArg,
    #[arg(long, value_enum, default_value = "offset")]
    negative_index: NegativeArg,
    #[arg(long)]
    cm: bool,
}

impl EncoderArgs {
    fn config(&self) -> EncoderConfig {
        EncoderConfig {
            layout: match self.layout {
                LayoutArg::Printed => GadgetLayout::Printed,
                LayoutArg::Aligned => GadgetLayout::Aligned,
            },
            negative_index: match self.negative_index {
                NegativeArg::Wrapped => NegativeIndex::Wrapped,
                NegativeArg::Offset => NegativeIndex::Offset,
            },
            mode: if self.cm { Mode::CM } else { Mode::CQ },
            ..EncoderConfig::default()
        }
    }
}

#[derive(Subcommand, Debug)]
enum JigsawCommand {
    /// Encode a DIMACS file as a puzzle.
    Encode {
        #[command(flatten)]
        encoder: EncoderArgs,
        file: PathBuf,
    },
    /// Solve a puzzle file.
    Solve {
        #[arg(long, default_value_t = DEFAULT_SOLVER_BUDGET)]
        budget: usize,
        file: PathBuf,
    },
    /// Compare the puzzle for a DIMACS file with its truth table.
    VerifyReduction {
        #[command(flatten)]
        encoder: EncoderArgs,
        #[arg(long, default_value_t = DEFAULT_SOLVER_BUDGET)]
        budget: usize,
        file: PathBuf,
    },
    /// Run every encoder configuration over the built-in corpus of small
    /// formulas and report where puzzle and truth table disagree.
    Fidelity {
        #[arg(long, default_value_t = DEFAULT_SOLVER_BUDGET)]
        budget: usize,
    },
}

struct Reply {
    code: i32,
    text: String,
    json: Value,
}

impl Reply {
    fn boolean(b: bool) -> Reply {
        Reply {
            code: if b { 0 } else { 1 },
            text: b.to_string(),
            json: json!({ "verdict": b.to_string() }),
        }
    }

    fn value(text: String, json: Value) -> Reply {
        Reply {
            code: 0,
            text,
            json,
        }
    }

    fn verdict(v: &Verdict) -> Reply {
        Reply {
            code: v.exit_code(),
            text: v.to_string(),
            json: serde_json::to_value(v).expect("verdicts serialize"),
        }
    }
}

fn usage(message: impl ToString) -> String {
    message.to_string()
}

fn term(s: &str) -> Result<Term, String> {
    Term::parse(s).map_err(|e| format!("cannot parse term {s:?}: {e}"))
}

fn normal(s: &str) -> Result<NormalForm, String> {
    NormalForm::parse(s).map_err(|e| format!("cannot parse term {s:?}: {e}"))
}

fn shift(s: &str) -> Result<ShiftWord, String> {
    s.parse()
        .map_err(|e| format!("cannot parse shift {s:?}: {e}"))
}

fn generators(g: &Generators) -> Result<Vec<NormalForm>, String> {
    g.gens.iter().map(|s| normal(s)).collect()
}

fn read(path: &PathBuf) -> Result<String, String> {
    std::fs::read_to_string(path).map_err(|e| format!("cannot read {}: {e}", path.display()))
}

fn mode(cm: bool) -> Mode {
    if cm {
        Mode::CM
    } else {
        Mode::CQ
    }
}

fn indices(list: &[usize]) -> String {
    list.iter()
        .map(|i| i.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

fn dispatch(command: &Command) -> Result<Reply, String> {
    Ok(match command {
        Command::Normalize { cm, term: t } => {
            let nf = normalize(&term(t)?, mode(*cm));
            Reply::value(nf.to_string(), json!({ "normal_form": nf }))
        }
        Command::Eq { cm, left, right } => {
            Reply::boolean(equal(&term(left)?, &term(right)?, mode(*cm)))
        }
        Command::Apply { shift: s, term: t } => {
            let nf = apply_shift(&shift(s)?, &normal(t)?);
            Reply::value(nf.to_string(), json!({ "normal_form": nf }))
        }
        Command::Shifts { term: t } => {
            let leaves = shifts_of(&normal(t)?);
            let mut text = String::new();
            for (addr, word) in &leaves {
                let _ = writeln!(text, "{addr} {word}");
            }
            let json = leaves
                .iter()
                .map(|(a, w)| json!({ "address": a.to_string(), "shift": w }))
                .collect();
            Reply::value(text.trim_end().to_string(), Value::Array(json))
        }
        Command::RiCheck { term: t } => Reply::boolean(is_right_invertible(&normal(t)?)),
        Command::RightInverse { term: t } => {
            let g = right_inverse(&normal(t)?).map_err(usage)?;
            Reply::value(g.to_string(), json!({ "normal_form": g }))
        }
        Command::Separate { left, right } => {
            let sep = cq_separator(&normal(left)?, &normal(right)?).map_err(usage)?;
            Reply::value(
                format!("h = {}\nk = {}\nindex = {}", sep.h, sep.k, sep.index),
                json!({ "h": sep.h.to_string(), "k": sep.k.to_string(), "index": sep.index }),
            )
        }
        Command::Kernel { term: t } => Reply::boolean(in_kernel(&term(t)?)),
        Command::Bad { gens, shift: s } => {
            Reply::boolean(ShiftAnalysis::new(&generators(gens)?).is_bad(&shift(s)?))
        }
        Command::Extenuative { gens, shift: s } => {
            Reply::boolean(ShiftAnalysis::new(&generators(gens)?).is_extenuative(&shift(s)?))
        }
        Command::Covers { gens } => Reply::boolean(covers_cantor(&generators(gens)?)),
        Command::Infinite { gens } => Reply::verdict(&submonoid_infinite(&generators(gens)?)),
        Command::Kill {
            gens,
            budget,
            shift: s,
        } => {
            let k = killing_sequence(&shift(s)?, &generators(gens)?, *budget);
            let json = serde_json::to_value(&k).expect("killing results serialize");
            match k {
                Killing::Found { witness } => Reply::value(indices(&witness), json),
                Killing::Unknown { exhausted } => Reply {
                    code: 2,
                    text: if exhausted {
                        "unknown: search space closed, the shift is bad".into()
                    } else {
                        "unknown: budget exhausted".into()
                    },
                    json,
                },
            }
        }
        Command::Member {
            gens,
            ri,
            budget,
            target,
        } => {
            let b = generators(gens)?;
            let f = normal(target)?;
            let v = if *ri {
                is_member_ri(&f, &b, *budget).map_err(usage)?
            } else {
                is_member(&f, &b, *budget)
            };
            Reply::verdict(&v)
        }
        Command::Jigsaw(JigsawCommand::Encode { encoder, file }) => {
            let cnf = parse_dimacs(&read(file)?).map_err(usage)?;
            let instance = encode_with(&cnf, &encoder.config()).instance;
            let text = instance.to_text();
            Reply::value(text.trim_end().to_string(), json!({ "puzzle": text }))
        }
        Command::Jigsaw(JigsawCommand::Solve { budget, file }) => {
            let p = PuzzleInstance::parse(&read(file)?).map_err(usage)?;
            let solution = solve_puzzle(&p, *budget).map_err(usage)?;
            let json = serde_json::to_value(&solution).expect("solutions serialize");
            match &solution {
                Solution::Solved { assignment } => Reply::value(
                    format!("solved\n{}", assignment.render(&p).trim_end()),
                    json,
                ),
                Solution::NoSolution => Reply {
                    code: 1,
                    text: "no solution".into(),
                    json,
                },
                Solution::Unknown { nodes } => Reply {
                    code: 2,
                    text: format!("unknown after {nodes} nodes"),
                    json,
                },
            }
        }
        Command::Jigsaw(JigsawCommand::VerifyReduction {
            encoder,
            budget,
            file,
        }) => {
            let cnf = parse_dimacs(&read(file)?).map_err(usage)?;
            let report = verify_reduction(&cnf, &encoder.config(), *budget).map_err(usage)?;
            let code = match report.agreement {
                crate::jigsaw::Agreement::Agree => 0,
                crate::jigsaw::Agreement::Disagree => 1,
                crate::jigsaw::Agreement::Undetermined => 2,
            };
            let json = json!({
                "verdict": report.agreement,
                "satisfiable": report.sat.is_some(),
                "sat_witness": report.sat,
                "puzzle": report.puzzle,
                "witnesses_verified": report.witnesses_verified,
                "encoder": report.config,
            });
            Reply {
                code,
                text: report.to_string().trim_end().to_string(),
                json,
            }
        }
        Command::Jigsaw(JigsawCommand::Fidelity { budget }) => {
            let report = fidelity_report(&curated_corpus(), *budget).map_err(usage)?;
            let shipped = report.shipped_row();
            let rows: Vec<Value> = report
                .rows
                .iter()
                .map(|r| {
                    json!({
                        "encoder": r.config,
                        "agree": r.agree,
                        "disagree": r.disagree,
                        "undetermined": r.undetermined,
                        "unverified": r.unverified,
                    })
                })
                .collect();
            let disagreements: Vec<String> = shipped
                .disagreements
                .iter()
                .map(|r| r.cnf.to_dimacs())
                .collect();
            let json = json!({
                "formulas": report.formulas,
                "shipped": report.shipped,
                "rows": rows,
                "shipped_disagreements": disagreements,
            });
            Reply {
                code: if shipped.disagree == 0 && shipped.undetermined == 0 {
                    0
                } else {
                    1
                },
                text: report.to_string().trim_end().to_string(),
                json,
            }
        }
    })
}

/// Runs one invocation; `argv` includes the program name. Returns the exit
/// status and everything that should be printed.
pub fn run<I, T>(argv: I) -> (i32, String)
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            return (code, e.render().to_string().trim_end().to_string());
        }
    };
    match dispatch(&cli.command) {
        Ok(reply) if cli.json => (reply.code, reply.json.to_string()),
        Ok(reply) => (reply.code, reply.text),
        Err(message) if cli.json => (EXIT_USAGE, json!({ "error": message }).to_string()),
        Err(message) => (EXIT_USAGE, format!("error: {message}")),
    }
}
