//! The acceptance suite. Run with `cargo test --test acceptance`; prints one
//! line per criterion and fails if any criterion fails.

mod common;

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::panic::{self, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use cartmon::decide::{
    closure, covers_cantor, is_member, is_member_ri, submonoid_infinite, Closure, Verdict,
};
use cartmon::jigsaw::{
    curated_corpus, encode_with, fidelity_report, solve_puzzle, verify_assignment, Agreement, Cnf,
    EncoderConfig, FidelityReport, PuzzleInstance, Solution, UsagePolicy, DEFAULT_SOLVER_BUDGET,
};
use cartmon::normal::{
    cm_normalize, collapse, cq_normalize, equal, multiply, multiply_all, shifts_of, Mode,
    NormalForm,
};
use cartmon::ri::{is_right_invertible, right_inverse};
use cartmon::separator::cq_separator;
use cartmon::shift::{is_bad, ShiftAnalysis};
use cartmon::term::{Pattern, Term};
use cartmon::word::{Letter, ShiftWord, Side};
use common::*;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

const FIXTURE_LIMIT: Duration = Duration::from_secs(1);
const REWRITING_LIMIT: Duration = Duration::from_secs(120);
const SATURATION_LIMIT: Duration = Duration::from_secs(180);
const DECISION_LIMIT: Duration = Duration::from_secs(60);
const MEMBERSHIP_LIMIT: Duration = Duration::from_secs(120);
const RI_LIMIT: Duration = Duration::from_secs(60);
const SEPARATOR_LIMIT: Duration = Duration::from_secs(60);
const JIGSAW_LIMIT: Duration = Duration::from_secs(180);

const RANDOM_TERMS: usize = 10_000;
const MAX_TERM_NODES: usize = 40;
const TRIPLES: usize = 1_000;
const GENERATOR_SETS: usize = 100;
const SHIFT_LENGTH: usize = 6;
/// The brute-force orbit explores shifts up to this length. Every shift of
/// length at most this is below the state cap, so length is the only cap.
const ORBIT_LENGTH: usize = 12;
const ORBIT_STATES: usize = 1 << 14;
const CLOSURE_SETS: usize = 50;
const CLOSURE_MAX: usize = 200;
/// Search nodes for random membership questions. Runs that keep one long
/// configuration alive cost time linear in its length per node.
const MEMBER_BUDGET: usize = 2_000;

type Outcome = Result<String, String>;
type Criterion = (&'static str, Duration, fn() -> Outcome);

fn ensure(cond: bool, message: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(message())
    }
}

fn nf(s: &str) -> NormalForm {
    NormalForm::parse(s).unwrap()
}

fn term(s: &str) -> Term {
    Term::parse(s).unwrap()
}

fn word(s: &str) -> ShiftWord {
    s.parse().unwrap()
}

fn fixtures() -> Outcome {
    ensure(covers_cantor(&[nf("<I,I>")]), || {
        "{<I,I>} should cover Cantor space".into()
    })?;
    ensure(!covers_cantor(&[nf("<R,L>")]), || {
        "{<R,L>} should not cover Cantor space".into()
    })?;
    ensure(is_bad(&word("RR"), &[nf("<L,R*R>")]), || {
        "RR should be bad for {<L,R*R>}".into()
    })?;
    ensure(equal(&term("<L,R>"), &Term::I, Mode::CM), || {
        "<L,R> = I should hold in CM".into()
    })?;
    ensure(!equal(&term("<L,R>"), &Term::I, Mode::CQ), || {
        "<L,R> = I should fail in CQ".into()
    })?;
    Ok("5 fixtures".into())
}

fn rewriting() -> Outcome {
    let mut rng = StdRng::seed_from_u64(0x5eed_0002);
    let mut biggest = 0;
    for _ in 0..RANDOM_TERMS {
        let nodes = rng.gen_range(1..=MAX_TERM_NODES);
        let t = random_term(&mut rng, nodes);
        biggest = biggest.max(t.node_count());
        let cq = cq_normalize(&t);
        let cm = cm_normalize(&t);
        ensure(cq_normalize(&cq.to_term()) == cq, || {
            format!("CQ not idempotent on {t}")
        })?;
        ensure(cm_normalize(&cm.to_term()) == cm, || {
            format!("CM not idempotent on {t}")
        })?;
        ensure(collapse(&cq) == cm, || {
            format!("collapse of the CQ form differs on {t}")
        })?;
        let oracle = rewrite_randomly(&t, false, &mut rng);
        ensure(oracle == cq, || {
            format!("CQ: rewriter gave {oracle}, normalizer {cq} on {t}")
        })?;
        let oracle = rewrite_randomly(&t, true, &mut rng);
        ensure(oracle == cm, || {
            format!("CM: rewriter gave {oracle}, normalizer {cm} on {t}")
        })?;
        ensure(
            evaluate(&t, false) == cq && evaluate(&t, true) == cm,
            || format!("evaluation differs on {t}"),
        )?;
    }
    for _ in 0..TRIPLES {
        let (a, b, c) = (
            random_nf(&mut rng, 3, 2),
            random_nf(&mut rng, 3, 2),
            random_nf(&mut rng, 3, 2),
        );
        let left = multiply(&multiply(&a, &b), &c);
        ensure(left == multiply(&a, &multiply(&b, &c)), || {
            format!("({a}*{b})*{c} is not associative")
        })?;
        let oracle = rewrite_randomly(
            &Term::product([a.to_term(), b.to_term(), c.to_term()]),
            false,
            &mut rng,
        );
        ensure(oracle == left, || {
            format!("product {a}*{b}*{c} disagrees with the rewriter")
        })?;
    }
    Ok(format!(
        "{RANDOM_TERMS} terms of at most {biggest} nodes, {TRIPLES} triples"
    ))
}

fn saturation() -> Outcome {
    let mut rng = StdRng::seed_from_u64(0x5eed_0003);
    let shifts = all_words(SHIFT_LENGTH);
    let (mut conclusive, mut inconclusive, mut extenuative, mut bad) = (0, 0, 0, 0);
    for _ in 0..GENERATOR_SETS {
        let size = rng.gen_range(1..=3);
        let gens: Vec<NormalForm> = (0..size).map(|_| random_nf(&mut rng, 3, 2)).collect();
        let analysis = ShiftAnalysis::new(&gens);
        for s in &shifts {
            let claimed = analysis.is_bad(s);
            bad += usize::from(claimed);
            let o = orbit(s, &gens, ORBIT_LENGTH, ORBIT_STATES);
            if o.killed || o.closed {
                conclusive += 1;
                ensure(claimed == !o.killed, || {
                    format!(
                        "is_bad({s}) = {claimed} but the orbit says otherwise for {}",
                        show(&gens)
                    )
                })?;
            } else {
                inconclusive += 1;
            }
            if analysis.is_extenuative(s) {
                extenuative += 1;
                ensure(o.longest > ORBIT_LENGTH, || {
                    format!(
                        "{s} is called extenuative for {} but no shift grew past {ORBIT_LENGTH}",
                        show(&gens)
                    )
                })?;
            }
        }
    }
    Ok(format!(
        "{GENERATOR_SETS} sets x {} shifts: {conclusive} conclusive, {inconclusive} inconclusive, {bad} bad, {extenuative} extenuative",
        shifts.len()
    ))
}

fn show(gens: &[NormalForm]) -> String {
    let parts: Vec<String> = gens.iter().map(ToString::to_string).collect();
    format!("{{{}}}", parts.join(", "))
}

/// One or two small generators; every other set consists of leaf
/// permutations, which keeps many of them finite.
fn small_sets(rng: &mut StdRng) -> Vec<NormalForm> {
    let size = rng.gen_range(1..=2);
    if rng.gen_bool(0.5) {
        (0..size).map(|_| random_permutation(rng, 3)).collect()
    } else {
        (0..size).map(|_| random_nf(rng, 2, 1)).collect()
    }
}

fn decisions() -> Outcome {
    let infinite = |g: &str| matches!(submonoid_infinite(&[nf(g)]), Verdict::Infinite { .. });
    for g in ["<L,R*R>", "<I,I>", "L"] {
        ensure(infinite(g), || format!("{{{g}}} should be infinite"))?;
    }
    let expect: BTreeSet<NormalForm> = ["I", "<R,L>", "<L,R>"].into_iter().map(nf).collect();
    let got = submonoid_infinite(&[nf("<R,L>")]);
    ensure(got == Verdict::Finite { elements: expect }, || {
        format!("{{<R,L>}} gave {got}")
    })?;

    let mut rng = StdRng::seed_from_u64(0x5eed_0004);
    let (mut found, mut tries, mut largest) = (0, 0, 0);
    while found < CLOSURE_SETS {
        tries += 1;
        ensure(tries < 100 * CLOSURE_SETS, || {
            format!("only {found} finite sets found")
        })?;
        let gens = small_sets(&mut rng);
        if let Closure::Closed(elements) = closure(&gens, CLOSURE_MAX) {
            found += 1;
            largest = largest.max(elements.len());
            let got = submonoid_infinite(&gens);
            ensure(got == Verdict::Finite { elements }, || {
                format!("{} gave {got}", show(&gens))
            })?;
        }
    }
    Ok(format!(
        "4 fixtures, {found} finite sets of up to {largest} elements"
    ))
}

fn check_witness(target: &NormalForm, gens: &[NormalForm], v: &Verdict) -> Result<(), String> {
    if let Verdict::Yes { witness } = v {
        let product = multiply_all(witness.iter().map(|&i| &gens[i]));
        ensure(&product == target, || {
            format!(
                "witness {witness:?} for {target} over {} gives {product}",
                show(gens)
            )
        })?;
    }
    Ok(())
}

fn membership() -> Outcome {
    let gens = [nf("<L,R*R>")];
    let got = is_member(&nf("<L,R*R*R>"), &gens, 10_000);
    ensure(
        got == Verdict::Yes {
            witness: vec![0, 0],
        },
        || format!("<L,R*R*R> gave {got}"),
    )?;
    let got = is_member(&nf("<R,L>"), &gens, 10_000);
    ensure(got == Verdict::No { exhaustive: true }, || {
        format!("<R,L> gave {got}")
    })?;
    let got = is_member_ri(&NormalForm::identity(), &[nf("<R,L>")], 10_000);
    ensure(got == Ok(Verdict::Yes { witness: vec![] }), || {
        format!("I gave {got:?}")
    })?;

    let mut rng = StdRng::seed_from_u64(0x5eed_0005);
    let (mut yes, mut no, mut unknown) = (0, 0, 0);
    let mut tally = |v: &Verdict| match v {
        Verdict::Yes { .. } => yes += 1,
        Verdict::No { .. } => no += 1,
        _ => unknown += 1,
    };
    for _ in 0..200 {
        let size = rng.gen_range(1..=3);
        let gens: Vec<NormalForm> = (0..size).map(|_| random_nf(&mut rng, 2, 2)).collect();
        let len = rng.gen_range(0..5);
        let seq: Vec<usize> = (0..len).map(|_| rng.gen_range(0..gens.len())).collect();
        let target = multiply_all(seq.iter().map(|&i| &gens[i]));
        let v = is_member(&target, &gens, MEMBER_BUDGET);
        check_witness(&target, &gens, &v)?;
        ensure(!matches!(v, Verdict::No { .. }), || {
            format!("product {target} of {} was refused", show(&gens))
        })?;
        tally(&v);
        let other = random_nf(&mut rng, 3, 2);
        let v = is_member(&other, &gens, MEMBER_BUDGET);
        check_witness(&other, &gens, &v)?;
        tally(&v);
    }
    // Against the full closure, where it is small.
    let mut compared = 0;
    for _ in 0..100 {
        let gens = small_sets(&mut rng);
        let Closure::Closed(elements) = closure(&gens, CLOSURE_MAX) else {
            continue;
        };
        compared += 1;
        for target in elements
            .iter()
            .take(20)
            .cloned()
            .chain([random_nf(&mut rng, 2, 1)])
        {
            let v = is_member(&target, &gens, MEMBER_BUDGET);
            check_witness(&target, &gens, &v)?;
            let truth = elements.contains(&target);
            ensure(v.is_yes() == truth && !v.is_unknown(), || {
                format!(
                    "{target} over {}: {v} but closure says {truth}",
                    show(&gens)
                )
            })?;
        }
    }
    Ok(format!(
        "3 fixtures, {yes} yes, {no} no, {unknown} unknown, {compared} sets against closure"
    ))
}

fn right_invertibility() -> Outcome {
    ensure(is_right_invertible(&nf("<R,L>")), || {
        "<R,L> should be right invertible".into()
    })?;
    ensure(!is_right_invertible(&nf("<L,R*L>")), || {
        "<L,R*L> should not be right invertible".into()
    })?;
    let mut rng = StdRng::seed_from_u64(0x5eed_0006);
    let (mut done, mut tries) = (0, 0);
    while done < 100 {
        tries += 1;
        ensure(tries < 100_000, || {
            format!("only {done} right invertible forms found")
        })?;
        let f = random_nf(&mut rng, 4, 3);
        let ri = suffix_free(&leaf_words(&collapse(&f)));
        ensure(is_right_invertible(&f) == ri, || {
            format!("suffix test disagrees on {f}")
        })?;
        if !ri || f.is_leaf() {
            continue;
        }
        done += 1;
        let g = right_inverse(&f).map_err(|e| format!("{f}: {e}"))?;
        let product = Term::compose(f.to_term(), g.to_term());
        ensure(cm_normalize(&product).is_identity(), || {
            format!("{f} * {g} is not I in CM")
        })?;
        ensure(
            rewrite_randomly(&product, true, &mut rng).is_identity(),
            || format!("the rewriter does not reduce {f} * {g} to I"),
        )?;
    }
    Ok(format!("2 fixtures, 100 forms from {tries} candidates"))
}

/// Undoes rule collapses: replaces a random leaf `w` by `<L*w, R*w>`.
fn expand(f: &NormalForm, rng: &mut StdRng) -> NormalForm {
    let leaves = shifts_of(f);
    let pick = rng.gen_range(0..leaves.len());
    let mut entries = Vec::new();
    for (j, (addr, w)) in leaves.into_iter().enumerate() {
        if j == pick {
            entries.push((addr.child(Side::First), w.prepend(Letter::L)));
            entries.push((addr.child(Side::Second), w.prepend(Letter::R)));
        } else {
            entries.push((addr, w));
        }
    }
    NormalForm::from_shifts(&entries).unwrap()
}

fn separators() -> Outcome {
    let mut rng = StdRng::seed_from_u64(0x5eed_0007);
    for _ in 0..100 {
        let u = random_nf(&mut rng, 3, 2);
        let mut v = expand(&u, &mut rng);
        for _ in 0..rng.gen_range(0..3) {
            v = expand(&v, &mut rng);
        }
        let (u, v) = if rng.gen_bool(0.5) { (u, v) } else { (v, u) };
        ensure(
            cm_normalize(&u.to_term()) == cm_normalize(&v.to_term()) && u != v,
            || format!("bad pair {u}, {v}"),
        )?;
        let sep = cq_separator(&u, &v).map_err(|e| format!("{u}, {v}: {e}"))?;
        let pair = [&u, &v];
        let sandwich = |x: &NormalForm| Term::product([sep.h.clone(), x.to_term(), sep.k.clone()]);
        let hit = rewrite_randomly(&sandwich(pair[sep.index]), false, &mut rng);
        let miss = rewrite_randomly(&sandwich(pair[1 - sep.index]), false, &mut rng);
        ensure(hit.is_identity() && !miss.is_identity(), || {
            format!(
                "separator h={} k={} fails on {u}, {v}: {hit} and {miss}",
                sep.h, sep.k
            )
        })?;
    }
    Ok("100 pairs".into())
}

/// A puzzle by exhaustive search over injective placements of gadgets,
/// normalizing by evaluation. Substitutions already tried for
/// an identity are remembered.
struct PuzzleOracle<'a> {
    p: &'a PuzzleInstance,
    kinds: Vec<Term>,
    counts: Vec<usize>,
    chosen: BTreeMap<String, usize>,
    memo: HashMap<(usize, Vec<usize>), bool>,
}

impl<'a> PuzzleOracle<'a> {
    fn solvable(p: &'a PuzzleInstance) -> bool {
        let mut kinds: Vec<Term> = Vec::new();
        let mut counts = Vec::new();
        for g in &p.gadgets {
            match kinds.iter().position(|k| k == g) {
                Some(i) => counts[i] += 1,
                None => {
                    kinds.push(g.clone());
                    counts.push(1);
                }
            }
        }
        if p.policy == UsagePolicy::ExactOnce && p.variables.len() != p.gadgets.len() {
            return false;
        }
        let mut oracle = PuzzleOracle {
            p,
            kinds,
            counts,
            chosen: BTreeMap::new(),
            memo: HashMap::new(),
        };
        oracle.search(0)
    }

    fn search(&mut self, next: usize) -> bool {
        if !self.consistent() {
            return false;
        }
        if next == self.p.variables.len() {
            return true;
        }
        let v = self.p.variables[next].clone();
        for kind in 0..self.kinds.len() {
            if self.counts[kind] == 0 {
                continue;
            }
            self.counts[kind] -= 1;
            self.chosen.insert(v.clone(), kind);
            let ok = self.search(next + 1);
            self.chosen.remove(&v);
            self.counts[kind] += 1;
            if ok {
                return true;
            }
        }
        false
    }

    fn consistent(&mut self) -> bool {
        for (i, identity) in self.p.identities.iter().enumerate() {
            let vars = pattern_vars(&identity.lhs);
            let Some(key) = vars
                .iter()
                .map(|v| self.chosen.get(v).copied())
                .collect::<Option<Vec<_>>>()
            else {
                continue;
            };
            if let Some(&known) = self.memo.get(&(i, key.clone())) {
                if !known {
                    return false;
                }
                continue;
            }
            let binding: BTreeMap<&String, &Term> = vars
                .iter()
                .zip(&key)
                .map(|(v, &k)| (v, &self.kinds[k]))
                .collect();
            let lhs = substitute(&identity.lhs, &binding);
            let cartesian = self.p.mode == Mode::CM;
            let holds = evaluate(&lhs, cartesian) == evaluate(&identity.rhs, cartesian);
            self.memo.insert((i, key), holds);
            if !holds {
                return false;
            }
        }
        true
    }
}

fn pattern_vars(p: &Pattern) -> Vec<String> {
    match p {
        Pattern::Var(v) => vec![v.clone()],
        Pattern::Compose(a, b) | Pattern::Pair(a, b) => {
            let mut out = pattern_vars(a);
            out.extend(pattern_vars(b));
            out
        }
        _ => vec![],
    }
}

fn substitute(p: &Pattern, binding: &BTreeMap<&String, &Term>) -> Term {
    match p {
        Pattern::I => Term::I,
        Pattern::L => Term::L,
        Pattern::R => Term::R,
        Pattern::Var(v) => binding[v].clone(),
        Pattern::Compose(a, b) => Term::compose(substitute(a, binding), substitute(b, binding)),
        Pattern::Pair(a, b) => Term::pair(substitute(a, binding), substitute(b, binding)),
    }
}

fn truth_table(cnf: &Cnf) -> bool {
    (0u32..1 << cnf.vars).any(|bits| {
        cnf.clauses.iter().all(|clause| {
            clause.iter().any(|&lit| {
                let value = bits >> (lit.unsigned_abs() - 1) & 1 == 1;
                value == (lit > 0)
            })
        })
    })
}

const HAND_PUZZLES: &[(&str, bool)] = &[
    ("var x\ngadget L\nidentity ?x = L", true),
    ("var x\ngadget R\nidentity ?x = L", false),
    (
        "var x\nvar y\ngadget R\ngadget L\nidentity ?x*?y = L*R",
        true,
    ),
    (
        "var x\nvar y\ngadget L\ngadget R\nidentity ?x*?y = R*R",
        false,
    ),
    ("var x\ngadget <R,L>\nidentity L*?x = R", true),
    ("var x\ngadget <R,L>\nidentity R*?x = R", false),
    ("mode CQ\nvar x\ngadget <L,R>\nidentity ?x = I", false),
    ("mode CM\nvar x\ngadget <L,R>\nidentity ?x = I", true),
    (
        "mode CQ\nvar x\nvar y\ngadget <L,R>\ngadget I\nidentity ?x*?y = I",
        false,
    ),
    (
        "mode CM\nvar x\nvar y\ngadget <L,R>\ngadget I\nidentity ?x*?y = I",
        true,
    ),
    ("var x\ngadget <I,R>\nidentity L*?x = I", true),
    ("var x\ngadget L\ngadget R\nidentity ?x = L", false),
    (
        "policy at-most-once\nvar x\ngadget L\ngadget R\nidentity ?x = L",
        true,
    ),
    (
        "var x\nvar y\ngadget R\ngadget L\nidentity ?x = L\nidentity ?y = R",
        true,
    ),
    (
        "var x\nvar y\ngadget L\ngadget R\nidentity ?x = L\nidentity ?y = L",
        false,
    ),
    ("var x\ngadget I\nidentity ?x*<I,I> = <I,I>", true),
    ("var x\ngadget L\nidentity ?x*<I,I> = <I,I>", false),
    (
        "var x\nvar y\ngadget R\ngadget L\nidentity <?x,?y> = <L,R>",
        true,
    ),
    (
        "var x\nvar y\ngadget L\ngadget R\nidentity R*<?x,?y> = L",
        true,
    ),
    ("identity L*<R,L> = R", true),
    ("identity L = R", false),
];

fn hand_puzzles() -> Result<(), String> {
    for (text, expect) in HAND_PUZZLES {
        let p = PuzzleInstance::parse(text).map_err(|e| format!("{text:?}: {e}"))?;
        ensure(
            PuzzleInstance::parse(&p.to_text()).as_ref() == Ok(&p),
            || format!("{text:?} does not round trip"),
        )?;
        let oracle = PuzzleOracle::solvable(&p);
        ensure(oracle == *expect, || {
            format!("{text:?}: oracle says {oracle}")
        })?;
        match solve_puzzle(&p, DEFAULT_SOLVER_BUDGET).map_err(|e| e.to_string())? {
            Solution::Solved { assignment } => {
                ensure(*expect && verify_assignment(&p, &assignment), || {
                    format!("{text:?}: bad solution {}", assignment.render(&p))
                })?;
            }
            Solution::NoSolution => ensure(!expect, || format!("{text:?}: solver found none"))?,
            Solution::Unknown { .. } => return Err(format!("{text:?}: solver gave up")),
        }
    }
    Ok(())
}

fn jigsaw() -> Outcome {
    hand_puzzles()?;
    let corpus = curated_corpus();
    for cnf in &corpus {
        let e = encode_with(cnf, &EncoderConfig::default());
        let expect = cnf.clauses.len() + cnf.vars;
        ensure(e.instance.identities.len() == expect, || {
            format!("{} identities for {cnf}", e.instance.identities.len())
        })?;
    }
    let report = fidelity_report(&corpus, DEFAULT_SOLVER_BUDGET).map_err(|e| e.to_string())?;
    reproduce(&corpus, &report)?;
    let shipped = report.shipped_row();
    if shipped.disagree == 0 {
        return Ok(format!(
            "{} puzzles, {} formulas, shipped encoder agrees on all",
            HAND_PUZZLES.len(),
            corpus.len()
        ));
    }
    let rendered = report.to_string();
    let heading = format!(
        "the shipped encoder disagrees with the truth table on {} of {} formulas:",
        shipped.disagree,
        corpus.len()
    );
    ensure(rendered.contains(&heading), || {
        "the report does not state the discrepancy".into()
    })?;
    for r in &shipped.disagreements {
        ensure(r.to_string().contains("agreement: DISAGREE"), || {
            format!("{} is not rendered", r.cnf)
        })?;
    }
    let listed = rendered
        .lines()
        .skip_while(|l| *l != heading)
        .skip(1)
        .count();
    ensure(listed == shipped.disagree, || {
        format!("the report lists {listed} disagreements")
    })?;
    Ok(format!(
        "{} puzzles, {} formulas; shipped encoder ({}) disagrees on {}, reproduced by both oracles and documented in the report",
        HAND_PUZZLES.len(),
        corpus.len(),
        shipped.config,
        shipped.disagree
    ))
}

/// Every verdict of every configuration, recomputed by the truth table and the
/// puzzle oracle.
fn reproduce(corpus: &[Cnf], report: &FidelityReport) -> Result<(), String> {
    for row in &report.rows {
        ensure(row.undetermined == 0 && row.unverified == 0, || {
            format!("{}: incomplete run", row.config)
        })?;
        let mut disagreements = Vec::new();
        for cnf in corpus {
            let sat = truth_table(cnf);
            let puzzle = PuzzleOracle::solvable(&encode_with(cnf, &row.config).instance);
            if sat != puzzle {
                disagreements.push(cnf.clone());
            }
        }
        let reported: Vec<Cnf> = row.disagreements.iter().map(|r| r.cnf.clone()).collect();
        ensure(reported == disagreements, || {
            format!(
                "{}: the oracles find {} disagreements, the report {}",
                row.config,
                disagreements.len(),
                reported.len()
            )
        })?;
        ensure(row.agree + row.disagree == corpus.len(), || {
            format!("{}: counts do not add up", row.config)
        })?;
        for r in &row.disagreements {
            ensure(r.agreement == Agreement::Disagree, || {
                format!("{}: mislabelled", r.cnf)
            })?;
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("worked examples", FIXTURE_LIMIT, fixtures),
        ("rewriting", REWRITING_LIMIT, rewriting),
        (
            "saturation against brute force",
            SATURATION_LIMIT,
            saturation,
        ),
        ("decision fixtures", DECISION_LIMIT, decisions),
        ("membership", MEMBERSHIP_LIMIT, membership),
        ("right invertibility", RI_LIMIT, right_invertibility),
        ("separators", SEPARATOR_LIMIT, separators),
        ("jigsaw", JIGSAW_LIMIT, jigsaw),
    ];
    let mut failed = 0;
    for (i, (name, limit, run)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let outcome =
            panic::catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|_| Err("panicked".into()));
        let elapsed = start.elapsed();
        let outcome = outcome.and_then(|detail| {
            if elapsed <= limit {
                Ok(detail)
            } else {
                Err(format!("{detail}, but took longer than {limit:?}"))
            }
        });
        match outcome {
            Ok(detail) => println!("PASS {} {name}: {detail} ({elapsed:.2?})", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {} {name}: {why} ({elapsed:.2?})", i + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
