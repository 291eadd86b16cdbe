use std::fs;
use std::path::Path;

use labprim_core::family::{ClosureViolation, SpaceReport};
use labprim_core::lattice::{enumerate_hs, quotient, HSLattice};
use labprim_core::tails::{enumerate_tails, is_prime_hs, tail_from_word, verify_prim_correspondence, TailReport};
use labprim_core::topology::{
    closed_sets, specialization_order, verify_homeomorphism, verify_homeomorphism_sampled, verify_kuratowski,
    verify_kuratowski_sampled, CheckMode, TailSpace, DEFAULT_SAMPLES, EXHAUSTIVE_LIMIT,
};
use labprim_core::{LabelledGraph, LabelledSpace, SpaceOptions, SubFamily, UltimatelyPeriodicWord, VertexSet};
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::cli::{Cli, Command};
use crate::corpus;
use crate::dot;
use crate::error::{CliError, STATUS_INPUT, STATUS_OK, STATUS_UNVERIFIED};
use crate::io::{family_names, read_family, read_graph, set_names, to_pretty};

/// What a command produced: the text for the output stream, an optional
/// diagnostic for standard error, and the exit status.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub status: i32,
    pub output: String,
    pub message: Option<String>,
}

impl Outcome {
    fn ok(output: String) -> Self {
        Self::with_status(STATUS_OK, output)
    }

    fn with_status(status: i32, output: String) -> Self {
        Self {
            status,
            output,
            message: None,
        }
    }

    fn failed(status: i32, message: String) -> Self {
        Self {
            status,
            output: String::new(),
            message: Some(message),
        }
    }
}

/// Runs one command and writes its output to `--output` or standard output.
/// Returns the exit status.
pub fn execute(cli: &Cli) -> i32 {
    let outcome = run(cli);
    if let Some(message) = &outcome.message {
        eprintln!("labprim: {message}");
    }
    if outcome.output.is_empty() {
        return outcome.status;
    }
    match &cli.output {
        Some(path) => {
            if let Err(source) = fs::write(path, &outcome.output) {
                let e = CliError::Write {
                    path: path.display().to_string(),
                    source,
                };
                eprintln!("labprim: {e}");
                return STATUS_INPUT;
            }
        }
        None => print!("{}", outcome.output),
    }
    outcome.status
}

/// Runs one command without touching the output streams.
pub fn run(cli: &Cli) -> Outcome {
    match dispatch(cli) {
        Ok(outcome) => outcome,
        Err(e) => Outcome::failed(e.status(), e.to_string()),
    }
}

fn dispatch(cli: &Cli) -> Result<Outcome, CliError> {
    match &cli.command {
        Command::Validate { input } => validate(cli, input),
        Command::Family { input } => {
            let space = load_space(cli, input)?;
            Ok(Outcome::ok(crate::io::family_to_json(space.graph(), space.family())))
        }
        Command::Ideals { input, dot } => ideals(&load_space(cli, input)?, *dot),
        Command::Tails { input } => tails(&load_space(cli, input)?),
        Command::Prim { input, dot, seed } => prim(&load_space(cli, input)?, *dot, *seed),
        Command::Quotient { input, ideal } => quotient_cmd(&load_space(cli, input)?, *ideal),
        Command::TailFromWord {
            input,
            set,
            prefix,
            cycle,
        } => word_tail(&load_space(cli, input)?, set, prefix, cycle),
        Command::CheckOracle { seed, instances } => {
            if cli.family.is_some() {
                return Err(CliError::Usage("check-oracle generates its own graphs; --family does not apply".into()));
            }
            let summary = corpus::run_oracle(*seed, *instances);
            let status = if summary.passed { STATUS_OK } else { STATUS_UNVERIFIED };
            Ok(Outcome::with_status(status, to_pretty(&summary)))
        }
    }
}

fn build_space(cli: &Cli, input: &Path, allow_unverified: bool) -> Result<LabelledSpace, CliError> {
    let graph = read_graph(input)?;
    let family = match &cli.family {
        Some(path) => Some(read_family(path, &graph)?),
        None => None,
    };
    let options = SpaceOptions {
        allow_unverified,
        max_family_size: cli.max_family_size,
    };
    Ok(LabelledSpace::new(graph, family, options)?)
}

fn load_space(cli: &Cli, input: &Path) -> Result<LabelledSpace, CliError> {
    build_space(cli, input, cli.allow_unverified)
}

// ---- validate ----

#[derive(Serialize)]
struct EdgeOut {
    src: String,
    dst: String,
    label: String,
}

#[derive(Serialize)]
struct ClashOut {
    vertex: String,
    label: String,
    edges: Vec<EdgeOut>,
}

#[derive(Serialize)]
struct GraphChecks {
    has_no_sinks: bool,
    sinks: Vec<String>,
    is_left_resolving: bool,
    left_resolving_violations: Vec<ClashOut>,
    is_row_finite: bool,
}

#[derive(Serialize)]
#[serde(tag = "rule", rename_all = "snake_case")]
enum ClosureOut {
    WordRange { letter: String },
    Range { set: Vec<String>, letter: String },
    Union { a: Vec<String>, b: Vec<String> },
    Intersection { a: Vec<String>, b: Vec<String> },
    Complement { a: Vec<String>, b: Vec<String> },
}

impl ClosureOut {
    fn new(g: &LabelledGraph, v: &ClosureViolation) -> Self {
        let s = |x: &VertexSet| set_names(g, x);
        match v {
            ClosureViolation::MissingWordRange { letter } => ClosureOut::WordRange {
                letter: g.label_name(*letter).to_owned(),
            },
            ClosureViolation::Range { set, letter } => ClosureOut::Range {
                set: s(set),
                letter: g.label_name(*letter).to_owned(),
            },
            ClosureViolation::Union { a, b } => ClosureOut::Union { a: s(a), b: s(b) },
            ClosureViolation::Intersection { a, b } => ClosureOut::Intersection { a: s(a), b: s(b) },
            ClosureViolation::Complement { a, b } => ClosureOut::Complement { a: s(a), b: s(b) },
        }
    }
}

#[derive(Serialize)]
struct CounterexampleOut {
    a: Vec<String>,
    b: Vec<String>,
    letter: String,
}

#[derive(Serialize)]
struct SpaceChecks {
    is_nontrivial: bool,
    is_accommodating: bool,
    accommodating_violation: Option<ClosureOut>,
    is_non_degenerate: bool,
    non_degenerate_violation: Option<ClosureOut>,
    is_weakly_left_resolving: bool,
    weakly_left_resolving_counterexample: Option<CounterexampleOut>,
    is_set_finite: bool,
    is_receiver_set_finite: bool,
    has_no_sinks: bool,
}

impl SpaceChecks {
    fn new(g: &LabelledGraph, r: &SpaceReport) -> Self {
        Self {
            is_nontrivial: r.is_nontrivial,
            is_accommodating: r.is_accommodating,
            accommodating_violation: r.accommodating_violation.as_ref().map(|v| ClosureOut::new(g, v)),
            is_non_degenerate: r.is_non_degenerate,
            non_degenerate_violation: r.non_degenerate_violation.as_ref().map(|v| ClosureOut::new(g, v)),
            is_weakly_left_resolving: r.is_weakly_left_resolving,
            weakly_left_resolving_counterexample: r.weakly_left_resolving_counterexample.as_ref().map(|c| {
                CounterexampleOut {
                    a: set_names(g, &c.a),
                    b: set_names(g, &c.b),
                    letter: g.label_name(c.letter).to_owned(),
                }
            }),
            is_set_finite: r.is_set_finite,
            is_receiver_set_finite: r.is_receiver_set_finite,
            has_no_sinks: r.has_no_sinks,
        }
    }
}

#[derive(Serialize)]
struct ValidateOut {
    vertices: usize,
    labels: Vec<String>,
    edges: usize,
    graph: GraphChecks,
    family_size: usize,
    space: SpaceChecks,
    verified: bool,
    failures: Vec<&'static str>,
}

fn validate(cli: &Cli, input: &Path) -> Result<Outcome, CliError> {
    let space = build_space(cli, input, true)?;
    let g = space.graph();
    let report = g.validate();
    let name = |v| g.vertex_name(v).to_owned();
    let graph = GraphChecks {
        has_no_sinks: report.has_no_sinks,
        sinks: report.sinks.iter().map(|&v| name(v)).collect(),
        is_left_resolving: report.is_left_resolving,
        left_resolving_violations: report
            .left_resolving_violations
            .iter()
            .map(|c| ClashOut {
                vertex: name(c.vertex),
                label: g.label_name(c.label).to_owned(),
                edges: c
                    .edges
                    .iter()
                    .map(|&i| {
                        let e = g.edges()[i];
                        EdgeOut {
                            src: name(e.source),
                            dst: name(e.target),
                            label: g.label_name(e.label).to_owned(),
                        }
                    })
                    .collect(),
            })
            .collect(),
        is_row_finite: report.is_row_finite,
    };
    let out = ValidateOut {
        vertices: g.vertex_count(),
        labels: g.labels().to_vec(),
        edges: g.edges().len(),
        graph,
        family_size: space.family().len(),
        space: SpaceChecks::new(g, space.report()),
        verified: space.is_verified(),
        failures: space.report().failed_flags(),
    };
    let status = if space.is_verified() { STATUS_OK } else { STATUS_UNVERIFIED };
    Ok(Outcome::with_status(status, to_pretty(&out)))
}

// ---- ideals ----

#[derive(Serialize)]
struct IdealOut {
    id: usize,
    family: Vec<Vec<String>>,
    /// `None` for the top member, which is never prime.
    prime: Option<bool>,
}

#[derive(Serialize)]
struct IdealsOut {
    ideals: Vec<IdealOut>,
    hasse_edges: Vec<(usize, usize)>,
    dot: String,
}

fn subfamily_names(space: &LabelledSpace, sub: &SubFamily) -> Vec<Vec<String>> {
    family_names(space.graph(), sub.iter().map(|i| space.set(i)))
}

fn ideals(space: &LabelledSpace, dot_only: bool) -> Result<Outcome, CliError> {
    let lattice = enumerate_hs(space)?;
    let dot = dot::lattice_dot(space, &lattice);
    if dot_only {
        return Ok(Outcome::ok(dot));
    }
    let mut ideals = Vec::with_capacity(lattice.len());
    for (id, h) in lattice.members().iter().enumerate() {
        let prime = if id == lattice.top() {
            None
        } else {
            Some(is_prime_hs(space, &lattice, id)?)
        };
        ideals.push(IdealOut {
            id,
            family: subfamily_names(space, h.members()),
            prime,
        });
    }
    let out = IdealsOut {
        ideals,
        hasse_edges: lattice.hasse_edges(),
        dot,
    };
    Ok(Outcome::ok(to_pretty(&out)))
}

// ---- tails ----

#[derive(Serialize)]
struct TailOut {
    id: usize,
    sets: Vec<Vec<String>>,
    complement_id: usize,
}

#[derive(Serialize)]
struct CorrespondenceOut {
    holds: bool,
    /// `(lattice id, tail id)` pairs.
    bijection: Vec<(usize, usize)>,
}

#[derive(Serialize)]
struct TailsOut {
    tails: Vec<TailOut>,
    prime_correspondence: CorrespondenceOut,
}

fn tail_list(space: &LabelledSpace, lattice: &HSLattice) -> Result<Vec<TailOut>, CliError> {
    Ok(enumerate_tails(space, lattice)?
        .into_iter()
        .enumerate()
        .map(|(id, t)| TailOut {
            id,
            sets: subfamily_names(space, &t.tail.sets),
            complement_id: t.complement,
        })
        .collect())
}

fn tails(space: &LabelledSpace) -> Result<Outcome, CliError> {
    let lattice = enumerate_hs(space)?;
    let correspondence = verify_prim_correspondence(space, &lattice)?;
    let out = TailsOut {
        tails: tail_list(space, &lattice)?,
        prime_correspondence: CorrespondenceOut {
            holds: correspondence.holds,
            bijection: correspondence.bijection,
        },
    };
    let status = if correspondence.holds { STATUS_OK } else { STATUS_UNVERIFIED };
    Ok(Outcome::with_status(status, to_pretty(&out)))
}

// ---- prim ----

#[derive(Serialize)]
struct CheckOut {
    mode: &'static str,
    /// Subsets examined exhaustively, or random samples drawn.
    count: usize,
    passes: bool,
}

impl CheckOut {
    fn new(mode: CheckMode, passes: bool) -> Self {
        let (mode, count) = match mode {
            CheckMode::Exhaustive { subsets } => ("exhaustive", subsets),
            CheckMode::Sampled { samples } => ("sampled", samples),
        };
        Self { mode, count, passes }
    }
}

#[derive(Serialize)]
struct PrimOut {
    tails: Vec<TailOut>,
    /// Closed subsets as lists of tail ids; omitted for sampled checks.
    closed_sets: Option<Vec<Vec<usize>>>,
    specialization_edges: Vec<(usize, usize)>,
    is_t0: bool,
    kuratowski: CheckOut,
    homeomorphism: CheckOut,
    homeomorphism_verified: bool,
}

fn prim(space: &LabelledSpace, dot_only: bool, seed: u64) -> Result<Outcome, CliError> {
    let lattice = enumerate_hs(space)?;
    let chi = TailSpace::new(space, &lattice)?;
    let order = specialization_order(space, &chi)?;
    if dot_only {
        return Ok(Outcome::ok(dot::prim_order_dot(space, &chi, &order)));
    }
    let exhaustive = chi.len() <= EXHAUSTIVE_LIMIT;
    let (kuratowski, homeomorphism, closed) = if exhaustive {
        let k = verify_kuratowski(space, &chi)?;
        let h = verify_homeomorphism(space, &chi)?;
        let closed = closed_sets(space, &chi)?.iter().map(|c| c.iter().collect()).collect();
        (k, h, Some(closed))
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let k = verify_kuratowski_sampled(space, &chi, &mut rng, DEFAULT_SAMPLES)?;
        let h = verify_homeomorphism_sampled(space, &chi, &mut rng, DEFAULT_SAMPLES)?;
        (k, h, None)
    };
    let passes = kuratowski.passes() && homeomorphism.passes();
    let out = PrimOut {
        tails: tail_list(space, &lattice)?,
        closed_sets: closed,
        specialization_edges: order.proper_edges().collect(),
        is_t0: order.is_t0,
        kuratowski: CheckOut::new(kuratowski.mode, kuratowski.passes()),
        homeomorphism: CheckOut::new(homeomorphism.mode, homeomorphism.passes()),
        homeomorphism_verified: homeomorphism.passes(),
    };
    let status = if passes { STATUS_OK } else { STATUS_UNVERIFIED };
    Ok(Outcome::with_status(status, to_pretty(&out)))
}

// ---- quotient ----

#[derive(Serialize)]
struct ClassOut {
    representative: Vec<String>,
    members: Vec<Vec<String>>,
}

#[derive(Serialize)]
struct QuotientOut {
    ideal_id: usize,
    ideal: Vec<Vec<String>>,
    union: Vec<String>,
    classes: Vec<ClassOut>,
    is_congruence: bool,
    is_weakly_left_resolving: bool,
}

fn quotient_cmd(space: &LabelledSpace, id: usize) -> Result<Outcome, CliError> {
    let lattice = enumerate_hs(space)?;
    if id >= lattice.len() {
        return Err(labprim_core::Error::IndexOutOfRange {
            index: id,
            len: lattice.len(),
        }
        .into());
    }
    let h = lattice.member(id);
    let q = quotient(space, h)?;
    let g = space.graph();
    let out = QuotientOut {
        ideal_id: id,
        ideal: subfamily_names(space, h.members()),
        union: set_names(g, space.set(q.union)),
        classes: q
            .classes
            .iter()
            .map(|c| ClassOut {
                representative: set_names(g, space.set(c.representative)),
                members: family_names(g, c.members.iter().map(|&i| space.set(i))),
            })
            .collect(),
        is_congruence: q.is_congruence,
        is_weakly_left_resolving: q.is_weakly_left_resolving,
    };
    Ok(Outcome::ok(to_pretty(&out)))
}

// ---- tail-from-word ----

#[derive(Serialize)]
struct FailureOut {
    condition: &'static str,
    witness: Vec<Vec<String>>,
}

#[derive(Serialize)]
struct WordTailOut {
    start: Vec<String>,
    prefix: Vec<String>,
    cycle: Vec<String>,
    prefix_ranges: Vec<Vec<String>>,
    stages: Vec<Vec<Vec<String>>>,
    tail: Vec<Vec<String>>,
    /// Lattice id of the complement, when the complement is in the lattice.
    complement_id: Option<usize>,
    verified: bool,
    failures: Vec<FailureOut>,
}

fn split_list(text: &str) -> Vec<&str> {
    text.split(',').map(str::trim).filter(|s| !s.is_empty()).collect()
}

/// Failed tail conditions, each with the sets that witness it.
pub(crate) fn tail_failures(space: &LabelledSpace, report: &TailReport) -> Vec<(&'static str, Vec<usize>)> {
    let mut out = Vec::new();
    if !report.is_nonempty {
        out.push(("nonempty", Vec::new()));
    }
    if !report.excludes_empty_set {
        out.push(("excludes empty set", vec![space.index().map(|ix| ix.empty()).unwrap_or(0)]));
    }
    if let Some((a, b)) = report.axiom_a {
        out.push(("axiom (a)", vec![a, b]));
    }
    if let Some(a) = report.axiom_b {
        out.push(("axiom (b)", vec![a]));
    }
    if let Some((x, y)) = report.axiom_c {
        out.push(("axiom (c)", vec![x, y]));
    }
    out
}

fn word_tail(space: &LabelledSpace, set: &str, prefix: &str, cycle: &str) -> Result<Outcome, CliError> {
    let g = space.graph();
    let start = g.vertex_set(&split_list(set))?;
    let a = space.position(&start)?;
    let letters = |text: &str| -> Result<Vec<_>, CliError> {
        split_list(text)
            .into_iter()
            .map(|l| g.label(l).map_err(CliError::from))
            .collect()
    };
    let word = UltimatelyPeriodicWord::new(letters(prefix)?, letters(cycle)?)?;
    let built = tail_from_word(space, a, &word)?;
    let lattice = enumerate_hs(space)?;
    let verified = built.tail.is_verified();
    let names = |ls: &[labprim_core::LabelId]| ls.iter().map(|&l| g.label_name(l).to_owned()).collect();
    let out = WordTailOut {
        start: set_names(g, &start),
        prefix: names(word.prefix()),
        cycle: names(word.cycle()),
        prefix_ranges: family_names(g, built.prefix_ranges.iter().map(|&i| space.set(i))),
        stages: built.stages.iter().map(|d| subfamily_names(space, d)).collect(),
        tail: subfamily_names(space, &built.tail.sets),
        complement_id: lattice.id_of(&built.tail.sets.complement()),
        verified,
        failures: tail_failures(space, &built.tail.report)
            .into_iter()
            .map(|(condition, witness)| FailureOut {
                condition,
                witness: family_names(g, witness.iter().map(|&i| space.set(i))),
            })
            .collect(),
    };
    let status = if verified { STATUS_OK } else { STATUS_UNVERIFIED };
    Ok(Outcome::with_status(status, to_pretty(&out)))
}
