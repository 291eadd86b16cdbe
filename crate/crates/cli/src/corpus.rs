//! Seeded random corpora of small verified spaces, and the comparison of
//! the main computations against the brute-force oracle.

use labprim_core::lattice::{enumerate_hs, hs_closure};
use labprim_core::oracle::{Oracle, OracleBudget};
use labprim_core::tails::sees;
use labprim_core::{fixtures, LabelledSpace};
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

pub const MAX_VERTICES: usize = 4;
pub const MAX_LABELS: usize = 3;

pub struct Corpus {
    pub seed: u64,
    /// Graphs drawn, including those whose space failed verification.
    pub generated: usize,
    pub spaces: Vec<LabelledSpace>,
}

impl Corpus {
    pub fn skipped(&self) -> usize {
        self.generated - self.spaces.len()
    }
}

/// Draws graphs with at most four vertices and three labels from a
/// ChaCha8 stream seeded with `seed`, keeping the first `instances` whose
/// generated space passes verification.
pub fn generate(seed: u64, instances: usize) -> Corpus {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut spaces = Vec::with_capacity(instances);
    let mut generated = 0;
    while spaces.len() < instances {
        let graph = fixtures::random_graph(&mut rng, MAX_VERTICES, MAX_LABELS);
        generated += 1;
        if let Ok(space) = LabelledSpace::generated(graph) {
            spaces.push(space);
        }
    }
    Corpus {
        seed,
        generated,
        spaces,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Divergence {
    pub check: &'static str,
    pub detail: String,
}

fn diverge(check: &'static str, detail: String) -> Divergence {
    Divergence { check, detail }
}

/// Compares the lattice, the `≥` relation on all pairs and the closure of
/// every hereditary subfamily with the oracle. Returns the first mismatch.
pub fn check_against_oracle(space: &LabelledSpace) -> Result<(), Divergence> {
    let core_err = |check, e: labprim_core::Error| diverge(check, e.to_string());
    let mut oracle = Oracle::new(space, OracleBudget::default()).map_err(|e| core_err("oracle budget", e))?;

    let lattice = enumerate_hs(space).map_err(|e| core_err("enumerate_hs", e))?;
    let ours: Vec<_> = lattice.members().iter().map(|h| space.sets_of(h.members())).collect();
    let theirs = oracle.enumerate_hs();
    if ours != theirs {
        return Err(diverge(
            "enumerate_hs",
            format!("{} families against {} from the oracle", ours.len(), theirs.len()),
        ));
    }

    let n = space.family().len();
    for a in 0..n {
        for b in 0..n {
            let ours = sees(space, a, b).map_err(|e| core_err("sees", e))?;
            let theirs = oracle
                .sees(space.set(a), space.set(b))
                .map_err(|e| core_err("sees", e))?;
            if ours != theirs {
                return Err(diverge(
                    "sees",
                    format!(
                        "{} ≥ {}: {ours} against oracle {theirs}",
                        space.format_set_at(a),
                        space.format_set_at(b)
                    ),
                ));
            }
        }
    }

    for h in oracle.hereditary_families() {
        let sub = space.select(h.iter()).map_err(|e| core_err("saturate", e))?;
        let ours = space.sets_of(hs_closure(space, &sub).map_err(|e| core_err("saturate", e))?.members());
        let theirs = oracle.saturate(&h).map_err(|e| core_err("saturate", e))?;
        if ours != theirs {
            return Err(diverge(
                "saturate",
                format!("closure of {} differs from the oracle", space.format_subfamily(&sub)),
            ));
        }
    }
    Ok(())
}

/// Summary of an oracle run over a corpus.
#[derive(Debug, Clone, Serialize)]
pub struct OracleSummary {
    pub seed: u64,
    pub instances: usize,
    pub generated: usize,
    pub skipped_unverified: usize,
    pub divergences: usize,
    pub passed: bool,
    pub first_divergence: Option<DivergentInstance>,
}

#[derive(Debug, Clone, Serialize)]
pub struct DivergentInstance {
    pub instance: usize,
    pub check: &'static str,
    pub detail: String,
    pub graph: crate::io::GraphJson,
}

pub fn run_oracle(seed: u64, instances: usize) -> OracleSummary {
    let corpus = generate(seed, instances);
    let mut divergences = 0;
    let mut first = None;
    for (i, space) in corpus.spaces.iter().enumerate() {
        if let Err(d) = check_against_oracle(space) {
            divergences += 1;
            first.get_or_insert_with(|| DivergentInstance {
                instance: i,
                check: d.check,
                detail: d.detail,
                graph: crate::io::GraphJson::from_graph(space.graph()),
            });
        }
    }
    OracleSummary {
        seed,
        instances,
        generated: corpus.generated,
        skipped_unverified: corpus.skipped(),
        divergences,
        passed: divergences == 0,
        first_divergence: first,
    }
}
