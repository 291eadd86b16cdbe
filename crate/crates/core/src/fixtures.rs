//! Small sample graphs used throughout the tests and documentation.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use rand_core::RngCore;

use crate::graph::LabelledGraph;

/// `u→u:a, u→v:b, v→w:c, w→w:d`. Left-resolving; `B` is the full power set.
pub fn g2() -> LabelledGraph {
    LabelledGraph::new(
        ["u", "v", "w"],
        [("u", "u", "a"), ("u", "v", "b"), ("v", "w", "c"), ("w", "w", "d")],
    )
    .expect("fixture graph")
}

/// `1→1:a, 1→2:b, 2→2:b`. Vertex 2 receives two `b`-edges and the generated
/// space is not weakly left-resolving.
pub fn g1() -> LabelledGraph {
    LabelledGraph::new(["1", "2"], [("1", "1", "a"), ("1", "2", "b"), ("2", "2", "b")])
        .expect("fixture graph")
}

/// A single loop `v→v:a`.
pub fn g3() -> LabelledGraph {
    LabelledGraph::new(["v"], [("v", "v", "a")]).expect("fixture graph")
}

/// Two disjoint loops `v→v:a`, `w→w:b`.
pub fn two_loops() -> LabelledGraph {
    LabelledGraph::new(["v", "w"], [("v", "v", "a"), ("w", "w", "b")]).expect("fixture graph")
}

/// `v→v:a, v→v:b, w→w:a`. `{{v,w}}` satisfies the tail axioms, but its
/// complement `{∅, {v}, {w}}` is not closed under unions.
pub fn split_loops() -> LabelledGraph {
    LabelledGraph::new(["v", "w"], [("v", "v", "a"), ("v", "v", "b"), ("w", "w", "a")])
        .expect("fixture graph")
}

fn below<R: RngCore + ?Sized>(rng: &mut R, n: usize) -> usize {
    (rng.next_u64() % n as u64) as usize
}

/// A random graph with `1..=max_vertices` vertices named `v0, v1, …` and
/// labels drawn from `a, b, c, …` (at most `max_labels` of them).
///
/// The graph starts from a random permutation (one edge out of and into
/// every vertex, so there are no sinks); then up to
/// `|E⁰|` further random edges are added.
pub fn random_graph<R: RngCore + ?Sized>(rng: &mut R, max_vertices: usize, max_labels: usize) -> LabelledGraph {
    assert!(max_vertices >= 1 && (1..=26).contains(&max_labels));
    let n = 1 + below(rng, max_vertices);
    let k = 1 + below(rng, max_labels);
    let names: Vec<String> = (0..n).map(|i| format!("v{i}")).collect();
    let label = |l: usize| String::from(char::from(b'a' + l as u8));
    let mut edges = Vec::new();
    let mut targets: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        targets.swap(i, below(rng, i + 1));
    }
    for (src, &dst) in targets.iter().enumerate() {
        edges.push((src, dst, below(rng, k)));
    }
    for _ in 0..below(rng, n + 1) {
        let e = (below(rng, n), below(rng, n), below(rng, k));
        if !edges.contains(&e) {
            edges.push(e);
        }
    }
    edges.sort_unstable();
    let triples: Vec<(String, String, String)> = edges
        .into_iter()
        .map(|(s, d, l)| (names[s].clone(), names[d].clone(), label(l)))
        .collect();
    LabelledGraph::new(names.iter().cloned(), triples).expect("generated graph")
}
