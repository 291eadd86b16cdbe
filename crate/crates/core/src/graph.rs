//! Finite labelled directed graphs and word-level range computations.

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use crate::bits::BitSet;
use crate::error::{Error, Result};

/// Position of a vertex in the graph's vertex order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexId(pub usize);

/// Position of a label in the graph's alphabet.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LabelId(pub usize);

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Edge {
    pub source: VertexId,
    pub target: VertexId,
    pub label: LabelId,
}

/// A subset of the vertices of one graph.
///
/// Ordered lexicographically by the increasing sequence of vertex positions,
/// so the empty set comes first and `{0} < {0,1} < {1}`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct VertexSet(BitSet);

impl VertexSet {
    pub fn empty(vertex_count: usize) -> Self {
        VertexSet(BitSet::new(vertex_count))
    }

    pub fn all(vertex_count: usize) -> Self {
        VertexSet(BitSet::full(vertex_count))
    }

    pub fn from_ids<I: IntoIterator<Item = VertexId>>(vertex_count: usize, ids: I) -> Self {
        VertexSet(BitSet::from_indices(vertex_count, ids.into_iter().map(|v| v.0)))
    }

    pub fn width(&self) -> usize {
        self.0.universe()
    }

    pub fn bits(&self) -> &BitSet {
        &self.0
    }

    pub fn contains(&self, v: VertexId) -> bool {
        self.0.contains(v.0)
    }

    pub fn insert(&mut self, v: VertexId) -> bool {
        self.0.insert(v.0)
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn len(&self) -> usize {
        self.0.count()
    }

    pub fn members(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.0.iter().map(VertexId)
    }

    pub fn union(&self, other: &Self) -> Self {
        VertexSet(self.0.union(&other.0))
    }

    pub fn intersection(&self, other: &Self) -> Self {
        VertexSet(self.0.intersection(&other.0))
    }

    pub fn difference(&self, other: &Self) -> Self {
        VertexSet(self.0.difference(&other.0))
    }

    pub fn union_with(&mut self, other: &Self) {
        self.0.union_with(&other.0);
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        self.0.is_subset(&other.0)
    }
}

impl Ord for VertexSet {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.cmp_lex(&other.0)
    }
}

impl PartialOrd for VertexSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// A nonempty finite word over the alphabet.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(Vec<LabelId>);

impl Word {
    pub fn new(letters: Vec<LabelId>) -> Result<Self> {
        if letters.is_empty() {
            return Err(Error::EmptyWord);
        }
        Ok(Word(letters))
    }

    pub fn letter(label: LabelId) -> Self {
        Word(alloc::vec![label])
    }

    pub fn letters(&self) -> &[LabelId] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut letters = self.0.clone();
        letters.extend_from_slice(&other.0);
        Word(letters)
    }
}

/// The infinite word `prefix · cycle · cycle · …`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct UltimatelyPeriodicWord {
    prefix: Vec<LabelId>,
    cycle: Vec<LabelId>,
}

impl UltimatelyPeriodicWord {
    pub fn new(prefix: Vec<LabelId>, cycle: Vec<LabelId>) -> Result<Self> {
        if cycle.is_empty() {
            return Err(Error::EmptyCycle);
        }
        Ok(Self { prefix, cycle })
    }

    pub fn prefix(&self) -> &[LabelId] {
        &self.prefix
    }

    pub fn cycle(&self) -> &[LabelId] {
        &self.cycle
    }

    /// The `n`-th letter (zero-based).
    pub fn letter_at(&self, n: usize) -> LabelId {
        if n < self.prefix.len() {
            self.prefix[n]
        } else {
            self.cycle[(n - self.prefix.len()) % self.cycle.len()]
        }
    }
}

/// Which structural checks a graph passes, with the offending items.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidationReport {
    pub has_no_sinks: bool,
    pub sinks: Vec<VertexId>,
    pub is_left_resolving: bool,
    /// Vertices receiving two or more edges with the same label.
    pub left_resolving_violations: Vec<IncomingClash>,
    /// Always true: the graph is finite.
    pub is_row_finite: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IncomingClash {
    pub vertex: VertexId,
    pub label: LabelId,
    /// Indices into [`LabelledGraph::edges`].
    pub edges: Vec<usize>,
}

/// A finite directed graph with labelled edges.
///
/// Vertices keep their input order. The alphabet is exactly the set of edge
/// labels, ordered by first appearance in the edge list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabelledGraph {
    vertices: Vec<String>,
    vertex_index: BTreeMap<String, usize>,
    labels: Vec<String>,
    label_index: BTreeMap<String, usize>,
    edges: Vec<Edge>,
    // successors[label][vertex]
    successors: Vec<Vec<VertexSet>>,
}

impl LabelledGraph {
    /// Builds a graph from vertex names and `(source, target, label)` triples.
    pub fn new<V, E, S>(vertices: V, edges: E) -> Result<Self>
    where
        V: IntoIterator,
        V::Item: Into<String>,
        E: IntoIterator<Item = (S, S, S)>,
        S: AsRef<str>,
    {
        let mut names = Vec::new();
        let mut vertex_index = BTreeMap::new();
        for v in vertices {
            let v = v.into();
            if vertex_index.contains_key(&v) {
                return Err(Error::DuplicateVertex(v));
            }
            vertex_index.insert(v.clone(), names.len());
            names.push(v);
        }
        if names.is_empty() {
            return Err(Error::EmptyVertexSet);
        }

        let mut labels = Vec::new();
        let mut label_index = BTreeMap::new();
        let mut edge_list = Vec::new();
        for (src, dst, label) in edges {
            let lookup = |name: &str| {
                vertex_index
                    .get(name)
                    .copied()
                    .map(VertexId)
                    .ok_or_else(|| Error::UnknownVertex(name.to_string()))
            };
            let source = lookup(src.as_ref())?;
            let target = lookup(dst.as_ref())?;
            let label = label.as_ref();
            let id = match label_index.get(label) {
                Some(&id) => id,
                None => {
                    labels.push(label.to_string());
                    label_index.insert(label.to_string(), labels.len() - 1);
                    labels.len() - 1
                }
            };
            edge_list.push(Edge {
                source,
                target,
                label: LabelId(id),
            });
        }

        let n = names.len();
        let mut successors = alloc::vec![alloc::vec![VertexSet::empty(n); n]; labels.len()];
        for e in &edge_list {
            successors[e.label.0][e.source.0].insert(e.target);
        }

        Ok(Self {
            vertices: names,
            vertex_index,
            labels,
            label_index,
            edges: edge_list,
            successors,
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertex_names(&self) -> &[String] {
        &self.vertices
    }

    pub fn vertex_name(&self, v: VertexId) -> &str {
        &self.vertices[v.0]
    }

    pub fn vertex(&self, name: &str) -> Result<VertexId> {
        self.vertex_index
            .get(name)
            .map(|&i| VertexId(i))
            .ok_or_else(|| Error::UnknownVertex(name.to_string()))
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn alphabet(&self) -> impl Iterator<Item = LabelId> + Clone {
        (0..self.labels.len()).map(LabelId)
    }

    pub fn label_name(&self, l: LabelId) -> &str {
        &self.labels[l.0]
    }

    pub fn label(&self, name: &str) -> Result<LabelId> {
        self.label_index
            .get(name)
            .map(|&i| LabelId(i))
            .ok_or_else(|| Error::UnknownLabel(name.to_string()))
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn empty_set(&self) -> VertexSet {
        VertexSet::empty(self.vertex_count())
    }

    pub fn all_vertices(&self) -> VertexSet {
        VertexSet::all(self.vertex_count())
    }

    /// Parses a vertex set from vertex names.
    pub fn vertex_set<S: AsRef<str>>(&self, names: &[S]) -> Result<VertexSet> {
        let mut set = self.empty_set();
        for name in names {
            set.insert(self.vertex(name.as_ref())?);
        }
        Ok(set)
    }

    /// Parses a word from label names.
    pub fn word<S: AsRef<str>>(&self, letters: &[S]) -> Result<Word> {
        let letters = letters
            .iter()
            .map(|l| self.label(l.as_ref()))
            .collect::<Result<Vec<_>>>()?;
        Word::new(letters)
    }

    fn check_set(&self, set: &VertexSet) -> Result<()> {
        if set.width() != self.vertex_count() {
            return Err(Error::WidthMismatch {
                expected: self.vertex_count(),
                found: set.width(),
            });
        }
        Ok(())
    }

    fn check_letter(&self, l: LabelId) -> Result<()> {
        if l.0 >= self.labels.len() {
            return Err(Error::UnknownLabel(alloc::format!("#{}", l.0)));
        }
        Ok(())
    }

    /// Endpoints of `label`-edges leaving `set`.
    ///
    /// Unchecked single-letter step; `label` must belong to this graph.
    #[inline]
    pub fn step(&self, set: &VertexSet, label: LabelId) -> VertexSet {
        let mut out = self.empty_set();
        for v in set.members() {
            out.union_with(&self.successors[label.0][v.0]);
        }
        out
    }

    /// The relative range `r(A, w)`: endpoints of paths labelled `w` that start in `A`.
    pub fn relative_range(&self, set: &VertexSet, word: &Word) -> Result<VertexSet> {
        self.check_set(set)?;
        let mut current = set.clone();
        for &l in word.letters() {
            self.check_letter(l)?;
            current = self.step(&current, l);
        }
        Ok(current)
    }

    /// `r(w)`: endpoints of all paths labelled `w`.
    pub fn word_range(&self, word: &Word) -> Result<VertexSet> {
        self.relative_range(&self.all_vertices(), word)
    }

    /// `s(w)`: start vertices of paths labelled `w`.
    pub fn word_source(&self, word: &Word) -> Result<VertexSet> {
        let mut out = self.empty_set();
        for i in 0..self.vertex_count() {
            let start = VertexSet::from_ids(self.vertex_count(), [VertexId(i)]);
            if !self.relative_range(&start, word)?.is_empty() {
                out.insert(VertexId(i));
            }
        }
        Ok(out)
    }

    /// Labels of edges whose source lies in `set`, in alphabet order.
    pub fn outgoing_labels(&self, set: &VertexSet) -> Vec<LabelId> {
        self.alphabet()
            .filter(|l| set.members().any(|v| !self.successors[l.0][v.0].is_empty()))
            .collect()
    }

    pub fn validate(&self) -> ValidationReport {
        let n = self.vertex_count();
        let mut emits = alloc::vec![false; n];
        for e in &self.edges {
            emits[e.source.0] = true;
        }
        let sinks: Vec<VertexId> = (0..n).filter(|&v| !emits[v]).map(VertexId).collect();

        let mut incoming: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
        for (i, e) in self.edges.iter().enumerate() {
            incoming.entry((e.target.0, e.label.0)).or_default().push(i);
        }
        let clashes: Vec<IncomingClash> = incoming
            .into_iter()
            .filter(|(_, edges)| edges.len() > 1)
            .map(|((v, l), edges)| IncomingClash {
                vertex: VertexId(v),
                label: LabelId(l),
                edges,
            })
            .collect();

        ValidationReport {
            has_no_sinks: sinks.is_empty(),
            sinks,
            is_left_resolving: clashes.is_empty(),
            left_resolving_violations: clashes,
            is_row_finite: true,
        }
    }

    /// Renders a set as `{u,v}` using vertex names.
    pub fn format_set(&self, set: &VertexSet) -> String {
        let mut out = String::from("{");
        for (i, v) in set.members().enumerate() {
            if i > 0 {
                out.push(',');
            }
            out.push_str(self.vertex_name(v));
        }
        out.push('}');
        out
    }

    /// Renders a label sequence, separating letters with `.` unless every
    /// label is a single character.
    pub fn format_letters(&self, letters: &[LabelId]) -> String {
        let compact = letters.iter().all(|&l| self.label_name(l).chars().count() == 1);
        let sep = if compact { "" } else { "." };
        let mut out = String::new();
        for (i, &l) in letters.iter().enumerate() {
            if i > 0 {
                out.push_str(sep);
            }
            out.push_str(self.label_name(l));
        }
        out
    }
}
