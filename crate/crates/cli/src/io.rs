//! JSON file formats for graphs and set families.

use std::fs;
use std::path::Path;

use labprim_core::{LabelledGraph, SetFamily, VertexSet};
use serde::{Deserialize, Serialize};

use crate::error::CliError;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EdgeJson {
    pub src: String,
    pub dst: String,
    pub label: String,
}

/// `{"vertices": [...], "edges": [{"src", "dst", "label"}, ...]}`
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphJson {
    pub vertices: Vec<String>,
    pub edges: Vec<EdgeJson>,
}

impl GraphJson {
    pub fn from_graph(graph: &LabelledGraph) -> Self {
        let edges = graph
            .edges()
            .iter()
            .map(|e| EdgeJson {
                src: graph.vertex_name(e.source).to_owned(),
                dst: graph.vertex_name(e.target).to_owned(),
                label: graph.label_name(e.label).to_owned(),
            })
            .collect();
        Self {
            vertices: graph.vertex_names().to_vec(),
            edges,
        }
    }

    pub fn to_graph(&self) -> Result<LabelledGraph, labprim_core::Error> {
        LabelledGraph::new(
            self.vertices.iter().cloned(),
            self.edges.iter().map(|e| (&e.src, &e.dst, &e.label)),
        )
    }
}

/// A set written as the names of its vertices, in vertex order.
pub fn set_names(graph: &LabelledGraph, set: &VertexSet) -> Vec<String> {
    set.members().map(|v| graph.vertex_name(v).to_owned()).collect()
}

pub fn family_names<'a, I>(graph: &LabelledGraph, sets: I) -> Vec<Vec<String>>
where
    I: IntoIterator<Item = &'a VertexSet>,
{
    sets.into_iter().map(|s| set_names(graph, s)).collect()
}

fn read_text(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|source| CliError::Read {
        path: path.display().to_string(),
        source,
    })
}

fn parse<T: for<'de> Deserialize<'de>>(path: &Path, text: &str) -> Result<T, CliError> {
    serde_json::from_str(text).map_err(|source| CliError::Parse {
        path: path.display().to_string(),
        source,
    })
}

pub fn parse_graph(text: &str) -> Result<LabelledGraph, CliError> {
    let json: GraphJson = parse(Path::new("<input>"), text)?;
    Ok(json.to_graph()?)
}

pub fn read_graph(path: &Path) -> Result<LabelledGraph, CliError> {
    let json: GraphJson = parse(path, &read_text(path)?)?;
    Ok(json.to_graph()?)
}

pub fn graph_to_json(graph: &LabelledGraph) -> String {
    to_pretty(&GraphJson::from_graph(graph))
}

/// Reads a family written as a list of vertex-name lists.
pub fn read_family(path: &Path, graph: &LabelledGraph) -> Result<SetFamily, CliError> {
    let lists: Vec<Vec<String>> = parse(path, &read_text(path)?)?;
    let mut sets = Vec::with_capacity(lists.len());
    for names in &lists {
        sets.push(graph.vertex_set(names)?);
    }
    Ok(SetFamily::new(sets)?)
}

pub fn family_to_json(graph: &LabelledGraph, family: &SetFamily) -> String {
    to_pretty(&family_names(graph, family.iter()))
}

/// Pretty JSON with a trailing newline.
pub fn to_pretty<T: Serialize>(value: &T) -> String {
    let mut out = serde_json::to_string_pretty(value).expect("serializable value");
    out.push('\n');
    out
}
