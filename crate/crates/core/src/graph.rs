//! Weighted undirected graphs with optional vertex roles.
//!
//! Vertex ids are `0..n`. Edges are stored once per unordered pair, with no
//! self-loops. Reductions attach a [`VertexRole`] to every vertex so that the
//! provenance of each gadget vertex survives serialization.

use std::collections::{HashSet, VecDeque};
use std::path::Path;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};

/// Role of a vertex after a reduction.
///
/// `A`, `B` and `C` vertices belong to gadget `slot` attached to original
/// vertex `i`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "role", rename_all = "lowercase")]
pub enum VertexRole {
    Original { i: usize },
    A { i: usize, alpha: usize },
    B { i: usize, alpha: usize },
    C { i: usize, alpha: usize },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Edge {
    pub u: usize,
    pub v: usize,
    pub w: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Graph {
    n: usize,
    edges: Vec<Edge>,
    labels: Option<Vec<VertexRole>>,
}

/// Graph families available to [`Graph::named`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum NamedGraph {
    Complete,
    Cycle,
    Path,
    ErdosRenyi { p: f64, seed: u64 },
}

impl Graph {
    /// Builds a graph, validating the structural invariants.
    pub fn new(n: usize, edges: Vec<Edge>) -> Result<Self> {
        let mut seen = HashSet::with_capacity(edges.len());
        for (idx, e) in edges.iter().enumerate() {
            if e.u >= n || e.v >= n {
                return Err(Error::InvalidGraph(format!(
                    "edge {idx} ({}, {}) has an endpoint outside 0..{n}",
                    e.u, e.v
                )));
            }
            if e.u == e.v {
                return Err(Error::InvalidGraph(format!("self-loop at vertex {}", e.u)));
            }
            if !(e.w.is_finite() && e.w >= 0.0) {
                return Err(Error::InvalidGraph(format!(
                    "edge {idx} has weight {} (must be finite and >= 0)",
                    e.w
                )));
            }
            if !seen.insert((e.u.min(e.v), e.u.max(e.v))) {
                return Err(Error::InvalidGraph(format!(
                    "duplicate edge between {} and {}",
                    e.u, e.v
                )));
            }
        }
        Ok(Self {
            n,
            edges,
            labels: None,
        })
    }

    /// Unweighted graph from a list of vertex pairs.
    pub fn unweighted(n: usize, pairs: &[(usize, usize)]) -> Result<Self> {
        Self::new(
            n,
            pairs.iter().map(|&(u, v)| Edge { u, v, w: 1.0 }).collect(),
        )
    }

    pub fn with_labels(mut self, labels: Vec<VertexRole>) -> Result<Self> {
        if labels.len() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: labels.len(),
            });
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn named(kind: NamedGraph, n: usize) -> Result<Self> {
        if n == 0 {
            return Err(invalid("n", "graph needs at least one vertex"));
        }
        let mut pairs = Vec::new();
        match kind {
            NamedGraph::Complete => {
                for u in 0..n {
                    for v in u + 1..n {
                        pairs.push((u, v));
                    }
                }
            }
            NamedGraph::Cycle => {
                if n < 3 {
                    return Err(invalid("n", "a cycle needs at least 3 vertices"));
                }
                pairs.extend((0..n).map(|u| (u, (u + 1) % n)));
            }
            NamedGraph::Path => pairs.extend((1..n).map(|v| (v - 1, v))),
            NamedGraph::ErdosRenyi { p, seed } => {
                if !(0.0..=1.0).contains(&p) {
                    return Err(invalid("p", format!("{p} is not a probability")));
                }
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                for u in 0..n {
                    for v in u + 1..n {
                        if rng.random::<f64>() < p {
                            pairs.push((u, v));
                        }
                    }
                }
            }
        }
        Self::unweighted(n, &pairs)
    }

    pub fn complete_bipartite(left: usize, right: usize) -> Result<Self> {
        let mut pairs = Vec::with_capacity(left * right);
        for u in 0..left {
            for v in 0..right {
                pairs.push((u, left + v));
            }
        }
        Self::unweighted(left + right, &pairs)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn labels(&self) -> Option<&[VertexRole]> {
        self.labels.as_deref()
    }

    pub fn total_weight(&self) -> f64 {
        self.edges.iter().map(|e| e.w).sum()
    }

    pub fn is_unweighted(&self) -> bool {
        self.edges.iter().all(|e| e.w == 1.0)
    }

    /// Number of incident edges per vertex.
    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.n];
        for e in &self.edges {
            deg[e.u] += 1;
            deg[e.v] += 1;
        }
        deg
    }

    pub fn weighted_degrees(&self) -> Vec<f64> {
        let mut deg = vec![0.0; self.n];
        for e in &self.edges {
            deg[e.u] += e.w;
            deg[e.v] += e.w;
        }
        deg
    }

    /// Adjacency lists of `(neighbor, weight)`.
    pub fn adjacency(&self) -> Vec<Vec<(usize, f64)>> {
        let mut adj = vec![Vec::new(); self.n];
        for e in &self.edges {
            adj[e.u].push((e.v, e.w));
            adj[e.v].push((e.u, e.w));
        }
        adj
    }

    pub fn is_connected(&self) -> bool {
        if self.n == 0 {
            return true;
        }
        let adj = self.adjacency();
        let mut seen = vec![false; self.n];
        let mut queue = VecDeque::from([0]);
        seen[0] = true;
        let mut count = 1;
        while let Some(u) = queue.pop_front() {
            for &(v, _) in &adj[u] {
                if !seen[v] {
                    seen[v] = true;
                    count += 1;
                    queue.push_back(v);
                }
            }
        }
        count == self.n
    }

    /// Two-colouring of the vertices, `None` when an odd cycle exists.
    ///
    /// Side `false` of each component holds its smallest vertex.
    pub fn bipartition(&self) -> Option<Vec<bool>> {
        let adj = self.adjacency();
        let mut colour: Vec<Option<bool>> = vec![None; self.n];
        for start in 0..self.n {
            if colour[start].is_some() {
                continue;
            }
            colour[start] = Some(false);
            let mut queue = VecDeque::from([start]);
            while let Some(u) = queue.pop_front() {
                let cu = colour[u].unwrap();
                for &(v, _) in &adj[u] {
                    match colour[v] {
                        None => {
                            colour[v] = Some(!cu);
                            queue.push_back(v);
                        }
                        Some(cv) if cv == cu => return None,
                        Some(_) => {}
                    }
                }
            }
        }
        Some(colour.into_iter().map(|c| c.unwrap()).collect())
    }

    /// Induced subgraph on `vertices`, relabelled in the given order.
    pub fn induced(&self, vertices: &[usize]) -> Result<Graph> {
        let mut index = vec![usize::MAX; self.n];
        for (new, &old) in vertices.iter().enumerate() {
            if old >= self.n {
                return Err(Error::InvalidGraph(format!("vertex {old} out of range")));
            }
            index[old] = new;
        }
        let edges = self
            .edges
            .iter()
            .filter(|e| index[e.u] != usize::MAX && index[e.v] != usize::MAX)
            .map(|e| Edge {
                u: index[e.u],
                v: index[e.v],
                w: e.w,
            })
            .collect();
        Graph::new(vertices.len(), edges)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(GraphFile::from(self)).expect("graph serializes")
    }

    pub fn from_json_str(text: &str) -> Result<Self> {
        let file: GraphFile = serde_json::from_str(text).map_err(|e| Error::Format {
            field: json_field_hint(&e, "graph"),
            reason: e.to_string(),
        })?;
        file.try_into()
    }

    /// Parses the plain-text format: one `u v w` triple per line.
    ///
    /// The weight is optional and defaults to 1. Blank lines and lines starting
    /// with `#` are skipped. The vertex count is one more than the largest id.
    pub fn from_edge_list(text: &str) -> Result<Self> {
        let mut edges = Vec::new();
        let mut n = 0;
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let fields: Vec<&str> = line.split_whitespace().collect();
            if !(2..=3).contains(&fields.len()) {
                return Err(Error::Format {
                    field: format!("line {}", lineno + 1),
                    reason: format!("expected `u v [w]`, got `{line}`"),
                });
            }
            let parse_id = |s: &str| {
                s.parse::<usize>().map_err(|e| Error::Format {
                    field: format!("line {}", lineno + 1),
                    reason: format!("bad vertex id `{s}`: {e}"),
                })
            };
            let u = parse_id(fields[0])?;
            let v = parse_id(fields[1])?;
            let w = match fields.get(2) {
                Some(s) => s.parse::<f64>().map_err(|e| Error::Format {
                    field: format!("line {}", lineno + 1),
                    reason: format!("bad weight `{s}`: {e}"),
                })?,
                None => 1.0,
            };
            n = n.max(u + 1).max(v + 1);
            edges.push(Edge { u, v, w });
        }
        Graph::new(n, edges)
    }

    /// Reads JSON, or the edge-list format when the file does not start with `{`.
    pub fn read(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        if text.trim_start().starts_with('{') {
            Self::from_json_str(&text)
        } else {
            Self::from_edge_list(&text)
        }
    }
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub(crate) struct GraphFile {
    n: usize,
    edges: Vec<(usize, usize, f64)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    labels: Option<Vec<VertexRole>>,
}

impl From<&Graph> for GraphFile {
    fn from(g: &Graph) -> Self {
        Self {
            n: g.n,
            edges: g.edges.iter().map(|e| (e.u, e.v, e.w)).collect(),
            labels: g.labels.clone(),
        }
    }
}

impl TryFrom<GraphFile> for Graph {
    type Error = Error;

    fn try_from(file: GraphFile) -> Result<Self> {
        let g = Graph::new(
            file.n,
            file.edges
                .into_iter()
                .map(|(u, v, w)| Edge { u, v, w })
                .collect(),
        )?;
        match file.labels {
            Some(labels) => g.with_labels(labels),
            None => Ok(g),
        }
    }
}

impl Serialize for Graph {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        GraphFile::from(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for Graph {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let file = GraphFile::deserialize(d)?;
        Graph::try_from(file).map_err(serde::de::Error::custom)
    }
}

/// Best-effort extraction of the offending field from a serde_json message.
pub(crate) fn json_field_hint(err: &serde_json::Error, default: &str) -> String {
    let msg = err.to_string();
    if let Some(start) = msg.find('`') {
        if let Some(len) = msg[start + 1..].find('`') {
            return msg[start + 1..start + 1 + len].to_string();
        }
    }
    format!("{default} (line {}, column {})", err.line(), err.column())
}
