//! Finite directed multigraphs, paths, cycles, and the graph conditions that
//! the ring-property characterizations are phrased in.

mod cycles;
mod props;

pub use cycles::{enumerate_cycles, Cycle};
pub use props::{
    check_edl, classify_vertices, edl_at_base, graph_shape, has_condition_k, is_acyclic,
    is_acyclic_or_isolated_cycles, is_no_exit, paths_ending_at, sinks_isolated, weak_components,
    GraphShape, VertexKind,
};

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct VertexId(pub usize);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct EdgeId(pub usize);

#[derive(Debug, Clone, PartialEq, Eq)]
struct EdgeData {
    name: String,
    source: VertexId,
    range: VertexId,
}

/// A finite directed graph with named vertices and named (possibly parallel) edges.
///
/// Vertices and edges are stored sorted by name, so `VertexId`/`EdgeId` order
/// coincides with lexicographic name order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    vertices: Vec<String>,
    edges: Vec<EdgeData>,
    out_edges: Vec<Vec<EdgeId>>,
    in_edges: Vec<Vec<EdgeId>>,
}

impl Graph {
    /// Builds a graph from vertex names and `(edge, source, range)` triples.
    pub fn new<V, E>(vertices: &[V], edges: &[(E, V, V)]) -> Result<Graph>
    where
        V: AsRef<str>,
        E: AsRef<str>,
    {
        let mut vnames: Vec<String> = vertices.iter().map(|v| v.as_ref().to_string()).collect();
        vnames.sort();
        if let Some(w) = vnames.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::InvalidGraph(format!("duplicate vertex `{}`", w[0])));
        }
        let index: HashMap<&str, usize> = vnames
            .iter()
            .enumerate()
            .map(|(i, n)| (n.as_str(), i))
            .collect();
        let lookup = |name: &str| {
            index
                .get(name)
                .map(|&i| VertexId(i))
                .ok_or_else(|| Error::InvalidGraph(format!("unknown vertex `{name}`")))
        };
        let mut edata = Vec::with_capacity(edges.len());
        for (e, s, r) in edges {
            let name = e.as_ref().to_string();
            if index.contains_key(name.as_str()) {
                return Err(Error::InvalidGraph(format!(
                    "`{name}` names both a vertex and an edge"
                )));
            }
            edata.push(EdgeData {
                name,
                source: lookup(s.as_ref())?,
                range: lookup(r.as_ref())?,
            });
        }
        edata.sort_by(|a, b| a.name.cmp(&b.name));
        if let Some(w) = edata.windows(2).find(|w| w[0].name == w[1].name) {
            return Err(Error::InvalidGraph(format!("duplicate edge `{}`", w[0].name)));
        }
        let mut out_edges = vec![Vec::new(); vnames.len()];
        let mut in_edges = vec![Vec::new(); vnames.len()];
        for (i, e) in edata.iter().enumerate() {
            out_edges[e.source.0].push(EdgeId(i));
            in_edges[e.range.0].push(EdgeId(i));
        }
        Ok(Graph {
            vertices: vnames,
            edges: edata,
            out_edges,
            in_edges,
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        (0..self.vertices.len()).map(VertexId)
    }

    pub fn edges(&self) -> impl Iterator<Item = EdgeId> + '_ {
        (0..self.edges.len()).map(EdgeId)
    }

    pub fn source(&self, e: EdgeId) -> VertexId {
        self.edges[e.0].source
    }

    pub fn range(&self, e: EdgeId) -> VertexId {
        self.edges[e.0].range
    }

    pub fn vertex_name(&self, v: VertexId) -> &str {
        &self.vertices[v.0]
    }

    pub fn edge_name(&self, e: EdgeId) -> &str {
        &self.edges[e.0].name
    }

    pub fn vertex_by_name(&self, name: &str) -> Option<VertexId> {
        self.vertices
            .binary_search_by(|v| v.as_str().cmp(name))
            .ok()
            .map(VertexId)
    }

    pub fn edge_by_name(&self, name: &str) -> Option<EdgeId> {
        self.edges
            .binary_search_by(|e| e.name.as_str().cmp(name))
            .ok()
            .map(EdgeId)
    }

    /// Edges emitted by `v`, in id order.
    pub fn out_edges(&self, v: VertexId) -> &[EdgeId] {
        &self.out_edges[v.0]
    }

    /// Edges received by `v`, in id order.
    pub fn in_edges(&self, v: VertexId) -> &[EdgeId] {
        &self.in_edges[v.0]
    }

    pub fn is_sink(&self, v: VertexId) -> bool {
        self.out_edges[v.0].is_empty()
    }

    /// The edge singled out at a regular vertex for the CK2 rewrite: the greatest edge id.
    pub fn special_edge(&self, v: VertexId) -> Option<EdgeId> {
        self.out_edges[v.0].last().copied()
    }

    pub fn is_special(&self, e: EdgeId) -> bool {
        self.special_edge(self.source(e)) == Some(e)
    }

    /// Renames vertices and edges with the given maps (missing names are kept).
    pub fn relabel(
        &self,
        vmap: &dyn Fn(&str) -> String,
        emap: &dyn Fn(&str) -> String,
    ) -> Result<Graph> {
        let vs: Vec<String> = self.vertices.iter().map(|v| vmap(v)).collect();
        let es: Vec<(String, String, String)> = self
            .edges
            .iter()
            .map(|e| {
                (
                    emap(&e.name),
                    vmap(&self.vertices[e.source.0]),
                    vmap(&self.vertices[e.range.0]),
                )
            })
            .collect();
        Graph::new(&vs, &es)
    }

    /// The induced subgraph on a vertex set, keeping edges with both ends inside.
    pub fn induced(&self, keep: &BTreeSet<VertexId>) -> Graph {
        let vs: Vec<&str> = keep.iter().map(|&v| self.vertex_name(v)).collect();
        let es: Vec<(&str, &str, &str)> = self
            .edges
            .iter()
            .filter(|e| keep.contains(&e.source) && keep.contains(&e.range))
            .map(|e| {
                (
                    e.name.as_str(),
                    self.vertices[e.source.0].as_str(),
                    self.vertices[e.range.0].as_str(),
                )
            })
            .collect();
        Graph::new(&vs, &es).expect("induced subgraph of a valid graph")
    }
}

/// A path: a vertex (length zero) or a sequence of composable edges.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Path {
    start: VertexId,
    edges: Vec<EdgeId>,
}

impl Path {
    pub fn vertex(v: VertexId) -> Path {
        Path {
            start: v,
            edges: Vec::new(),
        }
    }

    /// Validates composability; an empty edge list needs an explicit vertex.
    pub fn new(g: &Graph, start: VertexId, edges: Vec<EdgeId>) -> Result<Path> {
        if start.0 >= g.vertex_count() {
            return Err(Error::InvalidPath(format!("vertex {} out of range", start.0)));
        }
        let mut at = start;
        for &e in &edges {
            if e.0 >= g.edge_count() {
                return Err(Error::InvalidPath(format!("edge {} out of range", e.0)));
            }
            if g.source(e) != at {
                return Err(Error::InvalidPath(format!(
                    "edge `{}` does not start at `{}`",
                    g.edge_name(e),
                    g.vertex_name(at)
                )));
            }
            at = g.range(e);
        }
        Ok(Path { start, edges })
    }

    pub fn from_edges(g: &Graph, edges: Vec<EdgeId>) -> Result<Path> {
        let first = *edges
            .first()
            .ok_or_else(|| Error::InvalidPath("empty edge list".into()))?;
        if first.0 >= g.edge_count() {
            return Err(Error::InvalidPath(format!("edge {} out of range", first.0)));
        }
        Path::new(g, g.source(first), edges)
    }

    pub fn source(&self) -> VertexId {
        self.start
    }

    pub fn range(&self, g: &Graph) -> VertexId {
        self.edges.last().map_or(self.start, |&e| g.range(e))
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn edges(&self) -> &[EdgeId] {
        &self.edges
    }

    pub fn last_edge(&self) -> Option<EdgeId> {
        self.edges.last().copied()
    }

    /// `self` followed by `other`; caller guarantees `r(self) = s(other)`.
    pub(crate) fn concat_unchecked(&self, other: &[EdgeId]) -> Path {
        let mut edges = self.edges.clone();
        edges.extend_from_slice(other);
        Path {
            start: self.start,
            edges,
        }
    }

    /// If `self = prefix . rest`, returns `rest` as a path.
    pub(crate) fn strip_prefix(&self, g: &Graph, prefix: &Path) -> Option<Path> {
        if self.start != prefix.start || !self.edges.starts_with(&prefix.edges) {
            return None;
        }
        let rest = self.edges[prefix.edges.len()..].to_vec();
        Some(Path {
            start: prefix.range(g),
            edges: rest,
        })
    }

    /// Drops the last edge; `None` for a vertex.
    pub(crate) fn pop(&self) -> Option<(Path, EdgeId)> {
        let (&last, init) = self.edges.split_last()?;
        Some((
            Path {
                start: self.start,
                edges: init.to_vec(),
            },
            last,
        ))
    }

    pub fn display<'a>(&'a self, g: &'a Graph) -> PathDisplay<'a> {
        PathDisplay { path: self, graph: g }
    }
}

pub struct PathDisplay<'a> {
    path: &'a Path,
    graph: &'a Graph,
}

impl fmt::Display for PathDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.path.edges.is_empty() {
            return write!(f, "{}", self.graph.vertex_name(self.path.start));
        }
        for (i, &e) in self.path.edges.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{}", self.graph.edge_name(e))?;
        }
        Ok(())
    }
}

/// Every path of length at most `max_len`, in length-then-lexicographic order.
pub fn paths_up_to(g: &Graph, max_len: usize) -> Vec<Path> {
    let mut out: Vec<Path> = g.vertices().map(Path::vertex).collect();
    let mut frontier: Vec<Path> = out.clone();
    for _ in 0..max_len {
        let mut next = Vec::new();
        for p in &frontier {
            for &e in g.out_edges(p.range(g)) {
                next.push(p.concat_unchecked(&[e]));
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out
}

#[cfg(test)]
pub(crate) use examples as fixtures;

/// Small named graphs used throughout the examples and tests.
pub mod examples {
    use super::Graph;

    pub fn single_loop() -> Graph {
        Graph::new(&["v"], &[("e", "v", "v")]).unwrap()
    }

    pub fn rose() -> Graph {
        Graph::new(&["v"], &[("e", "v", "v"), ("f", "v", "v")]).unwrap()
    }

    pub fn two_cycle() -> Graph {
        Graph::new(&["v", "w"], &[("e", "v", "w"), ("f", "w", "v")]).unwrap()
    }

    pub fn single_edge() -> Graph {
        Graph::new(&["u", "v"], &[("e", "u", "v")]).unwrap()
    }

    pub fn isolated(n: usize) -> Graph {
        let vs: Vec<String> = (0..n).map(|i| format!("v{i}")).collect();
        Graph::new::<String, String>(&vs, &[]).unwrap()
    }

    /// Vertices `v0..`, edges `e0..` in the given order.
    pub fn numbered(n: usize, arcs: &[(usize, usize)]) -> Graph {
        let vs: Vec<String> = (0..n).map(|i| format!("v{i}")).collect();
        let es: Vec<(String, String, String)> = arcs
            .iter()
            .enumerate()
            .map(|(i, &(s, r))| (format!("e{i}"), vs[s].clone(), vs[r].clone()))
            .collect();
        Graph::new(&vs, &es).unwrap()
    }

    /// Every graph on `1..=max_vertices` numbered vertices with at most
    /// `max_edges` edges, one per multiset of arcs.
    pub fn all_small_graphs(max_vertices: usize, max_edges: usize) -> Vec<Graph> {
        fn extend(n: usize, from: usize, left: usize, cur: &mut Vec<(usize, usize)>, out: &mut Vec<Graph>) {
            out.push(numbered(n, cur));
            if left == 0 {
                return;
            }
            for a in from..n * n {
                cur.push((a / n, a % n));
                extend(n, a, left - 1, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        for n in 1..=max_vertices {
            extend(n, 0, max_edges, &mut Vec::new(), &mut out);
        }
        out
    }

    /// v -> u -> v with an entrance w -> v.
    pub fn two_cycle_entrance() -> Graph {
        Graph::new(
            &["u", "v", "w"],
            &[("a", "v", "u"), ("b", "u", "v"), ("c", "w", "v")],
        )
        .unwrap()
    }
}
