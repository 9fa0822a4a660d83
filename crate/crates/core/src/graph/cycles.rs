use std::fmt;

use super::{EdgeId, Graph, Path, VertexId};

/// A closed path whose edges have pairwise distinct sources, stored in the
/// rotation that starts at its least edge id.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cycle {
    edges: Vec<EdgeId>,
}

impl Cycle {
    /// Canonicalizes the rotation; the caller guarantees the edges form a cycle.
    pub(crate) fn from_closed(mut edges: Vec<EdgeId>) -> Cycle {
        let pos = edges
            .iter()
            .enumerate()
            .min_by_key(|(_, e)| **e)
            .map(|(i, _)| i)
            .unwrap_or(0);
        edges.rotate_left(pos);
        Cycle { edges }
    }

    pub fn edges(&self) -> &[EdgeId] {
        &self.edges
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    /// Sources of the cycle edges, in cycle order.
    pub fn vertices(&self, g: &Graph) -> Vec<VertexId> {
        self.edges.iter().map(|&e| g.source(e)).collect()
    }

    pub fn contains_vertex(&self, g: &Graph, v: VertexId) -> bool {
        self.edges.iter().any(|&e| g.source(e) == v)
    }

    /// The rotation based at `v`, if `v` lies on the cycle.
    pub fn rotation_at(&self, g: &Graph, v: VertexId) -> Option<Vec<EdgeId>> {
        let pos = self.edges.iter().position(|&e| g.source(e) == v)?;
        let mut r = self.edges.clone();
        r.rotate_left(pos);
        Some(r)
    }

    /// The closed path based at `s` of the canonical rotation.
    pub fn as_path(&self, g: &Graph) -> Path {
        Path::from_edges(g, self.edges.clone()).expect("cycle is a valid path")
    }

    /// True when some rotation of the cycle occurs contiguously in `edges`.
    pub fn occurs_in(&self, edges: &[EdgeId]) -> bool {
        let m = self.edges.len();
        if edges.len() < m {
            return false;
        }
        (0..=edges.len() - m).any(|i| self.is_rotation(&edges[i..i + m]))
    }

    /// True when `window` (of length m) is a rotation of the cycle.
    pub(crate) fn is_rotation(&self, window: &[EdgeId]) -> bool {
        let m = self.edges.len();
        if window.len() != m {
            return false;
        }
        match self.edges.iter().position(|&e| e == window[0]) {
            Some(off) => (0..m).all(|k| self.edges[(off + k) % m] == window[k]),
            None => false,
        }
    }

    pub fn display<'a>(&'a self, g: &'a Graph) -> CycleDisplay<'a> {
        CycleDisplay { cycle: self, graph: g }
    }
}

pub struct CycleDisplay<'a> {
    cycle: &'a Cycle,
    graph: &'a Graph,
}

impl fmt::Display for CycleDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, &e) in self.cycle.edges.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{}", self.graph.edge_name(e))?;
        }
        write!(f, "]")
    }
}

/// All cycles up to rotation, each in canonical rotation, sorted.
///
/// A closed path revisiting a source is not a cycle, so on the rose with two
/// petals only the two loops are returned.
pub fn enumerate_cycles(g: &Graph) -> Vec<Cycle> {
    let mut out = Vec::new();
    let n = g.vertex_count();
    let mut on_path = vec![false; n];
    let mut stack: Vec<EdgeId> = Vec::new();
    for root in g.vertices() {
        on_path[root.0] = true;
        dfs(g, root, root, &mut on_path, &mut stack, &mut out);
        on_path[root.0] = false;
    }
    out.sort();
    out
}

// Every simple cycle is found exactly once, rooted at its least vertex.
fn dfs(
    g: &Graph,
    root: VertexId,
    at: VertexId,
    on_path: &mut [bool],
    stack: &mut Vec<EdgeId>,
    out: &mut Vec<Cycle>,
) {
    for &e in g.out_edges(at) {
        let w = g.range(e);
        if w == root {
            stack.push(e);
            out.push(Cycle::from_closed(stack.clone()));
            stack.pop();
        } else if w > root && !on_path[w.0] {
            on_path[w.0] = true;
            stack.push(e);
            dfs(g, root, w, on_path, stack, out);
            stack.pop();
            on_path[w.0] = false;
        }
    }
}
