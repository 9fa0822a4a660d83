use std::collections::{BTreeMap, BTreeSet, VecDeque};

use serde::Serialize;

use super::{enumerate_cycles, Cycle, EdgeId, Graph, Path, VertexId};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum VertexKind {
    Sink,
    Regular,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum GraphShape {
    DisjointVertices,
    SingleLoop,
    Other,
}

pub fn classify_vertices(g: &Graph) -> BTreeMap<VertexId, VertexKind> {
    g.vertices()
        .map(|v| {
            let kind = if g.is_sink(v) {
                VertexKind::Sink
            } else {
                VertexKind::Regular
            };
            (v, kind)
        })
        .collect()
}

/// Kahn's algorithm: acyclic iff every vertex can be peeled off.
pub fn is_acyclic(g: &Graph) -> bool {
    let mut indeg: Vec<usize> = g.vertices().map(|v| g.in_edges(v).len()).collect();
    let mut queue: VecDeque<VertexId> = g.vertices().filter(|v| indeg[v.0] == 0).collect();
    let mut seen = 0;
    while let Some(v) = queue.pop_front() {
        seen += 1;
        for &e in g.out_edges(v) {
            let w = g.range(e);
            indeg[w.0] -= 1;
            if indeg[w.0] == 0 {
                queue.push_back(w);
            }
        }
    }
    seen == g.vertex_count()
}

pub fn is_no_exit(g: &Graph) -> bool {
    enumerate_cycles(g)
        .iter()
        .all(|c| c.vertices(g).iter().all(|&v| g.out_edges(v).len() == 1))
}

/// No vertex lies on exactly one cycle.
pub fn has_condition_k(g: &Graph) -> bool {
    let mut count = vec![0usize; g.vertex_count()];
    for c in enumerate_cycles(g) {
        for v in c.vertices(g) {
            count[v.0] += 1;
        }
    }
    count.iter().all(|&k| k != 1)
}

pub fn sinks_isolated(g: &Graph) -> bool {
    g.vertices()
        .filter(|&v| g.is_sink(v))
        .all(|v| g.in_edges(v).is_empty())
}

pub fn graph_shape(g: &Graph) -> GraphShape {
    if g.edge_count() == 0 {
        GraphShape::DisjointVertices
    } else if g.vertex_count() == 1 && g.edge_count() == 1 {
        GraphShape::SingleLoop
    } else {
        GraphShape::Other
    }
}

/// Weakly connected components, each as a sorted vertex set, ordered by least vertex.
pub fn weak_components(g: &Graph) -> Vec<BTreeSet<VertexId>> {
    let n = g.vertex_count();
    let mut comp = vec![usize::MAX; n];
    let mut out = Vec::new();
    for start in g.vertices() {
        if comp[start.0] != usize::MAX {
            continue;
        }
        let id = out.len();
        let mut set = BTreeSet::new();
        let mut stack = vec![start];
        comp[start.0] = id;
        while let Some(v) = stack.pop() {
            set.insert(v);
            let nbrs = g
                .out_edges(v)
                .iter()
                .map(|&e| g.range(e))
                .chain(g.in_edges(v).iter().map(|&e| g.source(e)));
            for w in nbrs {
                if comp[w.0] == usize::MAX {
                    comp[w.0] = id;
                    stack.push(w);
                }
            }
        }
        out.push(set);
    }
    out
}

/// Every weak component is either acyclic or consists of a single cycle and nothing else.
pub fn is_acyclic_or_isolated_cycles(g: &Graph) -> bool {
    let cycles = enumerate_cycles(g);
    weak_components(g).iter().all(|comp| {
        let inside: Vec<&Cycle> = cycles
            .iter()
            .filter(|c| comp.contains(&g.source(c.edges()[0])))
            .collect();
        match inside.as_slice() {
            [] => true,
            [c] => {
                let edges = comp.iter().map(|&v| g.out_edges(v).len()).sum::<usize>();
                c.len() == comp.len() && edges == comp.len()
            }
            _ => false,
        }
    })
}

/// All paths ending at `v`, skipping those that contain a rotation of `avoid`.
///
/// Errors when the set is not finite within the length bound a finite
/// no-exit graph guarantees.
pub fn paths_ending_at(g: &Graph, v: VertexId, avoid: Option<&Cycle>) -> Result<Vec<Path>> {
    let bound = g.vertex_count() + g.edge_count();
    let mut out = vec![Path::vertex(v)];
    // Backward search: each state is a path (as edges) ending at `v`.
    let mut frontier: Vec<Vec<EdgeId>> = vec![Vec::new()];
    let mut len = 0;
    while !frontier.is_empty() {
        len += 1;
        if len > bound {
            return Err(Error::Precondition(
                "EDL requires finite no-exit graph".into(),
            ));
        }
        let mut next = Vec::new();
        for p in &frontier {
            let head = p.first().map_or(v, |&e| g.source(e));
            for &e in g.in_edges(head) {
                let mut q = Vec::with_capacity(p.len() + 1);
                q.push(e);
                q.extend_from_slice(p);
                if let Some(c) = avoid {
                    let m = c.len();
                    // earlier windows were checked when the shorter path was built
                    if q.len() >= m && c.is_rotation(&q[..m]) {
                        continue;
                    }
                }
                out.push(Path::from_edges(g, q.clone()).expect("backward extension is a path"));
                next.push(q);
            }
        }
        frontier = next;
    }
    Ok(out)
}

/// EDL for one cycle at one base vertex: residues of path lengths mod m are balanced.
pub fn edl_at_base(g: &Graph, c: &Cycle, base: VertexId) -> Result<bool> {
    if !c.contains_vertex(g, base) {
        return Err(Error::Precondition(format!(
            "`{}` is not on the cycle",
            g.vertex_name(base)
        )));
    }
    let m = c.len();
    let mut counts = vec![0usize; m];
    for p in paths_ending_at(g, base, Some(c))? {
        counts[p.len() % m] += 1;
    }
    Ok(counts.iter().all(|&k| k == counts[0]))
}

/// Condition (EDL) on a finite no-exit graph, using each cycle's canonical base vertex.
pub fn check_edl(g: &Graph) -> Result<bool> {
    if !is_no_exit(g) {
        return Err(Error::Precondition(
            "EDL requires finite no-exit graph".into(),
        ));
    }
    for c in enumerate_cycles(g) {
        if !edl_at_base(g, &c, g.source(c.edges()[0]))? {
            return Ok(false);
        }
    }
    Ok(true)
}
