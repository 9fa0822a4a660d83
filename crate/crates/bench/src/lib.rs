//! Workloads shared by the benchmarks.

use std::sync::Arc;

use gradcan::graph::examples::numbered;
use gradcan::lpa::Generator;
use gradcan::{Field, Graph, LpaElement};

/// A directed cycle on `n` vertices with a chord from each vertex to the next but one.
pub fn chorded_cycle(n: usize) -> Graph {
    let arcs: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| [(i, (i + 1) % n), (i, (i + 2) % n)])
        .collect();
    numbered(n, &arcs)
}

/// The complete directed graph with loops on `n` vertices.
pub fn complete(n: usize) -> Graph {
    let arcs: Vec<(usize, usize)> = (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).collect();
    numbered(n, &arcs)
}

/// `Σ_e e e*` plus every ghost, a dense element for multiplication.
pub fn dense_element(g: &Arc<Graph>, field: Field) -> LpaElement {
    let mut acc = LpaElement::zero(g, field);
    for e in g.edges() {
        let t = LpaElement::from_word(g, field.one(), &[Generator::Edge(e), Generator::Ghost(e)]).unwrap();
        acc = acc.add(&t).unwrap().add(&LpaElement::ghost(g, field, e)).unwrap();
    }
    acc
}

/// A word `e_0 e_1 ... e_{k-1} e_{k-1}* ... e_0*` along a closed walk.
pub fn walk_word(g: &Graph, len: usize) -> Vec<Generator> {
    let mut edges = Vec::with_capacity(len);
    let mut v = g.vertices().next().expect("nonempty graph");
    for _ in 0..len {
        let Some(&e) = g.out_edges(v).first() else { break };
        edges.push(e);
        v = g.range(e);
    }
    let mut word: Vec<Generator> = edges.iter().map(|&e| Generator::Edge(e)).collect();
    word.extend(edges.iter().rev().map(|&e| Generator::Ghost(e)));
    word
}
