use std::fmt;

use crate::graph::{EdgeId, Graph, Path, VertexId};

/// `p q*` with `r(p) = r(q)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    p: Path,
    q: Path,
}

impl Monomial {
    /// `None` when the ranges differ, i.e. the monomial is zero.
    pub fn new(g: &Graph, p: Path, q: Path) -> Option<Monomial> {
        (p.range(g) == q.range(g)).then_some(Monomial { p, q })
    }

    pub fn vertex(v: VertexId) -> Monomial {
        Monomial {
            p: Path::vertex(v),
            q: Path::vertex(v),
        }
    }

    pub fn edge(g: &Graph, e: EdgeId) -> Monomial {
        Monomial {
            p: Path::from_edges(g, vec![e]).expect("edge is a path"),
            q: Path::vertex(g.range(e)),
        }
    }

    pub fn ghost(g: &Graph, e: EdgeId) -> Monomial {
        Monomial::edge(g, e).swapped()
    }

    pub fn p(&self) -> &Path {
        &self.p
    }

    pub fn q(&self) -> &Path {
        &self.q
    }

    pub fn degree(&self) -> i64 {
        self.p.len() as i64 - self.q.len() as i64
    }

    pub fn swapped(&self) -> Monomial {
        Monomial {
            p: self.q.clone(),
            q: self.p.clone(),
        }
    }

    /// Not of the form `a g g* b*` with `g` special.
    pub fn is_normal(&self, g: &Graph) -> bool {
        match (self.p.last_edge(), self.q.last_edge()) {
            (Some(a), Some(b)) => a != b || !g.is_special(a),
            _ => true,
        }
    }

    /// One oriented CK2 step on `a g (b g)*`:
    /// `a b* - sum_{e != g, s(e) = s(g)} a e (b e)*`, as `(positive, term)` pairs.
    pub(crate) fn ck2_rewrite(&self, g: &Graph) -> Option<Vec<(bool, Monomial)>> {
        if self.is_normal(g) {
            return None;
        }
        let (a, special) = self.p.pop()?;
        let (b, _) = self.q.pop()?;
        let v = g.source(special);
        let mut parts = vec![(true, Monomial { p: a.clone(), q: b.clone() })];
        for &e in g.out_edges(v) {
            if e != special {
                parts.push((
                    false,
                    Monomial {
                        p: a.concat_unchecked(&[e]),
                        q: b.concat_unchecked(&[e]),
                    },
                ));
            }
        }
        Some(parts)
    }

    /// `(p q*)(r s*)` before CK2 rewriting, from (V), (E1), (E2) and CK1.
    pub(crate) fn mul_raw(&self, g: &Graph, rhs: &Monomial) -> Option<Monomial> {
        if let Some(rest) = rhs.p.strip_prefix(g, &self.q) {
            return Some(Monomial {
                p: self.p.concat_unchecked(rest.edges()),
                q: rhs.q.clone(),
            });
        }
        if let Some(rest) = self.q.strip_prefix(g, &rhs.p) {
            return Some(Monomial {
                p: self.p.clone(),
                q: rhs.q.concat_unchecked(rest.edges()),
            });
        }
        None
    }

    pub fn display<'a>(&'a self, g: &'a Graph) -> MonomialDisplay<'a> {
        MonomialDisplay { m: self, graph: g }
    }
}

/// Prints `p q*` as the generator word `p1 ... pk ql* ... q1*`.
pub struct MonomialDisplay<'a> {
    m: &'a Monomial,
    graph: &'a Graph,
}

impl fmt::Display for MonomialDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let g = self.graph;
        if self.m.p.is_empty() && self.m.q.is_empty() {
            return write!(f, "{}", g.vertex_name(self.m.p.source()));
        }
        let mut words: Vec<String> = self.m.p.edges().iter().map(|&e| g.edge_name(e).to_string()).collect();
        words.extend(self.m.q.edges().iter().rev().map(|&e| format!("{}*", g.edge_name(e))));
        write!(f, "{}", words.join(" "))
    }
}
