//! Arithmetic in the Leavitt path algebra L_K(E) of a finite graph.
//!
//! Elements are kept in the normal-form basis: monomials `p q*` with
//! `r(p) = r(q)` such that `p` and `q` do not both end in the same special
//! edge (the greatest edge id emitted by its source).

mod monomial;

pub use monomial::Monomial;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

use crate::coeff::{Field, Scalar};
use crate::error::{Error, Result};
use crate::graph::{paths_up_to, EdgeId, Graph, Path, VertexId};

/// A generator of the free algebra: a vertex, an edge, or a ghost edge.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Generator {
    Vertex(VertexId),
    Edge(EdgeId),
    Ghost(EdgeId),
}

#[derive(Debug, Clone)]
pub struct LpaElement {
    graph: Arc<Graph>,
    field: Field,
    terms: BTreeMap<Monomial, Scalar>,
}

impl PartialEq for LpaElement {
    fn eq(&self, other: &Self) -> bool {
        same_graph(&self.graph, &other.graph) && self.field == other.field && self.terms == other.terms
    }
}

impl Eq for LpaElement {}

fn same_graph(a: &Arc<Graph>, b: &Arc<Graph>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl LpaElement {
    pub fn zero(graph: &Arc<Graph>, field: Field) -> Self {
        LpaElement {
            graph: Arc::clone(graph),
            field,
            terms: BTreeMap::new(),
        }
    }

    /// The identity: the sum of all vertices.
    pub fn one(graph: &Arc<Graph>, field: Field) -> Self {
        let mut a = Self::zero(graph, field);
        for v in graph.vertices() {
            a.terms.insert(Monomial::vertex(v), field.one());
        }
        a
    }

    pub fn vertex(graph: &Arc<Graph>, field: Field, v: VertexId) -> Self {
        Self::from_generator(graph, field, Generator::Vertex(v))
    }

    pub fn edge(graph: &Arc<Graph>, field: Field, e: EdgeId) -> Self {
        Self::from_generator(graph, field, Generator::Edge(e))
    }

    pub fn ghost(graph: &Arc<Graph>, field: Field, e: EdgeId) -> Self {
        Self::from_generator(graph, field, Generator::Ghost(e))
    }

    pub fn from_generator(graph: &Arc<Graph>, field: Field, gen: Generator) -> Self {
        let m = match gen {
            Generator::Vertex(v) => Monomial::vertex(v),
            Generator::Edge(e) => Monomial::edge(graph, e),
            Generator::Ghost(e) => Monomial::ghost(graph, e),
        };
        let mut a = Self::zero(graph, field);
        // a single generator is always in normal form
        a.terms.insert(m, field.one());
        a
    }

    /// `c p q*`, normalized; zero when `r(p) != r(q)`.
    pub fn monomial(graph: &Arc<Graph>, c: Scalar, p: Path, q: Path) -> Result<Self> {
        Self::from_raw(graph, c.field(), vec![(c, p, q)])
    }

    /// Normalizes a formal combination of `p q*` terms.
    pub fn from_raw(graph: &Arc<Graph>, field: Field, raw: Vec<(Scalar, Path, Path)>) -> Result<Self> {
        Self::from_raw_with_order(graph, field, raw, &mut |n| n - 1)
    }

    /// Like [`from_raw`](Self::from_raw), but `pick(len)` chooses which pending
    /// term to rewrite next; any choice reaches the same normal form.
    pub fn from_raw_with_order(
        graph: &Arc<Graph>,
        field: Field,
        raw: Vec<(Scalar, Path, Path)>,
        pick: &mut dyn FnMut(usize) -> usize,
    ) -> Result<Self> {
        let mut pending = Vec::with_capacity(raw.len());
        for (c, p, q) in raw {
            check_field(field, &c)?;
            let p = Path::new(graph, p.source(), p.edges().to_vec())?;
            let q = Path::new(graph, q.source(), q.edges().to_vec())?;
            if let Some(m) = Monomial::new(graph, p, q) {
                pending.push((c, m));
            }
        }
        let mut out = Self::zero(graph, field);
        while !pending.is_empty() {
            let i = pick(pending.len()).min(pending.len() - 1);
            let (c, m) = pending.swap_remove(i);
            match m.ck2_rewrite(graph) {
                None => out.accumulate(m, &c),
                Some(parts) => {
                    for (sign, part) in parts {
                        pending.push((if sign { c.clone() } else { -&c }, part));
                    }
                }
            }
        }
        Ok(out)
    }

    /// The product of a word of generators, scaled by `c`.
    pub fn from_word(graph: &Arc<Graph>, c: Scalar, word: &[Generator]) -> Result<Self> {
        let field = c.field();
        let mut acc = Self::one(graph, field).scale(&c);
        for &g in word {
            acc = acc.mul(&Self::from_generator(graph, field, g))?;
        }
        Ok(acc)
    }

    pub fn graph(&self) -> &Arc<Graph> {
        &self.graph
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Scalar)> + '_ {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    fn accumulate(&mut self, m: Monomial, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(v) => {
                *v += c;
                if v.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c.clone());
            }
        }
    }

    fn compatible(&self, rhs: &LpaElement) -> Result<()> {
        if !same_graph(&self.graph, &rhs.graph) {
            return Err(Error::GraphMismatch);
        }
        if self.field != rhs.field {
            return Err(Error::FieldMismatch(self.field.to_string(), rhs.field.to_string()));
        }
        Ok(())
    }

    pub fn add(&self, rhs: &LpaElement) -> Result<LpaElement> {
        self.compatible(rhs)?;
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.accumulate(m.clone(), c);
        }
        Ok(out)
    }

    pub fn sub(&self, rhs: &LpaElement) -> Result<LpaElement> {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> LpaElement {
        self.scale(&-self.field.one())
    }

    pub fn scale(&self, c: &Scalar) -> LpaElement {
        let mut out = Self::zero(&self.graph, self.field);
        if c.is_zero() {
            return out;
        }
        for (m, v) in &self.terms {
            out.terms.insert(m.clone(), v * c);
        }
        out
    }

    /// Exact product, normalized after each monomial product.
    pub fn mul(&self, rhs: &LpaElement) -> Result<LpaElement> {
        self.compatible(rhs)?;
        let g = &self.graph;
        let mut out = Self::zero(g, self.field);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                if let Some(m) = ma.mul_raw(g, mb) {
                    let c = ca * cb;
                    out.add_normalized(m, &c);
                }
            }
        }
        Ok(out)
    }

    fn add_normalized(&mut self, m: Monomial, c: &Scalar) {
        let g = Arc::clone(&self.graph);
        let mut stack = vec![(c.clone(), m)];
        while let Some((c, m)) = stack.pop() {
            match m.ck2_rewrite(&g) {
                None => self.accumulate(m, &c),
                Some(parts) => {
                    for (sign, part) in parts {
                        stack.push((if sign { c.clone() } else { -&c }, part));
                    }
                }
            }
        }
    }

    /// The involution `(k p q*)* = k q p*`, with the identity on K.
    pub fn star(&self) -> LpaElement {
        let mut out = Self::zero(&self.graph, self.field);
        for (m, c) in &self.terms {
            // the swap of a normal monomial is normal
            out.terms.insert(m.swapped(), c.clone());
        }
        out
    }

    /// The homogeneous component of degree `d`.
    pub fn component(&self, d: i64) -> LpaElement {
        let mut out = Self::zero(&self.graph, self.field);
        for (m, c) in &self.terms {
            if m.degree() == d {
                out.terms.insert(m.clone(), c.clone());
            }
        }
        out
    }

    /// Degrees with a nonzero component, ascending.
    pub fn support_degrees(&self) -> BTreeSet<i64> {
        self.terms.keys().map(Monomial::degree).collect()
    }

    /// The degree when the element is nonzero and homogeneous.
    pub fn homogeneous_degree(&self) -> Option<i64> {
        let ds = self.support_degrees();
        if ds.len() == 1 {
            ds.into_iter().next()
        } else {
            None
        }
    }

    pub fn is_idempotent(&self) -> bool {
        self.mul(self).is_ok_and(|sq| sq == *self)
    }

    /// `idem * self * idem`; `idem` must be idempotent.
    pub fn corner(&self, idem: &LpaElement) -> Result<LpaElement> {
        self.compatible(idem)?;
        if !idem.is_idempotent() {
            return Err(Error::Contract("corner requires an idempotent".into()));
        }
        idem.mul(self)?.mul(idem)
    }

    /// Sum of the vertices `s(p)` and `s(q)` over the terms: a local unit for `self`.
    pub fn local_unit(&self) -> LpaElement {
        let vs: BTreeSet<VertexId> = self
            .terms
            .keys()
            .flat_map(|m| [m.p().source(), m.q().source()])
            .collect();
        let mut out = Self::zero(&self.graph, self.field);
        for v in vs {
            out.terms.insert(Monomial::vertex(v), self.field.one());
        }
        out
    }
}

fn check_field(field: Field, c: &Scalar) -> Result<()> {
    if c.field() == field {
        Ok(())
    } else {
        Err(Error::FieldMismatch(field.to_string(), c.field().to_string()))
    }
}

/// Normal-form basis monomials of degree `d` with both paths of length at most `max_len`.
pub fn basis_monomials(g: &Graph, d: i64, max_len: usize) -> Vec<Monomial> {
    let paths = paths_up_to(g, max_len);
    let mut by_range: BTreeMap<VertexId, Vec<&Path>> = BTreeMap::new();
    for p in &paths {
        by_range.entry(p.range(g)).or_default().push(p);
    }
    let mut out = Vec::new();
    for ps in by_range.values() {
        for p in ps {
            for q in ps {
                if p.len() as i64 - q.len() as i64 != d {
                    continue;
                }
                let m = Monomial::new(g, (*p).clone(), (*q).clone()).expect("common range");
                if m.is_normal(g) {
                    out.push(m);
                }
            }
        }
    }
    out.sort();
    out
}

/// Dimension of the degree-`d` component of L_K(E) for a finite no-exit graph.
///
/// In such a graph one of `p`, `q` in a basis monomial avoids wrapping the
/// cycle, so lengths are bounded by `|E^0| + |d|`.
pub fn component_dimension_no_exit(g: &Graph, d: i64) -> usize {
    basis_monomials(g, d, g.vertex_count() + d.unsigned_abs() as usize).len()
}

impl fmt::Display for LpaElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative_literal();
            let mag = if neg { -c } else { c.clone() };
            if i > 0 {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            } else if neg {
                write!(f, "-")?;
            }
            if !mag.is_one() {
                write!(f, "{mag} ")?;
            }
            write!(f, "{}", m.display(&self.graph))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests;
