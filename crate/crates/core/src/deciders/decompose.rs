use serde::ser::{SerializeStruct, Serializer};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::gmatrix::{normalize_shifts, residue_multiplicities, Base, GradedMatrixRing, HomogeneousSlice};
use crate::graph::{enumerate_cycles, is_no_exit, paths_ending_at, Cycle, Graph, VertexId};

/// One graded matrix ring in the finite no-exit decomposition, with the
/// vertex whose incoming paths index it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Summand {
    pub ring: GradedMatrixRing,
    pub anchor: String,
    pub cycle: Option<String>,
}

impl Serialize for Summand {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("Summand", 6)?;
        match self.ring.base() {
            Base::Field => {
                st.serialize_field("base", "k")?;
                st.serialize_field("m", &Option::<u32>::None)?;
            }
            Base::Laurent { m } => {
                st.serialize_field("base", "laurent")?;
                st.serialize_field("m", &Some(m))?;
            }
        }
        st.serialize_field("n", &self.ring.n())?;
        st.serialize_field("shifts", self.ring.shifts())?;
        st.serialize_field("anchor", &self.anchor)?;
        st.serialize_field("cycle", &self.cycle)?;
        st.end()
    }
}

/// Summands in order: sinks by vertex, then cycles in canonical order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct DecompositionDescriptor {
    pub summands: Vec<Summand>,
}

impl DecompositionDescriptor {
    /// Shifts normalized per summand; anchors are dropped.
    pub fn normalized(&self) -> Vec<GradedMatrixRing> {
        self.summands.iter().map(|s| normalize_shifts(&s.ring)).collect()
    }

    /// K-dimension of the degree-`d` component of the direct sum.
    pub fn component_dimension(&self, d: i64) -> usize {
        self.summands
            .iter()
            .map(|s| HomogeneousSlice::new(&s.ring, d).dim())
            .sum()
    }
}

/// M_n(K)(lengths of paths ending at the sink).
pub fn sink_summand(g: &Graph, v: VertexId) -> Result<Summand> {
    let shifts = paths_ending_at(g, v, None)?
        .iter()
        .map(|p| p.len() as i64)
        .collect();
    Ok(Summand {
        ring: GradedMatrixRing::new(Base::Field, shifts)?,
        anchor: g.vertex_name(v).to_string(),
        cycle: None,
    })
}

/// M_n(K[x^m, x^-m])(lengths of paths ending at `base` that do not contain `c`).
pub fn cycle_summand(g: &Graph, c: &Cycle, base: VertexId) -> Result<Summand> {
    if !c.contains_vertex(g, base) {
        return Err(Error::Precondition(format!(
            "`{}` is not on the cycle",
            g.vertex_name(base)
        )));
    }
    let m = c.len() as u32;
    let shifts = paths_ending_at(g, base, Some(c))?
        .iter()
        .map(|p| p.len() as i64)
        .collect();
    let ring = GradedMatrixRing::new(Base::Laurent { m }, shifts)?;
    // the cycle's own suffixes give every residue
    if residue_multiplicities(&ring)?.contains(&0) {
        return Err(Error::InvariantViolation(format!(
            "cycle {} misses a residue in {ring}",
            c.display(g)
        )));
    }
    Ok(Summand {
        ring,
        anchor: g.vertex_name(base).to_string(),
        cycle: Some(c.display(g).to_string()),
    })
}

/// Graded matrix rings whose direct sums approximate L_K(E) for a finite no-exit graph.
pub fn structural_decomposition(g: &Graph) -> Result<DecompositionDescriptor> {
    if !is_no_exit(g) {
        return Err(Error::Contract(
            "structural decomposition needs a finite no-exit graph (lpa.decomposition_no_exit)".into(),
        ));
    }
    let mut summands = Vec::new();
    for v in g.vertices().filter(|&v| g.is_sink(v)) {
        summands.push(sink_summand(g, v)?);
    }
    for c in enumerate_cycles(g) {
        summands.push(cycle_summand(g, &c, g.source(c.edges()[0]))?);
    }
    Ok(DecompositionDescriptor { summands })
}
