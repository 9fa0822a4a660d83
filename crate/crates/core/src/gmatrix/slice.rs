use super::{GMatrix, GradedMatrixRing};
use crate::coeff::{Field, LaurentPoly, Scalar};

/// Coordinates on the homogeneous component of a fixed degree: one scalar
/// per position that admits a nonzero entry, times the forced power of x.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomogeneousSlice {
    ring: GradedMatrixRing,
    degree: i64,
    positions: Vec<(usize, usize, i64)>,
}

impl HomogeneousSlice {
    pub fn new(ring: &GradedMatrixRing, degree: i64) -> Self {
        let n = ring.n();
        let mut positions = Vec::new();
        for i in 0..n {
            for j in 0..n {
                if let Some(t) = ring.exponent_at(i, j, degree) {
                    positions.push((i, j, t));
                }
            }
        }
        HomogeneousSlice {
            ring: ring.clone(),
            degree,
            positions,
        }
    }

    /// A slice restricted to the given positions of the degree-δ component.
    pub(crate) fn from_positions(ring: &GradedMatrixRing, degree: i64, positions: Vec<(usize, usize, i64)>) -> Self {
        HomogeneousSlice {
            ring: ring.clone(),
            degree,
            positions,
        }
    }

    pub fn degree(&self) -> i64 {
        self.degree
    }

    /// Dimension over K.
    pub fn dim(&self) -> usize {
        self.positions.len()
    }

    /// `(i, j, exponent)` for each coordinate.
    pub fn positions(&self) -> &[(usize, usize, i64)] {
        &self.positions
    }

    pub fn element(&self, field: Field, coords: &[Scalar]) -> GMatrix {
        assert_eq!(coords.len(), self.positions.len());
        let mut a = GMatrix::zero(&self.ring, field);
        let step = self.ring.step();
        for (&(i, j, t), c) in self.positions.iter().zip(coords) {
            let v = LaurentPoly::with_exponent(c.clone(), t, step).expect("slice exponent on lattice");
            a.set(i, j, v).expect("slice entry fits the ring");
        }
        a
    }

    /// Coordinates of `a`, or `None` when `a` is not in this component.
    pub fn coords(&self, a: &GMatrix) -> Option<Vec<Scalar>> {
        if a.component(self.degree) != *a {
            return None;
        }
        Some(
            self.positions
                .iter()
                .map(|&(i, j, t)| a.get(i, j).coeff(t))
                .collect(),
        )
    }
}
