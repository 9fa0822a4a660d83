//! Exact computation with Leavitt path algebras, graded matrix rings over
//! fields and Laurent rings, and deciders for graded clean / exchange /
//! unit-regularity style properties.

pub mod coeff;
pub mod deciders;
pub mod error;
pub mod gmatrix;
pub mod graph;
pub mod linalg;
pub mod lpa;
pub mod nonunital;
pub mod oracle;
pub mod verdict;

pub use coeff::{Field, LaurentPoly, Scalar};
pub use error::{Error, Result};
pub use graph::{Cycle, EdgeId, Graph, Path, VertexId};
pub use lpa::{LpaElement, Monomial};
pub use gmatrix::{Base, Degree, GMatrix, GradedMatrixRing};
pub use verdict::{Truth, Verdict};
