//! Finite simplicial complexes and their cohomology with F₂ coefficients.

pub mod cohomology;
pub mod linalg;
pub mod simplicial;

pub use cohomology::{
    coboundary, coboundary_matrix, cohomology, cup_length, cup_product, is_cocycle, pullback, restrict,
    Cochain, CohomologySummary,
};
pub use linalg::{F2Matrix, Reducer, SparseVec};
pub use simplicial::{models, SimplicialComplex, Vertex};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ComplexError {
    #[error("empty simplex")]
    EmptySimplex,
    #[error("duplicate vertex in simplex {0:?}")]
    DuplicateVertex(Vec<Vertex>),
    #[error("simplex {0:?} is not in the complex")]
    UnknownSimplex(Vec<Vertex>),
    #[error("degree {degree} out of range for a complex of dimension {dimension}")]
    DegreeOutOfRange { degree: usize, dimension: isize },
    #[error("expected a simplex of degree {expected}, found degree {found}")]
    DegreeMismatch { expected: usize, found: usize },
    #[error("cochain of degree {degree} has {found} coefficients, complex has {expected} simplices")]
    CochainLength { degree: usize, expected: usize, found: usize },
    #[error("cochain of degree {degree} is not a cocycle")]
    NotACocycle { degree: usize },
    #[error("cup length is defined on positive-degree classes only")]
    NonPositiveDegree,
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}
