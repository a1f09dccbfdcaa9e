//! Finite groups acting simplicially: orbits, fixed subcomplexes, quotients,
//! product triangulations and the saturated diagonal.

pub mod action;
pub mod group;
pub mod product;

pub use action::{quotient_complex, GroupAction, Quotient, MAX_SUBDIVISIONS};
pub use group::{FiniteGroup, CLOSURE_CAP};
pub use product::{product_complex, saturated_diagonal, ProductComplex, SaturatedDiagonal};

use crate::complex::{ComplexError, Vertex};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SymmetryError {
    #[error("not a group: {0}")]
    NotAGroup(String),
    #[error("generated group exceeds {cap} elements")]
    GroupTooLarge { cap: usize },
    #[error("map {element} is not a permutation of the vertex set")]
    NotAPermutation { element: usize },
    #[error("element {element} maps simplex {simplex:?} outside the complex")]
    NotSimplicial { element: usize, simplex: Vec<Vertex> },
    #[error("vertex maps do not form a homomorphism: {0}")]
    NotAHomomorphism(String),
    #[error("{0:?} is not a subgroup")]
    NotASubgroup(Vec<usize>),
    #[error("unknown group element {0}")]
    UnknownElement(usize),
    #[error("action is not regular: {0}")]
    NotRegular(String),
    #[error("action is still not regular after {subdivisions} barycentric subdivisions")]
    RegularityUnachievable { subdivisions: usize },
    #[error("slice graphs are not subcomplexes of the product after {subdivisions} subdivisions")]
    NotOrderCompatible { subdivisions: usize },
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error(transparent)]
    Complex(#[from] ComplexError),
}
