//! Exact integer linear algebra: Smith normal form, finitely generated
//! abelian groups from presentations, and cohomology of integer cochain
//! complexes.

mod complex;
mod group;
mod matrix;
mod snf;

use num_bigint::BigInt;
use thiserror::Error;

pub use complex::{complex_cohomology, CochainComplex};
pub use group::{group_from_presentation, FgAbGroup};
pub use matrix::IntMatrix;
pub use snf::{rank, smith_diagonal, smith_normal_form, SnfResult};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AbelianError {
    #[error("a {rows}x{cols} matrix needs {} entries, got {found}", rows * cols)]
    EntryCount {
        rows: usize,
        cols: usize,
        found: usize,
    },
    #[error("cannot multiply {left:?} by {right:?}")]
    ShapeMismatch {
        left: (usize, usize),
        right: (usize, usize),
    },
    #[error("determinant of non-square {rows}x{cols} matrix")]
    NotSquare { rows: usize, cols: usize },
    #[error("presentation has {cols} columns but {generators} generators")]
    GeneratorMismatch { generators: usize, cols: usize },
    #[error("invariant factor {0} is less than 2")]
    InvalidFactor(BigInt),
    #[error("invariant factor {0} does not divide {1}")]
    BrokenChain(BigInt, BigInt),
    #[error("complex with {degrees} degrees cannot carry {boundaries} boundary maps")]
    BoundaryCount { degrees: usize, boundaries: usize },
    #[error("boundary at degree {degree} should be {expected:?}, found {found:?}")]
    BoundaryShape {
        degree: usize,
        expected: (usize, usize),
        found: (usize, usize),
    },
    #[error("malformed complex: boundary after degree {degree} composes to a nonzero map")]
    MalformedComplex { degree: usize },
    #[error("degree {degree} is outside the complex (top degree {top:?})")]
    DegreeOutOfRange { degree: usize, top: Option<usize> },
}
