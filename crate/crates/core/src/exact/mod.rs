//! Exact integer linear algebra, real quadratic fields and graded abelian groups.

mod fixed;
mod matrix;
mod module;
mod quad;
mod smith;

pub use fixed::{Fixed, Real};
pub use matrix::IntMatrix;
pub use module::{GradedZModule, ZModule};
pub use quad::{is_perfect_square, square_free_decomposition, QuadNum};
pub use smith::{cokernel, kernel_rank, smith_normal_form, SmithForm};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ExactError {
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("cannot parse integer entry {0:?}")]
    Parse(String),
    #[error("matrix is not unimodular (det = {0})")]
    NotUnimodular(String),
    #[error("radicand {0} is not a square-free integer greater than one")]
    NotSquareFree(String),
}
