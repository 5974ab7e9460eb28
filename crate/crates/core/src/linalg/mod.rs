//! Exact scalars, dense and sparse matrices, and integer polynomial matrices.

pub mod field;
pub mod matrix;
pub mod poly;
pub mod sparse;

pub use field::{Field, Scalar};
pub use matrix::{row_reduce, subspace_quotient, ExactMatrix, QuotientMap, RowReduction, Subspace, Vector};
pub use poly::{int_det, poly_det, IntPolynomial, PolyMatrix};
pub use sparse::SparseMatrix;
