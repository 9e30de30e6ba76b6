//! Exact rational arithmetic, dense matrices and linear algebra.

mod linalg;
mod matrix;
mod scalar;

pub use linalg::{
    independent_subset, nullspace, orthogonal_complement, primitive_normalize, rank, rank_of,
    rref, solve_linear, LinalgError, LinearSolution,
};
pub use matrix::{
    add_vec, dot, is_zero_vec, ivec, neg_vec, scale_vec, sub_vec, unit_vec, zero_vec, Matrix,
};
pub use scalar::{int, rat, ParseScalarError, Scalar};
