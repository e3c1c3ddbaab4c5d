//! Exact rational linear algebra: dense matrices with a signed-permutation
//! fast path, Kronecker products, and canonical (RREF) subspaces.

mod json;
mod matrix;
mod perm;
mod subspace;

pub use json::{format_rational, parse_rational, MatrixJson, SubspaceJson};
pub use matrix::{max_dim, ExactMatrix, DEFAULT_MAX_DIM};
pub use perm::SignedPerm;
pub use subspace::{direct_sum_check, image, spin_dimension, spin_submodule, Subspace};
