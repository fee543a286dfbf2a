//! Exact linear algebra over `Q` and `GF(p)`: scalars, sparse vectors and
//! matrices, reduced row-echelon forms, and a subspace calculus (sums,
//! intersections, annihilators, preimages).

mod echelon;
mod field;
mod sparse;
mod subspace;

pub use echelon::{kernel, rref, rref_dense, rref_sparse, DENSE_CUTOFF};
pub use field::{is_prime, Field, FieldError, Scalar};
pub use sparse::{Matrix, SparseVec};
pub use subspace::{echelonize, kernel_of, preimage, LinAlgError, Subspace};
