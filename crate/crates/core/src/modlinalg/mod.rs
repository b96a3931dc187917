//! Exact linear algebra over the scalar field and over the PID `F[∂]`.

mod hermite;
pub mod qlinear;
mod unipoly;

pub use hermite::{hnf, intersect, member, PolyMatrix, SubmoduleBasis};
pub use qlinear::{nullspace_q, solve_affine, KeyedSystem, QMatrix, RowEchelon, SparseVec};
