//! Symmetric cycles in the hypercube graph `H(t,2)` and exact decompositions
//! of topes and subtopes over the subtopes labeling the cycle's edges.
//!
//! All arithmetic is exact. See [`decomp`] for the decomposition routines,
//! [`closedform`] for the explicit formulas on the distinguished cycle, and
//! [`oracle`] for the independent checks.

pub mod bench;
pub mod closedform;
pub mod cycles;
pub mod decomp;
mod error;
pub mod linalg;
pub mod oracle;
pub mod sign;

pub use closedform::{canonical_intervals, closed_form_xbar, componentwise_xbar, singleton_xbar, BoundaryCase, IntervalSet};
pub use cycles::{
    distinguished_cycle, matrix_m, matrix_n, matrix_p, matrix_w, random_cycle, subtope_sequence,
    SubtopeSequence, SymmetricCycle,
};
pub use decomp::{
    matrix_x, reconstruct, subtope_decomposition, subtope_to_tope_pair, tope_coords,
    tope_decomposition, vertex_decomposition, xbar_of_subtope, xbar_of_tope, CoeffVector,
    Decomposition, TernaryCoords, VertexDecomposition,
};
pub use error::{Error, Result};
pub use linalg::IntMatrix;
pub use sign::{meet_midpoint, HalfLabeling, SignVector, Subtope, Tope};
