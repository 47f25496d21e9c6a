//! Simplicial complexes, nerves and integral homology over sparse big-integer
//! matrices.

pub mod chain;
pub mod complex;
pub mod cover;
pub mod groups;
pub mod map;
pub mod matrix;
pub mod snf;

pub use chain::ChainVector;
pub use complex::{
    complex_from_maximal_faces, full_simplex, simplex_boundary, ComplexDump, SimplexKey, SimplicialComplex,
};
pub use cover::{nerve, CoverData};
pub use groups::{
    betti_euler_characteristic, coefficients_in_homology, homology, homology_summary, GroupSummary, HomologyBasis,
    HomologyCoordinates, HomologyDescriptor,
};
pub use map::{induced_homology_matrix, SimplicialMap};
pub use matrix::{Integer, IntegerMatrix, SparseVec};
pub use snf::{smith_normal_form, smith_normal_form_with, SnfOptions, SnfResult, Transform};
