//! Clique complexes, exact (co)homology and cup products.

mod cochain;
mod complex;
pub mod field;
mod groups;
mod matrix;
mod snf;

pub use cochain::{
    coboundary, cohomology_basis, cup, induced_cochain_map, is_coboundary, nilpotency, Cochain,
    CupLength, InducedMap,
};
pub use complex::{
    build_clique_complex, build_clique_complex_with, clique_complex, ChainComplex, VertexOrder,
};
pub use groups::{
    betti, betti_numbers, boundary_rank, coboundary_rank, cocycle_rank, cohomology,
    cohomology_with, homology, homology_with, Coeff, Group, HomologyResult,
};
pub use matrix::{IntMatrix, Matrix};
pub use snf::{
    invariant_factors, rank, smith_normal_form, smith_normal_form_i64, snf_in, Snf, SnfScalar,
};
