//! Explicit objects: wedge spaces and fermionic operators, the
//! superoperators built from them, extremal matrices, lifts and graph
//! families.

mod graphs;
mod haagerup_itoh;
mod matrices;
mod wedge;

pub use graphs::{cayley_abelian, complete, cycle};
pub use haagerup_itoh::{
    covariant_haagerup_itoh, grothendieck_assembly, haagerup_itoh, haagerup_itoh_superop, rank_sum_superop,
    relation_residual, GrothendieckAssembly, MAX_SUPEROP_N,
};
pub use matrices::{cz_extremal_matrix, lift_matrix, pibound_max};
pub use wedge::{
    binomial, creation_operators, hodge_star, wedge_basis, wedge_representation, CreationFamily, WedgeBasis,
    MAX_CREATION_N, MAX_WEDGE_DIM,
};
