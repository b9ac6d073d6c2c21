//! Represented groups, twirling, irreducibility and covariance checks, and
//! graph automorphisms.

mod graphs;
mod group;
mod twirl;

pub use graphs::{
    graph_automorphisms, is_vertex_transitive, permutation_matrix, transitive_cover_group, MAX_AUTOMORPHISM_N,
};
pub use group::{
    ContinuousBase, GeneratorPair, GroupKind, RepresentedGroup, DEDUP_TOL, MAX_GROUP_ORDER, RANDOM_WORD_LENGTH,
    UNITARY_TOL,
};
pub use twirl::{
    check_covariance, is_irreducible, twirl, CovarianceReport, IrreducibilityReport, Twirl, TORUS_SAMPLES,
};
