//! Exact values and certified lower bounds for matrix and superoperator
//! norms. Every lower bound carries a witness whose pairing reproduces it.

mod estimate;
mod gowers;
mod matrix;
mod superop;

pub use estimate::{AscentOptions, EstimateKind, NormEstimate, Witness};
pub use gowers::{ncgowers_check, GowersReport};
pub use matrix::{
    best_subset, grothendieck_norm_lower, grothendieck_value, linf_l1_phase_grid, matrix_cut_norm, matrix_lpq_norm,
    matrix_pairing, CutMode, BRUTE_CUT_MAX_N, PHASE_GRID_MAX_N,
};
pub use superop::{
    cut_norm_superop, epsilon, lambda, pairing, s1_sinfty_norm, s2s2_norm, sinfty_s1_norm, sinfty_s1_norm_from,
    PROJECTOR_EIGEN_CUTOFF,
};

impl Witness {
    /// Recomputes the pairing of a superoperator witness.
    pub fn evaluate_superop(&self, phi: &crate::channels::Superoperator) -> crate::Result<f64> {
        match self {
            Witness::Matrices { x, y } => pairing(phi, x, y),
            _ => Err(crate::Error::InvalidArgument("not a matrix-pair witness".into())),
        }
    }

    /// Recomputes the pairing of a matrix witness.
    pub fn evaluate_matrix(&self, a: &crate::CMatrix) -> crate::Result<f64> {
        match self {
            Witness::Vectors { x, y } => matrix_pairing(a, x.as_slice(), y.as_slice()),
            Witness::VectorFamilies { x, y } => grothendieck_value(a, x, y),
            Witness::Matrices { .. } => Err(crate::Error::InvalidArgument("not a vector witness".into())),
        }
    }
}
