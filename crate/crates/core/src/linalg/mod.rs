//! Dense complex linear algebra under normalized trace conventions.
//!
//! The orthonormal basis of `M_n` used by every vectorization in the crate is
//! `{sqrt(n) E_ij}` in row-major order. Coordinates of `X` in that basis are
//! `X_ij / sqrt(n)`, so the coordinate map is a scaled row-major flattening.

mod decomp;
mod matrix;
mod norms;
mod random;
mod vector;

pub use decomp::{
    determinant, hermitian_eig, hermitian_eigenvalues, polar_unitary, singular_values, svd, HermitianEig, Svd,
    HERMITIAN_TOL,
};
pub use matrix::CMatrix;
pub use norms::{dual_exponent, inner_normalized, inner_vec, lp_norm, schatten_norm};
pub(crate) use norms::raw_inner;
pub use random::{ginibre, haar_special_orthogonal, haar_unitary, Rng};
pub use vector::CVector;

pub use num_complex::Complex64 as C64;

/// `c` as a complex number.
pub fn real(c: f64) -> C64 {
    C64::new(c, 0.0)
}
