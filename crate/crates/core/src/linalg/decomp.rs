//! Spectral decompositions, backed by `faer` in sequential mode.

use faer::{Mat, Side};
use num_complex::Complex64 as C64;

use super::CMatrix;
use crate::error::{Error, Result};

/// Hermiticity is checked relative to the largest entry.
pub const HERMITIAN_TOL: f64 = 1e-10;

pub(crate) fn to_faer(m: &CMatrix) -> Mat<C64> {
    Mat::from_fn(m.rows(), m.cols(), |i, j| m[(i, j)])
}

pub(crate) fn from_faer(m: faer::MatRef<'_, C64>) -> CMatrix {
    CMatrix::from_fn(m.nrows(), m.ncols(), |i, j| m[(i, j)])
}

/// Eigen-decomposition of a Hermitian matrix, eigenvalues in descending order.
#[derive(Clone, Debug)]
pub struct HermitianEig {
    pub values: Vec<f64>,
    /// Column `k` is the eigenvector for `values[k]`.
    pub vectors: CMatrix,
}

/// Singular value decomposition `X = U diag(sigma) V*`.
#[derive(Clone, Debug)]
pub struct Svd {
    pub u: CMatrix,
    /// Descending, length `min(rows, cols)`.
    pub sigma: Vec<f64>,
    pub v: CMatrix,
}

fn check_hermitian(x: &CMatrix) -> Result<()> {
    x.square_dim("Hermitian input")?;
    let defect = x.hermiticity_defect();
    if defect > HERMITIAN_TOL * x.max_abs().max(1.0) {
        return Err(Error::NotHermitian(defect));
    }
    Ok(())
}

pub fn hermitian_eig(x: &CMatrix) -> Result<HermitianEig> {
    check_hermitian(x)?;
    let h = to_faer(&x.hermitian_part());
    let evd = h
        .self_adjoint_eigen(Side::Lower)
        .map_err(|e| Error::Decomposition(format!("{e:?}")))?;
    let n = x.rows();
    let s = evd.S().column_vector();
    let u = evd.U();
    // faer sorts ascending; reverse to descending.
    let values = (0..n).rev().map(|k| s[k].re).collect();
    let vectors = CMatrix::from_fn(n, n, |i, k| u[(i, n - 1 - k)]);
    Ok(HermitianEig { values, vectors })
}

/// Eigenvalues only, descending.
pub fn hermitian_eigenvalues(x: &CMatrix) -> Result<Vec<f64>> {
    check_hermitian(x)?;
    let mut vals = to_faer(&x.hermitian_part())
        .self_adjoint_eigenvalues(Side::Lower)
        .map_err(|e| Error::Decomposition(format!("{e:?}")))?;
    vals.reverse();
    Ok(vals)
}

pub fn svd(x: &CMatrix) -> Result<Svd> {
    let decomposition = to_faer(x)
        .svd()
        .map_err(|e| Error::Decomposition(format!("{e:?}")))?;
    let s = decomposition.S().column_vector();
    let sigma = (0..x.rows().min(x.cols())).map(|k| s[k].re).collect();
    Ok(Svd {
        u: from_faer(decomposition.U()),
        sigma,
        v: from_faer(decomposition.V()),
    })
}

/// Singular values only, descending.
pub fn singular_values(x: &CMatrix) -> Result<Vec<f64>> {
    to_faer(x)
        .singular_values()
        .map_err(|e| Error::Decomposition(format!("{e:?}")))
}

/// The unitary factor `U V*` of the polar decomposition.
///
/// It maximizes `Re Tr(W* X)` over unitaries `W`, with maximum `sum(sigma)`.
pub fn polar_unitary(x: &CMatrix) -> Result<CMatrix> {
    x.square_dim("polar input")?;
    let Svd { u, v, .. } = svd(x)?;
    Ok(u.matmul(&v.adjoint()))
}

/// Determinant of a square matrix via LU with partial pivoting.
pub fn determinant(x: &CMatrix) -> Result<C64> {
    x.square_dim("determinant input")?;
    Ok(to_faer(x).determinant())
}

/// Thin QR of a square complex matrix: returns `(Q, diag(R))`.
pub(crate) fn qr_square(x: &CMatrix) -> (CMatrix, Vec<C64>) {
    let qr = to_faer(x).qr();
    let q = from_faer(qr.compute_Q().as_ref());
    let r = qr.R();
    let diag = (0..x.rows().min(x.cols())).map(|k| r[(k, k)]).collect();
    (q, diag)
}

/// QR of a real square matrix: returns `(Q, diag(R))` with real entries.
pub(crate) fn qr_real(entries: &[f64], n: usize) -> (Vec<f64>, Vec<f64>, f64) {
    let m = Mat::<f64>::from_fn(n, n, |i, j| entries[i * n + j]);
    let qr = m.qr();
    let q = qr.compute_Q();
    let r = qr.R();
    let q_flat = (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).map(|(i, j)| q[(i, j)]).collect();
    let diag = (0..n).map(|k| r[(k, k)]).collect();
    (q_flat, diag, q.determinant())
}
