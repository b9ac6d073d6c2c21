//! Explicit matrices on `C^n` and their lifts.

use std::f64::consts::TAU;

use crate::error::{Error, Result};
use crate::linalg::{CMatrix, C64};
use crate::norms::best_subset;

/// `A_st = e^{2πi(s-t)/n}`, the rank-one circulant `v v*` with
/// `v_s = e^{2πis/n}`.
pub fn cz_extremal_matrix(n: usize) -> Result<CMatrix> {
    if n == 0 {
        return Err(Error::InvalidArgument("matrix size must be positive".into()));
    }
    Ok(CMatrix::from_fn(n, n, |s, t| {
        C64::from_polar(1.0, TAU * (s as f64 - t as f64) / n as f64)
    }))
}

/// The `nk x nk` matrix on functions on `[n] x [k]` (index `j·n + t`)
/// whose block `(j, i)` is `ω^{i-j} B / k` with `ω = e^{2πi/k}`.
pub fn lift_matrix(b: &CMatrix, k: usize) -> Result<CMatrix> {
    let n = b.square_dim("lifted matrix")?;
    if k == 0 {
        return Err(Error::InvalidArgument("lift order must be positive".into()));
    }
    let kf = k as f64;
    Ok(CMatrix::from_fn(n * k, n * k, |r, c| {
        let (j, t) = (r / n, r % n);
        let (i, s) = (c / n, c % n);
        C64::from_polar(1.0 / kf, TAU * (i as f64 - j as f64) / kf) * b[(t, s)]
    }))
}

/// `max_{x ∈ [0,1]^k} |(1/k) Σ_j ω^j x_j|` with `ω = e^{2πi/k}`. The
/// objective is convex, so the maximum sits at a 0/1 vertex, and the best
/// vertex selects the roots lying in a half-plane.
pub fn pibound_max(k: usize) -> Result<f64> {
    if k == 0 {
        return Err(Error::InvalidArgument("k must be positive".into()));
    }
    let roots: Vec<C64> = (0..k).map(|j| C64::from_polar(1.0, TAU * j as f64 / k as f64)).collect();
    Ok(best_subset(&roots).0 / k as f64)
}
