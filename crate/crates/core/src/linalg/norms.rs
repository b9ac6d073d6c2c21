//! Normalized inner products and norms.
//!
//! Every quantity here averages instead of summing: `<X,Y> = Tr(X* Y) / n`,
//! `||x||_p = (mean |x_i|^p)^(1/p)` and `||X||_{S_p} = (Tr|X|^p / n)^(1/p)`.
//! Under these conventions `||Id||_{S_p} = 1` for every `p`.

use num_complex::Complex64 as C64;

use super::{decomp, CMatrix, CVector};
use crate::error::{Error, Result};

fn check_exponent(p: f64) -> Result<()> {
    if p.is_nan() || p < 1.0 {
        Err(Error::InvalidExponent(p))
    } else {
        Ok(())
    }
}

/// Hölder conjugate `p'` with `1/p + 1/p' = 1`.
pub fn dual_exponent(p: f64) -> Result<f64> {
    check_exponent(p)?;
    Ok(if p == 1.0 {
        f64::INFINITY
    } else if p.is_infinite() {
        1.0
    } else {
        p / (p - 1.0)
    })
}

/// `(1/n) Tr(X* Y)`; conjugate-linear in `x`.
pub fn inner_normalized(x: &CMatrix, y: &CMatrix) -> Result<C64> {
    let n = x.square_dim("inner product argument")?;
    if y.rows() != n || y.cols() != n {
        return Err(Error::DimensionMismatch(format!(
            "inner product of {n}x{n} with {}x{}",
            y.rows(),
            y.cols()
        )));
    }
    Ok(raw_inner(x.as_slice(), y.as_slice()) / n as f64)
}

/// `sum conj(a_i) b_i`, no normalization.
pub(crate) fn raw_inner(a: &[C64], b: &[C64]) -> C64 {
    a.iter().zip(b).map(|(u, v)| u.conj() * v).sum()
}

/// `mean conj(y_i) x_i`.
pub fn inner_vec(y: &CVector, x: &CVector) -> Result<C64> {
    if y.dim() != x.dim() {
        return Err(Error::DimensionMismatch(format!(
            "inner product of vectors of length {} and {}",
            y.dim(),
            x.dim()
        )));
    }
    Ok(raw_inner(y.as_slice(), x.as_slice()) / x.dim() as f64)
}

/// Normalized power mean of `|values|`.
pub(crate) fn power_mean(values: impl Iterator<Item = f64>, count: usize, p: f64) -> f64 {
    if p.is_infinite() {
        values.fold(0.0, f64::max)
    } else if p == 1.0 {
        values.sum::<f64>() / count as f64
    } else if p == 2.0 {
        (values.map(|v| v * v).sum::<f64>() / count as f64).sqrt()
    } else {
        (values.map(|v| v.powf(p)).sum::<f64>() / count as f64).powf(1.0 / p)
    }
}

pub fn lp_norm(x: &CVector, p: f64) -> Result<f64> {
    check_exponent(p)?;
    Ok(power_mean(x.as_slice().iter().map(|z| z.norm()), x.dim(), p))
}

pub fn schatten_norm(x: &CMatrix, p: f64) -> Result<f64> {
    check_exponent(p)?;
    let n = x.square_dim("Schatten norm argument")?;
    let sigma = decomp::singular_values(x)?;
    Ok(power_mean(sigma.into_iter(), n, p))
}
