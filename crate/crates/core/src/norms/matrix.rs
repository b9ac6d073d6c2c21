//! Norms of square matrices on `C^n` with normalized `ℓ_p` norms and the
//! pairing `<y, A x> = (1/n) Σ conj(y_i) (A x)_i`.

use serde::{Deserialize, Serialize};

use super::estimate::{best_of, run_sweeps, AscentOptions, NormEstimate, RestartOutcome, Witness};
use crate::error::{Error, Result};
use crate::linalg::{self, real, CMatrix, CVector, Rng, C64};

/// Largest dimension accepted by [`CutMode::Brute`].
pub const BRUTE_CUT_MAX_N: usize = 20;
/// Largest dimension accepted by [`linf_l1_phase_grid`].
pub const PHASE_GRID_MAX_N: usize = 8;

const PHASE_ZERO_TOL: f64 = 1e-300;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CutMode {
    /// Exhaustive over all `x ∈ {0,1}^n`; exact.
    Brute,
    /// Alternating exact subset steps from random starts; lower bound.
    Ascent,
}

/// `|<y, A x>|` with the normalized pairing.
pub fn matrix_pairing(a: &CMatrix, x: &[C64], y: &[C64]) -> Result<f64> {
    let n = a.square_dim("matrix")?;
    if x.len() != n || y.len() != n {
        return Err(Error::DimensionMismatch(format!(
            "pairing vectors of length {} and {} with a {n}x{n} matrix",
            x.len(),
            y.len()
        )));
    }
    Ok(linalg::raw_inner(y, &a.mul_vec(x)).norm() / n as f64)
}

fn unit_phase(z: C64) -> C64 {
    if z.norm() > PHASE_ZERO_TOL {
        z / z.norm()
    } else {
        real(1.0)
    }
}

fn vectors(x: Vec<C64>, y: Vec<C64>) -> Witness {
    Witness::Vectors {
        x: CVector::from_entries(x),
        y: CVector::from_entries(y),
    }
}

/// `||A||_{ℓ_p→ℓ_q}` for the supported pairs `(2,2)`, `(1,∞)` (both exact)
/// and `(∞,1)` (phase ascent, lower bound).
pub fn matrix_lpq_norm(a: &CMatrix, p: f64, q: f64, opts: &AscentOptions) -> Result<NormEstimate> {
    let n = a.square_dim("matrix")?;
    linalg::dual_exponent(p)?;
    linalg::dual_exponent(q)?;
    let nf = n as f64;
    if p == 2.0 && q == 2.0 {
        let svd = linalg::svd(a)?;
        let s = nf.sqrt();
        let x: Vec<C64> = svd.v.column(0).into_iter().map(|z| z * s).collect();
        let y: Vec<C64> = svd.u.column(0).into_iter().map(|z| z * s).collect();
        return Ok(NormEstimate::exact(svd.sigma[0], Some(vectors(x, y))));
    }
    if p == 1.0 && q.is_infinite() {
        let (mut bi, mut bj, mut best) = (0, 0, -1.0);
        for i in 0..n {
            for j in 0..n {
                let v = a[(i, j)].norm();
                if v > best {
                    (bi, bj, best) = (i, j, v);
                }
            }
        }
        let mut x = vec![real(0.0); n];
        let mut y = vec![real(0.0); n];
        x[bj] = real(nf);
        y[bi] = unit_phase(a[(bi, bj)]) * nf;
        return Ok(NormEstimate::exact(nf * best, Some(vectors(x, y))));
    }
    if p.is_infinite() && q == 1.0 {
        return linf_l1_ascent(a, opts);
    }
    Err(Error::UnsupportedNormPair { p, q })
}

fn phases_of(v: &[C64]) -> Vec<C64> {
    v.iter().map(|&z| unit_phase(z)).collect()
}

fn linf_l1_ascent(a: &CMatrix, opts: &AscentOptions) -> Result<NormEstimate> {
    opts.validate()?;
    let n = a.rows();
    let nf = n as f64;
    let l1 = |x: &[C64]| a.mul_vec(x).iter().map(|z| z.norm()).sum::<f64>() / nf;
    let mut outcomes = Vec::with_capacity(opts.restarts);
    for r in 0..opts.restarts {
        let mut rng = opts.restart_rng(r);
        let mut x: Vec<C64> = (0..n).map(|_| rng.phase()).collect();
        let initial = l1(&x);
        let (_, converged, max_drop) = run_sweeps(opts, initial, || {
            let y = phases_of(&a.mul_vec(&x));
            x = phases_of(&a.adjoint_mul_vec(&y));
            l1(&x)
        });
        let y = phases_of(&a.mul_vec(&x));
        let value = matrix_pairing(a, &x, &y)?;
        outcomes.push(RestartOutcome {
            value,
            witness: (x, y),
            converged,
            max_drop,
        });
    }
    Ok(best_of(outcomes, |(x, y)| vectors(x, y)))
}

/// `(∞,1)` lower bound by enumerating `x` over `m`-th roots of unity with
/// `x_0 = 1` (the value is invariant under a global phase) and choosing `y`
/// optimally. Feasible for `n <= 8`.
pub fn linf_l1_phase_grid(a: &CMatrix, m: usize) -> Result<NormEstimate> {
    let n = a.square_dim("matrix")?;
    if n > PHASE_GRID_MAX_N {
        return Err(Error::TooLarge(format!(
            "phase-grid enumeration needs n <= {PHASE_GRID_MAX_N}, got {n}"
        )));
    }
    if m < 2 {
        return Err(Error::InvalidArgument(format!("phase grid needs m >= 2, got {m}")));
    }
    let total = (m as u64).checked_pow(n as u32 - 1).filter(|&t| t <= 1 << 28).ok_or_else(|| {
        Error::TooLarge(format!("{m}^{} phase vectors", n - 1))
    })?;
    let roots: Vec<C64> = (0..m)
        .map(|k| C64::from_polar(1.0, std::f64::consts::TAU * k as f64 / m as f64))
        .collect();
    let mut digits = vec![0usize; n];
    let mut best = (-1.0, vec![real(1.0); n]);
    for code in 0..total {
        let mut c = code;
        for d in digits.iter_mut().skip(1) {
            *d = (c % m as u64) as usize;
            c /= m as u64;
        }
        let x: Vec<C64> = digits.iter().map(|&d| roots[d]).collect();
        let value = a.mul_vec(&x).iter().map(|z| z.norm()).sum::<f64>() / n as f64;
        if value > best.0 {
            best = (value, x);
        }
    }
    let x = best.1;
    let y = phases_of(&a.mul_vec(&x));
    let value = matrix_pairing(a, &x, &y)?;
    Ok(NormEstimate {
        value,
        kind: super::EstimateKind::LowerBound,
        witness: Some(vectors(x, y)),
        restarts_used: 0,
        converged: true,
        max_sweep_drop: 0.0,
    })
}

/// Exact `max_{S} |Σ_{i∈S} z_i|` over subsets. An optimal subset is the set
/// of entries in an open half-plane, and after sorting by angle every such
/// set is a contiguous cyclic block, so all blocks are scanned.
pub fn best_subset(z: &[C64]) -> (f64, Vec<bool>) {
    let mut idx: Vec<usize> = (0..z.len()).filter(|&i| z[i].norm() > 0.0).collect();
    idx.sort_by(|&i, &j| z[i].arg().total_cmp(&z[j].arg()).then(i.cmp(&j)));
    let k = idx.len();
    let mut best = (0.0, 0usize, 0usize);
    for start in 0..k {
        let mut sum = C64::new(0.0, 0.0);
        for len in 1..=k {
            sum += z[idx[(start + len - 1) % k]];
            let v = sum.norm();
            if v > best.0 {
                best = (v, start, len);
            }
        }
    }
    let mut chosen = vec![false; z.len()];
    for t in 0..best.2 {
        chosen[idx[(best.1 + t) % k]] = true;
    }
    (best.0, chosen)
}

fn indicator(bits: &[bool]) -> Vec<C64> {
    bits.iter().map(|&b| real(if b { 1.0 } else { 0.0 })).collect()
}

/// `||A||_cut = max |<y, A x>|` over `x, y ∈ {0,1}^n`.
pub fn matrix_cut_norm(a: &CMatrix, mode: CutMode, opts: &AscentOptions) -> Result<NormEstimate> {
    let n = a.square_dim("matrix")?;
    match mode {
        CutMode::Brute => cut_brute(a, n),
        CutMode::Ascent => cut_ascent(a, n, opts),
    }
}

fn cut_brute(a: &CMatrix, n: usize) -> Result<NormEstimate> {
    if n > BRUTE_CUT_MAX_N {
        return Err(Error::TooLarge(format!(
            "brute-force cut norm needs n <= {BRUTE_CUT_MAX_N}, got {n}"
        )));
    }
    let columns: Vec<Vec<C64>> = (0..n).map(|j| a.column(j)).collect();
    let mut x = vec![false; n];
    let mut z = vec![C64::new(0.0, 0.0); n];
    let (mut best, mut best_x, mut best_y) = (0.0, x.clone(), vec![false; n]);
    // Gray code: step g flips bit trailing_zeros(g).
    for g in 1u64..(1u64 << n) {
        let j = g.trailing_zeros() as usize;
        x[j] = !x[j];
        let sign = if x[j] { 1.0 } else { -1.0 };
        for (zi, c) in z.iter_mut().zip(&columns[j]) {
            *zi += c * sign;
        }
        let (v, y) = best_subset(&z);
        if v > best {
            best = v;
            best_x.clone_from(&x);
            best_y = y;
        }
    }
    let (x, y) = (indicator(&best_x), indicator(&best_y));
    // Report the value recomputed from the witness, not the running sum.
    let value = matrix_pairing(a, &x, &y)?;
    Ok(NormEstimate::exact(value, Some(vectors(x, y))))
}

fn cut_ascent(a: &CMatrix, n: usize, opts: &AscentOptions) -> Result<NormEstimate> {
    opts.validate()?;
    let at = a.transpose();
    let mut outcomes = Vec::with_capacity(opts.restarts);
    for r in 0..opts.restarts {
        let mut rng: Rng = opts.restart_rng(r);
        let mut x: Vec<bool> = (0..n).map(|_| rng.uniform() < 0.5).collect();
        if !x.iter().any(|&b| b) {
            x[rng.below(n)] = true;
        }
        let mut y = best_subset(&a.mul_vec(&indicator(&x))).1;
        let initial = matrix_pairing(a, &indicator(&x), &indicator(&y))?;
        let (_, converged, max_drop) = run_sweeps(opts, initial, || {
            y = best_subset(&a.mul_vec(&indicator(&x))).1;
            // y^T A x = x^T (A^T y)
            let (v, new_x) = best_subset(&at.mul_vec(&indicator(&y)));
            x = new_x;
            v / n as f64
        });
        let (xv, yv) = (indicator(&x), indicator(&y));
        let value = matrix_pairing(a, &xv, &yv)?;
        outcomes.push(RestartOutcome {
            value,
            witness: (xv, yv),
            converged,
            max_drop,
        });
    }
    Ok(best_of(outcomes, |(x, y)| vectors(x, y)))
}

fn normalize(v: &mut [C64]) -> bool {
    let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    if norm > PHASE_ZERO_TOL {
        v.iter_mut().for_each(|z| *z /= norm);
        true
    } else {
        false
    }
}

/// Value `|(1/n) Σ_ij A_ij <x_i, y_j>|` of unit-vector families.
pub fn grothendieck_value(a: &CMatrix, x: &[CVector], y: &[CVector]) -> Result<f64> {
    let n = a.square_dim("matrix")?;
    if x.len() != n || y.len() != n {
        return Err(Error::DimensionMismatch(format!(
            "{} and {} vectors for a {n}x{n} matrix",
            x.len(),
            y.len()
        )));
    }
    let mut total = C64::new(0.0, 0.0);
    for i in 0..n {
        for j in 0..n {
            if x[i].dim() != y[j].dim() {
                return Err(Error::DimensionMismatch("vector families of different dimension".into()));
            }
            total += a[(i, j)] * linalg::raw_inner(x[i].as_slice(), y[j].as_slice());
        }
    }
    Ok(total.norm() / n as f64)
}

/// Lower bound on the Grothendieck norm with vectors in `C^d`, by block
/// coordinate ascent. `<u, v>` is conjugate-linear in `u`, so the best
/// `x_i` for fixed `y` is the direction of `Σ_j A_ij y_j` and the best `y_j`
/// for fixed `x` is the direction of `Σ_i conj(A_ij) x_i`.
pub fn grothendieck_norm_lower(a: &CMatrix, d: usize, opts: &AscentOptions) -> Result<NormEstimate> {
    let n = a.square_dim("matrix")?;
    if d == 0 {
        return Err(Error::InvalidArgument("vector dimension must be at least 1".into()));
    }
    opts.validate()?;
    let nf = n as f64;
    let objective = |x: &[Vec<C64>], y: &[Vec<C64>]| -> C64 {
        let mut total = C64::new(0.0, 0.0);
        for i in 0..n {
            for j in 0..n {
                total += a[(i, j)] * linalg::raw_inner(&x[i], &y[j]);
            }
        }
        total / nf
    };
    let random_family = |rng: &mut Rng| -> Vec<Vec<C64>> {
        (0..n)
            .map(|_| loop {
                let mut v: Vec<C64> = (0..d).map(|_| rng.complex_normal()).collect();
                if normalize(&mut v) {
                    break v;
                }
            })
            .collect()
    };
    let mut outcomes = Vec::with_capacity(opts.restarts);
    for r in 0..opts.restarts {
        let mut rng = opts.restart_rng(r);
        let mut x = random_family(&mut rng);
        let mut y = random_family(&mut rng);
        let initial = objective(&x, &y).norm();
        let (_, converged, max_drop) = run_sweeps(opts, initial, || {
            // Rotate y so the current sum is real and nonnegative; the
            // coordinate steps then increase its real part.
            let phase = unit_phase(objective(&x, &y)).conj();
            y.iter_mut().flatten().for_each(|z| *z *= phase);
            for i in 0..n {
                let mut w = vec![C64::new(0.0, 0.0); d];
                for j in 0..n {
                    for (wk, yk) in w.iter_mut().zip(&y[j]) {
                        *wk += a[(i, j)] * yk;
                    }
                }
                if normalize(&mut w) {
                    x[i] = w;
                }
            }
            for j in 0..n {
                let mut w = vec![C64::new(0.0, 0.0); d];
                for i in 0..n {
                    for (wk, xk) in w.iter_mut().zip(&x[i]) {
                        *wk += a[(i, j)].conj() * xk;
                    }
                }
                if normalize(&mut w) {
                    y[j] = w;
                }
            }
            objective(&x, &y).norm()
        });
        let xs: Vec<CVector> = x.into_iter().map(CVector::from_entries).collect();
        let ys: Vec<CVector> = y.into_iter().map(CVector::from_entries).collect();
        let value = grothendieck_value(a, &xs, &ys)?;
        outcomes.push(RestartOutcome {
            value,
            witness: (xs, ys),
            converged,
            max_drop,
        });
    }
    Ok(best_of(outcomes, |(x, y)| Witness::VectorFamilies { x, y }))
}
