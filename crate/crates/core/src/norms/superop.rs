//! Norms of superoperators.
//!
//! `S_2→S_2` is exact (largest singular value of the representation). The
//! `S_∞→S_1`, cut and `S_1→S_∞` norms are maxima of a bilinear form over
//! convex sets whose extreme points are unitaries, projectors and rank-one
//! matrices respectively; each is estimated by alternating exact
//! maximization over one argument at a time, from seeded restarts.

use std::f64::consts::TAU;

use super::estimate::{best_of, run_sweeps, AscentOptions, NormEstimate, RestartOutcome, Witness};
use crate::channels::Superoperator;
use crate::error::Result;
use crate::linalg::{self, haar_unitary, real, CMatrix, Rng, C64};

/// Eigenvalues within this distance of zero are left out of rounded projectors.
pub const PROJECTOR_EIGEN_CUTOFF: f64 = 1e-12;

const PHASE_GRID: usize = 64;
const GOLDEN_ITERS: usize = 48;

/// `|<Y, Φ(X)>|`.
pub fn pairing(phi: &Superoperator, x: &CMatrix, y: &CMatrix) -> Result<f64> {
    let image = phi.apply(x)?;
    Ok(linalg::inner_normalized(y, &image)?.norm())
}

fn reshape(coords: &[C64], n: usize) -> CMatrix {
    let s = (n as f64).sqrt();
    CMatrix::from_fn(n, n, |i, j| coords[i * n + j] * s)
}

/// Exact `||Φ||_{S_2→S_2}`; the witness pair has unit normalized
/// Frobenius norm.
pub fn s2s2_norm(phi: &Superoperator) -> Result<NormEstimate> {
    let n = phi.n();
    let svd = linalg::svd(phi.rep())?;
    let x = reshape(&svd.v.column(0), n);
    let y = reshape(&svd.u.column(0), n);
    Ok(NormEstimate::exact(svd.sigma[0], Some(Witness::Matrices { x, y })))
}

/// Expansion parameter `λ(Φ) = ||Φ - Π||_{S_2→S_2}`.
pub fn lambda(phi: &Superoperator) -> Result<NormEstimate> {
    s2s2_norm(&phi.minus_pi())
}

/// `||Φ||_{S_∞→S_1}` by alternating polar steps from Haar-random unitaries.
pub fn sinfty_s1_norm(phi: &Superoperator, opts: &AscentOptions) -> Result<NormEstimate> {
    sinfty_s1_norm_from(phi, opts, &[])
}

/// As [`sinfty_s1_norm`], with extra starting points `X` (any matrices in
/// the `S_∞` unit ball) tried after the random restarts.
pub fn sinfty_s1_norm_from(
    phi: &Superoperator,
    opts: &AscentOptions,
    starts: &[CMatrix],
) -> Result<NormEstimate> {
    opts.validate()?;
    let n = phi.n();
    let mut outcomes = Vec::with_capacity(opts.restarts + starts.len());
    for r in 0..opts.restarts {
        let x0 = haar_unitary(n, &mut opts.restart_rng(r))?;
        outcomes.push(polar_ascent(phi, x0, opts)?);
    }
    for x0 in starts {
        x0.square_dim("starting point")?;
        outcomes.push(polar_ascent(phi, x0.clone(), opts)?);
    }
    Ok(best_of(outcomes, |(x, y)| Witness::Matrices { x, y }))
}

fn polar_ascent(
    phi: &Superoperator,
    x0: CMatrix,
    opts: &AscentOptions,
) -> Result<RestartOutcome<(CMatrix, CMatrix)>> {
    let mut x = x0;
    let mut y = linalg::polar_unitary(&phi.apply(&x)?)?;
    let initial = linalg::inner_normalized(&y, &phi.apply_unchecked(&x))?.norm();
    let mut failure = None;
    let (_, converged, max_drop) = run_sweeps(opts, initial, || {
        // Y ← argmax over unitaries of |<Y, Φ(X)>|, then X ← argmax of |<Φ*(Y), X>|.
        let step = (|| -> Result<f64> {
            y = linalg::polar_unitary(&phi.apply_unchecked(&x))?;
            x = linalg::polar_unitary(&phi.apply_adjoint_unchecked(&y))?;
            Ok(linalg::inner_normalized(&y, &phi.apply_unchecked(&x))?.norm())
        })();
        step.unwrap_or_else(|e| {
            failure = Some(e);
            f64::NAN
        })
    });
    if let Some(e) = failure {
        return Err(e);
    }
    // Re-evaluate on the final witness so value and witness agree exactly.
    let value = linalg::inner_normalized(&y, &phi.apply_unchecked(&x))?.norm();
    Ok(RestartOutcome {
        value,
        witness: (x, y),
        converged,
        max_drop,
    })
}

/// Best projector `P` for `max |Tr(P M)|`, found by optimizing the phase `θ`
/// of `Re(e^{-iθ} Tr(P M))`: for fixed `θ` the optimum is the projector onto
/// the positive eigenspace of the Hermitian part of `e^{-iθ} M`.
///
/// `hint` is an extra phase to try (the phase of the current pairing), which
/// makes the step monotone.
pub(crate) fn best_projector(m: &CMatrix, hint: Option<f64>) -> Result<CMatrix> {
    // Herm(e^{-iθ} M) = cos θ · H1 + sin θ · H2.
    let h1 = m.hermitian_part();
    let h2 = m.scale(C64::new(0.0, -1.0)).hermitian_part();
    let rotated = |theta: f64| -> CMatrix {
        let (s, c) = theta.sin_cos();
        let mut out = h1.scale_real(c);
        for (o, b) in out.as_mut_slice().iter_mut().zip(h2.as_slice()) {
            *o += b * s;
        }
        out.hermitian_part()
    };
    let positive_mass = |theta: f64| -> Result<f64> {
        Ok(linalg::hermitian_eigenvalues(&rotated(theta))?
            .into_iter()
            .filter(|&l| l > PROJECTOR_EIGEN_CUTOFF)
            .sum())
    };

    let mut best_theta = 0.0;
    let mut best_val = f64::NEG_INFINITY;
    for k in 0..PHASE_GRID {
        let theta = TAU * k as f64 / PHASE_GRID as f64;
        let v = positive_mass(theta)?;
        if v > best_val {
            best_val = v;
            best_theta = theta;
        }
    }
    // Golden-section refinement inside the neighbouring grid cells.
    let step = TAU / PHASE_GRID as f64;
    let (mut lo, mut hi) = (best_theta - step, best_theta + step);
    let ratio = (5f64.sqrt() - 1.0) / 2.0;
    let mut a = hi - ratio * (hi - lo);
    let mut b = lo + ratio * (hi - lo);
    let mut fa = positive_mass(a)?;
    let mut fb = positive_mass(b)?;
    for _ in 0..GOLDEN_ITERS {
        if fa >= fb {
            hi = b;
            b = a;
            fb = fa;
            a = hi - ratio * (hi - lo);
            fa = positive_mass(a)?;
        } else {
            lo = a;
            a = b;
            fa = fb;
            b = lo + ratio * (hi - lo);
            fb = positive_mass(b)?;
        }
    }
    for (theta, v) in [(a, fa), (b, fb)] {
        if v > best_val {
            best_val = v;
            best_theta = theta;
        }
    }
    if let Some(h) = hint {
        let v = positive_mass(h)?;
        if v > best_val {
            best_theta = h;
        }
    }

    projector_at(m, best_theta)
}

/// Projector onto the positive eigenspace of `Herm(e^{-iθ} M)`, the best
/// projector for the fixed phase `θ`.
fn projector_at(m: &CMatrix, theta: f64) -> Result<CMatrix> {
    let n = m.rows();
    let eig = linalg::hermitian_eig(&m.scale(C64::from_polar(1.0, -theta)).hermitian_part())?;
    let mut p = CMatrix::zeros(n, n);
    for (k, &l) in eig.values.iter().enumerate() {
        if l > PROJECTOR_EIGEN_CUTOFF {
            let v = eig.vectors.column(k);
            for i in 0..n {
                for j in 0..n {
                    p[(i, j)] += v[i] * v[j].conj();
                }
            }
        }
    }
    Ok(p)
}

fn random_projector(n: usize, rng: &mut Rng) -> Result<CMatrix> {
    let u = haar_unitary(n, rng)?;
    let mut bits: Vec<bool> = (0..n).map(|_| rng.uniform() < 0.5).collect();
    if !bits.iter().any(|&b| b) {
        bits[rng.below(n)] = true;
    }
    let d: Vec<C64> = bits.iter().map(|&b| real(if b { 1.0 } else { 0.0 })).collect();
    Ok(CMatrix::from_diag(&d).conjugate_by(&u))
}

/// `||Φ||_cut`, the supremum of `|<Y, Φ(X)>|` over projector pairs.
pub fn cut_norm_superop(phi: &Superoperator, opts: &AscentOptions) -> Result<NormEstimate> {
    opts.validate()?;
    let n = phi.n();
    let mut outcomes = Vec::with_capacity(opts.restarts);
    for r in 0..opts.restarts {
        let x0 = random_projector(n, &mut opts.restart_rng(r))?;
        outcomes.push(projector_ascent(phi, x0, opts)?);
    }
    Ok(best_of(outcomes, |(x, y)| Witness::Matrices { x, y }))
}

fn projector_ascent(
    phi: &Superoperator,
    x0: CMatrix,
    opts: &AscentOptions,
) -> Result<RestartOutcome<(CMatrix, CMatrix)>> {
    let mut x = x0;
    let mut y = best_projector(&phi.apply_unchecked(&x), None)?;
    let initial = linalg::inner_normalized(&y, &phi.apply_unchecked(&x))?.norm();
    let mut failure = None;
    let (_, converged, max_drop) = run_sweeps(opts, initial, || {
        // Cheap sweeps keep the phase at the argument of the current pairing
        // (one eigendecomposition per side); when they stall, one sweep with
        // a full phase search either escapes or confirms the stall.
        let sweep = |x: &mut CMatrix, y: &mut CMatrix, full: bool| -> Result<f64> {
            // <Y, Φ(X)> = Tr(Y Φ(X)) / n for Hermitian Y.
            let image = phi.apply_unchecked(x);
            let current = linalg::inner_normalized(y, &image)?.arg();
            *y = if full { best_projector(&image, Some(current))? } else { projector_at(&image, current)? };
            // <Y, Φ(X)> = <Φ*(Y), X> = Tr(X W*) / n with W = Φ*(Y).
            let w_adj = phi.apply_adjoint_unchecked(y).adjoint();
            let current = linalg::inner_normalized(y, &phi.apply_unchecked(x))?.arg();
            *x = if full { best_projector(&w_adj, Some(current))? } else { projector_at(&w_adj, current)? };
            Ok(linalg::inner_normalized(y, &phi.apply_unchecked(x))?.norm())
        };
        let step = (|| -> Result<f64> {
            let before = linalg::inner_normalized(&y, &phi.apply_unchecked(&x))?.norm();
            let cheap = sweep(&mut x, &mut y, false)?;
            if cheap - before > opts.rel_tol * cheap.abs() {
                return Ok(cheap);
            }
            sweep(&mut x, &mut y, true)
        })();
        step.unwrap_or_else(|e| {
            failure = Some(e);
            f64::NAN
        })
    });
    if let Some(e) = failure {
        return Err(e);
    }
    let value = linalg::inner_normalized(&y, &phi.apply_unchecked(&x))?.norm();
    Ok(RestartOutcome {
        value,
        witness: (x, y),
        converged,
        max_drop,
    })
}

/// Uniformity `ε(Φ) = ||Φ - Π||_cut`.
pub fn epsilon(phi: &Superoperator, opts: &AscentOptions) -> Result<NormEstimate> {
    cut_norm_superop(&phi.minus_pi(), opts)
}

/// `||Φ||_{S_1→S_∞}`, maximized over rank-one arguments `X = n·u v*`,
/// `Y = n·w z*` with unit `u, v, w, z`, where the pairing equals
/// `n · w* Φ(u v*) z`. Each half-sweep takes a top singular pair, which is
/// the exact joint optimum over two of the four vectors.
pub fn s1_sinfty_norm(phi: &Superoperator, opts: &AscentOptions) -> Result<NormEstimate> {
    opts.validate()?;
    let n = phi.n();
    let nf = n as f64;
    let mut outcomes = Vec::with_capacity(opts.restarts);
    for r in 0..opts.restarts {
        let mut rng = opts.restart_rng(r);
        let mut u = random_unit(n, &mut rng);
        let mut v = random_unit(n, &mut rng);
        let mut w = random_unit(n, &mut rng);
        let mut z = random_unit(n, &mut rng);
        let objective = |u: &[C64], v: &[C64], w: &[C64], z: &[C64]| -> f64 {
            let m = phi.apply_unchecked(&outer(u, v));
            nf * linalg::raw_inner(w, &m.mul_vec(z)).norm()
        };
        let initial = objective(&u, &v, &w, &z);
        let mut failure = None;
        let (_, converged, max_drop) = run_sweeps(opts, initial, || {
            let step = (|| -> Result<f64> {
                let m = phi.apply_unchecked(&outer(&u, &v));
                let svd = linalg::svd(&m)?;
                w = svd.u.column(0);
                z = svd.v.column(0);
                // w* Φ(u v*) z = Tr(G* u v*)-type pairing with G = Φ*(w z*):
                // the optimum over (u, v) is the top singular pair of G.
                let g = phi.apply_adjoint_unchecked(&outer(&w, &z));
                let svd = linalg::svd(&g)?;
                u = svd.u.column(0);
                v = svd.v.column(0);
                Ok(objective(&u, &v, &w, &z))
            })();
            step.unwrap_or_else(|e| {
                failure = Some(e);
                f64::NAN
            })
        });
        if let Some(e) = failure {
            return Err(e);
        }
        let x = outer(&u, &v).scale_real(nf);
        let y = outer(&w, &z).scale_real(nf);
        let value = linalg::inner_normalized(&y, &phi.apply_unchecked(&x))?.norm();
        outcomes.push(RestartOutcome {
            value,
            witness: (x, y),
            converged,
            max_drop,
        });
    }
    Ok(best_of(outcomes, |(x, y)| Witness::Matrices { x, y }))
}

fn outer(a: &[C64], b: &[C64]) -> CMatrix {
    CMatrix::from_fn(a.len(), b.len(), |i, j| a[i] * b[j].conj())
}

fn random_unit(n: usize, rng: &mut Rng) -> Vec<C64> {
    let v: Vec<C64> = (0..n).map(|_| rng.complex_normal()).collect();
    let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    v.into_iter().map(|z| z / norm).collect()
}


#[cfg(test)]
mod tests {
    use super::*;
    use crate::channels::{embed_graph, pi_projector, random_unitary_channel};

    fn cycle_normalized(n: usize) -> CMatrix {
        CMatrix::from_fn(n, n, |i, j| {
            if (i + 1) % n == j || (j + 1) % n == i {
                real(0.5)
            } else {
                real(0.0)
            }
        })
    }

    fn opts() -> AscentOptions {
        AscentOptions::with_seed(7).restarts(8)
    }

    #[test]
    fn s2s2_simple_maps() {
        assert!(s2s2_norm(&pi_projector(3).minus_pi()).unwrap().value < 1e-12);
        assert!((s2s2_norm(&Superoperator::identity(3)).unwrap().value - 1.0).abs() < 1e-12);
        assert!((lambda(&Superoperator::identity(3)).unwrap().value - 1.0).abs() < 1e-12);
        assert!(lambda(&pi_projector(4)).unwrap().value < 1e-12);
    }

    #[test]
    fn five_cycle_lambda() {
        // Circulant eigenvalues of the normalized cycle are cos(2πk/5); J/5
        // removes k = 0.
        let oracle = (1..5).map(|k| (TAU * k as f64 / 5.0).cos().abs()).fold(0.0, f64::max);
        let phi = embed_graph(&cycle_normalized(5)).unwrap();
        let est = lambda(&phi).unwrap();
        assert!(est.is_exact());
        assert!((est.value - oracle).abs() < 1e-12);
        assert!((oracle - (std::f64::consts::PI / 5.0).cos()).abs() < 1e-12);
        let w = est.witness.as_ref().unwrap();
        assert!((w.evaluate_superop(&phi.minus_pi()).unwrap() - est.value).abs() < 1e-9);
    }

    #[test]
    fn sinfty_s1_identity_and_zero() {
        let est = sinfty_s1_norm(&Superoperator::identity(3), &opts()).unwrap();
        assert!((est.value - 1.0).abs() < 1e-9);
        assert!(est.max_sweep_drop <= 1e-12);
        assert!(sinfty_s1_norm(&Superoperator::zero(3), &opts()).unwrap().value < 1e-12);
    }

    #[test]
    fn cut_of_embedded_cycle_matches_subset_enumeration() {
        let a = cycle_normalized(5);
        let centered = CMatrix::from_fn(5, 5, |i, j| a[(i, j)] - real(0.2));
        let mut oracle = 0.0f64;
        for xs in 0u32..32 {
            for ys in 0u32..32 {
                let mut s = C64::new(0.0, 0.0);
                for i in 0..5 {
                    for j in 0..5 {
                        if ys >> i & 1 == 1 && xs >> j & 1 == 1 {
                            s += centered[(i, j)];
                        }
                    }
                }
                oracle = oracle.max(s.norm() / 5.0);
            }
        }
        let phi = embed_graph(&a).unwrap();
        let est = epsilon(&phi, &AscentOptions::with_seed(1).restarts(32)).unwrap();
        assert!((est.value - oracle).abs() < 1e-8, "{} vs {oracle}", est.value);
        assert!(est.max_sweep_drop <= 1e-12);
        let w = est.witness.as_ref().unwrap();
        assert!((w.evaluate_superop(&phi.minus_pi()).unwrap() - est.value).abs() < 1e-9);
    }

    #[test]
    fn epsilon_of_pi_is_zero() {
        assert!(epsilon(&pi_projector(3), &opts()).unwrap().value < 1e-12);
    }

    #[test]
    fn mixing_and_sandwich_on_random_channel() {
        let phi = random_unitary_channel(4, 2, &mut Rng::new(3)).unwrap();
        let eps = epsilon(&phi, &opts()).unwrap();
        let lam = lambda(&phi).unwrap();
        assert!(eps.value <= lam.value + 1e-9);
        let cut = cut_norm_superop(&phi, &opts()).unwrap();
        let Some(Witness::Matrices { x, .. }) = cut.witness.clone() else { panic!() };
        let s = sinfty_s1_norm_from(&phi, &opts(), &[x]).unwrap();
        assert!(cut.value <= s.value + 1e-8);
    }

    #[test]
    fn s1_sinfty_values() {
        assert!(s1_sinfty_norm(&Superoperator::zero(3), &opts()).unwrap().value < 1e-12);
        let pi = s1_sinfty_norm(&pi_projector(3), &opts()).unwrap();
        assert!((pi.value - 1.0).abs() < 1e-9, "{}", pi.value);
        let a = cycle_normalized(5);
        let oracle = 5.0 * a.as_slice().iter().map(|z| (z - real(0.2)).norm()).fold(0.0, f64::max);
        let phi = embed_graph(&a).unwrap().minus_pi();
        let est = s1_sinfty_norm(&phi, &opts()).unwrap();
        assert!((est.value - oracle).abs() < 1e-8, "{} vs {oracle}", est.value);
        let w = est.witness.as_ref().unwrap();
        assert!((w.evaluate_superop(&phi).unwrap() - est.value).abs() < 1e-9);
    }

    #[test]
    fn best_projector_is_optimal_on_diagonal() {
        // For diagonal M with real entries the best projector picks the positive
        // or the negative entries.
        let m = CMatrix::from_diag(&[real(3.0), real(-1.0), real(-4.0), real(0.5)]);
        let p = best_projector(&m, None).unwrap();
        let tr = p.matmul(&m).trace().norm();
        assert!((tr - 5.0).abs() < 1e-9, "{tr}");
    }
}
