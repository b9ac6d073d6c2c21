use serde::{Deserialize, Serialize};

use super::group::{GeneratorPair, RepresentedGroup};
use crate::channels::{pi_projector, Superoperator};
use crate::error::{Error, Result};
use crate::linalg::{real, CMatrix, Rng, C64};

/// Result of averaging `U(g) X U(g)*` over a group.
#[derive(Clone, Debug, PartialEq)]
pub struct Twirl {
    pub matrix: CMatrix,
    /// Exact average over an enumerated finite group.
    pub exact: bool,
    /// Group elements (or samples) averaged over.
    pub elements: usize,
    /// Largest entrywise standard error of a Monte Carlo average; 0 when exact.
    pub std_error: f64,
    /// A finite group was too large to enumerate and was sampled instead.
    pub fell_back: bool,
}

/// Averages of matrices with a running entrywise variance.
struct Accumulator {
    sum: Vec<C64>,
    sum_sq: Vec<f64>,
    count: usize,
}

impl Accumulator {
    fn new(len: usize) -> Self {
        Accumulator {
            sum: vec![C64::new(0.0, 0.0); len],
            sum_sq: vec![0.0; len],
            count: 0,
        }
    }

    fn push(&mut self, m: &[C64]) {
        for ((s, q), z) in self.sum.iter_mut().zip(&mut self.sum_sq).zip(m) {
            *s += z;
            *q += z.norm_sqr();
        }
        self.count += 1;
    }

    fn mean(&self) -> Vec<C64> {
        let c = self.count as f64;
        self.sum.iter().map(|s| s / c).collect()
    }

    fn std_error(&self) -> f64 {
        let c = self.count as f64;
        if self.count < 2 {
            return f64::INFINITY;
        }
        self.sum
            .iter()
            .zip(&self.sum_sq)
            .map(|(s, q)| {
                let var = ((q / c) - (s / c).norm_sqr()).max(0.0) * c / (c - 1.0);
                (var / c).sqrt()
            })
            .fold(0.0, f64::max)
    }
}

enum Elements {
    Exact(Vec<GeneratorPair>),
    Sampled,
}

fn elements_or_sampling(group: &RepresentedGroup) -> Result<Elements> {
    if group.is_finite() {
        if let Some(all) = group.elements()? {
            return Ok(Elements::Exact(all));
        }
    }
    Ok(Elements::Sampled)
}

fn require_samples(samples: usize) -> Result<()> {
    if samples == 0 {
        return Err(Error::InvalidArgument("Monte Carlo averaging needs samples >= 1".into()));
    }
    Ok(())
}

/// `E_g U(g) X U(g)*`. Finite groups are averaged exactly when they can be
/// enumerated; continuous groups and oversized finite groups are averaged
/// over `samples` draws from the group's seed. The phase torus, when
/// present, is applied in closed form (it removes the off-diagonal part).
pub fn twirl(group: &RepresentedGroup, x: &CMatrix, samples: usize) -> Result<Twirl> {
    let n = group.dim_u();
    if x.rows() != n || x.cols() != n {
        return Err(Error::DimensionMismatch(format!(
            "twirl of a {}x{} matrix by a representation of dimension {n}",
            x.rows(),
            x.cols()
        )));
    }
    let x = if group.has_phase_torus() { x.dephased() } else { x.clone() };
    match elements_or_sampling(group)? {
        Elements::Exact(all) => {
            let mut acc = Accumulator::new(n * n);
            for g in &all {
                acc.push(x.conjugate_by(&g.u).as_slice());
            }
            Ok(Twirl {
                matrix: CMatrix::new(n, n, acc.mean())?,
                exact: true,
                elements: all.len(),
                std_error: 0.0,
                fell_back: false,
            })
        }
        Elements::Sampled => {
            require_samples(samples)?;
            let source = sampler(group)?;
            let mut rng = Rng::new(group.seed());
            let mut acc = Accumulator::new(n * n);
            for _ in 0..samples {
                let (u, _) = source.sample(&mut rng)?;
                acc.push(x.conjugate_by(&u).as_slice());
            }
            Ok(Twirl {
                matrix: CMatrix::new(n, n, acc.mean())?,
                exact: false,
                elements: samples,
                std_error: acc.std_error(),
                fell_back: group.is_finite(),
            })
        }
    }
}

/// The group to draw samples from: with a phase torus, random words over the
/// support patterns, since the torus itself is applied exactly.
fn sampler(group: &RepresentedGroup) -> Result<RepresentedGroup> {
    if !group.has_phase_torus() {
        return Ok(group.clone());
    }
    let patterns = group
        .generators()
        .iter()
        .map(|g| g.u.map(|z| if z.norm() > 0.5 { real(1.0) } else { real(0.0) }))
        .collect();
    Ok(RepresentedGroup::finite_symmetric(patterns, false)?.with_seed(group.seed()))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct IrreducibilityReport {
    pub irreducible: bool,
    /// `max_ij max_entry |twirl(E_ij) - δ_ij Id / n|`.
    pub residual: f64,
    pub tolerance: f64,
    pub exact: bool,
    pub std_error: f64,
    /// The Monte Carlo error is too large for the verdict to mean much.
    pub inconclusive: bool,
}

/// Tests whether only multiples of the identity commute with `U(G)`, by
/// comparing the twirl map `X ↦ E U X U*` with `Π` on every matrix unit.
pub fn is_irreducible(group: &RepresentedGroup, tol: f64, samples: usize) -> Result<IrreducibilityReport> {
    if !(tol > 0.0) {
        return Err(Error::InvalidArgument(format!("tolerance must be positive, got {tol}")));
    }
    let n = group.dim_u();
    let dim = n * n;
    let mut acc = Accumulator::new(dim * dim);
    let exact = match elements_or_sampling(group)? {
        Elements::Exact(all) => {
            for g in &all {
                acc.push(g.u.kron(&g.u.conj()).as_slice());
            }
            true
        }
        Elements::Sampled => {
            require_samples(samples)?;
            let source = sampler(group)?;
            let mut rng = Rng::new(group.seed());
            for _ in 0..samples {
                let (u, _) = source.sample(&mut rng)?;
                acc.push(u.kron(&u.conj()).as_slice());
            }
            false
        }
    };
    let mut average = CMatrix::new(dim, dim, acc.mean())?;
    if group.has_phase_torus() {
        // Compose with dephasing: keep only the columns of diagonal units.
        for r in 0..dim {
            for c in 0..dim {
                if c / n != c % n {
                    average[(r, c)] = real(0.0);
                }
            }
        }
    }
    let residual = average.max_abs_diff(pi_projector(n).rep());
    let std_error = if exact { 0.0 } else { acc.std_error() };
    Ok(IrreducibilityReport {
        irreducible: residual <= tol,
        residual,
        tolerance: tol,
        exact,
        std_error,
        inconclusive: !exact && 3.0 * std_error > tol,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CovarianceReport {
    /// `max_g max_X ||Φ(U X U*) - V Φ(X) V*||_{S_2}` over the orthonormal
    /// basis `X = sqrt(n) E_ij`.
    pub max_residual: f64,
    pub checked_elements: usize,
    pub verdict: bool,
    pub tolerance: f64,
    /// Only the generators (plus random torus elements, when present) were
    /// checked; the homomorphism property extends the identity to the group.
    pub generators_only: bool,
}

/// Random diagonal unitaries checked for groups with a phase torus.
pub const TORUS_SAMPLES: usize = 8;

/// Max column norm of `rep (U ⊗ conj U) - (V ⊗ conj V) rep`, computed
/// without forming the Kronecker products: row `r` of the first term, read as
/// an `n x n` matrix `R`, is `Uᵀ R conj(U)`, and column `c` of the second,
/// read as `C`, is `V C V*`.
fn covariance_residual(phi: &Superoperator, u: &CMatrix, v: &CMatrix) -> f64 {
    let n = phi.n();
    let dim = n * n;
    let rep = phi.rep();
    let u_t = u.transpose();
    let u_bar = u.conj();
    let v_adj = v.adjoint();
    let mut diff = CMatrix::zeros(dim, dim);
    for r in 0..dim {
        let row = CMatrix::new(n, n, rep.row(r).to_vec()).expect("row has n² entries");
        let moved = u_t.matmul(&row).matmul(&u_bar);
        diff.as_mut_slice()[r * dim..(r + 1) * dim].copy_from_slice(moved.as_slice());
    }
    for c in 0..dim {
        let col = CMatrix::new(n, n, rep.column(c)).expect("column has n² entries");
        let moved = v.matmul(&col).matmul(&v_adj);
        for (r, value) in moved.as_slice().iter().enumerate() {
            diff[(r, c)] -= *value;
        }
    }
    (0..dim)
        .map(|c| (0..dim).map(|r| diff[(r, c)].norm_sqr()).sum::<f64>().sqrt())
        .fold(0.0, f64::max)
}

/// Checks `Φ(U(g) X U(g)*) = V(g) Φ(X) V(g)*` on the generators of a finite
/// group or on `samples` random elements of a continuous one.
pub fn check_covariance(
    phi: &Superoperator,
    group: &RepresentedGroup,
    tol: f64,
    samples: usize,
) -> Result<CovarianceReport> {
    if group.dim_u() != phi.n() || group.dim_v() != phi.n() {
        return Err(Error::DimensionMismatch(format!(
            "representations of dimension ({}, {}) for a map on M_{}",
            group.dim_u(),
            group.dim_v(),
            phi.n()
        )));
    }
    let mut worst = 0.0f64;
    let mut checked = 0;
    if group.is_finite() {
        for g in group.generators() {
            worst = worst.max(covariance_residual(phi, &g.u, &g.v));
            checked += 1;
        }
        if group.has_phase_torus() {
            // The torus is continuous: check random diagonal unitaries too.
            let mut rng = Rng::new(group.seed());
            for _ in 0..TORUS_SAMPLES {
                let phases: Vec<C64> = (0..phi.n()).map(|_| rng.phase()).collect();
                let d = CMatrix::from_diag(&phases);
                worst = worst.max(covariance_residual(phi, &d, &d));
                checked += 1;
            }
        }
    } else {
        require_samples(samples)?;
        let mut rng = Rng::new(group.seed());
        for _ in 0..samples {
            let (u, v) = group.sample(&mut rng)?;
            worst = worst.max(covariance_residual(phi, &u, &v));
            checked += 1;
        }
    }
    Ok(CovarianceReport {
        max_residual: worst,
        checked_elements: checked,
        verdict: worst <= tol,
        tolerance: tol,
        generators_only: group.is_finite(),
    })
}
