use std::ops::{Add, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{self, haar_unitary, real, CMatrix, Rng, C64};

/// A linear map `M_n -> M_n`.
///
/// `rep` is the `n² x n²` matrix of the map in the orthonormal basis
/// `{sqrt(n) E_ij}` (row-major). Because both sides use the same scaling,
/// `rep[(a*n+b), (i*n+j)] = Φ(E_ij)[a][b]`, and the `S_2→S_2` norm of the map
/// is the operator norm of `rep`.
#[derive(Clone, Debug, PartialEq)]
pub struct Superoperator {
    n: usize,
    rep: CMatrix,
    kraus: Option<Vec<CMatrix>>,
}

/// Outcome of [`Superoperator::is_cptp`].
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CptpReport {
    pub completely_positive: bool,
    pub trace_preserving: bool,
    /// Smallest eigenvalue of the Hermitian part of the Choi matrix.
    pub min_choi_eigenvalue: f64,
    /// Distance of the Choi matrix from Hermitian.
    pub choi_hermiticity_defect: f64,
    /// `max_kl |Tr Φ(E_kl) - δ_kl|`.
    pub trace_defect: f64,
    pub tolerance: f64,
}

impl CptpReport {
    pub fn is_channel(&self) -> bool {
        self.completely_positive && self.trace_preserving
    }

    /// Which condition failed, if any.
    pub fn violation(&self) -> Option<String> {
        match (self.completely_positive, self.trace_preserving) {
            (true, true) => None,
            (false, tp) => Some(format!(
                "not completely positive: min Choi eigenvalue {:e}, Hermiticity defect {:e}{}",
                self.min_choi_eigenvalue,
                self.choi_hermiticity_defect,
                if tp { "" } else { "; also not trace preserving" }
            )),
            (true, false) => Some(format!("not trace preserving: trace defect {:e}", self.trace_defect)),
        }
    }
}

impl Superoperator {
    /// Wraps a representation matrix; it must be `n² x n²`.
    pub fn from_rep(n: usize, rep: CMatrix) -> Result<Self> {
        if n == 0 || rep.rows() != n * n || rep.cols() != n * n {
            return Err(Error::DimensionMismatch(format!(
                "superoperator on M_{n} needs a {0}x{0} representation, got {1}x{2}",
                n * n,
                rep.rows(),
                rep.cols()
            )));
        }
        Ok(Superoperator { n, rep, kraus: None })
    }

    /// Builds the map by evaluating `f` on every matrix unit.
    pub fn from_fn(n: usize, f: impl Fn(&CMatrix) -> CMatrix) -> Result<Self> {
        let dim = n * n;
        let mut rep = CMatrix::zeros(dim, dim);
        for i in 0..n {
            for j in 0..n {
                let image = f(&CMatrix::unit(n, i, j));
                if image.rows() != n || image.cols() != n {
                    return Err(Error::DimensionMismatch(format!(
                        "map returned {}x{} on M_{n}",
                        image.rows(),
                        image.cols()
                    )));
                }
                let col = i * n + j;
                for (row, z) in image.as_slice().iter().enumerate() {
                    rep[(row, col)] = *z;
                }
            }
        }
        Self::from_rep(n, rep)
    }

    /// `X ↦ Σ K X K*`, keeping the Kraus list.
    pub fn from_kraus(kraus: Vec<CMatrix>) -> Result<Self> {
        let first = kraus
            .first()
            .ok_or_else(|| Error::InvalidArgument("empty Kraus list".into()))?;
        let n = first.square_dim("Kraus operator")?;
        if kraus.iter().any(|k| k.rows() != n || k.cols() != n) {
            return Err(Error::DimensionMismatch("Kraus operators differ in size".into()));
        }
        let mut rep = CMatrix::zeros(n * n, n * n);
        for k in &kraus {
            // vec(K X K*) = (K ⊗ conj K) vec(X) for row-major vec.
            let term = k.kron(&k.conj());
            rep = &rep + &term;
        }
        Ok(Superoperator {
            n,
            rep,
            kraus: Some(kraus),
        })
    }

    pub fn identity(n: usize) -> Self {
        Superoperator {
            n,
            rep: CMatrix::identity(n * n),
            kraus: Some(vec![CMatrix::identity(n)]),
        }
    }

    pub fn zero(n: usize) -> Self {
        Superoperator {
            n,
            rep: CMatrix::zeros(n * n, n * n),
            kraus: None,
        }
    }

    /// `X ↦ U X U*`.
    pub fn conjugation(u: &CMatrix) -> Result<Self> {
        Self::from_kraus(vec![u.clone()])
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn rep(&self) -> &CMatrix {
        &self.rep
    }

    pub fn kraus(&self) -> Option<&[CMatrix]> {
        self.kraus.as_deref()
    }

    pub fn apply(&self, x: &CMatrix) -> Result<CMatrix> {
        if x.rows() != self.n || x.cols() != self.n {
            return Err(Error::DimensionMismatch(format!(
                "superoperator on M_{} applied to {}x{}",
                self.n,
                x.rows(),
                x.cols()
            )));
        }
        Ok(self.apply_unchecked(x))
    }

    pub(crate) fn apply_unchecked(&self, x: &CMatrix) -> CMatrix {
        let out = self.rep.mul_vec(x.as_slice());
        CMatrix::new(self.n, self.n, out).expect("finite image")
    }

    /// `Φ*(Y)` without forming the adjoint representation.
    pub(crate) fn apply_adjoint_unchecked(&self, y: &CMatrix) -> CMatrix {
        let out = self.rep.adjoint_mul_vec(y.as_slice());
        CMatrix::new(self.n, self.n, out).expect("finite image")
    }

    /// Adjoint under the normalized trace inner product:
    /// `<Y, Φ(X)> = <Φ*(Y), X>`. The basis is orthonormal, so this is the
    /// conjugate transpose of `rep`.
    pub fn adjoint(&self) -> Self {
        Superoperator {
            n: self.n,
            rep: self.rep.adjoint(),
            kraus: self
                .kraus
                .as_ref()
                .map(|ks| ks.iter().map(CMatrix::adjoint).collect()),
        }
    }

    pub fn scale(&self, c: C64) -> Self {
        Superoperator {
            n: self.n,
            rep: self.rep.scale(c),
            kraus: None,
        }
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Superoperator) -> Result<Self> {
        self.check_same(other)?;
        Self::from_rep(self.n, self.rep.matmul(&other.rep))
    }

    /// Largest entrywise distance between representations.
    pub fn max_abs_diff(&self, other: &Superoperator) -> f64 {
        self.rep.max_abs_diff(&other.rep)
    }

    fn check_same(&self, other: &Superoperator) -> Result<()> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch(format!(
                "superoperators on M_{} and M_{}",
                self.n, other.n
            )));
        }
        Ok(())
    }

    pub fn try_sub(&self, other: &Superoperator) -> Result<Self> {
        self.check_same(other)?;
        Self::from_rep(self.n, &self.rep - &other.rep)
    }

    /// `Φ - Π`, the map whose norms define expansion and uniformity.
    pub fn minus_pi(&self) -> Self {
        self - &pi_projector(self.n)
    }

    /// The Choi matrix `Σ_ij E_ij ⊗ Φ(E_ij)`.
    pub fn choi(&self) -> CMatrix {
        let n = self.n;
        CMatrix::from_fn(n * n, n * n, |r, c| {
            let (i, a) = (r / n, r % n);
            let (j, b) = (c / n, c % n);
            self.rep[(a * n + b, i * n + j)]
        })
    }

    /// Complete positivity (Choi matrix PSD with eigenvalue floor
    /// `-tol · max(|Tr Choi|, 1)`) and trace preservation on every matrix unit.
    pub fn is_cptp(&self, tol: f64) -> Result<CptpReport> {
        if !(tol > 0.0) {
            return Err(Error::InvalidArgument(format!("tolerance must be positive, got {tol}")));
        }
        let n = self.n;
        let choi = self.choi();
        let scale = choi.trace().norm().max(1.0);
        let herm_defect = choi.hermiticity_defect();
        let min_eig = *linalg::hermitian_eigenvalues(&choi.hermitian_part())?
            .last()
            .expect("non-empty spectrum");
        let cp = herm_defect <= tol * scale && min_eig >= -tol * scale;

        let mut trace_defect = 0.0f64;
        for i in 0..n {
            for j in 0..n {
                let tr: C64 = (0..n).map(|a| self.rep[(a * n + a, i * n + j)]).sum();
                let expected = if i == j { 1.0 } else { 0.0 };
                trace_defect = trace_defect.max((tr - real(expected)).norm());
            }
        }
        Ok(CptpReport {
            completely_positive: cp,
            trace_preserving: trace_defect <= tol,
            min_choi_eigenvalue: min_eig,
            choi_hermiticity_defect: herm_defect,
            trace_defect,
            tolerance: tol,
        })
    }

    /// Largest residual `||Φ(Id) - Id||_max`.
    pub fn unitality_defect(&self) -> f64 {
        let id = CMatrix::identity(self.n);
        self.apply_unchecked(&id).max_abs_diff(&id)
    }
}

impl Add for &Superoperator {
    type Output = Superoperator;

    fn add(self, rhs: &Superoperator) -> Superoperator {
        assert_eq!(self.n, rhs.n, "superoperator size mismatch");
        Superoperator {
            n: self.n,
            rep: &self.rep + &rhs.rep,
            kraus: None,
        }
    }
}

impl Sub for &Superoperator {
    type Output = Superoperator;

    fn sub(self, rhs: &Superoperator) -> Superoperator {
        assert_eq!(self.n, rhs.n, "superoperator size mismatch");
        Superoperator {
            n: self.n,
            rep: &self.rep - &rhs.rep,
            kraus: None,
        }
    }
}

/// `Π(X) = Tr(X)/n · Id`.
pub fn pi_projector(n: usize) -> Superoperator {
    let mut rep = CMatrix::zeros(n * n, n * n);
    let w = real(1.0 / n as f64);
    for a in 0..n {
        for i in 0..n {
            rep[(a * n + a, i * n + i)] = w;
        }
    }
    Superoperator { n, rep, kraus: None }
}

/// Diagonal-to-diagonal embedding `Φ_A(X) = Σ_ij A_ij X_jj E_ii`.
///
/// `Φ_A(diag(x)) = diag(A x)` with the unnormalized matrix-vector product and
/// off-diagonal inputs are annihilated.
pub fn embed_graph(a: &CMatrix) -> Result<Superoperator> {
    let n = a.square_dim("embedded matrix")?;
    let mut rep = CMatrix::zeros(n * n, n * n);
    for i in 0..n {
        for j in 0..n {
            rep[(i * n + i, j * n + j)] = a[(i, j)];
        }
    }
    Superoperator::from_rep(n, rep)
}

/// `X ↦ (1/m) Σ U_i X U_i*` with i.i.d. Haar unitaries.
pub fn random_unitary_channel(n: usize, m: usize, rng: &mut Rng) -> Result<Superoperator> {
    if n == 0 || m == 0 {
        return Err(Error::InvalidArgument(format!(
            "random unitary channel needs n, m >= 1, got n={n}, m={m}"
        )));
    }
    let w = real(1.0 / (m as f64).sqrt());
    let kraus = (0..m)
        .map(|_| haar_unitary(n, rng).map(|u| u.scale(w)))
        .collect::<Result<Vec<_>>>()?;
    Superoperator::from_kraus(kraus)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::inner_normalized;

    fn random_matrix(n: usize, rng: &mut Rng) -> CMatrix {
        linalg::ginibre(n, rng)
    }

    #[test]
    fn pi_hand_values() {
        let n = 4;
        let pi = pi_projector(n);
        let id = CMatrix::identity(n);
        assert!(pi.apply(&id).unwrap().max_abs_diff(&id) < 1e-15);
        assert!(pi.apply(&CMatrix::unit(n, 0, 1)).unwrap().max_abs() < 1e-15);
        let e11 = pi.apply(&CMatrix::unit(n, 0, 0)).unwrap();
        assert!(e11.max_abs_diff(&id.scale_real(0.25)) < 1e-15);
        let pi2 = pi.compose(&pi).unwrap();
        assert!(pi2.max_abs_diff(&pi) < 1e-12);
        assert!(pi.adjoint().max_abs_diff(&pi) < 1e-15);
    }

    #[test]
    fn embedding_hand_values() {
        let n = 5;
        let j_over_n = CMatrix::from_fn(n, n, |_, _| real(0.2));
        assert!(embed_graph(&j_over_n).unwrap().max_abs_diff(&pi_projector(n)) < 1e-15);

        let dephase = embed_graph(&CMatrix::identity(n)).unwrap();
        let mut rng = Rng::new(4);
        let x = random_matrix(n, &mut rng);
        assert!(dephase.apply(&x).unwrap().max_abs_diff(&x.dephased()) < 1e-15);

        let a = random_matrix(n, &mut rng);
        let phi = embed_graph(&a).unwrap();
        assert!(phi.apply(&CMatrix::unit(n, 0, 1)).unwrap().max_abs() == 0.0);
    }

    #[test]
    fn adjoint_identity() {
        let mut rng = Rng::new(8);
        let n = 3;
        let phi = Superoperator::from_rep(n, random_matrix(n * n, &mut rng)).unwrap();
        let adj = phi.adjoint();
        for _ in 0..5 {
            let x = random_matrix(n, &mut rng);
            let y = random_matrix(n, &mut rng);
            let lhs = inner_normalized(&y, &phi.apply(&x).unwrap()).unwrap();
            let rhs = inner_normalized(&adj.apply(&y).unwrap(), &x).unwrap();
            assert!((lhs - rhs).norm() < 1e-12);
        }
        assert!(adj.adjoint().max_abs_diff(&phi) < 1e-15);
    }

    #[test]
    fn adjoint_of_conjugation_is_inverse_conjugation() {
        let mut rng = Rng::new(10);
        let u = haar_unitary(3, &mut rng).unwrap();
        let adj = Superoperator::conjugation(&u).unwrap().adjoint();
        let expected = Superoperator::conjugation(&u.adjoint()).unwrap();
        assert!(adj.max_abs_diff(&expected) < 1e-12);
    }

    #[test]
    fn choi_hand_values() {
        let n = 3;
        let mut rng = Rng::new(12);
        let u = haar_unitary(n, &mut rng).unwrap();
        let choi = Superoperator::conjugation(&u).unwrap().choi();
        let sigma = linalg::singular_values(&choi).unwrap();
        assert!(sigma[1] < 1e-12 && sigma[0] > 1.0);

        // Choi(Π) = (1/n) Σ_i E_ii ⊗ Id.
        let choi_pi = pi_projector(n).choi();
        let expected = CMatrix::identity(n * n).scale_real(1.0 / n as f64);
        assert!(choi_pi.max_abs_diff(&expected) < 1e-15);

        assert_eq!(Superoperator::zero(n).choi().max_abs(), 0.0);
    }

    #[test]
    fn cptp_checks() {
        let n = 3;
        assert!(pi_projector(n).is_cptp(1e-10).unwrap().is_channel());
        let neg = Superoperator::identity(n).scale(real(-1.0));
        let report = neg.is_cptp(1e-10).unwrap();
        assert!(!report.completely_positive);
        assert!(report.violation().unwrap().contains("completely positive"));

        let walk = CMatrix::from_real(3, 3, &[0.0, 0.5, 0.5, 0.5, 0.0, 0.5, 0.5, 0.5, 0.0]).unwrap();
        assert!(embed_graph(&walk).unwrap().is_cptp(1e-10).unwrap().is_channel());
        // Column sums != 1: CP but not trace preserving.
        let lazy = walk.scale_real(0.5);
        let r = embed_graph(&lazy).unwrap().is_cptp(1e-10).unwrap();
        assert!(r.completely_positive && !r.trace_preserving);
        assert!(pi_projector(2).is_cptp(0.0).is_err());
    }

    #[test]
    fn random_channel_is_unital_channel() {
        let mut rng = Rng::new(21);
        for (n, m) in [(2, 1), (4, 3), (6, 2)] {
            let phi = random_unitary_channel(n, m, &mut rng).unwrap();
            assert!(phi.is_cptp(1e-10).unwrap().is_channel());
            assert!(phi.unitality_defect() < 1e-10);
            assert_eq!(phi.kraus().unwrap().len(), m);
        }
        assert!(random_unitary_channel(0, 2, &mut rng).is_err());
    }

    #[test]
    fn kraus_rep_matches_direct_action() {
        let mut rng = Rng::new(30);
        let k1 = random_matrix(3, &mut rng);
        let k2 = random_matrix(3, &mut rng);
        let phi = Superoperator::from_kraus(vec![k1.clone(), k2.clone()]).unwrap();
        let x = random_matrix(3, &mut rng);
        let direct = &x.conjugate_by(&k1) + &x.conjugate_by(&k2);
        assert!(phi.apply(&x).unwrap().max_abs_diff(&direct) < 1e-12);
        let via_fn = Superoperator::from_fn(3, |m| &m.conjugate_by(&k1) + &m.conjugate_by(&k2)).unwrap();
        assert!(via_fn.max_abs_diff(&phi) < 1e-12);
    }
}
