//! Antisymmetric tensor powers of `C^N` in lexicographic bases.
//!
//! Indices are zero-based: the basis vector `e_{s_1} ∧ .. ∧ e_{s_k}` with
//! `s_1 < .. < s_k` is stored as the subset `[s_1, .., s_k]`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{self, real, CMatrix, C64};

/// Largest wedge dimension the constructors will build.
pub const MAX_WEDGE_DIM: usize = 1 << 16;

/// Largest `n` accepted by [`creation_operators`].
pub const MAX_CREATION_N: usize = 4;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WedgeBasis {
    ambient: usize,
    k: usize,
    subsets: Vec<Vec<usize>>,
}

/// `C(n, k)`, or `None` on overflow.
pub fn binomial(n: usize, k: usize) -> Option<usize> {
    if k > n {
        return Some(0);
    }
    let k = k.min(n - k);
    let mut acc: usize = 1;
    for i in 0..k {
        acc = acc.checked_mul(n - i)? / (i + 1);
    }
    Some(acc)
}

/// Lexicographically ordered basis of `(C^N)^{∧k}`.
pub fn wedge_basis(ambient: usize, k: usize) -> Result<WedgeBasis> {
    if k > ambient {
        return Err(Error::InvalidArgument(format!("wedge degree {k} exceeds dimension {ambient}")));
    }
    let d = binomial(ambient, k).filter(|&d| d <= MAX_WEDGE_DIM).ok_or_else(|| {
        Error::TooLarge(format!("C({ambient}, {k}) exceeds {MAX_WEDGE_DIM}"))
    })?;
    let mut subsets = Vec::with_capacity(d);
    let mut current: Vec<usize> = (0..k).collect();
    loop {
        subsets.push(current.clone());
        // Advance to the next k-subset in lexicographic order.
        let Some(pos) = (0..k).rev().find(|&i| current[i] < ambient - k + i) else {
            break;
        };
        current[pos] += 1;
        for i in pos + 1..k {
            current[i] = current[i - 1] + 1;
        }
    }
    debug_assert_eq!(subsets.len(), d);
    Ok(WedgeBasis { ambient, k, subsets })
}

impl WedgeBasis {
    /// `N`.
    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn degree(&self) -> usize {
        self.k
    }

    pub fn dim(&self) -> usize {
        self.subsets.len()
    }

    pub fn subsets(&self) -> &[Vec<usize>] {
        &self.subsets
    }

    /// Position of a sorted subset in the basis.
    pub fn index_of(&self, subset: &[usize]) -> Option<usize> {
        self.subsets.binary_search_by(|s| s.as_slice().cmp(subset)).ok()
    }
}

/// Matrix of `A^{⊗k}` on the wedge basis: the entry at `(S, T)` is the
/// minor of `A` with rows `S` and columns `T`.
pub fn wedge_representation(a: &CMatrix, basis: &WedgeBasis) -> Result<CMatrix> {
    let n = a.square_dim("wedge representation input")?;
    if n != basis.ambient {
        return Err(Error::DimensionMismatch(format!(
            "{n}x{n} matrix on a wedge basis of C^{}",
            basis.ambient
        )));
    }
    let d = basis.dim();
    let k = basis.k;
    if k == 0 {
        return Ok(CMatrix::identity(1));
    }
    let mut out = CMatrix::zeros(d, d);
    for (r, rows) in basis.subsets.iter().enumerate() {
        for (c, cols) in basis.subsets.iter().enumerate() {
            let minor = CMatrix::from_fn(k, k, |i, j| a[(rows[i], cols[j])]);
            out[(r, c)] = if k == 1 { minor[(0, 0)] } else { linalg::determinant(&minor)? };
        }
    }
    Ok(out)
}

/// Sign of the permutation listing `subset` followed by its complement.
fn shuffle_sign(subset: &[usize], ambient: usize) -> f64 {
    let mut inversions = 0usize;
    for t in (0..ambient).filter(|t| !subset.contains(t)) {
        inversions += subset.iter().filter(|&&s| s > t).count();
    }
    if inversions % 2 == 0 {
        1.0
    } else {
        -1.0
    }
}

/// The signed-complement isometry `(C^N)^{∧k} → (C^N)^{∧(N-k)}`,
/// `e_S ↦ sign(S, S^c) e_{S^c}`. It intertwines the two wedge
/// representations of `SO(N)`.
pub fn hodge_star(ambient: usize, k: usize) -> Result<CMatrix> {
    let source = wedge_basis(ambient, k)?;
    let target = wedge_basis(ambient, ambient - k)?;
    let mut v = CMatrix::zeros(target.dim(), source.dim());
    for (col, s) in source.subsets.iter().enumerate() {
        let complement: Vec<usize> = (0..ambient).filter(|t| !s.contains(t)).collect();
        let row = target.index_of(&complement).expect("complement is a basis subset");
        v[(row, col)] = real(shuffle_sign(s, ambient));
    }
    Ok(v)
}

/// The fermionic creation operators `c_i(x) = e_i ∧ x` from
/// `(C^{2n+1})^{∧n}` to `(C^{2n+1})^{∧(n+1)}`; both spaces have dimension
/// `d = C(2n+1, n)`, so each `c_i` is a `d x d` matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct CreationFamily {
    n: usize,
    source: WedgeBasis,
    target: WedgeBasis,
    ops: Vec<CMatrix>,
}

pub fn creation_operators(n: usize) -> Result<CreationFamily> {
    if n == 0 {
        return Err(Error::InvalidArgument("creation operators need n >= 1".into()));
    }
    if n > MAX_CREATION_N {
        return Err(Error::TooLarge(format!("creation operators need n <= {MAX_CREATION_N}, got {n}")));
    }
    let ambient = 2 * n + 1;
    let source = wedge_basis(ambient, n)?;
    let target = wedge_basis(ambient, n + 1)?;
    let d = source.dim();
    let ops = (0..ambient)
        .map(|i| {
            let mut c = CMatrix::zeros(d, d);
            for (col, t) in source.subsets.iter().enumerate() {
                if t.contains(&i) {
                    continue;
                }
                // Moving e_i past the smaller indices of t.
                let passed = t.iter().filter(|&&s| s < i).count();
                let mut merged = t.clone();
                merged.insert(passed, i);
                let row = target.index_of(&merged).expect("merged subset is a basis subset");
                c[(row, col)] = real(if passed % 2 == 0 { 1.0 } else { -1.0 });
            }
            c
        })
        .collect();
    Ok(CreationFamily { n, source, target, ops })
}

impl CreationFamily {
    pub fn n(&self) -> usize {
        self.n
    }

    /// `d = C(2n+1, n)`.
    pub fn dim(&self) -> usize {
        self.source.dim()
    }

    pub fn ops(&self) -> &[CMatrix] {
        &self.ops
    }

    pub fn source_basis(&self) -> &WedgeBasis {
        &self.source
    }

    pub fn target_basis(&self) -> &WedgeBasis {
        &self.target
    }

    /// `Σ_i α_i c_i`.
    pub fn combination(&self, alpha: &[C64]) -> Result<CMatrix> {
        if alpha.len() != self.ops.len() {
            return Err(Error::DimensionMismatch(format!(
                "{} coefficients for {} operators",
                alpha.len(),
                self.ops.len()
            )));
        }
        let d = self.dim();
        let mut out = CMatrix::zeros(d, d);
        for (a, c) in alpha.iter().zip(&self.ops) {
            for (o, x) in out.as_mut_slice().iter_mut().zip(c.as_slice()) {
                *o += a * x;
            }
        }
        Ok(out)
    }

    /// `max_i || U^{∧(n+1)} c_i (U^{∧n})^{-1} - Σ_j U_ji c_j ||_∞` (entrywise).
    pub fn covariance_residual(&self, u: &CMatrix) -> Result<f64> {
        let ambient = 2 * self.n + 1;
        if u.rows() != ambient || u.cols() != ambient {
            return Err(Error::DimensionMismatch(format!("expected a {ambient}x{ambient} unitary")));
        }
        let up = wedge_representation(u, &self.target)?;
        let down_inv = wedge_representation(&u.adjoint(), &self.source)?;
        let mut worst = 0.0f64;
        for (i, c) in self.ops.iter().enumerate() {
            let lhs = up.matmul(c).matmul(&down_inv);
            let column: Vec<C64> = (0..ambient).map(|j| u[(j, i)]).collect();
            worst = worst.max(lhs.max_abs_diff(&self.combination(&column)?));
        }
        Ok(worst)
    }
}
