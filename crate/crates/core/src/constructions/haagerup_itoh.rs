//! The fermionic superoperator `Φ(x) = Σ_i <c_i, x> c_i` on `M_d`,
//! `d = C(2n+1, n)`, and its covariant modification.

use serde::{Deserialize, Serialize};

use super::wedge::{creation_operators, hodge_star, wedge_representation, CreationFamily};
use crate::channels::Superoperator;
use crate::error::{Error, Result};
use crate::linalg::{self, CMatrix, C64};
use crate::symmetry::{ContinuousBase, RepresentedGroup};

/// Largest `n` for which the dense `d² x d²` representation is built
/// (`n = 4` would need `126⁴` entries).
pub const MAX_SUPEROP_N: usize = 3;

/// `X ↦ Σ_i <m_i, X> m_i` for a family of `d x d` matrices. Its
/// representation is `(1/d) Σ_i vec(m_i) vec(m_i)*`.
pub fn rank_sum_superop(family: &[CMatrix]) -> Result<Superoperator> {
    let first = family
        .first()
        .ok_or_else(|| Error::InvalidArgument("empty operator family".into()))?;
    let d = first.square_dim("family member")?;
    let dim = d * d;
    let mut rep = CMatrix::zeros(dim, dim);
    let w = 1.0 / d as f64;
    for m in family {
        if m.rows() != d || m.cols() != d {
            return Err(Error::DimensionMismatch("family members differ in size".into()));
        }
        let v = m.as_slice();
        for r in 0..dim {
            if v[r].norm() == 0.0 {
                continue;
            }
            let row = &mut rep.as_mut_slice()[r * dim..(r + 1) * dim];
            let scale = v[r] * w;
            for (o, vc) in row.iter_mut().zip(v) {
                *o += scale * vc.conj();
            }
        }
    }
    Superoperator::from_rep(d, rep)
}

fn check_superop_size(n: usize) -> Result<()> {
    if n > MAX_SUPEROP_N {
        return Err(Error::TooLarge(format!(
            "the dense superoperator is built for n <= {MAX_SUPEROP_N}, got {n}"
        )));
    }
    Ok(())
}

/// `Φ` together with its creation operators.
pub fn haagerup_itoh(n: usize) -> Result<(Superoperator, CreationFamily)> {
    check_superop_size(n)?;
    let family = creation_operators(n)?;
    let phi = rank_sum_superop(family.ops())?;
    Ok((phi, family))
}

pub fn haagerup_itoh_superop(n: usize) -> Result<Superoperator> {
    Ok(haagerup_itoh(n)?.0)
}

/// `Φ'(x) = Φ(x V*) V` with `V` the Hodge star `∧^{n+1} → ∧^n`, acting on
/// operators on `(C^{2n+1})^{∧(n+1)}`, together with the group `SO(2n+1)`
/// acting through `R_{n+1}` on both sides.
///
/// Since `<c_i, x V*> = <c_i V, x>`, `Φ'` is the rank sum of `{c_i V}`.
pub fn covariant_haagerup_itoh(n: usize) -> Result<(Superoperator, RepresentedGroup)> {
    check_superop_size(n)?;
    let family = creation_operators(n)?;
    let v = hodge_star(2 * n + 1, n + 1)?;
    let rotated: Vec<CMatrix> = family.ops().iter().map(|c| c.matmul(&v)).collect();
    let phi = rank_sum_superop(&rotated)?;
    let group = RepresentedGroup::wedge_pushforward(ContinuousBase::SpecialOrthogonal, 2 * n + 1, n + 1, n + 1, 0)?;
    Ok((phi, group))
}

/// Entrywise residual of `Φ(π x ρ*) = π Φ(x) ρ*` with `π = R_{n+1}(a)`,
/// `ρ = R_n(a)`, for a unitary `a` on `C^{2n+1}`.
pub fn relation_residual(phi: &Superoperator, family: &CreationFamily, a: &CMatrix, x: &CMatrix) -> Result<f64> {
    let pi = wedge_representation(a, family.target_basis())?;
    let rho = wedge_representation(a, family.source_basis())?;
    let moved = pi.matmul(x).matmul(&rho.adjoint());
    let lhs = phi.apply(&moved)?;
    let rhs = pi.matmul(&phi.apply(x)?).matmul(&rho.adjoint());
    Ok(lhs.max_abs_diff(&rhs))
}

/// The pieces of the non-commutative Grothendieck inequality evaluated at
/// `x_i = y_i = c_i`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GrothendieckAssembly {
    /// `|Σ_j <c_j, Φ(c_j)>|`.
    pub pairing_sum: f64,
    /// `(||Σ c_i* c_i|| + ||Σ c_i c_i*||) / 2`, operator norms.
    pub family_factor: f64,
    pub sinfty_s1: f64,
    /// `pairing_sum / (sinfty_s1 · family_factor)`, a lower bound on the
    /// constant whenever `sinfty_s1` is an upper bound on the true norm.
    pub constant_lower_bound: f64,
}

/// Evaluates both sides with `x_i = y_i = members` for a given value of
/// `||Φ||_{S_∞→S_1}`.
pub fn grothendieck_assembly(phi: &Superoperator, members: &[CMatrix], sinfty_s1: f64) -> Result<GrothendieckAssembly> {
    let d = phi.n();
    let mut pairing = C64::new(0.0, 0.0);
    let mut left = CMatrix::zeros(d, d);
    let mut right = CMatrix::zeros(d, d);
    for c in members {
        pairing += linalg::inner_normalized(c, &phi.apply(c)?)?;
        left = &left + &c.adjoint().matmul(c);
        right = &right + &c.matmul(&c.adjoint());
    }
    let op_norm = |m: &CMatrix| linalg::singular_values(m).map(|s| s[0]);
    let family_factor = (op_norm(&left)? + op_norm(&right)?) / 2.0;
    Ok(GrothendieckAssembly {
        pairing_sum: pairing.norm(),
        family_factor,
        sinfty_s1,
        constant_lower_bound: pairing.norm() / (sinfty_s1 * family_factor),
    })
}
