use std::collections::{HashSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::constructions::{wedge_basis, wedge_representation};
use crate::error::{Error, Result};
use crate::linalg::{haar_special_orthogonal, haar_unitary, CMatrix, Rng};

/// Stored representation matrices must be unitary to this precision.
pub const UNITARY_TOL: f64 = 1e-10;
/// Group elements closer than this (entrywise) are identified.
pub const DEDUP_TOL: f64 = 1e-9;
/// Closures larger than this fall back to random words.
pub const MAX_GROUP_ORDER: usize = 100_000;
/// Total stored entries allowed during a closure.
const MAX_CLOSURE_ENTRIES: usize = 1 << 25;
/// Length of the random generator words used when the closure is too big.
pub const RANDOM_WORD_LENGTH: usize = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ContinuousBase {
    Unitary,
    SpecialOrthogonal,
}

/// One group element as the pair of representation matrices `(U(g), V(g))`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GeneratorPair {
    pub u: CMatrix,
    pub v: CMatrix,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum GroupKind {
    /// The group generated by `generators`. With `phase_torus`, the group is
    /// additionally extended by all diagonal unitaries (acting the same way
    /// on both sides); the generators must then be monomial matrices.
    FiniteGenerated {
        generators: Vec<GeneratorPair>,
        #[serde(default)]
        phase_torus: bool,
    },
    /// `U(g) = V(g) = g` for Haar-distributed `g ∈ U(dim)`.
    HaarUnitary { dim: usize },
    /// `U(g) = V(g) = g` for Haar-distributed `g ∈ SO(dim)`.
    HaarSpecialOrthogonal { dim: usize },
    /// `U(g) = R_{u_level}(g)`, `V(g) = R_{v_level}(g)` for `g` in the base
    /// group acting on `C^ambient`.
    WedgePushforward {
        base: ContinuousBase,
        ambient: usize,
        u_level: usize,
        v_level: usize,
    },
}

/// A group with a pair of unitary representations `U`, `V`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "GroupJson", into = "GroupJson")]
pub struct RepresentedGroup {
    kind: GroupKind,
    seed: u64,
    dim_u: usize,
    dim_v: usize,
}

#[derive(Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct GroupJson {
    group: GroupKind,
    #[serde(default)]
    seed: u64,
}

impl TryFrom<GroupJson> for RepresentedGroup {
    type Error = Error;

    fn try_from(raw: GroupJson) -> Result<Self> {
        RepresentedGroup::new(raw.group, raw.seed)
    }
}

impl From<RepresentedGroup> for GroupJson {
    fn from(g: RepresentedGroup) -> Self {
        GroupJson {
            group: g.kind,
            seed: g.seed,
        }
    }
}

fn is_monomial(m: &CMatrix) -> bool {
    let n = m.rows();
    let nonzero = |i: usize, j: usize| m[(i, j)].norm() > UNITARY_TOL;
    (0..n).all(|i| (0..n).filter(|&j| nonzero(i, j)).count() == 1)
        && (0..n).all(|j| (0..n).filter(|&i| nonzero(i, j)).count() == 1)
}

/// The permutation matrix with the support of a monomial matrix.
fn support_pattern(m: &CMatrix) -> CMatrix {
    m.map(|z| if z.norm() > UNITARY_TOL { crate::linalg::real(1.0) } else { crate::linalg::real(0.0) })
}

impl RepresentedGroup {
    pub fn new(kind: GroupKind, seed: u64) -> Result<Self> {
        let (dim_u, dim_v) = match &kind {
            GroupKind::FiniteGenerated { generators, phase_torus } => {
                let first = generators
                    .first()
                    .ok_or_else(|| Error::InvalidArgument("a finite group needs at least one generator".into()))?;
                let du = first.u.square_dim("generator")?;
                let dv = first.v.square_dim("generator")?;
                for (k, g) in generators.iter().enumerate() {
                    if g.u.rows() != du || g.u.cols() != du || g.v.rows() != dv || g.v.cols() != dv {
                        return Err(Error::DimensionMismatch(format!("generator {k} has inconsistent size")));
                    }
                    let defect = g.u.unitarity_defect().max(g.v.unitarity_defect());
                    if defect > UNITARY_TOL {
                        return Err(Error::InvalidArgument(format!(
                            "generator {k} is not unitary (defect {defect:e})"
                        )));
                    }
                    if *phase_torus && !(is_monomial(&g.u) && is_monomial(&g.v)) {
                        return Err(Error::InvalidArgument(format!(
                            "generator {k} is not monomial, which the phase torus requires"
                        )));
                    }
                }
                if *phase_torus && du != dv {
                    return Err(Error::DimensionMismatch("the phase torus needs dim_u = dim_v".into()));
                }
                (du, dv)
            }
            GroupKind::HaarUnitary { dim } | GroupKind::HaarSpecialOrthogonal { dim } => {
                if *dim == 0 {
                    return Err(Error::InvalidArgument("group dimension must be positive".into()));
                }
                (*dim, *dim)
            }
            GroupKind::WedgePushforward {
                ambient,
                u_level,
                v_level,
                ..
            } => {
                if *ambient == 0 {
                    return Err(Error::InvalidArgument("group dimension must be positive".into()));
                }
                (
                    wedge_basis(*ambient, *u_level)?.dim(),
                    wedge_basis(*ambient, *v_level)?.dim(),
                )
            }
        };
        Ok(RepresentedGroup {
            kind,
            seed,
            dim_u,
            dim_v,
        })
    }

    /// Finite group with `U = V` on every generator.
    pub fn finite_symmetric(generators: Vec<CMatrix>, phase_torus: bool) -> Result<Self> {
        let generators = generators.into_iter().map(|u| GeneratorPair { v: u.clone(), u }).collect();
        Self::new(GroupKind::FiniteGenerated { generators, phase_torus }, 0)
    }

    pub fn haar_unitary(dim: usize, seed: u64) -> Result<Self> {
        Self::new(GroupKind::HaarUnitary { dim }, seed)
    }

    pub fn haar_special_orthogonal(dim: usize, seed: u64) -> Result<Self> {
        Self::new(GroupKind::HaarSpecialOrthogonal { dim }, seed)
    }

    pub fn wedge_pushforward(
        base: ContinuousBase,
        ambient: usize,
        u_level: usize,
        v_level: usize,
        seed: u64,
    ) -> Result<Self> {
        Self::new(
            GroupKind::WedgePushforward {
                base,
                ambient,
                u_level,
                v_level,
            },
            seed,
        )
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn kind(&self) -> &GroupKind {
        &self.kind
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn dim_u(&self) -> usize {
        self.dim_u
    }

    pub fn dim_v(&self) -> usize {
        self.dim_v
    }

    pub fn is_finite(&self) -> bool {
        matches!(self.kind, GroupKind::FiniteGenerated { .. })
    }

    pub fn has_phase_torus(&self) -> bool {
        matches!(self.kind, GroupKind::FiniteGenerated { phase_torus: true, .. })
    }

    pub fn generators(&self) -> &[GeneratorPair] {
        match &self.kind {
            GroupKind::FiniteGenerated { generators, .. } => generators,
            _ => &[],
        }
    }

    /// `(U(a), V(a))` for an element `a` of a continuous base group.
    pub fn represent(&self, a: &CMatrix) -> Result<(CMatrix, CMatrix)> {
        match &self.kind {
            GroupKind::HaarUnitary { dim } | GroupKind::HaarSpecialOrthogonal { dim } => {
                if a.rows() != *dim || a.cols() != *dim {
                    return Err(Error::DimensionMismatch(format!("expected a {dim}x{dim} group element")));
                }
                Ok((a.clone(), a.clone()))
            }
            GroupKind::WedgePushforward {
                ambient,
                u_level,
                v_level,
                ..
            } => {
                let u = wedge_representation(a, &wedge_basis(*ambient, *u_level)?)?;
                let v = wedge_representation(a, &wedge_basis(*ambient, *v_level)?)?;
                Ok((u, v))
            }
            GroupKind::FiniteGenerated { .. } => Err(Error::InvalidArgument(
                "finite groups are given by their representation matrices".into(),
            )),
        }
    }

    /// One random element: Haar for continuous kinds, a random word in the
    /// generators for finite kinds (the phase torus is not sampled).
    pub fn sample(&self, rng: &mut Rng) -> Result<(CMatrix, CMatrix)> {
        match &self.kind {
            GroupKind::HaarUnitary { dim } => {
                let g = haar_unitary(*dim, rng)?;
                Ok((g.clone(), g))
            }
            GroupKind::HaarSpecialOrthogonal { dim } => {
                let g = haar_special_orthogonal(*dim, rng)?;
                Ok((g.clone(), g))
            }
            GroupKind::WedgePushforward { base, ambient, .. } => {
                let g = match base {
                    ContinuousBase::Unitary => haar_unitary(*ambient, rng)?,
                    ContinuousBase::SpecialOrthogonal => haar_special_orthogonal(*ambient, rng)?,
                };
                self.represent(&g)
            }
            GroupKind::FiniteGenerated { generators, .. } => {
                let mut u = CMatrix::identity(self.dim_u);
                let mut v = CMatrix::identity(self.dim_v);
                for _ in 0..RANDOM_WORD_LENGTH {
                    let g = &generators[rng.below(generators.len())];
                    u = g.u.matmul(&u);
                    v = g.v.matmul(&v);
                }
                Ok((u, v))
            }
        }
    }

    /// Generators used for closure: the support patterns when the phase
    /// torus is present (it absorbs the diagonal parts).
    fn closure_generators(&self) -> Vec<GeneratorPair> {
        match &self.kind {
            GroupKind::FiniteGenerated { generators, phase_torus } => {
                if *phase_torus {
                    generators
                        .iter()
                        .map(|g| GeneratorPair {
                            u: support_pattern(&g.u),
                            v: support_pattern(&g.v),
                        })
                        .collect()
                } else {
                    generators.clone()
                }
            }
            _ => Vec::new(),
        }
    }

    /// All elements of a finite group (of the permutation part when the phase
    /// torus is present), or `None` when the order exceeds the cap.
    pub fn elements(&self) -> Result<Option<Vec<GeneratorPair>>> {
        if !self.is_finite() {
            return Err(Error::InvalidArgument("only finite groups can be enumerated".into()));
        }
        let gens = self.closure_generators();
        let key = |g: &GeneratorPair| -> Vec<i64> {
            g.u.as_slice()
                .iter()
                .chain(g.v.as_slice())
                .flat_map(|z| [(z.re / DEDUP_TOL).round() as i64, (z.im / DEDUP_TOL).round() as i64])
                .collect()
        };
        let per_element = self.dim_u * self.dim_u + self.dim_v * self.dim_v;
        let identity = GeneratorPair {
            u: CMatrix::identity(self.dim_u),
            v: CMatrix::identity(self.dim_v),
        };
        let mut seen = HashSet::new();
        seen.insert(key(&identity));
        let mut elements = vec![identity];
        let mut queue = VecDeque::from([0usize]);
        while let Some(idx) = queue.pop_front() {
            for g in &gens {
                let next = GeneratorPair {
                    u: g.u.matmul(&elements[idx].u),
                    v: g.v.matmul(&elements[idx].v),
                };
                if seen.insert(key(&next)) {
                    if elements.len() >= MAX_GROUP_ORDER || (elements.len() + 1) * per_element > MAX_CLOSURE_ENTRIES {
                        return Ok(None);
                    }
                    elements.push(next);
                    queue.push_back(elements.len() - 1);
                }
            }
        }
        Ok(Some(elements))
    }
}
