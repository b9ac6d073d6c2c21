use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{CMatrix, CVector, Rng};

/// Whether a value is the true norm or a certified lower bound.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EstimateKind {
    /// Spectral computation or exhaustive enumeration.
    Exact,
    /// Attained by the stored witness, hence at most the true supremum.
    LowerBound,
}

/// The arguments attaining a norm value.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum Witness {
    /// `value = |<y, Φ(x)>|` for a superoperator.
    Matrices { x: CMatrix, y: CMatrix },
    /// `value = |<y, A x>|` for a matrix, normalized inner product.
    Vectors { x: CVector, y: CVector },
    /// `value = |(1/n) Σ A_ij <x_i, y_j>|` with unit vectors.
    VectorFamilies { x: Vec<CVector>, y: Vec<CVector> },
}

/// A norm value with its certificate.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NormEstimate {
    pub value: f64,
    pub kind: EstimateKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
    pub restarts_used: usize,
    /// For ascents: the best restart stopped on the relative tolerance
    /// rather than the sweep limit.
    pub converged: bool,
    /// Largest decrease of the objective between consecutive sweeps across
    /// all restarts. Ascents are monotone, so this stays at rounding level.
    #[serde(default)]
    pub max_sweep_drop: f64,
}

impl NormEstimate {
    pub fn exact(value: f64, witness: Option<Witness>) -> Self {
        NormEstimate {
            value,
            kind: EstimateKind::Exact,
            witness,
            restarts_used: 0,
            converged: true,
            max_sweep_drop: 0.0,
        }
    }

    pub fn is_exact(&self) -> bool {
        self.kind == EstimateKind::Exact
    }

    /// Copy without the witness payload.
    pub fn without_witness(&self) -> Self {
        NormEstimate {
            witness: None,
            ..self.clone()
        }
    }

    pub fn to_json(&self, include_witness: bool) -> String {
        if include_witness {
            serde_json::to_string(self)
        } else {
            serde_json::to_string(&self.without_witness())
        }
        .expect("estimate serializes")
    }
}

/// Settings shared by every ascent-based norm.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AscentOptions {
    pub restarts: usize,
    pub max_sweeps: usize,
    pub rel_tol: f64,
    /// Root of the restart seed schedule; restart `r` uses `Rng::new(seed).child(r)`.
    pub seed: u64,
}

impl Default for AscentOptions {
    fn default() -> Self {
        AscentOptions {
            restarts: 32,
            max_sweeps: 500,
            rel_tol: 1e-10,
            seed: 0,
        }
    }
}

impl AscentOptions {
    pub fn with_seed(seed: u64) -> Self {
        AscentOptions {
            seed,
            ..Default::default()
        }
    }

    pub fn restarts(mut self, restarts: usize) -> Self {
        self.restarts = restarts;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.restarts == 0 {
            return Err(Error::InvalidArgument("restarts must be at least 1".into()));
        }
        if !(self.rel_tol > 0.0) {
            return Err(Error::InvalidArgument(format!("rel_tol must be positive, got {}", self.rel_tol)));
        }
        if self.max_sweeps == 0 {
            return Err(Error::InvalidArgument("max_sweeps must be at least 1".into()));
        }
        Ok(())
    }

    pub(crate) fn restart_rng(&self, restart: usize) -> Rng {
        Rng::new(self.seed).child(restart as u64)
    }
}

/// Result of one restart of an ascent.
pub(crate) struct RestartOutcome<W> {
    pub value: f64,
    pub witness: W,
    pub converged: bool,
    pub max_drop: f64,
}

/// Runs an ascent sweep loop: `step` performs one full sweep and returns the
/// new objective. Stops when the relative change drops below `rel_tol`.
pub(crate) fn run_sweeps(
    opts: &AscentOptions,
    initial: f64,
    mut step: impl FnMut() -> f64,
) -> (f64, bool, f64) {
    let mut value = initial;
    let mut max_drop = 0.0f64;
    for _ in 0..opts.max_sweeps {
        let next = step();
        max_drop = max_drop.max(value - next);
        let change = (next - value).abs();
        value = next;
        if change <= opts.rel_tol * value.abs().max(f64::MIN_POSITIVE) || value == 0.0 {
            return (value, true, max_drop);
        }
    }
    (value, false, max_drop)
}

/// Keeps the best restart; ties go to the earliest restart so that the
/// reduction is independent of evaluation order.
pub(crate) fn best_of<W>(
    outcomes: impl IntoIterator<Item = RestartOutcome<W>>,
    wrap: impl Fn(W) -> Witness,
) -> NormEstimate {
    let mut best: Option<RestartOutcome<W>> = None;
    let mut count = 0;
    let mut max_drop = 0.0f64;
    for outcome in outcomes {
        count += 1;
        max_drop = max_drop.max(outcome.max_drop);
        if best.as_ref().is_none_or(|b| outcome.value > b.value) {
            best = Some(outcome);
        }
    }
    let best = best.expect("at least one restart");
    NormEstimate {
        value: best.value,
        kind: EstimateKind::LowerBound,
        witness: Some(wrap(best.witness)),
        restarts_used: count,
        converged: best.converged,
        max_sweep_drop: max_drop,
    }
}
