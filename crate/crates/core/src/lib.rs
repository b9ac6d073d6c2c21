//! Quasirandomness of quantum channels.
//!
//! `qmix` builds superoperators on `M_n(C)` (graph embeddings, random unitary
//! mixtures, fermionic constructions on antisymmetric spaces) and measures
//! how far they are from the completely depolarizing projection
//! `Π(X) = Tr(X)/n · Id`:
//!
//! - expansion `λ(Φ) = ||Φ - Π||_{S_2→S_2}`, computed exactly from a spectral
//!   decomposition;
//! - uniformity `ε(Φ) = ||Φ - Π||_cut`, plus the `S_∞→S_1`, `S_1→S_∞`,
//!   `ℓ_∞→ℓ_1` and Grothendieck norms, all as certified lower bounds with
//!   witnesses.
//!
//! All inner products and norms are normalized (`<X,Y> = Tr(X*Y)/n`), so
//! `||Id||_{S_p} = 1`.

pub mod channels;
pub mod constructions;
pub mod error;
pub mod experiments;
pub mod linalg;
pub mod norms;
pub mod symmetry;

pub use error::{Error, Result};
pub use linalg::{CMatrix, CVector, Rng, C64};
