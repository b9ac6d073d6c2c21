//! Seeded randomness and Haar sampling.
//!
//! [`Rng`] wraps ChaCha8, whose output stream is specified independently of
//! platform and word size. Child generators for restart or trial schedules
//! are derived with SplitMix64 so that stream `i` never depends on how many
//! numbers stream `i - 1` consumed.

use num_complex::Complex64 as C64;
use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal, Uniform};

use super::{decomp, CMatrix};
use crate::error::{Error, Result};

#[derive(Clone, Debug)]
pub struct Rng {
    seed: u64,
    inner: ChaCha8Rng,
}

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

impl Rng {
    pub fn new(seed: u64) -> Self {
        Rng {
            seed,
            inner: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// Independent generator number `index` in this generator's schedule.
    pub fn child(&self, index: u64) -> Rng {
        Rng::new(splitmix64(self.seed ^ splitmix64(index.wrapping_add(1))))
    }

    pub fn normal(&mut self) -> f64 {
        StandardNormal.sample(&mut self.inner)
    }

    /// Standard complex Gaussian: `E|z|^2 = 1`.
    pub fn complex_normal(&mut self) -> C64 {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        C64::new(self.normal() * s, self.normal() * s)
    }

    /// Uniform on `[0, 1)`.
    pub fn uniform(&mut self) -> f64 {
        Uniform::new(0.0, 1.0).expect("valid range").sample(&mut self.inner)
    }

    /// Uniform integer in `0..n`.
    pub fn below(&mut self, n: usize) -> usize {
        Uniform::new(0, n).expect("n must be positive").sample(&mut self.inner)
    }

    /// Uniform point on the unit circle.
    pub fn phase(&mut self) -> C64 {
        C64::from_polar(1.0, 2.0 * std::f64::consts::PI * self.uniform())
    }
}

impl RngCore for Rng {
    fn next_u32(&mut self) -> u32 {
        self.inner.next_u32()
    }

    fn next_u64(&mut self) -> u64 {
        self.inner.next_u64()
    }

    fn fill_bytes(&mut self, dst: &mut [u8]) {
        self.inner.fill_bytes(dst)
    }
}

/// `n x n` matrix of i.i.d. standard complex Gaussians.
pub fn ginibre(n: usize, rng: &mut Rng) -> CMatrix {
    CMatrix::from_fn(n, n, |_, _| rng.complex_normal())
}

/// Haar-distributed unitary: QR of a Ginibre matrix with the phases of
/// `diag(R)` moved into `Q`.
pub fn haar_unitary(n: usize, rng: &mut Rng) -> Result<CMatrix> {
    if n == 0 {
        return Err(Error::InvalidArgument("unitary dimension must be positive".into()));
    }
    let (q, r_diag) = decomp::qr_square(&ginibre(n, rng));
    let phases: Vec<C64> = r_diag
        .iter()
        .map(|&r| if r.norm() > 0.0 { r / r.norm() } else { C64::new(1.0, 0.0) })
        .collect();
    Ok(CMatrix::from_fn(n, n, |i, j| q[(i, j)] * phases[j]))
}

/// Haar-distributed element of `SO(n)`, stored with zero imaginary parts.
pub fn haar_special_orthogonal(n: usize, rng: &mut Rng) -> Result<CMatrix> {
    if n == 0 {
        return Err(Error::InvalidArgument("orthogonal dimension must be positive".into()));
    }
    let gaussian: Vec<f64> = (0..n * n).map(|_| rng.normal()).collect();
    let (mut q, r_diag, det_q) = decomp::qr_real(&gaussian, n);
    let mut det_sign = 1.0;
    for (j, r) in r_diag.iter().enumerate() {
        if *r < 0.0 {
            det_sign = -det_sign;
            for i in 0..n {
                q[i * n + j] = -q[i * n + j];
            }
        }
    }
    // Right multiplication by diag(-1, 1, ..) maps Haar on O(n)^- onto
    // Haar on SO(n).
    if det_sign * det_q < 0.0 {
        for i in 0..n {
            q[i * n] = -q[i * n];
        }
    }
    CMatrix::from_real(n, n, &q)
}
