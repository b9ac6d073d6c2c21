use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Dense complex vector with finite entries.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<[f64; 2]>", into = "Vec<[f64; 2]>")]
pub struct CVector {
    data: Vec<C64>,
}

impl TryFrom<Vec<[f64; 2]>> for CVector {
    type Error = Error;

    fn try_from(raw: Vec<[f64; 2]>) -> Result<Self> {
        CVector::new(raw.into_iter().map(|[re, im]| C64::new(re, im)).collect())
    }
}

impl From<CVector> for Vec<[f64; 2]> {
    fn from(v: CVector) -> Self {
        v.data.iter().map(|z| [z.re, z.im]).collect()
    }
}

impl CVector {
    pub fn new(data: Vec<C64>) -> Result<Self> {
        if data.is_empty() {
            return Err(Error::InvalidArgument("vector must be non-empty".into()));
        }
        if let Some(idx) = data.iter().position(|z| !z.is_finite()) {
            return Err(Error::NonFinite(idx));
        }
        Ok(CVector { data })
    }

    pub(crate) fn from_entries(data: Vec<C64>) -> Self {
        CVector { data }
    }

    pub fn from_real(entries: &[f64]) -> Result<Self> {
        Self::new(entries.iter().map(|&x| C64::new(x, 0.0)).collect())
    }

    pub fn ones(n: usize) -> Self {
        CVector { data: vec![C64::new(1.0, 0.0); n] }
    }

    pub fn dim(&self) -> usize {
        self.data.len()
    }

    pub fn as_slice(&self) -> &[C64] {
        &self.data
    }

    pub fn into_vec(self) -> Vec<C64> {
        self.data
    }
}

impl std::ops::Index<usize> for CVector {
    type Output = C64;

    fn index(&self, i: usize) -> &C64 {
        &self.data[i]
    }
}
