//! Regular graph families with their degree declared.

use crate::channels::Graph;
use crate::error::{Error, Result};
use crate::linalg::{real, CMatrix};

/// The `n`-cycle, `n >= 3`.
pub fn cycle(n: usize) -> Result<Graph> {
    if n < 3 {
        return Err(Error::InvalidArgument(format!("a cycle needs n >= 3, got {n}")));
    }
    cayley_abelian(n, &[1, n - 1])
}

/// `K_n`, `n >= 2`.
pub fn complete(n: usize) -> Result<Graph> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!("a complete graph needs n >= 2, got {n}")));
    }
    let a = CMatrix::from_fn(n, n, |i, j| real(if i == j { 0.0 } else { 1.0 }));
    Graph::from_matrix(a)?.with_regular_degree((n - 1) as f64)
}

/// Cayley graph of `Z_n` with connection set `generators`: `x ~ x + g`.
/// The set must be closed under negation, avoid 0 and have no repeats.
pub fn cayley_abelian(n: usize, generators: &[usize]) -> Result<Graph> {
    if n == 0 {
        return Err(Error::InvalidArgument("group order must be positive".into()));
    }
    let mut set: Vec<usize> = generators.to_vec();
    set.sort_unstable();
    if set.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::InvalidArgument("repeated generator".into()));
    }
    for &g in &set {
        if g == 0 || g >= n {
            return Err(Error::InvalidArgument(format!("generator {g} must lie in 1..{n}")));
        }
        if set.binary_search(&(n - g)).is_err() {
            return Err(Error::InvalidArgument(format!("generating set lacks -{g} = {}", n - g)));
        }
    }
    if set.is_empty() {
        return Err(Error::InvalidArgument("empty generating set".into()));
    }
    let mut a = CMatrix::zeros(n, n);
    for x in 0..n {
        for &g in &set {
            a[(x, (x + g) % n)] = real(1.0);
        }
    }
    Graph::from_matrix(a)?.with_regular_degree(set.len() as f64)
}
