//! Automorphisms of small graphs by backtracking over vertex images.

use super::group::RepresentedGroup;
use crate::error::{Error, Result};
use crate::linalg::{real, CMatrix, C64};

/// Largest graph accepted by the brute-force automorphism search.
pub const MAX_AUTOMORPHISM_N: usize = 8;
const WEIGHT_TOL: f64 = 1e-10;

/// All permutations `π` with `A[π(i)][π(j)] = A[i][j]`, i.e.
/// `P_π A P_π* = A`, in lexicographic order of `(π(0), π(1), ..)`.
pub fn graph_automorphisms(a: &CMatrix) -> Result<Vec<Vec<usize>>> {
    let n = a.square_dim("adjacency matrix")?;
    if n > MAX_AUTOMORPHISM_N {
        return Err(Error::TooLarge(format!(
            "automorphism search needs n <= {MAX_AUTOMORPHISM_N}, got {n}"
        )));
    }
    let mut found = Vec::new();
    let mut image = Vec::with_capacity(n);
    let mut used = vec![false; n];
    extend(a, n, &mut image, &mut used, &mut found);
    Ok(found)
}

fn extend(a: &CMatrix, n: usize, image: &mut Vec<usize>, used: &mut [bool], found: &mut Vec<Vec<usize>>) {
    let i = image.len();
    if i == n {
        found.push(image.clone());
        return;
    }
    for v in 0..n {
        if used[v] {
            continue;
        }
        image.push(v);
        let consistent = (0..=i).all(|j| {
            (a[(v, image[j])] - a[(i, j)]).norm() <= WEIGHT_TOL && (a[(image[j], v)] - a[(j, i)]).norm() <= WEIGHT_TOL
        });
        if consistent {
            used[v] = true;
            extend(a, n, image, used, found);
            used[v] = false;
        }
        image.pop();
    }
}

/// Whether the automorphism group moves vertex 0 to every vertex.
pub fn is_vertex_transitive(a: &CMatrix) -> Result<bool> {
    let n = a.square_dim("adjacency matrix")?;
    let autos = graph_automorphisms(a)?;
    let mut reached = vec![false; n];
    for p in &autos {
        reached[p[0]] = true;
    }
    Ok(reached.iter().all(|&r| r))
}

/// `P_π` with `P_π e_i = e_{π(i)}`.
pub fn permutation_matrix(perm: &[usize]) -> CMatrix {
    let n = perm.len();
    let mut p = CMatrix::zeros(n, n);
    for (i, &pi) in perm.iter().enumerate() {
        p[(pi, i)] = real(1.0);
    }
    p
}

/// A group making `Φ_A` irreducibly covariant for a vertex-transitive `A`:
/// one automorphism sending vertex 0 to each vertex, plus the diagonal
/// phase matrices `diag(1, .., ω, .., 1)` with `ω = e^{2πi/8}`, with the
/// full phase torus averaged in closed form.
pub fn transitive_cover_group(a: &CMatrix) -> Result<RepresentedGroup> {
    let n = a.square_dim("adjacency matrix")?;
    let autos = graph_automorphisms(a)?;
    let mut generators = Vec::new();
    for v in 0..n {
        let perm = autos.iter().find(|p| p[0] == v).ok_or(Error::NotVertexTransitive)?;
        if perm.iter().enumerate().any(|(i, &p)| i != p) {
            generators.push(permutation_matrix(perm));
        }
    }
    let omega = C64::from_polar(1.0, std::f64::consts::TAU / 8.0);
    for k in 0..n {
        let mut d = vec![real(1.0); n];
        d[k] = omega;
        generators.push(CMatrix::from_diag(&d));
    }
    RepresentedGroup::finite_symmetric(generators, true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channels::Graph;
    use crate::symmetry::{check_covariance, is_irreducible};

    fn adjacency(n: usize, edges: &[(usize, usize)]) -> CMatrix {
        Graph::from_edges(n, edges).unwrap().adjacency().clone()
    }

    #[test]
    fn automorphism_counts() {
        let c5 = adjacency(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]);
        assert_eq!(graph_automorphisms(&c5).unwrap().len(), 10);
        let path = adjacency(3, &[(0, 1), (1, 2)]);
        assert_eq!(graph_automorphisms(&path).unwrap().len(), 2);
        let k4 = adjacency(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]);
        assert_eq!(graph_automorphisms(&k4).unwrap().len(), 24);
        assert!(is_vertex_transitive(&c5).unwrap());
        assert!(!is_vertex_transitive(&path).unwrap());
        assert!(is_vertex_transitive(&k4).unwrap());
        assert!(graph_automorphisms(&CMatrix::zeros(9, 9)).is_err());
    }

    #[test]
    fn automorphisms_preserve_adjacency() {
        let c5 = adjacency(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]);
        for perm in graph_automorphisms(&c5).unwrap() {
            let p = permutation_matrix(&perm);
            assert_eq!(c5.conjugate_by(&p), c5);
        }
    }

    #[test]
    fn cover_group() {
        let c5 = adjacency(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]);
        let g = transitive_cover_group(&c5).unwrap();
        assert!(is_irreducible(&g, 1e-12, 0).unwrap().irreducible);
        let phi = crate::channels::embed_graph(&c5.scale_real(0.5)).unwrap();
        assert!(check_covariance(&phi, &g, 1e-12, 0).unwrap().verdict);
        let k4 = adjacency(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]);
        assert!(is_irreducible(&transitive_cover_group(&k4).unwrap(), 1e-12, 0).unwrap().irreducible);
        let path = adjacency(3, &[(0, 1), (1, 2)]);
        assert!(matches!(transitive_cover_group(&path), Err(Error::NotVertexTransitive)));
    }
}
