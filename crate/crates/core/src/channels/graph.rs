use std::collections::BTreeSet;
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::superop::{embed_graph, Superoperator};
use crate::error::{Error, Result};
use crate::linalg::{real, CMatrix, C64};

const REGULARITY_TOL: f64 = 1e-10;

/// A (possibly weighted) graph on vertices `0..n`.
///
/// `adjacency` holds raw weights (0/1 counts for simple graphs). When
/// `regular_degree` is set, every row and column sums to it and
/// [`Graph::normalized_adjacency`] divides by it.
#[derive(Clone, Debug, PartialEq)]
pub struct Graph {
    n: usize,
    adjacency: CMatrix,
    regular_degree: Option<f64>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct GraphJson {
    n: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    edges: Option<Vec<[usize; 2]>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    matrix: Option<CMatrix>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    regular_degree: Option<f64>,
}

impl Graph {
    pub fn from_matrix(adjacency: CMatrix) -> Result<Self> {
        let n = adjacency.square_dim("adjacency matrix")?;
        Ok(Graph {
            n,
            adjacency,
            regular_degree: None,
        })
    }

    /// Undirected simple graph from an edge list; repeated edges (in either
    /// orientation) and out-of-range endpoints are rejected. A loop `[u, u]`
    /// adds one to the diagonal.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidArgument("graph needs at least one vertex".into()));
        }
        let mut seen = BTreeSet::new();
        let mut a = CMatrix::zeros(n, n);
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::InvalidArgument(format!("edge [{u}, {v}] out of range for n = {n}")));
            }
            if !seen.insert((u.min(v), u.max(v))) {
                return Err(Error::InvalidArgument(format!("duplicate edge [{u}, {v}]")));
            }
            a[(u, v)] = real(1.0);
            a[(v, u)] = real(1.0);
        }
        Self::from_matrix(a)
    }

    /// Declares the graph `d`-regular after checking every row and column sum.
    pub fn with_regular_degree(mut self, d: f64) -> Result<Self> {
        if !(d > 0.0) || !d.is_finite() {
            return Err(Error::InvalidArgument(format!("regular degree must be positive, got {d}")));
        }
        let worst = self.worst_degree_deviation(d);
        if worst > REGULARITY_TOL * d.max(1.0) {
            return Err(Error::InvalidArgument(format!(
                "graph is not {d}-regular (row/column sum off by {worst:e})"
            )));
        }
        self.regular_degree = Some(d);
        Ok(self)
    }

    fn worst_degree_deviation(&self, d: f64) -> f64 {
        let n = self.n;
        let target = real(d);
        (0..n)
            .flat_map(|i| {
                let row: C64 = (0..n).map(|j| self.adjacency[(i, j)]).sum();
                let col: C64 = (0..n).map(|j| self.adjacency[(j, i)]).sum();
                [(row - target).norm(), (col - target).norm()]
            })
            .fold(0.0, f64::max)
    }

    /// The common row/column sum, if there is a positive real one.
    pub fn detect_regular_degree(&self) -> Option<f64> {
        let d: C64 = (0..self.n).map(|j| self.adjacency[(0, j)]).sum();
        if d.im.abs() > REGULARITY_TOL || d.re <= REGULARITY_TOL {
            return None;
        }
        (self.worst_degree_deviation(d.re) <= REGULARITY_TOL * d.re.max(1.0)).then_some(d.re)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn adjacency(&self) -> &CMatrix {
        &self.adjacency
    }

    pub fn regular_degree(&self) -> Option<f64> {
        self.regular_degree
    }

    /// `A / d` when the degree is known, otherwise the raw weights.
    pub fn normalized_adjacency(&self) -> CMatrix {
        match self.regular_degree {
            Some(d) => self.adjacency.scale_real(1.0 / d),
            None => self.adjacency.clone(),
        }
    }

    /// `Φ_A` for the normalized adjacency.
    pub fn embed(&self) -> Superoperator {
        embed_graph(&self.normalized_adjacency()).expect("square adjacency")
    }

    pub fn from_json_str(text: &str) -> Result<Self> {
        let raw: GraphJson = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        let graph = match (raw.edges, raw.matrix) {
            (Some(edges), None) => {
                let pairs: Vec<(usize, usize)> = edges.iter().map(|&[u, v]| (u, v)).collect();
                Graph::from_edges(raw.n, &pairs)?
            }
            (None, Some(m)) => {
                if m.rows() != raw.n || m.cols() != raw.n {
                    return Err(Error::Parse(format!(
                        "\"n\" = {} but matrix is {}x{}",
                        raw.n,
                        m.rows(),
                        m.cols()
                    )));
                }
                Graph::from_matrix(m)?
            }
            _ => {
                return Err(Error::Parse(
                    "graph JSON needs exactly one of \"edges\" or \"matrix\"".into(),
                ))
            }
        };
        match raw.regular_degree {
            Some(d) => graph.with_regular_degree(d),
            None => Ok(graph),
        }
    }

    pub fn from_json_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Io {
            path: path.display().to_string(),
            message: e.to_string(),
        })?;
        Self::from_json_str(&text)
    }

    /// Serializes as `{"n":..,"matrix":..}` (plus the degree when known).
    pub fn to_json_string(&self) -> String {
        serde_json::to_string(&GraphJson {
            n: self.n,
            edges: None,
            matrix: Some(self.adjacency.clone()),
            regular_degree: self.regular_degree,
        })
        .expect("graph serializes")
    }
}
