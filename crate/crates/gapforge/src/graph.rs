//! Finite oriented multigraphs with edge lengths and their operator matrices.
//!
//! A [`Graph`] stores an orientation map ∂e = (∂₋e, ∂₊e) per edge plus a
//! strictly positive length ℓ_e (default 1).  Functions on vertices carry the
//! degree weight, 1-forms on edges the 1/ℓ weight:
//!
//! ```text
//! ‖F‖² = Σ_v |F(v)|² deg v,        ‖η‖² = Σ_e |η_e|² / ℓ_e.
//! ```
//!
//! All operators are returned in orthonormalised coordinates, i.e. conjugated
//! by diag(√deg) on the vertex side and diag(1/√ℓ) on the edge side, so that
//! they become plain symmetric matrices and one dense eigensolver covers
//! everything.  The spectra are unchanged by this similarity transform.

use std::collections::HashSet;
use std::ops::{Index, IndexMut};

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Dense row-major matrix of `f64`.  Small and deliberately minimal: the
/// toolkit works at desk scale where O(n³) dense methods are fine.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![0.0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = 1.0;
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)];
            }
        }
        t
    }

    /// Plain O(n³) matrix product.
    pub fn matmul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch in matmul");
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == 0.0 {
                    continue;
                }
                for j in 0..other.cols {
                    out[(i, j)] += a * other[(k, j)];
                }
            }
        }
        out
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0_f64, |m, x| m.max(x.abs()))
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|x| x * x).sum::<f64>().sqrt()
    }

    /// Largest |a_ij − a_ji| over all pairs, together with its location.
    pub fn asymmetry(&self) -> (usize, usize, f64) {
        let mut worst = (0, 0, 0.0_f64);
        for i in 0..self.rows {
            for j in (i + 1)..self.cols.min(self.rows) {
                let d = (self[(i, j)] - self[(j, i)]).abs();
                if d > worst.2 {
                    worst = (i, j, d);
                }
            }
        }
        worst
    }

    pub fn column(&self, j: usize) -> Vec<f64> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }
}

impl Index<(usize, usize)> for Matrix {
    type Output = f64;
    fn index(&self, (i, j): (usize, usize)) -> &f64 {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut f64 {
        &mut self.data[i * self.cols + j]
    }
}

/// Which weighted ℓ² space an operator matrix acts on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum WeightMeaning {
    /// Vertex space ℓ²(V, deg), orthonormalised by diag(√deg).
    VertexDegree,
    /// Edge space ℓ²(E, 1/ℓ), orthonormalised by diag(1/√ℓ).
    InverseLength,
    /// Plain unweighted coordinates (adjacency matrix).
    Unweighted,
}

/// An operator matrix tagged with the weight convention of its coordinates.
///
/// Square operators (`laplacian0`, `laplacian1`, `adjacency_matrix`) are
/// symmetric to within 1e−12 relative tolerance and are symmetrised exactly
/// on construction; the coboundary is the rectangular |E|×|V| exception.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightedMatrix {
    pub matrix: Matrix,
    pub weight: WeightMeaning,
}

impl WeightedMatrix {
    /// Wrap a square matrix, checking symmetry (relative 1e−12) and
    /// symmetrising so downstream eigensolves see an exactly symmetric input.
    pub fn symmetric(mut matrix: Matrix, weight: WeightMeaning) -> Result<Self> {
        if !matrix.is_square() {
            return Err(Error::NotSquare {
                rows: matrix.rows(),
                cols: matrix.cols(),
            });
        }
        let scale = matrix.max_abs().max(1.0);
        let (i, j, dev) = matrix.asymmetry();
        if dev > 1e-12 * scale {
            return Err(Error::NotSymmetric {
                i,
                j,
                deviation: dev,
            });
        }
        let n = matrix.rows();
        for a in 0..n {
            for b in (a + 1)..n {
                let m = 0.5 * (matrix[(a, b)] + matrix[(b, a)]);
                matrix[(a, b)] = m;
                matrix[(b, a)] = m;
            }
        }
        Ok(WeightedMatrix { matrix, weight })
    }

    pub fn rectangular(matrix: Matrix, weight: WeightMeaning) -> Self {
        WeightedMatrix { matrix, weight }
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }
}

/// Serialisation form of the graph JSON format:
/// `{"vertices": n, "edges": [[tail, head], ...], "lengths": [l1, ...]}`,
/// `lengths` omitted meaning all 1.
#[derive(Debug, Serialize, Deserialize)]
struct GraphFile {
    vertices: usize,
    edges: Vec<(usize, usize)>,
    #[serde(skip_serializing_if = "Option::is_none")]
    lengths: Option<Vec<f64>>,
}

/// A finite, connected, oriented multigraph with strictly positive edge
/// lengths.  Loops and multi-edges are permitted; a loop counts twice
/// towards its vertex degree.  Connectivity is checked by breadth-first
/// search at construction and disconnected input is a hard error.
#[derive(Debug, Clone, PartialEq)]
pub struct Graph {
    vertex_count: usize,
    edges: Vec<(usize, usize)>,
    lengths: Vec<f64>,
}

impl Graph {
    /// Build a graph with unit edge lengths.
    pub fn new(vertex_count: usize, edges: Vec<(usize, usize)>) -> Result<Self> {
        let n = edges.len();
        Self::with_lengths(vertex_count, edges, vec![1.0; n])
    }

    /// Build a graph with explicit edge lengths (one per edge).
    pub fn with_lengths(
        vertex_count: usize,
        edges: Vec<(usize, usize)>,
        lengths: Vec<f64>,
    ) -> Result<Self> {
        if vertex_count == 0 {
            return Err(Error::EmptyGraph);
        }
        if lengths.len() != edges.len() {
            return Err(Error::LengthCountMismatch {
                edges: edges.len(),
                lengths: lengths.len(),
            });
        }
        for &(t, h) in &edges {
            for v in [t, h] {
                if v >= vertex_count {
                    return Err(Error::VertexOutOfRange {
                        vertex: v,
                        count: vertex_count,
                    });
                }
            }
        }
        for (index, &l) in lengths.iter().enumerate() {
            if l <= 0.0 || !l.is_finite() {
                return Err(Error::NonPositiveLength { index, value: l });
            }
        }
        let g = Graph {
            vertex_count,
            edges,
            lengths,
        };
        if !g.is_connected() {
            return Err(Error::Disconnected);
        }
        Ok(g)
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn lengths(&self) -> &[f64] {
        &self.lengths
    }

    pub fn min_length(&self) -> f64 {
        self.lengths.iter().copied().fold(f64::INFINITY, f64::min)
    }

    fn is_connected(&self) -> bool {
        let mut seen = vec![false; self.vertex_count];
        let mut queue = std::collections::VecDeque::from([0usize]);
        seen[0] = true;
        let mut adjacency: Vec<Vec<usize>> = vec![Vec::new(); self.vertex_count];
        for &(t, h) in &self.edges {
            adjacency[t].push(h);
            adjacency[h].push(t);
        }
        while let Some(v) = queue.pop_front() {
            for &w in &adjacency[v] {
                if !seen[w] {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    /// Degree of `v`: number of emanating edges, loops counted twice.
    pub fn degree(&self, v: usize) -> Result<usize> {
        if v >= self.vertex_count {
            return Err(Error::VertexOutOfRange {
                vertex: v,
                count: self.vertex_count,
            });
        }
        Ok(self.degrees()[v])
    }

    /// All vertex degrees at once.
    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0usize; self.vertex_count];
        for &(t, h) in &self.edges {
            deg[t] += 1;
            deg[h] += 1;
        }
        deg
    }

    /// `true` if the graph has no loops and no multi-edges.
    pub fn is_simple(&self) -> bool {
        let mut seen = HashSet::new();
        for &(t, h) in &self.edges {
            if t == h {
                return false;
            }
            if !seen.insert((t.min(h), t.max(h))) {
                return false;
            }
        }
        true
    }

    /// `Some(k)` if every vertex has degree `k`.
    pub fn regular_degree(&self) -> Option<usize> {
        let deg = self.degrees();
        let k = deg[0];
        deg.iter().all(|&d| d == k).then_some(k)
    }

    /// First Betti number b₁ = |E| − |V| + 1 of a connected graph.
    pub fn first_betti_number(&self) -> usize {
        self.edges.len() + 1 - self.vertex_count
    }

    /// Matrix of the coboundary d : ℓ²(V, deg) → ℓ²(E, 1/ℓ),
    /// (dF)_e = F(∂₊e) − F(∂₋e), in orthonormalised coordinates.
    ///
    /// Row e has entries ±(deg v)^{−1/2} ℓ_e^{−1/2} at the head (+) and tail
    /// (−) columns; a loop row is identically zero, since dF on a loop is
    /// F(v) − F(v).  The weighted adjoint d* becomes the plain transpose in
    /// these coordinates, so Δ⁰ = d*d and Δ¹ = dd* are ordinary symmetric
    /// products.
    pub fn coboundary_matrix(&self) -> WeightedMatrix {
        let deg = self.degrees();
        let mut d = Matrix::zeros(self.edges.len(), self.vertex_count);
        for (e, &(t, h)) in self.edges.iter().enumerate() {
            let w = 1.0 / self.lengths[e].sqrt();
            d[(e, h)] += w / (deg[h] as f64).sqrt();
            d[(e, t)] -= w / (deg[t] as f64).sqrt();
        }
        WeightedMatrix::rectangular(d, WeightMeaning::InverseLength)
    }

    /// Discrete Laplacian on functions, Δ⁰ = d*d, |V|×|V| symmetric.
    ///
    /// Equals the weighted formula
    /// (ΔF)(v) = −(1/deg v) Σ_{e∈E_v} (1/ℓ_e) (F(v_e) − F(v))
    /// conjugated by diag(√deg); with unit lengths this is the normalised
    /// Laplacian, spectrum in [0, 2].
    pub fn laplacian0(&self) -> WeightedMatrix {
        let d = self.coboundary_matrix().matrix;
        let l0 = d.transpose().matmul(&d);
        WeightedMatrix::symmetric(l0, WeightMeaning::VertexDegree)
            .expect("d*d is symmetric by construction")
    }

    /// Discrete Laplacian on 1-forms, Δ¹ = dd*, |E|×|E| symmetric.
    pub fn laplacian1(&self) -> WeightedMatrix {
        let d = self.coboundary_matrix().matrix;
        let l1 = d.matmul(&d.transpose());
        WeightedMatrix::symmetric(l1, WeightMeaning::InverseLength)
            .expect("dd* is symmetric by construction")
    }

    /// Plain 0/1 adjacency matrix; defined for simple graphs only.
    pub fn adjacency_matrix(&self) -> Result<WeightedMatrix> {
        if !self.is_simple() {
            return Err(Error::NotSimple(
                "adjacency matrix requires no loops or multi-edges",
            ));
        }
        let mut a = Matrix::zeros(self.vertex_count, self.vertex_count);
        for &(t, h) in &self.edges {
            a[(t, h)] = 1.0;
            a[(h, t)] = 1.0;
        }
        WeightedMatrix::symmetric(a, WeightMeaning::Unweighted)
    }

    /// Relabel vertices by a permutation (`perm[old] = new`).
    pub fn relabel(&self, perm: &[usize]) -> Result<Graph> {
        if perm.len() != self.vertex_count {
            return Err(Error::BadParameter(format!(
                "permutation length {} does not match vertex count {}",
                perm.len(),
                self.vertex_count
            )));
        }
        let mut seen = vec![false; self.vertex_count];
        for &p in perm {
            if p >= self.vertex_count || seen[p] {
                return Err(Error::BadParameter("not a permutation".into()));
            }
            seen[p] = true;
        }
        let edges = self
            .edges
            .iter()
            .map(|&(t, h)| (perm[t], perm[h]))
            .collect();
        Graph::with_lengths(self.vertex_count, edges, self.lengths.clone())
    }

    /// Parse the graph JSON format (`lengths` omitted means all 1).
    pub fn from_json_str(s: &str) -> Result<Graph> {
        let file: GraphFile = serde_json::from_str(s).map_err(|e| {
            Error::GraphParse(format!("line {}, column {}: {}", e.line(), e.column(), e))
        })?;
        match file.lengths {
            Some(lengths) => Graph::with_lengths(file.vertices, file.edges, lengths),
            None => Graph::new(file.vertices, file.edges),
        }
    }

    /// Serialise to the graph JSON format; `lengths` is omitted when all
    /// lengths are exactly 1.
    pub fn to_json_string(&self) -> String {
        let lengths = if self.lengths.iter().all(|&l| l == 1.0) {
            None
        } else {
            Some(self.lengths.clone())
        };
        let file = GraphFile {
            vertices: self.vertex_count,
            edges: self.edges.clone(),
            lengths,
        };
        serde_json::to_string(&file).expect("graph serialisation cannot fail")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::standard;

    #[test]
    fn degree_counts_loops_twice() {
        let g = Graph::new(1, vec![(0, 0)]).unwrap();
        assert_eq!(g.degree(0).unwrap(), 2);
    }

    #[test]
    fn degree_complete_graph() {
        let g = standard::complete(4).unwrap();
        for v in 0..4 {
            assert_eq!(g.degree(v).unwrap(), 3);
        }
    }

    #[test]
    fn degree_path_midpoint() {
        let g = standard::path(3).unwrap();
        assert_eq!(g.degree(1).unwrap(), 2);
        assert_eq!(g.degree(0).unwrap(), 1);
    }

    #[test]
    fn degree_out_of_range() {
        let g = standard::path(3).unwrap();
        assert!(matches!(g.degree(3), Err(Error::VertexOutOfRange { .. })));
    }

    #[test]
    fn disconnected_rejected() {
        let err = Graph::new(4, vec![(0, 1), (2, 3)]).unwrap_err();
        assert!(matches!(err, Error::Disconnected));
    }

    #[test]
    fn nonpositive_length_rejected() {
        let err = Graph::with_lengths(2, vec![(0, 1)], vec![0.0]).unwrap_err();
        assert!(matches!(err, Error::NonPositiveLength { .. }));
    }

    #[test]
    fn coboundary_single_edge() {
        let g = standard::path(2).unwrap();
        let d = g.coboundary_matrix().matrix;
        assert_eq!((d.rows(), d.cols()), (1, 2));
        assert!((d[(0, 0)] + 1.0).abs() < 1e-15);
        assert!((d[(0, 1)] - 1.0).abs() < 1e-15);
    }

    #[test]
    fn coboundary_loop_row_is_zero() {
        let g = Graph::new(1, vec![(0, 0)]).unwrap();
        let d = g.coboundary_matrix().matrix;
        assert_eq!((d.rows(), d.cols()), (1, 1));
        assert_eq!(d[(0, 0)], 0.0);
    }

    #[test]
    fn laplacian1_loop_is_zero() {
        let g = Graph::new(1, vec![(0, 0)]).unwrap();
        let l1 = g.laplacian1().matrix;
        assert_eq!(l1[(0, 0)], 0.0);
    }

    #[test]
    fn laplacian1_single_edge_is_two() {
        let g = standard::path(2).unwrap();
        let l1 = g.laplacian1().matrix;
        assert!((l1[(0, 0)] - 2.0).abs() < 1e-14);
    }

    // d*d must reproduce the weighted Laplacian formula entrywise, for unit
    // lengths (K4) and for a multigraph with loops and non-unit lengths.
    #[test]
    fn coboundary_product_matches_weighted_formula() {
        let graphs = [
            standard::complete(4).unwrap(),
            Graph::with_lengths(
                3,
                vec![(0, 1), (1, 2), (2, 0), (0, 1), (1, 1)],
                vec![0.5, 2.0, 1.0, 3.0, 0.25],
            )
            .unwrap(),
        ];
        for g in graphs {
            let deg = g.degrees();
            let n = g.vertex_count();
            let mut expected = Matrix::zeros(n, n);
            for (e, &(t, h)) in g.edges().iter().enumerate() {
                if t == h {
                    continue; // a loop term F(v) − F(v) drops out entirely
                }
                let w = 1.0 / g.lengths()[e];
                expected[(t, t)] += w / deg[t] as f64;
                expected[(h, h)] += w / deg[h] as f64;
                let s = 1.0 / ((deg[t] as f64) * (deg[h] as f64)).sqrt();
                expected[(t, h)] -= w * s;
                expected[(h, t)] -= w * s;
            }
            let l0 = g.laplacian0().matrix;
            for i in 0..n {
                for j in 0..n {
                    assert!(
                        (l0[(i, j)] - expected[(i, j)]).abs() < 1e-12,
                        "mismatch at ({i},{j}): {} vs {}",
                        l0[(i, j)],
                        expected[(i, j)]
                    );
                }
            }
        }
    }

    #[test]
    fn adjacency_rejects_loops_and_multi_edges() {
        let loopy = Graph::new(2, vec![(0, 1), (1, 1)]).unwrap();
        assert!(matches!(loopy.adjacency_matrix(), Err(Error::NotSimple(_))));
        let multi = Graph::new(2, vec![(0, 1), (0, 1)]).unwrap();
        assert!(matches!(multi.adjacency_matrix(), Err(Error::NotSimple(_))));
    }

    #[test]
    fn json_round_trip() {
        let g = Graph::with_lengths(3, vec![(0, 1), (1, 2), (2, 0)], vec![1.0, 2.0, 0.5]).unwrap();
        let s = g.to_json_string();
        let back = Graph::from_json_str(&s).unwrap();
        assert_eq!(g, back);
        // unit lengths are omitted
        let g1 = standard::cycle(3).unwrap();
        assert!(!g1.to_json_string().contains("lengths"));
        assert_eq!(Graph::from_json_str(&g1.to_json_string()).unwrap(), g1);
    }

    #[test]
    fn json_parse_error_has_position() {
        let err = Graph::from_json_str("{\"vertices\": 2, \"edges\": [[0,").unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("line"), "{msg}");
    }
}
