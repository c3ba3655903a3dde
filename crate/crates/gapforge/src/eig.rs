//! Dense symmetric eigendecomposition and eigenvalue grouping.
//!
//! The kernel is a cyclic Jacobi sweep (Numerical Recipes style): absolutely
//! reliable for real symmetric matrices, fully deterministic, and accurate to
//! machine precision at the desk-scale dimensions this toolkit targets.
//! Every spectral module in the crate funnels through [`eigensolve_symmetric`].

use serde::Serialize;

use crate::graph::{Matrix, WeightedMatrix};
use crate::{Error, Result};

/// Default relative tolerance for grouping raw eigenvalues into multiplets.
pub const DEFAULT_GROUPING_TOL: f64 = 1e-9;

/// Result of a symmetric eigensolve: ascending eigenvalues and the matching
/// orthonormal eigenvectors as columns of `vectors`.
#[derive(Debug, Clone)]
pub struct EigenDecomposition {
    pub values: Vec<f64>,
    pub vectors: Matrix,
}

/// Grouped spectrum: strictly increasing values with multiplicities.
///
/// Two raw eigenvalues land in one group iff their gap is at most
/// `tolerance · max(1, |value|)`; group values are means.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Spectrum {
    pub values: Vec<f64>,
    pub multiplicities: Vec<usize>,
    pub tolerance: f64,
}

impl Spectrum {
    /// Total eigenvalue count, Σ multiplicities.
    pub fn dim(&self) -> usize {
        self.multiplicities.iter().sum()
    }

    /// Pairs `(value, multiplicity)` in ascending order.
    pub fn iter(&self) -> impl Iterator<Item = (f64, usize)> + '_ {
        self.values
            .iter()
            .copied()
            .zip(self.multiplicities.iter().copied())
    }

    /// Groups with `|value| > tol` (absolute).
    pub fn nonzero(&self, tol: f64) -> impl Iterator<Item = (f64, usize)> + '_ {
        self.iter().filter(move |(v, _)| v.abs() > tol)
    }

    /// Multiplicity of the group within `tol` of `x`, or 0.
    pub fn multiplicity_near(&self, x: f64, tol: f64) -> usize {
        self.iter()
            .find(|(v, _)| (v - x).abs() <= tol)
            .map(|(_, m)| m)
            .unwrap_or(0)
    }
}

/// Eigendecomposition of a symmetric matrix by cyclic Jacobi rotations.
///
/// Requires symmetry within 1e−10 relative to the largest entry; the input is
/// symmetrised exactly before sweeping.  Output is deterministic for
/// identical input: the sweep order is fixed and ties in the final sort are
/// broken by original index.
pub fn eigensolve_symmetric(m: &WeightedMatrix) -> Result<EigenDecomposition> {
    let a = &m.matrix;
    if a.rows() == 0 {
        return Err(Error::EmptyMatrix);
    }
    if !a.is_square() {
        return Err(Error::NotSquare {
            rows: a.rows(),
            cols: a.cols(),
        });
    }
    let scale = a.max_abs().max(1.0);
    let (i, j, dev) = a.asymmetry();
    if dev > 1e-10 * scale {
        return Err(Error::NotSymmetric {
            i,
            j,
            deviation: dev,
        });
    }
    let n = a.rows();
    let mut work = a.clone();
    for p in 0..n {
        for q in (p + 1)..n {
            let s = 0.5 * (work[(p, q)] + work[(q, p)]);
            work[(p, q)] = s;
            work[(q, p)] = s;
        }
    }
    let (values, vectors) = jacobi(work);

    // sort ascending, ties by original index, and permute eigenvector columns
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&x, &y| values[x].total_cmp(&values[y]).then(x.cmp(&y)));
    let sorted_values: Vec<f64> = order.iter().map(|&k| values[k]).collect();
    let mut sorted_vectors = Matrix::zeros(n, n);
    for (new_col, &old_col) in order.iter().enumerate() {
        for row in 0..n {
            sorted_vectors[(row, new_col)] = vectors[(row, old_col)];
        }
    }
    Ok(EigenDecomposition {
        values: sorted_values,
        vectors: sorted_vectors,
    })
}

/// Cyclic Jacobi with the classic convergence schedule: threshold sweeps
/// first, then rotate every non-zero off-diagonal entry until the
/// off-diagonal sum underflows to zero.
fn jacobi(mut a: Matrix) -> (Vec<f64>, Matrix) {
    let n = a.rows();
    let mut v = Matrix::identity(n);
    let mut d: Vec<f64> = (0..n).map(|i| a[(i, i)]).collect();
    let mut b = d.clone();
    let mut z = vec![0.0; n];

    for sweep in 0..64 {
        let mut off = 0.0;
        for p in 0..n {
            for q in (p + 1)..n {
                off += a[(p, q)].abs();
            }
        }
        if off == 0.0 {
            break;
        }
        let tresh = if sweep < 3 {
            0.2 * off / ((n * n) as f64)
        } else {
            0.0
        };

        for p in 0..n.saturating_sub(1) {
            for q in (p + 1)..n {
                let g = 100.0 * a[(p, q)].abs();
                if sweep > 3 && d[p].abs() + g == d[p].abs() && d[q].abs() + g == d[q].abs() {
                    a[(p, q)] = 0.0;
                } else if a[(p, q)].abs() > tresh {
                    let apq = a[(p, q)];
                    let h = d[q] - d[p];
                    let t = if h.abs() + g == h.abs() {
                        apq / h
                    } else {
                        let theta = 0.5 * h / apq;
                        let mut t = 1.0 / (theta.abs() + (1.0 + theta * theta).sqrt());
                        if theta < 0.0 {
                            t = -t;
                        }
                        t
                    };
                    let c = 1.0 / (1.0 + t * t).sqrt();
                    let s = t * c;
                    let tau = s / (1.0 + c);
                    let h = t * apq;
                    z[p] -= h;
                    z[q] += h;
                    d[p] -= h;
                    d[q] += h;
                    a[(p, q)] = 0.0;

                    let rotate = |a: &mut Matrix, i: usize, j: usize, k: usize, l: usize| {
                        let g = a[(i, j)];
                        let h = a[(k, l)];
                        a[(i, j)] = g - s * (h + g * tau);
                        a[(k, l)] = h + s * (g - h * tau);
                    };
                    for j in 0..p {
                        rotate(&mut a, j, p, j, q);
                    }
                    for j in (p + 1)..q {
                        rotate(&mut a, p, j, j, q);
                    }
                    for j in (q + 1)..n {
                        rotate(&mut a, p, j, q, j);
                    }
                    for j in 0..n {
                        rotate(&mut v, j, p, j, q);
                    }
                }
            }
        }

        for i in 0..n {
            b[i] += z[i];
            d[i] = b[i];
            z[i] = 0.0;
        }
    }
    (d, v)
}

/// Group a sorted raw eigenvalue sequence into a [`Spectrum`].
///
/// Panics if `raw` is not sorted ascending or `tol <= 0` (caller contract).
pub fn group_spectrum(raw: &[f64], tol: f64) -> Spectrum {
    assert!(tol > 0.0, "grouping tolerance must be positive");
    assert!(
        raw.windows(2).all(|w| w[0] <= w[1]),
        "raw eigenvalues must be sorted ascending"
    );
    let mut values = Vec::new();
    let mut multiplicities = Vec::new();
    let mut i = 0;
    while i < raw.len() {
        let mut j = i + 1;
        let mut sum = raw[i];
        while j < raw.len() {
            let gap = raw[j] - raw[j - 1];
            if gap <= tol * raw[j].abs().max(raw[j - 1].abs()).max(1.0) {
                sum += raw[j];
                j += 1;
            } else {
                break;
            }
        }
        values.push(sum / ((j - i) as f64));
        multiplicities.push(j - i);
        i = j;
    }
    Spectrum {
        values,
        multiplicities,
        tolerance: tol,
    }
}

/// Eigensolve followed by grouping: the everyday entry point.
pub fn spectrum_of(m: &WeightedMatrix, tol: f64) -> Result<Spectrum> {
    if tol <= 0.0 || !tol.is_finite() {
        return Err(Error::BadParameter(format!(
            "grouping tolerance must be positive, got {tol}"
        )));
    }
    let eig = eigensolve_symmetric(m)?;
    Ok(group_spectrum(&eig.values, tol))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::WeightMeaning;

    fn wrap(m: Matrix) -> WeightedMatrix {
        WeightedMatrix::symmetric(m, WeightMeaning::Unweighted).unwrap()
    }

    #[test]
    fn identity_spectrum() {
        let eig = eigensolve_symmetric(&wrap(Matrix::identity(3))).unwrap();
        for v in &eig.values {
            assert!((v - 1.0).abs() < 1e-14);
        }
    }

    #[test]
    fn reflection_spectrum() {
        let mut m = Matrix::zeros(2, 2);
        m[(0, 1)] = 1.0;
        m[(1, 0)] = 1.0;
        let eig = eigensolve_symmetric(&wrap(m)).unwrap();
        assert!((eig.values[0] + 1.0).abs() < 1e-14);
        assert!((eig.values[1] - 1.0).abs() < 1e-14);
    }

    #[test]
    fn complete_graph_laplacian_spectrum() {
        // closed form for K_n (normalised Laplacian): {0, n/(n−1) with multiplicity n−1}
        let g = crate::construct::standard::complete(4).unwrap();
        let eig = eigensolve_symmetric(&g.laplacian0()).unwrap();
        assert!(eig.values[0].abs() < 1e-12);
        for v in &eig.values[1..] {
            assert!((v - 4.0 / 3.0).abs() < 1e-12, "got {v}");
        }
    }

    #[test]
    fn cycle_laplacian_matches_circulant_closed_form() {
        // C_n eigenvalues are 1 − cos(2πm/n), m = 0..n−1
        let g = crate::construct::standard::cycle(5).unwrap();
        let eig = eigensolve_symmetric(&g.laplacian0()).unwrap();
        let mut expected: Vec<f64> = (0..5)
            .map(|m| 1.0 - (2.0 * std::f64::consts::PI * m as f64 / 5.0).cos())
            .collect();
        expected.sort_by(f64::total_cmp);
        for (got, want) in eig.values.iter().zip(expected.iter()) {
            assert!((got - want).abs() < 1e-12, "{got} vs {want}");
        }
    }

    #[test]
    fn single_edge_laplacian_spectrum() {
        let g = crate::construct::standard::path(2).unwrap();
        let eig = eigensolve_symmetric(&g.laplacian0()).unwrap();
        assert!(eig.values[0].abs() < 1e-14);
        assert!((eig.values[1] - 2.0).abs() < 1e-14);
    }

    #[test]
    fn path_laplacian_matches_closed_form() {
        // normalised path Laplacian eigenvalues are 1 − cos(πk/(n−1))
        let n = 8;
        let g = crate::construct::standard::path(n).unwrap();
        let eig = eigensolve_symmetric(&g.laplacian0()).unwrap();
        let expected: Vec<f64> = (0..n)
            .map(|k| 1.0 - (std::f64::consts::PI * k as f64 / (n as f64 - 1.0)).cos())
            .collect();
        for (got, want) in eig.values.iter().zip(expected.iter()) {
            assert!((got - want).abs() < 1e-12, "{got} vs {want}");
        }
    }

    #[test]
    fn rejects_nonsymmetric_and_empty() {
        let mut m = Matrix::zeros(2, 2);
        m[(0, 1)] = 1.0;
        let wm = WeightedMatrix::rectangular(m, WeightMeaning::Unweighted);
        assert!(matches!(
            eigensolve_symmetric(&wm),
            Err(Error::NotSymmetric { .. })
        ));
        let empty = WeightedMatrix::rectangular(Matrix::zeros(0, 0), WeightMeaning::Unweighted);
        assert!(matches!(
            eigensolve_symmetric(&empty),
            Err(Error::EmptyMatrix)
        ));
    }

    #[test]
    fn deterministic_output() {
        let g = crate::construct::standard::complete(5).unwrap();
        let a = eigensolve_symmetric(&g.laplacian0()).unwrap();
        let b = eigensolve_symmetric(&g.laplacian0()).unwrap();
        assert_eq!(a.values, b.values);
        for i in 0..5 {
            for j in 0..5 {
                assert_eq!(a.vectors[(i, j)], b.vectors[(i, j)]);
            }
        }
    }

    #[test]
    fn grouping_basic() {
        let s = group_spectrum(&[0.0, 1e-12, 1.0], 1e-9);
        assert_eq!(s.multiplicities, vec![2, 1]);
        assert!(s.values[0].abs() < 1e-12);
        assert!((s.values[1] - 1.0).abs() < 1e-15);

        let s = group_spectrum(&[0.0, 0.5, 1.0], 1e-9);
        assert_eq!(s.multiplicities, vec![1, 1, 1]);
    }

    #[test]
    fn grouping_petersen_adjacency() {
        let g = crate::construct::standard::petersen();
        let s = spectrum_of(&g.adjacency_matrix().unwrap(), 1e-9).unwrap();
        assert_eq!(s.multiplicities, vec![4, 5, 1]);
        assert!((s.values[0] + 2.0).abs() < 1e-10);
        assert!((s.values[1] - 1.0).abs() < 1e-10);
        assert!((s.values[2] - 3.0).abs() < 1e-10);
    }
}
