//! Derived spectral quantities of discrete graphs: spectral gap length γ(G),
//! Ramanujan certification, bipartiteness, and the supersymmetry check
//! between Δ⁰ and Δ¹.

use serde::Serialize;

use crate::eig::{group_spectrum, spectrum_of, Spectrum, DEFAULT_GROUPING_TOL};
use crate::graph::Graph;
use crate::{Error, Result};

/// Absolute tolerance for deciding whether an eigenvalue equals 0 or 2 when
/// excluding the trivial spectrum (dense eigensolver accuracy budget).
pub const TRIVIAL_EIGENVALUE_TOL: f64 = 1e-9;

/// Verdict of a Ramanujan check on a k-regular simple connected graph.
#[derive(Debug, Clone, Serialize)]
pub struct RamanujanReport {
    /// Regularity degree k.
    pub degree: usize,
    /// Optimal-expander threshold 2√(k−1)/k.
    pub threshold: f64,
    /// max |1 − μ| over the nontrivial Laplacian spectrum (μ = 0 excluded;
    /// μ = 2 also excluded in the bipartite case).
    pub worst_deviation: f64,
    pub is_ramanujan: bool,
    /// Spectral gap length γ(G) = min{μ, 2−μ : μ ∈ σ(Δ)∖{0,2}}.
    pub gap_length: f64,
    pub bipartite: bool,
}

fn laplacian_spectrum(g: &Graph) -> Spectrum {
    spectrum_of(&g.laplacian0(), DEFAULT_GROUPING_TOL)
        .expect("graph Laplacians are symmetric and nonempty")
}

fn require_simple_regular(g: &Graph, min_degree: usize) -> Result<usize> {
    if !g.is_simple() {
        return Err(Error::NotSimple(
            "spectral gap quantities assume a simple graph",
        ));
    }
    let degrees = g.degrees();
    let k = match g.regular_degree() {
        Some(k) => k,
        None => {
            let min = degrees.iter().copied().min().unwrap_or(0);
            let max = degrees.iter().copied().max().unwrap_or(0);
            return Err(Error::NotRegular { min, max });
        }
    };
    if k < min_degree {
        return Err(Error::DegreeTooSmall {
            degree: k,
            min: min_degree,
        });
    }
    Ok(k)
}

/// Nontrivial Laplacian eigenvalues: σ(Δ)∖{0,2} within [`TRIVIAL_EIGENVALUE_TOL`].
fn nontrivial(spectrum: &Spectrum) -> Vec<(f64, usize)> {
    spectrum
        .iter()
        .filter(|(mu, _)| {
            mu.abs() > TRIVIAL_EIGENVALUE_TOL && (mu - 2.0).abs() > TRIVIAL_EIGENVALUE_TOL
        })
        .collect()
}

/// Spectral gap length γ(G) = min{μ, 2−μ : μ ∈ σ(Δ_G)∖{0,2}} of a simple
/// connected k-regular graph (k ≥ 2).
///
/// Equivalently 1 − (1/k)·max{|α| : α ∈ σ(A_G), |α| < k}; the equality of the
/// two routes is exercised in the property tests.
pub fn spectral_gap_length(g: &Graph) -> Result<f64> {
    // degree 1 is admitted only to surface the empty-spectrum error for K2
    require_simple_regular(g, 1)?;
    let spectrum = laplacian_spectrum(g);
    let nontrivial = nontrivial(&spectrum);
    if nontrivial.is_empty() {
        return Err(Error::TrivialSpectrumEmpty);
    }
    Ok(nontrivial
        .iter()
        .map(|(mu, _)| mu.min(2.0 - mu))
        .fold(f64::INFINITY, f64::min))
}

/// Check the Ramanujan property of a simple connected k-regular graph, k ≥ 3:
/// the nontrivial Laplacian spectrum must deviate from 1 by at most
/// 2√(k−1)/k.
///
/// The trivial eigenvalue μ = 0 (and μ = 2 for bipartite graphs) is excluded
/// from the deviation, matching the adjacency-side convention that ±k are the
/// trivial eigenvalues; with μ = 0 included no finite graph could qualify.
pub fn ramanujan_check(g: &Graph) -> Result<RamanujanReport> {
    let k = require_simple_regular(g, 3)?;
    let spectrum = laplacian_spectrum(g);
    let bipartite = bipartite_from_spectrum(g, &spectrum);
    let threshold = 2.0 * ((k - 1) as f64).sqrt() / k as f64;

    let deviation_set: Vec<f64> = spectrum
        .iter()
        .filter(|(mu, _)| {
            mu.abs() > TRIVIAL_EIGENVALUE_TOL
                && (!bipartite || (mu - 2.0).abs() > TRIVIAL_EIGENVALUE_TOL)
        })
        .map(|(mu, _)| (1.0 - mu).abs())
        .collect();
    if deviation_set.is_empty() {
        return Err(Error::TrivialSpectrumEmpty);
    }
    let worst_deviation = deviation_set.into_iter().fold(0.0_f64, f64::max);

    let gap_length = spectral_gap_length(g)?;
    Ok(RamanujanReport {
        degree: k,
        threshold,
        worst_deviation,
        is_ramanujan: worst_deviation <= threshold + 1e-9,
        gap_length,
        bipartite,
    })
}

/// Bipartiteness: 2 ∈ σ(Δ_G) within tolerance, cross-checked against a
/// BFS 2-colouring.  The two routes must agree; a mismatch would mean the
/// eigensolver missed its accuracy budget, which is asserted.
pub fn is_bipartite(g: &Graph) -> bool {
    let spectrum = laplacian_spectrum(g);
    bipartite_from_spectrum(g, &spectrum)
}

fn bipartite_from_spectrum(g: &Graph, spectrum: &Spectrum) -> bool {
    let spectral = spectrum.multiplicity_near(2.0, TRIVIAL_EIGENVALUE_TOL) > 0;
    let colouring = two_colourable(g);
    assert_eq!(
        spectral, colouring,
        "spectral bipartiteness (2 in spectrum) disagrees with BFS 2-colouring"
    );
    spectral
}

fn two_colourable(g: &Graph) -> bool {
    let n = g.vertex_count();
    let mut adjacency: Vec<Vec<usize>> = vec![Vec::new(); n];
    for &(t, h) in g.edges() {
        if t == h {
            return false; // a loop is an odd cycle
        }
        adjacency[t].push(h);
        adjacency[h].push(t);
    }
    let mut colour = vec![-1i8; n];
    colour[0] = 0;
    let mut queue = std::collections::VecDeque::from([0usize]);
    while let Some(v) = queue.pop_front() {
        for &w in &adjacency[v] {
            if colour[w] == -1 {
                colour[w] = 1 - colour[v];
                queue.push_back(w);
            } else if colour[w] == colour[v] {
                return false;
            }
        }
    }
    true
}

/// Outcome of the supersymmetry verification between Δ⁰ and Δ¹.
#[derive(Debug, Clone, Serialize)]
pub struct SupersymmetryReport {
    /// Nonzero spectra agree with multiplicity and the Δ¹ kernel has the
    /// expected dimension.
    pub ok: bool,
    /// Largest |μ⁰ − μ¹| over matched nonzero groups (∞ if the group
    /// structures differ).
    pub max_mismatch: f64,
    /// dim ker Δ¹ measured spectrally.
    pub kernel_dim: usize,
    /// First Betti number |E| − |V| + 1, the expected kernel dimension.
    pub expected_kernel_dim: usize,
}

/// Verify that the nonzero spectra of Δ⁰ and Δ¹ coincide with multiplicity
/// within `tol`, and that dim ker Δ¹ = |E| − |V| + 1.
pub fn supersymmetry_check(g: &Graph, tol: f64) -> SupersymmetryReport {
    let raw0 = crate::eig::eigensolve_symmetric(&g.laplacian0())
        .expect("laplacian0 is symmetric and nonempty")
        .values;
    let raw1 = crate::eig::eigensolve_symmetric(&g.laplacian1())
        .expect("laplacian1 is symmetric and nonempty")
        .values;
    let s0 = group_spectrum(&raw0, tol.max(f64::MIN_POSITIVE));
    let s1 = group_spectrum(&raw1, tol.max(f64::MIN_POSITIVE));

    let nz0: Vec<(f64, usize)> = s0.nonzero(tol).collect();
    let nz1: Vec<(f64, usize)> = s1.nonzero(tol).collect();
    let kernel_dim = raw1.iter().filter(|v| v.abs() <= tol).count();
    let expected_kernel_dim = g.first_betti_number();

    let mut max_mismatch = 0.0_f64;
    let mut ok = nz0.len() == nz1.len();
    if ok {
        for (&(v0, m0), &(v1, m1)) in nz0.iter().zip(nz1.iter()) {
            if m0 != m1 {
                ok = false;
                break;
            }
            max_mismatch = max_mismatch.max((v0 - v1).abs());
        }
    }
    if !ok {
        max_mismatch = f64::INFINITY;
    }
    ok = ok && max_mismatch <= tol && kernel_dim == expected_kernel_dim;
    SupersymmetryReport {
        ok,
        max_mismatch,
        kernel_dim,
        expected_kernel_dim,
    }
}
