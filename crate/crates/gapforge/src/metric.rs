//! Spectra of equilateral metric graphs derived from discrete spectra.
//!
//! For an equilateral metric graph with edge length ℓ₀, a value λ outside the
//! Dirichlet set Σ = {(jπ/ℓ₀)² : j ≥ 1} is an eigenvalue of the Kirchhoff
//! Laplacian iff 1 − cos(ℓ₀√λ) is an eigenvalue of the discrete (normalised)
//! Laplacian.  Solving per discrete eigenvalue μ gives the branches
//!
//! ```text
//! ℓ₀√λ = arccos(1 − μ) + 2πm   (m ≥ 0)     branch index +m
//! ℓ₀√λ = 2πm − arccos(1 − μ)   (m ≥ 1)     branch index −m
//! ```
//!
//! Multiplicity off Σ is inherited per branch from the discrete eigenvalue.
//! At points of Σ the correspondence gives no information; they are reported
//! separately and treated as potential spectrum when enumerating gaps.

use serde::Serialize;

use crate::eig::Spectrum;
use crate::{Error, Result};

/// Absolute tolerance on λ for collisions with the Dirichlet set Σ and for
/// recognising the zero mode.
pub const EXCEPTIONAL_TOL: f64 = 1e-9;

/// One resolved metric eigenvalue with its provenance.
#[derive(Debug, Clone, Serialize)]
pub struct MetricEigenvalue {
    pub lambda: f64,
    /// The discrete eigenvalue μ this branch solves 1 − cos(ℓ₀√λ) = μ for.
    pub source_mu: f64,
    /// Branch index: +m for ℓ₀√λ = arccos(1−μ) + 2πm, −m for 2πm − arccos(1−μ).
    pub branch: i64,
    /// Inherited from the discrete eigenvalue's multiplicity.
    pub multiplicity: usize,
}

/// Metric-graph spectrum over a window [0, Λ], with the exceptional Dirichlet
/// points flagged and excluded from the eigenvalue list.
#[derive(Debug, Clone, Serialize)]
pub struct MetricSpectrumReport {
    pub edge_length: f64,
    pub window: f64,
    pub eigenvalues: Vec<MetricEigenvalue>,
    /// Σ ∩ [0, Λ]; multiplicity there is not determined by the correspondence.
    pub exceptional_points: Vec<f64>,
    /// Multiplicity at λ = 0 (1 for a connected graph).
    pub zero_mode: usize,
}

/// A nonempty open interval (lower, upper) disjoint from a spectrum.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GapInterval {
    pub lower: f64,
    pub upper: f64,
}

impl GapInterval {
    pub fn width(&self) -> f64 {
        self.upper - self.lower
    }

    pub fn contains(&self, x: f64) -> bool {
        self.lower < x && x < self.upper
    }
}

/// Solve the equilateral correspondence for every discrete eigenvalue and
/// enumerate all metric eigenvalues in [0, Λ].
///
/// `discrete` must be a Laplacian spectrum (values in [0, 2] up to the
/// grouping tolerance).  Branches are enumerated until ℓ₀√λ exceeds
/// ℓ₀√Λ + 2π, which guarantees window coverage.
pub fn metric_spectrum(
    discrete: &Spectrum,
    edge_length: f64,
    window: f64,
) -> Result<MetricSpectrumReport> {
    if edge_length <= 0.0 || !edge_length.is_finite() {
        return Err(Error::NonPositiveScale(edge_length));
    }
    if window <= 0.0 || !window.is_finite() {
        return Err(Error::NonPositiveScale(window));
    }
    let slack = 1e-9;
    for (mu, _) in discrete.iter() {
        if !(-slack..=2.0 + slack).contains(&mu) {
            return Err(Error::EigenvalueOutOfRange(mu));
        }
    }

    let exceptional_points = dirichlet_points(edge_length, window);
    let x_max = edge_length * window.sqrt() + std::f64::consts::TAU;
    let mut eigenvalues: Vec<MetricEigenvalue> = Vec::new();
    let mut zero_mode = 0usize;

    for (mu, mult) in discrete.iter() {
        let theta = (1.0 - mu).clamp(-1.0, 1.0).acos();
        // θ = 0 and θ = π make the two branches coincide; enumerate one.
        let degenerate = theta < 1e-12 || (std::f64::consts::PI - theta) < 1e-12;
        let mut push = |x: f64, branch: i64| {
            if x > x_max {
                return;
            }
            let lambda = (x / edge_length) * (x / edge_length);
            if lambda > window {
                return;
            }
            if lambda.abs() <= EXCEPTIONAL_TOL {
                zero_mode = 1;
                return;
            }
            if exceptional_points
                .iter()
                .any(|&s| (lambda - s).abs() <= EXCEPTIONAL_TOL)
            {
                return;
            }
            eigenvalues.push(MetricEigenvalue {
                lambda,
                source_mu: mu,
                branch,
                multiplicity: mult,
            });
        };
        let mut m = 0i64;
        loop {
            let base = std::f64::consts::TAU * m as f64;
            // base − θ is the smaller of the two values at level m; once it
            // passes the cap, every later solution does too.
            if m >= 1 && base - theta > x_max {
                break;
            }
            push(base + theta, m);
            if m >= 1 && !degenerate {
                push(base - theta, -m);
            }
            m += 1;
        }
    }

    eigenvalues.sort_by(|a, b| {
        a.lambda
            .total_cmp(&b.lambda)
            .then(a.source_mu.total_cmp(&b.source_mu))
            .then(a.branch.cmp(&b.branch))
    });
    Ok(MetricSpectrumReport {
        edge_length,
        window,
        eigenvalues,
        exceptional_points,
        zero_mode,
    })
}

fn dirichlet_points(edge_length: f64, window: f64) -> Vec<f64> {
    let mut out = Vec::new();
    let mut j = 1u64;
    loop {
        let s = (j as f64) * std::f64::consts::PI / edge_length;
        let lambda = s * s;
        if lambda > window {
            break;
        }
        out.push(lambda);
        j += 1;
    }
    out
}

/// Common spectral gap (0, h_k/ℓ₀²) at the bottom of the spectrum of every
/// equilateral metric graph over a k-regular Ramanujan graph.
///
/// The nontrivial discrete spectrum of a Ramanujan graph stays above
/// 1 − 2√(k−1)/k, so the first metric eigenvalue off Σ is at least
/// arccos²(2√(k−1)/k)/ℓ₀², which is the gap height used here (the arccos
/// argument is 1 minus the Laplacian gap bound, since the correspondence
/// reads cos(ℓ₀√λ) = 1 − μ).
pub fn ramanujan_metric_gap(k: usize, edge_length: f64) -> Result<GapInterval> {
    if k < 3 {
        return Err(Error::DegreeTooSmall { degree: k, min: 3 });
    }
    if edge_length <= 0.0 || !edge_length.is_finite() {
        return Err(Error::NonPositiveScale(edge_length));
    }
    let h = ramanujan_gap_constant(k);
    Ok(GapInterval {
        lower: 0.0,
        upper: h / (edge_length * edge_length),
    })
}

/// h_k = arccos²(2√(k−1)/k), the uniform bottom-gap constant for unit edge
/// length.
pub fn ramanujan_gap_constant(k: usize) -> f64 {
    let threshold = 2.0 * ((k - 1) as f64).sqrt() / k as f64;
    threshold.acos().powi(2)
}

/// Types whose eigenvalue content transforms like λ ↦ λ/τ² when all lengths
/// are multiplied by τ.
pub trait ScaleLengths: Sized {
    fn scale_lengths(&self, tau: f64) -> Result<Self>;
}

impl ScaleLengths for Spectrum {
    fn scale_lengths(&self, tau: f64) -> Result<Spectrum> {
        check_tau(tau)?;
        let t = tau * tau;
        Ok(Spectrum {
            values: self.values.iter().map(|v| v / t).collect(),
            multiplicities: self.multiplicities.clone(),
            tolerance: self.tolerance,
        })
    }
}

impl ScaleLengths for GapInterval {
    fn scale_lengths(&self, tau: f64) -> Result<GapInterval> {
        check_tau(tau)?;
        let t = tau * tau;
        Ok(GapInterval {
            lower: self.lower / t,
            upper: self.upper / t,
        })
    }
}

impl ScaleLengths for MetricSpectrumReport {
    fn scale_lengths(&self, tau: f64) -> Result<MetricSpectrumReport> {
        check_tau(tau)?;
        let t = tau * tau;
        Ok(MetricSpectrumReport {
            edge_length: self.edge_length * tau,
            window: self.window / t,
            eigenvalues: self
                .eigenvalues
                .iter()
                .map(|e| MetricEigenvalue {
                    lambda: e.lambda / t,
                    source_mu: e.source_mu,
                    branch: e.branch,
                    multiplicity: e.multiplicity,
                })
                .collect(),
            exceptional_points: self.exceptional_points.iter().map(|s| s / t).collect(),
            zero_mode: self.zero_mode,
        })
    }
}

fn check_tau(tau: f64) -> Result<()> {
    if tau > 0.0 && tau.is_finite() {
        Ok(())
    } else {
        Err(Error::NonPositiveScale(tau))
    }
}

/// Maximal open intervals inside [0, Λ] free of listed eigenvalues and of
/// exceptional points (Σ is treated as potential spectrum), of width at
/// least `min_width`.
pub fn find_gaps(report: &MetricSpectrumReport, min_width: f64) -> Vec<GapInterval> {
    let mut points: Vec<f64> =
        Vec::with_capacity(report.eigenvalues.len() + report.exceptional_points.len() + 1);
    points.push(0.0); // zero mode sits at the bottom
    points.extend(report.eigenvalues.iter().map(|e| e.lambda));
    points.extend(report.exceptional_points.iter().copied());
    points.sort_by(f64::total_cmp);
    points.dedup_by(|a, b| (*a - *b).abs() <= EXCEPTIONAL_TOL);

    let mut gaps = Vec::new();
    for w in points.windows(2) {
        let gap = GapInterval {
            lower: w[0],
            upper: w[1],
        };
        if gap.width() >= min_width {
            gaps.push(gap);
        }
    }
    if let Some(&last) = points.last() {
        if report.window - last >= min_width {
            gaps.push(GapInterval {
                lower: last,
                upper: report.window,
            });
        }
    }
    gaps
}

/// Hausdorff distance between two finite nonempty point sets,
/// max(sup_a d(a, B), sup_b d(b, A)).
pub fn hausdorff_distance(a: &[f64], b: &[f64]) -> f64 {
    assert!(
        !a.is_empty() && !b.is_empty(),
        "hausdorff distance needs nonempty sets"
    );
    let sup_inf = |xs: &[f64], ys: &[f64]| {
        xs.iter()
            .map(|x| {
                ys.iter()
                    .map(|y| (x - y).abs())
                    .fold(f64::INFINITY, f64::min)
            })
            .fold(0.0_f64, f64::max)
    };
    sup_inf(a, b).max(sup_inf(b, a))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::standard;
    use crate::eig::{spectrum_of, DEFAULT_GROUPING_TOL};

    fn laplacian_spectrum(g: &crate::graph::Graph) -> Spectrum {
        spectrum_of(&g.laplacian0(), DEFAULT_GROUPING_TOL).unwrap()
    }

    #[test]
    fn c5_smallest_eigenvalue() {
        let s = laplacian_spectrum(&standard::cycle(5).unwrap());
        let report = metric_spectrum(&s, 1.0, 10.0).unwrap();
        let expected = (2.0 * std::f64::consts::PI / 5.0).powi(2);
        assert!((report.eigenvalues[0].lambda - expected).abs() < 1e-9);
        assert_eq!(report.zero_mode, 1);
    }

    #[test]
    fn k4_smallest_eigenvalue() {
        let s = laplacian_spectrum(&standard::complete(4).unwrap());
        let report = metric_spectrum(&s, 1.0, 10.0).unwrap();
        let expected = (-1.0_f64 / 3.0).acos().powi(2);
        assert!((report.eigenvalues[0].lambda - expected).abs() < 1e-9);
    }

    #[test]
    fn zero_branch_is_exceptional_only() {
        // μ = 0 solves to ℓ₀√λ = 2πm, all of which lie in Σ (j = 2m)
        let s = laplacian_spectrum(&standard::complete(4).unwrap());
        let report = metric_spectrum(&s, 1.0, 100.0).unwrap();
        assert_eq!(report.zero_mode, 1);
        for e in &report.eigenvalues {
            assert!(
                e.source_mu.abs() > 1e-12,
                "μ=0 branch leaked λ = {}",
                e.lambda
            );
        }
    }

    #[test]
    fn round_trip_recovers_mu() {
        let s = laplacian_spectrum(&standard::petersen());
        let report = metric_spectrum(&s, 0.7, 60.0).unwrap();
        assert!(!report.eigenvalues.is_empty());
        for e in &report.eigenvalues {
            let mu = 1.0 - (0.7 * e.lambda.sqrt()).cos();
            assert!(
                (mu - e.source_mu).abs() <= 1e-9,
                "λ={} μ={} got {}",
                e.lambda,
                e.source_mu,
                mu
            );
        }
    }

    #[test]
    fn rejects_bad_input() {
        let s = Spectrum {
            values: vec![2.5],
            multiplicities: vec![1],
            tolerance: 1e-9,
        };
        assert!(matches!(
            metric_spectrum(&s, 1.0, 5.0),
            Err(Error::EigenvalueOutOfRange(_))
        ));
        let ok = Spectrum {
            values: vec![0.0],
            multiplicities: vec![1],
            tolerance: 1e-9,
        };
        assert!(matches!(
            metric_spectrum(&ok, 0.0, 5.0),
            Err(Error::NonPositiveScale(_))
        ));
    }

    #[test]
    fn ramanujan_gap_values() {
        let gap = ramanujan_metric_gap(3, 1.0).unwrap();
        let expected = (2.0 * 2.0_f64.sqrt() / 3.0).acos().powi(2);
        assert_eq!(gap.lower, 0.0);
        assert!((gap.upper - expected).abs() < 1e-12);
        // ℓ₀ = 2 scales the gap by 1/4
        let gap2 = ramanujan_metric_gap(3, 2.0).unwrap();
        assert!((gap2.upper - expected / 4.0).abs() < 1e-12);
        assert!(matches!(
            ramanujan_metric_gap(2, 1.0),
            Err(Error::DegreeTooSmall { .. })
        ));
    }

    #[test]
    fn scaling_identity_and_composition() {
        let s = laplacian_spectrum(&standard::cycle(5).unwrap());
        let report = metric_spectrum(&s, 1.0, 40.0).unwrap();
        let same = report.scale_lengths(1.0).unwrap();
        assert_eq!(report.eigenvalues[0].lambda, same.eigenvalues[0].lambda);

        // λ = 4 scaled by τ = 2 gives 1
        let spec = Spectrum {
            values: vec![4.0],
            multiplicities: vec![1],
            tolerance: 1e-9,
        };
        assert_eq!(spec.scale_lengths(2.0).unwrap().values[0], 1.0);

        // dyadic factors compose exactly
        let a = report
            .scale_lengths(2.0)
            .unwrap()
            .scale_lengths(4.0)
            .unwrap();
        let b = report.scale_lengths(8.0).unwrap();
        for (x, y) in a.eigenvalues.iter().zip(b.eigenvalues.iter()) {
            assert_eq!(x.lambda, y.lambda);
        }
        assert!(matches!(
            report.scale_lengths(-1.0),
            Err(Error::NonPositiveScale(_))
        ));
    }

    #[test]
    fn find_gaps_k4() {
        let s = laplacian_spectrum(&standard::complete(4).unwrap());
        let report = metric_spectrum(&s, 1.0, 10.0).unwrap();
        let gaps = find_gaps(&report, 0.1);
        let first = gaps.first().expect("bottom gap exists");
        assert_eq!(first.lower, 0.0);
        assert!((first.upper - (-1.0_f64 / 3.0).acos().powi(2)).abs() < 1e-9);
        // a min_width larger than every gap yields nothing
        assert!(find_gaps(&report, 1e6).is_empty());
    }

    #[test]
    fn hausdorff_basics() {
        assert_eq!(hausdorff_distance(&[0.0, 1.0], &[0.0, 1.0]), 0.0);
        assert!((hausdorff_distance(&[0.0], &[3.0]) - 3.0).abs() < 1e-15);
        assert!((hausdorff_distance(&[0.0, 1.0], &[0.5]) - 0.5).abs() < 1e-15);
    }
}
