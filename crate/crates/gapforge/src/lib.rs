//! # gapforge
//!
//! Spectral toolkit for discrete graphs, equilateral metric graphs and
//! symbolic graph-like manifold models.
//!
//! The crate is organised around one numerical kernel and a stack of
//! derived quantities:
//!
//! | Module | Purpose |
//! |--------|---------|
//! | [`graph`] | Oriented multigraphs with edge lengths; weighted Laplacians Δ⁰, Δ¹, coboundary, adjacency |
//! | [`eig`] | Dense symmetric eigensolver (cyclic Jacobi) and eigenvalue grouping |
//! | [`spectra`] | Spectral gap length γ(G), Ramanujan certification, bipartiteness, supersymmetry |
//! | [`metric`] | Equilateral metric-graph spectra via the discrete correspondence, gaps, length scaling |
//! | [`manifold`] | Graph-like manifold models: McGowan-type lower bounds, volumes, cohomology, κ |
//! | [`regimes`] | Shrinking-parameter regime classification (γ and (α,β) families) and diagrams |
//! | [`construct`] | Graph generators, decoration, 2-lifts |
//! | [`batch`] | Data-parallel map helpers (rayon behind the `parallel` feature) |
//!
//! All operations are pure functions over immutable values, so batch
//! evaluation over graph families parallelises trivially; see [`batch`].
//!
//! Conventions used throughout:
//!
//! * Vertex functions live in ℓ²(V, deg), edge 1-forms in ℓ²(E, 1/ℓ).
//!   Every operator is returned in orthonormalised coordinates (conjugated
//!   by diag(√deg) resp. diag(1/√ℓ)) so that a plain symmetric eigensolver
//!   applies; see [`graph::Graph::coboundary_matrix`].
//! * Graphs are connected by construction; loops and multi-edges are
//!   allowed, and a loop counts twice towards its vertex degree.

use thiserror::Error;

pub mod batch;
pub mod construct;
pub mod eig;
pub mod graph;
pub mod manifold;
pub mod metric;
pub mod regimes;
pub mod spectra;

pub use construct::{decorate, generate, two_lift, DecorationSpec, GraphKind, Signing, TwoLift};
pub use eig::{eigensolve_symmetric, group_spectrum, spectrum_of, EigenDecomposition, Spectrum};
pub use graph::{Graph, Matrix, WeightMeaning, WeightedMatrix};
pub use manifold::{
    kappa, surface_genus, BuildingBlocks, ManifoldModel, McGowanReport, McGowanVariant,
};
pub use metric::{
    find_gaps, metric_spectrum, ramanujan_metric_gap, GapInterval, MetricSpectrumReport,
    ScaleLengths,
};
pub use regimes::{
    classify_alpha_beta, classify_gamma, divergence_certificate, regime_diagram,
    AlphaBetaRegimeReport, CertificateKind, CertificateParams, GammaRegimeReport, RegimeDiagram,
};
pub use spectra::{
    is_bipartite, ramanujan_check, spectral_gap_length, supersymmetry_check, RamanujanReport,
    SupersymmetryReport,
};

#[derive(Debug, Error)]
pub enum Error {
    #[error("graph must have at least one vertex")]
    EmptyGraph,

    #[error("vertex index {vertex} out of range (vertex count {count})")]
    VertexOutOfRange { vertex: usize, count: usize },

    #[error("edge length at index {index} must be strictly positive, got {value}")]
    NonPositiveLength { index: usize, value: f64 },

    #[error("expected {edges} edge lengths, got {lengths}")]
    LengthCountMismatch { edges: usize, lengths: usize },

    #[error("graph is disconnected")]
    Disconnected,

    #[error("graph is not simple: {0}")]
    NotSimple(&'static str),

    #[error("graph is not regular (degrees {min}..={max})")]
    NotRegular { min: usize, max: usize },

    #[error("vertex degree {degree} below required minimum {min}")]
    DegreeTooSmall { degree: usize, min: usize },

    #[error("matrix has dimension 0")]
    EmptyMatrix,

    #[error("matrix is not square: {rows} x {cols}")]
    NotSquare { rows: usize, cols: usize },

    #[error("matrix is not symmetric: |a[{i},{j}] - a[{j},{i}]| = {deviation:e}")]
    NotSymmetric { i: usize, j: usize, deviation: f64 },

    #[error("nontrivial spectrum is empty (all eigenvalues in {{0, 2}})")]
    TrivialSpectrumEmpty,

    #[error("discrete Laplacian eigenvalue {0} outside [0, 2]")]
    EigenvalueOutOfRange(f64),

    #[error("scaling factor must be strictly positive, got {0}")]
    NonPositiveScale(f64),

    #[error("missing block data: {0}")]
    MissingBlockData(String),

    #[error("form degree p = {p} outside valid range {lo}..={hi} for dimension n = {n}")]
    FormDegreeOutOfRange {
        p: usize,
        lo: usize,
        hi: usize,
        n: usize,
    },

    #[error("model is not transversally trivial; no general cohomology formula applies")]
    NotTransversallyTrivial,

    #[error("invalid block data: {0}")]
    BadBlockData(String),

    #[error("invalid parameter: {0}")]
    BadParameter(String),

    #[error("hypotheses violated: {}", failed.join("; "))]
    HypothesisFailed { failed: Vec<String> },

    #[error("infeasible generator parameters: {0}")]
    InfeasibleParameters(String),

    #[error("rejection sampling budget exceeded after {attempts} attempts")]
    RejectionBudgetExceeded { attempts: usize },

    #[error("signing has {signs} entries but graph has {edges} edges")]
    SigningLengthMismatch { signs: usize, edges: usize },

    #[error("2-lift is disconnected")]
    DisconnectedLift,

    #[error("failed to parse graph JSON: {0}")]
    GraphParse(String),

    #[error("failed to parse block config: {0}")]
    ConfigParse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
