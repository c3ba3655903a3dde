//! Symbolic graph-like manifold models built from per-block spectral data.
//!
//! A graph-like manifold of dimension n shrinks onto a metric graph as its
//! transversal radius ε → 0: vertex neighbourhoods are ε-homothetic copies of
//! fixed blocks X_v, edge neighbourhoods are products [0, ℓ_e] × εY_e with
//! (n−1)-dimensional transversal manifolds Y_e.  Nothing here solves a PDE;
//! the exact first eigenvalues of exact p-forms on the blocks are *inputs*,
//! and this module evaluates the scaling laws, the McGowan-type lower bound
//! for exact p-form eigenvalues on the assembled manifold, model volumes,
//! cohomology dimensions and the scale-invariant κ quantity.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::graph::Graph;
use crate::{Error, Result};

/// Spectral/topological/volumetric data of one vertex block X_v.
#[derive(Debug, Clone, PartialEq)]
pub struct VertexBlock {
    /// p ↦ λ′₁,p(X_v), first positive eigenvalue on exact p-forms with
    /// absolute boundary conditions.
    pub exact_eigenvalues: BTreeMap<usize, f64>,
    /// Betti numbers b_0, b_1, …; indices beyond the list are zero.
    pub betti: Vec<usize>,
    pub volume: f64,
}

/// Data of one edge block: the transversal manifold Y_e and the overlap
/// X_{v,e} ≅ (0,1) × Y_e between vertex and edge neighbourhoods.
#[derive(Debug, Clone, PartialEq)]
pub struct EdgeBlock {
    /// p ↦ λ′₁,p(Y_e).
    pub exact_eigenvalues: BTreeMap<usize, f64>,
    /// p ↦ λ′₁,p(X_{v,e}) for the degree-2 overlaps.
    pub overlap_eigenvalues: BTreeMap<usize, f64>,
    /// Betti numbers of the (n−1)-dimensional Y_e.
    pub betti: Vec<usize>,
    /// vol_{n−1}(Y_e), default 1 (the normalisation making Kirchhoff
    /// conditions unweighted).
    pub volume: f64,
}

/// Building-block data for a whole model: one record per vertex and per edge,
/// plus the partition-of-unity and combinatorial constants of the bound.
#[derive(Debug, Clone, PartialEq)]
pub struct BuildingBlocks {
    /// Manifold dimension n ≥ 2.
    pub dimension: usize,
    pub vertices: Vec<VertexBlock>,
    pub edges: Vec<EdgeBlock>,
    /// Combinatorial constant c_{n,p} of the first-eigenvalue bound.  The
    /// source leaves it abstract; default 1, always echoed in output.
    pub c_np: f64,
    /// Partition-of-unity constant: ε²‖dρ_ε‖²∞ is modelled as
    /// C_ρ(1 + (ε/ℓ_e)²).
    pub c_rho: f64,
    /// Exact override for ε²‖dρ_ε‖²∞, replacing the model above.
    pub drho_override: Option<f64>,
}

impl BuildingBlocks {
    /// Same prototype data at every vertex and edge (a "uniform" family).
    pub fn uniform(
        dimension: usize,
        vertex: VertexBlock,
        edge: EdgeBlock,
        vertex_count: usize,
        edge_count: usize,
    ) -> Self {
        BuildingBlocks {
            dimension,
            vertices: vec![vertex; vertex_count],
            edges: vec![edge; edge_count],
            c_np: 1.0,
            c_rho: 1.0,
            drho_override: None,
        }
    }

    /// All transversal manifolds are Moore spaces: b_p(Y_e) = 0 for all e and
    /// all 1 ≤ p ≤ n−2.
    pub fn transversally_trivial(&self) -> bool {
        self.edges.iter().all(|e| {
            (1..=self.dimension.saturating_sub(2))
                .all(|p| e.betti.get(p).copied().unwrap_or(0) == 0)
        })
    }

    fn validate(&self) -> Result<()> {
        if self.dimension < 2 {
            return Err(Error::BadBlockData(format!(
                "dimension must be >= 2, got {}",
                self.dimension
            )));
        }
        for (i, v) in self.vertices.iter().enumerate() {
            if v.volume <= 0.0 || !v.volume.is_finite() {
                return Err(Error::BadBlockData(format!(
                    "vertex {i} volume must be positive"
                )));
            }
            if let Some(&b0) = v.betti.first() {
                if b0 != 1 {
                    return Err(Error::BadBlockData(format!(
                        "vertex {i} has b_0 = {b0}, connected blocks need b_0 = 1"
                    )));
                }
            }
            for (&p, &l) in &v.exact_eigenvalues {
                if l <= 0.0 || !l.is_finite() {
                    return Err(Error::BadBlockData(format!(
                        "vertex {i} eigenvalue for p = {p} must be positive"
                    )));
                }
            }
        }
        for (i, e) in self.edges.iter().enumerate() {
            if e.volume <= 0.0 || !e.volume.is_finite() {
                return Err(Error::BadBlockData(format!(
                    "edge {i} volume must be positive"
                )));
            }
            for (&p, &l) in e
                .exact_eigenvalues
                .iter()
                .chain(e.overlap_eigenvalues.iter())
            {
                if l <= 0.0 || !l.is_finite() {
                    return Err(Error::BadBlockData(format!(
                        "edge {i} eigenvalue for p = {p} must be positive"
                    )));
                }
            }
        }
        if self.c_np <= 0.0 || self.c_rho <= 0.0 {
            return Err(Error::BadBlockData(
                "constants c_np and c_rho must be positive".into(),
            ));
        }
        Ok(())
    }
}

/// A symbolic graph-like manifold: graph (with lengths), block data, and the
/// shrinking parameter ε.
#[derive(Debug, Clone)]
pub struct ManifoldModel {
    pub graph: Graph,
    pub blocks: BuildingBlocks,
    pub epsilon: f64,
}

/// Which flavour of the lower bound to evaluate; the two published versions
/// disagree on the numerator (2⁻³ vs 1) and on the exponent of ‖dρ‖ (2 vs p),
/// so both are kept behind this selector.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum McGowanVariant {
    /// First-eigenvalue version: numerator 2⁻³, factor c_{n,p}·‖dρ‖².
    /// Requires trivial (p−1)-cohomology of every transversal manifold.
    FirstEigenvalue,
    /// N-th-eigenvalue version: numerator 1, factor ‖dρ‖^p, no combinatorial
    /// constant.
    HigherIndex,
}

/// Evaluated lower bound together with everything needed to audit it.
#[derive(Debug, Clone, Serialize)]
pub struct McGowanReport {
    /// Lower bound for the N-th eigenvalue of exact p-forms on the model.
    pub lower_bound: f64,
    /// The ε-independent denominator sum C_p(ε); the bound is
    /// numerator / (ε² C_p(ε)).
    pub c_p: f64,
    /// The bound applies to the N-th eigenvalue; N = 1 + 2 Σ_e b_{p−1}(Y_e).
    pub index_n: usize,
    pub variant: McGowanVariant,
    pub p: usize,
    pub epsilon: f64,
    /// Echoed combinatorial constant (it has no established value).
    pub c_np: f64,
    /// ε/ℓ₀ with ℓ₀ the minimal edge length; the asymptotics assume this
    /// stays bounded.
    pub eps_over_min_length: f64,
    /// Optional metric-comparison transfer of the bound, present when the
    /// caller supplied sup-norm comparison constants (c₋, c₊).
    pub comparison_interval: Option<(f64, f64)>,
}

impl ManifoldModel {
    pub fn new(graph: Graph, blocks: BuildingBlocks, epsilon: f64) -> Result<Self> {
        blocks.validate()?;
        if blocks.vertices.len() != graph.vertex_count() {
            return Err(Error::BadBlockData(format!(
                "{} vertex blocks for {} vertices",
                blocks.vertices.len(),
                graph.vertex_count()
            )));
        }
        if blocks.edges.len() != graph.edge_count() {
            return Err(Error::BadBlockData(format!(
                "{} edge blocks for {} edges",
                blocks.edges.len(),
                graph.edge_count()
            )));
        }
        if epsilon <= 0.0 || !epsilon.is_finite() {
            return Err(Error::NonPositiveScale(epsilon));
        }
        Ok(ManifoldModel {
            graph,
            blocks,
            epsilon,
        })
    }

    pub fn dimension(&self) -> usize {
        self.blocks.dimension
    }

    pub fn eps_over_min_length(&self) -> f64 {
        self.epsilon / self.graph.min_length()
    }

    fn vertex_lambda(&self, v: usize, p: usize) -> Result<f64> {
        let block = self
            .blocks
            .vertices
            .get(v)
            .ok_or_else(|| Error::MissingBlockData(format!("vertex block {v}")))?;
        block
            .exact_eigenvalues
            .get(&p)
            .copied()
            .ok_or_else(|| Error::MissingBlockData(format!("eigenvalue for p = {p} at vertex {v}")))
    }

    fn edge_block(&self, e: usize) -> Result<&EdgeBlock> {
        self.blocks
            .edges
            .get(e)
            .ok_or_else(|| Error::MissingBlockData(format!("edge block {e}")))
    }

    /// Smallest positive exact p-form eigenvalue of the ε-homothetic vertex
    /// neighbourhood: ε⁻² λ′₁,p(X_v).
    pub fn vertex_eigenvalue(&self, v: usize, p: usize) -> Result<f64> {
        Ok(self.vertex_lambda(v, p)? / (self.epsilon * self.epsilon))
    }

    /// Edge-neighbourhood constant c_p for edge `e`: the ε → 0 limit
    /// λ′₁,p(Y_e), valid for 2 ≤ p ≤ n−1.  The edge-neighbourhood eigenvalue
    /// model is then ε⁻² c_p.
    pub fn edge_constant(&self, e: usize, p: usize) -> Result<f64> {
        let n = self.dimension();
        if p < 2 || p > n - 1 {
            return Err(Error::FormDegreeOutOfRange {
                p,
                lo: 2,
                hi: n - 1,
                n,
            });
        }
        let block = self.edge_block(e)?;
        block.exact_eigenvalues.get(&p).copied().ok_or_else(|| {
            Error::MissingBlockData(format!("transversal eigenvalue for p = {p} at edge {e}"))
        })
    }

    /// Modelled ε²‖dρ_ε‖²∞ for edge `e`.
    fn drho_sq(&self, e: usize) -> f64 {
        match self.blocks.drho_override {
            Some(v) => v,
            None => {
                let ratio = self.epsilon / self.graph.lengths()[e];
                self.blocks.c_rho * (1.0 + ratio * ratio)
            }
        }
    }

    /// Lower bound for the N-th eigenvalue of exact p-forms, with the default
    /// variant selection: the first-eigenvalue version when every transversal
    /// has trivial (p−1)-cohomology (N = 1), the N-th-eigenvalue version
    /// otherwise.
    pub fn mcgowan_bound(&self, p: usize) -> Result<McGowanReport> {
        self.mcgowan_bound_with(p, None, None, None)
    }

    /// Full-control variant of [`Self::mcgowan_bound`]:
    ///
    /// * `variant` overrides the default selection;
    /// * `edge_correction`, given (edge index, ε), replaces the limit value
    ///   c_p(0) = λ′₁,p(Y_e) with a caller-supplied c_p(ε);
    /// * `comparison` = (c₋, c₊) additionally transfers the bound through a
    ///   metric comparison c₋²g ≤ g̃ ≤ c₊²g.
    pub fn mcgowan_bound_with(
        &self,
        p: usize,
        variant: Option<McGowanVariant>,
        edge_correction: Option<&dyn Fn(usize, f64) -> f64>,
        comparison: Option<(f64, f64)>,
    ) -> Result<McGowanReport> {
        let n = self.dimension();
        if n < 3 || p < 2 || p > n - 1 {
            return Err(Error::FormDegreeOutOfRange {
                p,
                lo: 2,
                hi: n.saturating_sub(1),
                n,
            });
        }

        // N = 1 + 2 Σ_e dim H^{p-1}(Y_e): each edge meets two (possibly
        // coinciding) vertex neighbourhoods.
        let betti_sum: usize = (0..self.graph.edge_count())
            .map(|e| self.blocks.edges[e].betti.get(p - 1).copied().unwrap_or(0))
            .sum();
        let index_n = 1 + 2 * betti_sum;
        let variant = variant.unwrap_or(if index_n == 1 {
            McGowanVariant::FirstEigenvalue
        } else {
            McGowanVariant::HigherIndex
        });
        if variant == McGowanVariant::FirstEigenvalue && index_n != 1 {
            return Err(Error::BadParameter(format!(
                "first-eigenvalue variant needs trivial transversal (p-1)-cohomology, but N = {index_n}"
            )));
        }

        let eps = self.epsilon;
        let mut incidence: Vec<Vec<usize>> = vec![Vec::new(); self.graph.vertex_count()];
        for (e, &(t, h)) in self.graph.edges().iter().enumerate() {
            incidence[t].push(e);
            incidence[h].push(e);
        }

        let mut c_p_sum = 0.0;
        for (v, incident_edges) in incidence.iter().enumerate() {
            let lambda_v = self.vertex_lambda(v, p)?;
            let mut vertex_term = 1.0 / lambda_v;
            for &e in incident_edges {
                let c_p_e = match edge_correction {
                    Some(f) => {
                        let c = f(e, eps);
                        if c <= 0.0 {
                            return Err(Error::BadParameter(format!(
                                "edge correction returned non-positive c_p({e}) = {c}"
                            )));
                        }
                        c
                    }
                    None => self.edge_constant(e, p)?,
                };
                let overlap = self
                    .edge_block(e)?
                    .overlap_eigenvalues
                    .get(&(p - 1))
                    .copied()
                    .ok_or_else(|| {
                        Error::MissingBlockData(format!(
                            "overlap eigenvalue for p = {} at edge {e}",
                            p - 1
                        ))
                    })?;
                let drho_term = match variant {
                    McGowanVariant::FirstEigenvalue => self.blocks.c_np * self.drho_sq(e) / overlap,
                    // ‖dρ‖^p = (ε²‖dρ‖²)^{p/2} ε^{-p}, and the ε-homothetic
                    // overlap eigenvalue contributes ε², leaving ε^{2-p}.
                    McGowanVariant::HigherIndex => {
                        self.drho_sq(e).powf(p as f64 / 2.0) * eps.powi(2 - p as i32) / overlap
                    }
                };
                vertex_term +=
                    1.0 / c_p_e + 2.0 * (drho_term + 1.0) * (1.0 / lambda_v + 1.0 / c_p_e);
            }
            c_p_sum += vertex_term;
        }

        let numerator = match variant {
            McGowanVariant::FirstEigenvalue => 0.125,
            McGowanVariant::HigherIndex => 1.0,
        };
        let lower_bound = numerator / (eps * eps * c_p_sum);
        let comparison_interval = match comparison {
            Some((c_minus, c_plus)) => Some(metric_comparison_interval(
                lower_bound,
                c_minus,
                c_plus,
                n,
                p,
            )?),
            None => None,
        };
        Ok(McGowanReport {
            lower_bound,
            c_p: c_p_sum,
            index_n,
            variant,
            p,
            epsilon: eps,
            c_np: self.blocks.c_np,
            eps_over_min_length: self.eps_over_min_length(),
            comparison_interval,
        })
    }

    /// Exact model volume εⁿ Σ_v vol(X_v) + ε^{n−1} Σ_e ℓ_e vol(Y_e); the
    /// product structure of the edge neighbourhoods realises the asymptotic
    /// volume law exactly.
    pub fn volume(&self) -> f64 {
        let n = self.dimension() as i32;
        let vertex_sum: f64 = self.blocks.vertices.iter().map(|b| b.volume).sum();
        let edge_sum: f64 = self
            .blocks
            .edges
            .iter()
            .zip(self.graph.lengths())
            .map(|(b, &l)| l * b.volume)
            .sum();
        self.epsilon.powi(n) * vertex_sum + self.epsilon.powi(n - 1) * edge_sum
    }

    /// Cohomology dimensions H⁰..Hⁿ of the model via Mayer–Vietoris, valid
    /// only for transversally trivial models (no general formula otherwise):
    ///
    /// ```text
    /// dims[0] = dims[n] = 1
    /// dims[1] = dims[n−1] = Σ_v b₁(X_v) + b₁(graph)
    /// dims[k] = Σ_v b_k(X_v)              for 2 ≤ k ≤ n−2
    /// ```
    pub fn cohomology_dims(&self) -> Result<Vec<usize>> {
        if !self.blocks.transversally_trivial() {
            return Err(Error::NotTransversallyTrivial);
        }
        let n = self.dimension();
        let b1_blocks: usize = self
            .blocks
            .vertices
            .iter()
            .map(|b| b.betti.get(1).copied().unwrap_or(0))
            .sum();
        let middle = b1_blocks + self.graph.first_betti_number();
        let mut dims = vec![0usize; n + 1];
        dims[0] = 1;
        dims[n] = 1;
        if n >= 2 {
            dims[1] = middle;
            dims[n - 1] = middle;
        }
        for (k, dim) in dims
            .iter_mut()
            .enumerate()
            .take(n.saturating_sub(1))
            .skip(2)
        {
            *dim = self
                .blocks
                .vertices
                .iter()
                .map(|b| b.betti.get(k).copied().unwrap_or(0))
                .sum();
        }
        Ok(dims)
    }
}

/// Eigenvalue scaling under ε-homothety: λ ↦ ε⁻²λ.
pub fn scale_eigenvalue(lambda: f64, eps: f64) -> Result<f64> {
    if eps <= 0.0 || !eps.is_finite() {
        return Err(Error::NonPositiveScale(eps));
    }
    if lambda < 0.0 {
        return Err(Error::BadParameter(format!(
            "eigenvalue must be nonnegative, got {lambda}"
        )));
    }
    Ok(lambda / (eps * eps))
}

/// Squared-norm scaling of p-forms under ε-homothety in dimension n:
/// ‖ω‖² ↦ ε^{n−2p}‖ω‖².  Middle degree p = n/2 is conformally invariant.
pub fn scale_norm(p: usize, n: usize, eps: f64) -> Result<f64> {
    if eps <= 0.0 || !eps.is_finite() {
        return Err(Error::NonPositiveScale(eps));
    }
    if p > n {
        return Err(Error::FormDegreeOutOfRange { p, lo: 0, hi: n, n });
    }
    Ok(eps.powi(n as i32 - 2 * p as i32))
}

/// Scale-invariant first-eigenvalue quantity κ = λ₁ · vol^{m/n} for an
/// elliptic operator of order m in dimension n.
pub fn kappa(lambda1: f64, volume: f64, order_m: usize, dimension_n: usize) -> Result<f64> {
    if volume <= 0.0 || !volume.is_finite() {
        return Err(Error::BadParameter(format!(
            "volume must be positive, got {volume}"
        )));
    }
    if lambda1 < 0.0 {
        return Err(Error::BadParameter(format!(
            "eigenvalue must be nonnegative, got {lambda1}"
        )));
    }
    Ok(lambda1 * volume.powf(order_m as f64 / dimension_n as f64))
}

/// Upper bound 8π(γ+1) for κ of the function Laplacian on a surface of
/// genus γ.
pub fn yang_yau_bound(genus: usize) -> f64 {
    8.0 * std::f64::consts::PI * (genus as f64 + 1.0)
}

/// Genus of the graph-like surface over a connected graph whose vertex blocks
/// are spheres with deg v discs removed: 1 − |V| + |E|.
pub fn surface_genus(g: &Graph) -> usize {
    g.edge_count() + 1 - g.vertex_count()
}

/// Transfer an exact p-form eigenvalue through a metric comparison
/// c₋²g ≤ g̃ ≤ c₊²g:
/// λ lands in [c₋⁻²(c₋/c₊)^{n+2p} λ, c₊⁻²(c₊/c₋)^{n+2p} λ].
pub fn metric_comparison_interval(
    lambda: f64,
    c_minus: f64,
    c_plus: f64,
    n: usize,
    p: usize,
) -> Result<(f64, f64)> {
    if c_minus <= 0.0 || c_plus < c_minus {
        return Err(Error::BadParameter(format!(
            "need 0 < c_minus <= c_plus, got ({c_minus}, {c_plus})"
        )));
    }
    let exp = (n + 2 * p) as i32;
    let lo = (c_minus / c_plus).powi(exp) / (c_minus * c_minus) * lambda;
    let hi = (c_plus / c_minus).powi(exp) / (c_plus * c_plus) * lambda;
    Ok((lo, hi))
}

// ---------------------------------------------------------------------------
// Config file format (TOML or JSON) for block data
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Default, Deserialize)]
struct VertexBlockConfig {
    #[serde(default)]
    lambda: BTreeMap<String, f64>,
    #[serde(default = "default_betti")]
    betti: Vec<usize>,
    #[serde(default = "one")]
    volume: f64,
}

#[derive(Debug, Clone, Default, Deserialize)]
struct EdgeBlockConfig {
    #[serde(default)]
    lambda: BTreeMap<String, f64>,
    #[serde(default)]
    overlap: BTreeMap<String, f64>,
    #[serde(default = "default_betti")]
    betti: Vec<usize>,
    #[serde(default = "one")]
    volume: f64,
}

fn one() -> f64 {
    1.0
}

fn default_betti() -> Vec<usize> {
    vec![1]
}

#[derive(Debug, Clone, Default, Deserialize)]
struct BlockDefaults {
    vertex: Option<VertexBlockConfig>,
    edge: Option<EdgeBlockConfig>,
}

/// Declarative block configuration: defaults plus per-index overrides, keyed
/// by vertex/edge index.  `drho_constant` pins ε²‖dρ‖²∞ to an exact value
/// instead of the C_ρ(1 + (ε/ℓ)²) model.
#[derive(Debug, Clone, Deserialize)]
pub struct BlocksConfig {
    pub dimension: usize,
    #[serde(default = "one")]
    pub c_np: f64,
    #[serde(default = "one")]
    pub c_rho: f64,
    #[serde(default)]
    pub drho_constant: Option<f64>,
    #[serde(default)]
    defaults: BlockDefaults,
    #[serde(default)]
    vertex: BTreeMap<String, VertexBlockConfig>,
    #[serde(default)]
    edge: BTreeMap<String, EdgeBlockConfig>,
}

fn parse_degree_map(m: &BTreeMap<String, f64>, what: &str) -> Result<BTreeMap<usize, f64>> {
    let mut out = BTreeMap::new();
    for (k, &v) in m {
        let p: usize = k
            .parse()
            .map_err(|_| Error::ConfigParse(format!("{what} key {k:?} is not a form degree")))?;
        out.insert(p, v);
    }
    Ok(out)
}

impl BlocksConfig {
    pub fn from_toml_str(s: &str) -> Result<Self> {
        toml::from_str(s).map_err(|e| Error::ConfigParse(e.to_string()))
    }

    pub fn from_json_str(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::ConfigParse(e.to_string()))
    }

    fn vertex_block(&self, index: usize) -> Result<VertexBlock> {
        let cfg = self
            .vertex
            .get(&index.to_string())
            .or(self.defaults.vertex.as_ref())
            .ok_or_else(|| Error::MissingBlockData(format!("vertex block {index} (no default)")))?;
        Ok(VertexBlock {
            exact_eigenvalues: parse_degree_map(&cfg.lambda, "vertex lambda")?,
            betti: cfg.betti.clone(),
            volume: cfg.volume,
        })
    }

    fn edge_block(&self, index: usize) -> Result<EdgeBlock> {
        let cfg = self
            .edge
            .get(&index.to_string())
            .or(self.defaults.edge.as_ref())
            .ok_or_else(|| Error::MissingBlockData(format!("edge block {index} (no default)")))?;
        Ok(EdgeBlock {
            exact_eigenvalues: parse_degree_map(&cfg.lambda, "edge lambda")?,
            overlap_eigenvalues: parse_degree_map(&cfg.overlap, "edge overlap")?,
            betti: cfg.betti.clone(),
            volume: cfg.volume,
        })
    }

    /// Materialise per-index blocks for a graph with the given vertex and
    /// edge counts.
    pub fn resolve(&self, vertex_count: usize, edge_count: usize) -> Result<BuildingBlocks> {
        let vertices = (0..vertex_count)
            .map(|v| self.vertex_block(v))
            .collect::<Result<Vec<_>>>()?;
        let edges = (0..edge_count)
            .map(|e| self.edge_block(e))
            .collect::<Result<Vec<_>>>()?;
        Ok(BuildingBlocks {
            dimension: self.dimension,
            vertices,
            edges,
            c_np: self.c_np,
            c_rho: self.c_rho,
            drho_override: self.drho_constant,
        })
    }
}
