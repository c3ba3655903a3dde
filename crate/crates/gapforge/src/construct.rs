//! Graph family generators and spectral-engineering transforms.
//!
//! Random generation uses [`SplitMix64`], a fixed, documented 64-bit PRNG, so
//! seeds stay portable across implementations and platforms.  The regular
//! generator is the pairing (configuration) model with rejection of loops,
//! multi-edges and disconnected outcomes: simpler than edge-switching MCMC,
//! exactly uniform over simple realisations conditioned on acceptance, and
//! fast enough at desk scale.

use std::collections::HashSet;

use crate::graph::{Graph, Matrix, WeightMeaning, WeightedMatrix};
use crate::{Error, Result};

/// SplitMix64 (Steele, Lea, Flood 2014): state advances by the golden-gamma
/// constant and the output is a finalising mix of the state.  Small, fast,
/// and completely specified by the three constants below.
#[derive(Debug, Clone)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9e3779b97f4a7c15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
        z ^ (z >> 31)
    }

    /// Uniform draw from `0..n` by rejection (no modulo bias).
    pub fn next_below(&mut self, n: usize) -> usize {
        assert!(n > 0);
        let n = n as u64;
        let zone = u64::MAX - (u64::MAX % n);
        loop {
            let x = self.next_u64();
            if x < zone {
                return (x % n) as usize;
            }
        }
    }

    /// In-place Fisher–Yates shuffle.
    pub fn shuffle<T>(&mut self, items: &mut [T]) {
        for i in (1..items.len()).rev() {
            let j = self.next_below(i + 1);
            items.swap(i, j);
        }
    }
}

/// Deterministic standard families used as test and experiment substrate.
pub mod standard {
    use super::*;

    /// Complete graph K_n.
    pub fn complete(n: usize) -> Result<Graph> {
        if n == 0 {
            return Err(Error::InfeasibleParameters(
                "complete graph needs n >= 1".into(),
            ));
        }
        let mut edges = Vec::new();
        for i in 0..n {
            for j in (i + 1)..n {
                edges.push((i, j));
            }
        }
        Graph::new(n, edges)
    }

    /// Cycle C_n, n >= 3.
    pub fn cycle(n: usize) -> Result<Graph> {
        if n < 3 {
            return Err(Error::InfeasibleParameters("cycle needs n >= 3".into()));
        }
        let edges = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Graph::new(n, edges)
    }

    /// Path on n vertices.
    pub fn path(n: usize) -> Result<Graph> {
        if n == 0 {
            return Err(Error::InfeasibleParameters("path needs n >= 1".into()));
        }
        let edges = (0..n.saturating_sub(1)).map(|i| (i, i + 1)).collect();
        Graph::new(n, edges)
    }

    /// Complete bipartite graph K_{a,b}.
    pub fn complete_bipartite(a: usize, b: usize) -> Result<Graph> {
        if a == 0 || b == 0 {
            return Err(Error::InfeasibleParameters(
                "bipartite sides must be nonempty".into(),
            ));
        }
        let mut edges = Vec::new();
        for i in 0..a {
            for j in 0..b {
                edges.push((i, a + j));
            }
        }
        Graph::new(a + b, edges)
    }

    /// The Petersen graph: outer 5-cycle, inner pentagram, spokes.
    pub fn petersen() -> Graph {
        let mut edges = Vec::new();
        for i in 0..5 {
            edges.push((i, (i + 1) % 5)); // outer cycle
            edges.push((5 + i, 5 + (i + 2) % 5)); // inner pentagram
            edges.push((i, 5 + i)); // spokes
        }
        Graph::new(10, edges).expect("petersen graph is connected")
    }
}

/// Requested graph family for [`generate`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GraphKind {
    Complete { n: usize },
    Cycle { n: usize },
    Path { n: usize },
    CompleteBipartite { a: usize, b: usize },
    TreeRandom { n: usize },
    RegularRandom { n: usize, k: usize },
}

const REJECTION_BUDGET: usize = 10_000;

/// Generate a connected graph of the requested kind; deterministic given the
/// seed (the seed is ignored for the deterministic families).
pub fn generate(kind: GraphKind, seed: u64) -> Result<Graph> {
    match kind {
        GraphKind::Complete { n } => standard::complete(n),
        GraphKind::Cycle { n } => standard::cycle(n),
        GraphKind::Path { n } => standard::path(n),
        GraphKind::CompleteBipartite { a, b } => standard::complete_bipartite(a, b),
        GraphKind::TreeRandom { n } => tree_random(n, seed),
        GraphKind::RegularRandom { n, k } => regular_random(n, k, seed),
    }
}

/// Random labelled tree by uniform attachment: vertex i joins a uniformly
/// chosen earlier vertex.
fn tree_random(n: usize, seed: u64) -> Result<Graph> {
    if n == 0 {
        return Err(Error::InfeasibleParameters("tree needs n >= 1".into()));
    }
    let mut rng = SplitMix64::new(seed);
    let mut edges = Vec::with_capacity(n.saturating_sub(1));
    for i in 1..n {
        edges.push((rng.next_below(i), i));
    }
    Graph::new(n, edges)
}

/// Configuration-model k-regular simple connected graph on n vertices.
fn regular_random(n: usize, k: usize, seed: u64) -> Result<Graph> {
    if k == 0 || k >= n {
        return Err(Error::InfeasibleParameters(format!(
            "need 0 < k < n, got k={k}, n={n}"
        )));
    }
    if !(n * k).is_multiple_of(2) {
        return Err(Error::InfeasibleParameters(format!(
            "n*k = {} is odd; no k-regular graph exists",
            n * k
        )));
    }
    let mut rng = SplitMix64::new(seed);
    let mut stubs: Vec<usize> = (0..n).flat_map(|v| std::iter::repeat_n(v, k)).collect();
    'attempt: for _ in 0..REJECTION_BUDGET {
        rng.shuffle(&mut stubs);
        let mut seen = HashSet::with_capacity(n * k / 2);
        let mut edges = Vec::with_capacity(n * k / 2);
        for pair in stubs.chunks_exact(2) {
            let (u, v) = (pair[0], pair[1]);
            if u == v || !seen.insert((u.min(v), u.max(v))) {
                continue 'attempt;
            }
            edges.push((u, v));
        }
        match Graph::new(n, edges) {
            Ok(g) => return Ok(g),
            Err(Error::Disconnected) => continue 'attempt,
            Err(e) => return Err(e),
        }
    }
    Err(Error::RejectionBudgetExceeded {
        attempts: REJECTION_BUDGET,
    })
}

/// Random connected multigraph: a random attachment tree plus `extra` edges
/// drawn uniformly over vertex pairs (loops and multi-edges allowed).
/// Substrate for randomised spectral property checks.
pub fn random_connected_multigraph(n: usize, extra: usize, seed: u64) -> Result<Graph> {
    if n == 0 {
        return Err(Error::InfeasibleParameters("need n >= 1".into()));
    }
    let mut rng = SplitMix64::new(seed);
    let mut edges = Vec::with_capacity(n - 1 + extra);
    for i in 1..n {
        edges.push((rng.next_below(i), i));
    }
    for _ in 0..extra {
        edges.push((rng.next_below(n), rng.next_below(n)));
    }
    Graph::new(n, edges)
}

/// Welding instructions for graph decoration: one copy of `decoration` is
/// attached at every vertex of `base` by identifying `attach_vertex` of the
/// copy with the base vertex.
#[derive(Debug, Clone)]
pub struct DecorationSpec {
    pub base: Graph,
    pub decoration: Graph,
    pub attach_vertex: usize,
}

/// Decorate a graph: the result has |V(base)|·|V(dec)| vertices (one copy of
/// the decoration minus its attach vertex per base vertex) and
/// |E(base)| + |V(base)|·|E(dec)| edges.  Connectivity is preserved.
pub fn decorate(spec: &DecorationSpec) -> Result<Graph> {
    let dec_n = spec.decoration.vertex_count();
    if spec.attach_vertex >= dec_n {
        return Err(Error::VertexOutOfRange {
            vertex: spec.attach_vertex,
            count: dec_n,
        });
    }
    let base_n = spec.base.vertex_count();
    let mut edges: Vec<(usize, usize)> = spec.base.edges().to_vec();
    let mut lengths: Vec<f64> = spec.base.lengths().to_vec();

    // vertex w != attach of copy c lives at base_n + c*(dec_n-1) + rank(w),
    // where rank skips the attach vertex; the attach vertex maps to c itself.
    let rank = |w: usize| if w < spec.attach_vertex { w } else { w - 1 };
    for c in 0..base_n {
        let map = |w: usize| {
            if w == spec.attach_vertex {
                c
            } else {
                base_n + c * (dec_n - 1) + rank(w)
            }
        };
        for (e, &(t, h)) in spec.decoration.edges().iter().enumerate() {
            edges.push((map(t), map(h)));
            lengths.push(spec.decoration.lengths()[e]);
        }
    }
    Graph::with_lengths(base_n + base_n * (dec_n - 1), edges, lengths)
}

/// An edge signing, one ±1 per edge of a base graph; parameterises 2-lifts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Signing(Vec<i8>);

impl Signing {
    pub fn new(signs: Vec<i8>) -> Result<Self> {
        if signs.iter().any(|&s| s != 1 && s != -1) {
            return Err(Error::BadParameter(
                "signing entries must be +1 or -1".into(),
            ));
        }
        Ok(Signing(signs))
    }

    pub fn all_positive(edge_count: usize) -> Self {
        Signing(vec![1; edge_count])
    }

    /// Signing from the low bits of `mask`: bit e set means edge e gets −1.
    /// Convenient for exhaustive searches over all 2^|E| signings.
    pub fn from_bitmask(edge_count: usize, mask: u64) -> Self {
        Signing(
            (0..edge_count)
                .map(|e| if mask >> e & 1 == 1 { -1 } else { 1 })
                .collect(),
        )
    }

    pub fn signs(&self) -> &[i8] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// Raw output of a 2-lift.  Lifts can disconnect (the all-positive signing
/// always does), which a connected-only [`Graph`] cannot represent, so the
/// lift is returned as data plus a connectivity flag.
#[derive(Debug, Clone)]
pub struct TwoLift {
    pub vertex_count: usize,
    pub edges: Vec<(usize, usize)>,
    pub lengths: Vec<f64>,
    pub connected: bool,
}

impl TwoLift {
    /// Convert into a [`Graph`]; errors with [`Error::DisconnectedLift`] when
    /// the lift fell apart.
    pub fn into_graph(self) -> Result<Graph> {
        if !self.connected {
            return Err(Error::DisconnectedLift);
        }
        Graph::with_lengths(self.vertex_count, self.edges, self.lengths)
    }
}

/// 2-lift of a simple connected graph along a signing: vertex v splits into
/// v⁰ = v and v¹ = v + |V|; a +1 edge (u,w) lifts to (u⁰,w⁰) and (u¹,w¹),
/// a −1 edge to (u⁰,w¹) and (u¹,w⁰).  The result has 2|V| vertices and
/// 2|E| edges.
pub fn two_lift(g: &Graph, signing: &Signing) -> Result<TwoLift> {
    if !g.is_simple() {
        return Err(Error::NotSimple("2-lift requires a simple base graph"));
    }
    if signing.len() != g.edge_count() {
        return Err(Error::SigningLengthMismatch {
            signs: signing.len(),
            edges: g.edge_count(),
        });
    }
    let n = g.vertex_count();
    let mut edges = Vec::with_capacity(2 * g.edge_count());
    let mut lengths = Vec::with_capacity(2 * g.edge_count());
    for (e, &(u, w)) in g.edges().iter().enumerate() {
        let l = g.lengths()[e];
        if signing.signs()[e] == 1 {
            edges.push((u, w));
            edges.push((u + n, w + n));
        } else {
            edges.push((u, w + n));
            edges.push((u + n, w));
        }
        lengths.push(l);
        lengths.push(l);
    }
    let connected = is_connected(2 * n, &edges);
    Ok(TwoLift {
        vertex_count: 2 * n,
        edges,
        lengths,
        connected,
    })
}

fn is_connected(n: usize, edges: &[(usize, usize)]) -> bool {
    let mut adjacency: Vec<Vec<usize>> = vec![Vec::new(); n];
    for &(t, h) in edges {
        adjacency[t].push(h);
        adjacency[h].push(t);
    }
    let mut seen = vec![false; n];
    let mut stack = vec![0usize];
    seen[0] = true;
    while let Some(v) = stack.pop() {
        for &w in &adjacency[v] {
            if !seen[w] {
                seen[w] = true;
                stack.push(w);
            }
        }
    }
    seen.into_iter().all(|s| s)
}

/// Signed adjacency matrix A_s of a simple graph under a signing: entry ±1
/// per edge.  The 2-lift adjacency spectrum is σ(A) ∪ σ(A_s).
pub fn signed_adjacency(g: &Graph, signing: &Signing) -> Result<WeightedMatrix> {
    if !g.is_simple() {
        return Err(Error::NotSimple("signed adjacency requires a simple graph"));
    }
    if signing.len() != g.edge_count() {
        return Err(Error::SigningLengthMismatch {
            signs: signing.len(),
            edges: g.edge_count(),
        });
    }
    let n = g.vertex_count();
    let mut a = Matrix::zeros(n, n);
    for (e, &(u, w)) in g.edges().iter().enumerate() {
        let s = signing.signs()[e] as f64;
        a[(u, w)] = s;
        a[(w, u)] = s;
    }
    WeightedMatrix::symmetric(a, WeightMeaning::Unweighted)
}
