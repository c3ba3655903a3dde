//! gapforge: spectra of discrete and equilateral metric graphs, lower bounds
//! and asymptotic regimes of graph-like manifold models.

mod fmt;
mod manifest;
mod pipeline;

use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use fmt::{csv_string, fmt_sig, json_string};
use gapforge::construct::{
    decorate, generate, two_lift, DecorationSpec, GraphKind, Signing, SplitMix64,
};
use gapforge::eig::{spectrum_of, Spectrum, DEFAULT_GROUPING_TOL};
use gapforge::manifold::BlocksConfig;
use gapforge::metric::find_gaps;
use gapforge::regimes::{classify_alpha_beta, classify_gamma, regime_diagram, render_regime_svg};
use gapforge::{Graph, ManifoldModel, McGowanVariant};
use manifest::RunManifest;

#[derive(Parser)]
#[command(
    name = "gapforge",
    version,
    about = "Spectral toolkit for graphs, metric graphs and graph-like manifold models"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Operator {
    Lap0,
    Lap1,
    Adjacency,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum VariantArg {
    First,
    Higher,
}

#[derive(Args)]
struct OutputArg {
    /// Output file; stdout when omitted (a manifest sidecar is written only
    /// for file output)
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Grouped spectrum of a graph operator as CSV or JSON
    Spectrum {
        graph: PathBuf,
        #[arg(long, value_enum, default_value = "lap0")]
        operator: Operator,
        /// Relative grouping tolerance for multiplicities
        #[arg(long, default_value_t = DEFAULT_GROUPING_TOL)]
        tol: f64,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
        #[command(flatten)]
        out: OutputArg,
    },
    /// Ramanujan certification of a regular graph (JSON report)
    Ramanujan {
        graph: PathBuf,
        #[command(flatten)]
        out: OutputArg,
    },
    /// Equilateral metric-graph spectrum over a window (CSV)
    #[command(name = "metric-spectrum")]
    MetricSpectrum {
        graph: PathBuf,
        /// Common edge length (stored lengths in the file are ignored; the
        /// correspondence consumes the unit-length discrete spectrum)
        #[arg(long)]
        length: f64,
        /// Spectral window upper end
        #[arg(long)]
        window: f64,
        #[arg(long, default_value_t = DEFAULT_GROUPING_TOL)]
        tol: f64,
        #[command(flatten)]
        out: OutputArg,
    },
    /// Spectral gaps of the metric-graph spectrum (CSV)
    Gap {
        graph: PathBuf,
        #[arg(long)]
        length: f64,
        #[arg(long)]
        window: f64,
        #[arg(long, default_value_t = 0.0)]
        min_width: f64,
        #[arg(long, default_value_t = DEFAULT_GROUPING_TOL)]
        tol: f64,
        #[command(flatten)]
        out: OutputArg,
    },
    /// Lower bound for exact p-form eigenvalues of the manifold model (JSON)
    Mcgowan {
        graph: PathBuf,
        /// Block data config (TOML or JSON)
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        p: usize,
        #[arg(long)]
        epsilon: f64,
        /// Override the bound variant selection
        #[arg(long, value_enum)]
        variant: Option<VariantArg>,
        #[command(flatten)]
        out: OutputArg,
    },
    /// Model volume of the graph-like manifold (JSON)
    Volume {
        graph: PathBuf,
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        epsilon: f64,
        #[command(flatten)]
        out: OutputArg,
    },
    /// Cohomology dimensions of a transversally trivial model (JSON)
    Cohomology {
        graph: PathBuf,
        #[arg(long)]
        config: PathBuf,
        #[command(flatten)]
        out: OutputArg,
    },
    /// Classify shrinking regimes; optionally render the parameter diagram
    Regimes {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        alpha: Option<f64>,
        #[arg(long)]
        beta: Option<f64>,
        /// Single-manifold regime exponent (alternative to --alpha/--beta)
        #[arg(long)]
        gamma: Option<f64>,
        /// Render the (alpha, beta) diagram to an SVG file
        #[arg(long)]
        svg: Option<PathBuf>,
        #[arg(long, default_value_t = 200)]
        resolution: usize,
        #[command(flatten)]
        out: OutputArg,
    },
    /// Generate a graph family member (graph JSON)
    Generate {
        /// complete | cycle | path | complete_bipartite | tree | regular
        #[arg(long)]
        kind: String,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        k: Option<usize>,
        #[arg(long)]
        a: Option<usize>,
        #[arg(long)]
        b: Option<usize>,
        /// Defaults to $GAPFORGE_SEED, then 0
        #[arg(long)]
        seed: Option<u64>,
        #[command(flatten)]
        out: OutputArg,
    },
    /// Weld a copy of a decoration graph onto every vertex of a base graph
    Decorate {
        #[arg(long)]
        base: PathBuf,
        #[arg(long)]
        dec: PathBuf,
        #[arg(long, default_value_t = 0)]
        attach: usize,
        #[command(flatten)]
        out: OutputArg,
    },
    /// 2-lift of a simple graph along an edge signing
    Lift {
        graph: PathBuf,
        /// Signing as a +/- string, one character per edge
        #[arg(long, allow_hyphen_values = true)]
        signs: Option<String>,
        /// Random signing seed (defaults to $GAPFORGE_SEED, then 0)
        #[arg(long)]
        seed: Option<u64>,
        #[command(flatten)]
        out: OutputArg,
    },
    /// Run a family pipeline from a config file into an output directory
    Pipeline {
        config: PathBuf,
        #[arg(long)]
        out: PathBuf,
        /// Worker threads (defaults to the logical CPU count)
        #[arg(long)]
        jobs: Option<usize>,
    },
}

fn main() {
    if let Err(e) = run() {
        eprintln!("error: {e:#}");
        std::process::exit(1);
    }
}

fn load_graph(path: &Path) -> Result<Graph> {
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("reading graph file {}", path.display()))?;
    Graph::from_json_str(&text).with_context(|| format!("parsing {}", path.display()))
}

fn load_blocks(path: &Path) -> Result<BlocksConfig> {
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("reading block config {}", path.display()))?;
    let cfg = if path.extension().is_some_and(|e| e == "json") {
        BlocksConfig::from_json_str(&text)
    } else {
        BlocksConfig::from_toml_str(&text)
    };
    cfg.with_context(|| format!("parsing {}", path.display()))
}

fn env_seed() -> Option<u64> {
    std::env::var("GAPFORGE_SEED")
        .ok()
        .and_then(|s| s.parse().ok())
}

/// The equilateral correspondence consumes the normalised (unit-length)
/// discrete spectrum; strip any stored lengths down to the combinatorial
/// structure.
fn unit_length_copy(g: &Graph) -> Result<Graph> {
    Ok(Graph::new(g.vertex_count(), g.edges().to_vec())?)
}

/// Print to stdout or write to a file (with manifest sidecar).
fn emit(payload: &str, out: &OutputArg, manifest: RunManifest) -> Result<()> {
    match &out.output {
        Some(path) => {
            if let Some(parent) = path.parent().filter(|p| !p.as_os_str().is_empty()) {
                std::fs::create_dir_all(parent)?;
            }
            std::fs::write(path, payload)?;
            manifest.write_sidecar(path)?;
        }
        None => print!("{payload}"),
    }
    Ok(())
}

pub(crate) fn spectrum_csv_payload(s: &Spectrum) -> String {
    csv_string(
        "value,multiplicity",
        s.iter().map(|(v, m)| format!("{},{}", fmt_sig(v), m)),
    )
}

pub(crate) fn metric_csv(report: &gapforge::MetricSpectrumReport) -> String {
    let mut rows: Vec<String> = Vec::new();
    for e in &report.eigenvalues {
        for _ in 0..e.multiplicity {
            rows.push(format!(
                "{},{},{}",
                fmt_sig(e.lambda),
                fmt_sig(e.source_mu),
                e.branch
            ));
        }
    }
    let mut out = csv_string("lambda,mu,branch", rows);
    out.push_str(&format!("# zero_mode: {}\n", report.zero_mode));
    for s in &report.exceptional_points {
        out.push_str(&format!("# exceptional: {}\n", fmt_sig(*s)));
    }
    out
}

pub(crate) fn gaps_csv(gaps: &[gapforge::GapInterval]) -> String {
    csv_string(
        "lower,upper,width",
        gaps.iter().map(|g| {
            format!(
                "{},{},{}",
                fmt_sig(g.lower),
                fmt_sig(g.upper),
                fmt_sig(g.width())
            )
        }),
    )
}

fn run() -> Result<()> {
    match Cli::parse().command {
        Command::Spectrum {
            graph,
            operator,
            tol,
            format,
            out,
        } => {
            let g = load_graph(&graph)?;
            let m = match operator {
                Operator::Lap0 => g.laplacian0(),
                Operator::Lap1 => g.laplacian1(),
                Operator::Adjacency => g.adjacency_matrix()?,
            };
            let s = spectrum_of(&m, tol)?;
            let payload = match format {
                Format::Csv => spectrum_csv_payload(&s),
                Format::Json => json_string(&s)?,
            };
            let op_name = match operator {
                Operator::Lap0 => "lap0",
                Operator::Lap1 => "lap1",
                Operator::Adjacency => "adjacency",
            };
            let manifest = RunManifest::new("spectrum")
                .param("operator", op_name)
                .param("tol", tol)
                .input(&graph)?;
            emit(&payload, &out, manifest)
        }
        Command::Ramanujan { graph, out } => {
            let g = load_graph(&graph)?;
            let report = gapforge::ramanujan_check(&g)?;
            let manifest = RunManifest::new("ramanujan").input(&graph)?;
            emit(&json_string(&report)?, &out, manifest)
        }
        Command::MetricSpectrum {
            graph,
            length,
            window,
            tol,
            out,
        } => {
            let g = unit_length_copy(&load_graph(&graph)?)?;
            let s = spectrum_of(&g.laplacian0(), tol)?;
            let report = gapforge::metric_spectrum(&s, length, window)?;
            let manifest = RunManifest::new("metric-spectrum")
                .param("length", length)
                .param("window", window)
                .param("tol", tol)
                .input(&graph)?;
            emit(&metric_csv(&report), &out, manifest)
        }
        Command::Gap {
            graph,
            length,
            window,
            min_width,
            tol,
            out,
        } => {
            let g = unit_length_copy(&load_graph(&graph)?)?;
            let s = spectrum_of(&g.laplacian0(), tol)?;
            let report = gapforge::metric_spectrum(&s, length, window)?;
            let gaps = find_gaps(&report, min_width);
            let manifest = RunManifest::new("gap")
                .param("length", length)
                .param("window", window)
                .param("min_width", min_width)
                .input(&graph)?;
            emit(&gaps_csv(&gaps), &out, manifest)
        }
        Command::Mcgowan {
            graph,
            config,
            p,
            epsilon,
            variant,
            out,
        } => {
            let g = load_graph(&graph)?;
            let blocks = load_blocks(&config)?.resolve(g.vertex_count(), g.edge_count())?;
            let model = ManifoldModel::new(g, blocks, epsilon)?;
            let variant = variant.map(|v| match v {
                VariantArg::First => McGowanVariant::FirstEigenvalue,
                VariantArg::Higher => McGowanVariant::HigherIndex,
            });
            let report = model.mcgowan_bound_with(p, variant, None, None)?;
            let manifest = RunManifest::new("mcgowan")
                .param("p", p)
                .param("epsilon", epsilon)
                .input(&graph)?
                .input(&config)?;
            emit(&json_string(&report)?, &out, manifest)
        }
        Command::Volume {
            graph,
            config,
            epsilon,
            out,
        } => {
            let g = load_graph(&graph)?;
            let blocks = load_blocks(&config)?.resolve(g.vertex_count(), g.edge_count())?;
            let model = ManifoldModel::new(g, blocks, epsilon)?;
            #[derive(serde::Serialize)]
            struct VolumeReport {
                volume: f64,
                epsilon: f64,
                dimension: usize,
            }
            let report = VolumeReport {
                volume: model.volume(),
                epsilon,
                dimension: model.dimension(),
            };
            let manifest = RunManifest::new("volume")
                .param("epsilon", epsilon)
                .input(&graph)?
                .input(&config)?;
            emit(&json_string(&report)?, &out, manifest)
        }
        Command::Cohomology { graph, config, out } => {
            let g = load_graph(&graph)?;
            let blocks = load_blocks(&config)?.resolve(g.vertex_count(), g.edge_count())?;
            let model = ManifoldModel::new(g, blocks, 1.0)?;
            #[derive(serde::Serialize)]
            struct CohomologyReport {
                dims: Vec<usize>,
                dimension: usize,
            }
            let report = CohomologyReport {
                dims: model.cohomology_dims()?,
                dimension: model.dimension(),
            };
            let manifest = RunManifest::new("cohomology")
                .input(&graph)?
                .input(&config)?;
            emit(&json_string(&report)?, &out, manifest)
        }
        Command::Regimes {
            n,
            alpha,
            beta,
            gamma,
            svg,
            resolution,
            out,
        } => {
            if n < 2 {
                bail!("--n must be at least 2");
            }
            if resolution < 2 {
                bail!("--resolution must be at least 2");
            }
            if matches!(alpha, Some(a) if a.is_nan() || a <= 0.0) {
                bail!("--alpha must be positive");
            }
            if matches!(beta, Some(b) if b.is_nan()) || matches!(gamma, Some(g) if g.is_nan()) {
                bail!("regime parameters must be numbers");
            }
            let payload = match (alpha, beta, gamma) {
                (Some(a), Some(b), None) => json_string(&classify_alpha_beta(a, b, n))?,
                (None, None, Some(g)) => json_string(&classify_gamma(g, n))?,
                (None, None, None) if svg.is_some() => String::new(),
                _ => bail!("pass both --alpha and --beta, or --gamma alone"),
            };
            let manifest = || {
                let mut m = RunManifest::new("regimes").param("n", n);
                for (key, value) in [("alpha", alpha), ("beta", beta), ("gamma", gamma)] {
                    if let Some(v) = value {
                        m = m.param(key, v);
                    }
                }
                m
            };
            if let Some(svg_path) = &svg {
                let diagram = regime_diagram(n, resolution);
                std::fs::write(svg_path, render_regime_svg(&diagram))?;
                manifest()
                    .param("resolution", resolution)
                    .write_sidecar(svg_path)?;
            }
            if payload.is_empty() {
                return Ok(());
            }
            emit(&payload, &out, manifest())
        }
        Command::Generate {
            kind,
            n,
            k,
            a,
            b,
            seed,
            out,
        } => {
            let seed = seed.or_else(env_seed).unwrap_or(0);
            let need = |value: Option<usize>, name: &str| {
                value.ok_or_else(|| anyhow::anyhow!("--{name} is required for kind {kind}"))
            };
            let kind_parsed = match kind.as_str() {
                "complete" => GraphKind::Complete { n: need(n, "n")? },
                "cycle" => GraphKind::Cycle { n: need(n, "n")? },
                "path" => GraphKind::Path { n: need(n, "n")? },
                "complete_bipartite" => GraphKind::CompleteBipartite {
                    a: need(a, "a")?,
                    b: need(b, "b")?,
                },
                "tree" | "tree_random" => GraphKind::TreeRandom { n: need(n, "n")? },
                "regular" | "regular_random" => GraphKind::RegularRandom {
                    n: need(n, "n")?,
                    k: need(k, "k")?,
                },
                other => bail!("unknown graph kind {other:?}"),
            };
            let g = generate(kind_parsed, seed)?;
            let manifest = RunManifest::new("generate").param("kind", &kind).seed(seed);
            emit(&(g.to_json_string() + "\n"), &out, manifest)
        }
        Command::Decorate {
            base,
            dec,
            attach,
            out,
        } => {
            let spec = DecorationSpec {
                base: load_graph(&base)?,
                decoration: load_graph(&dec)?,
                attach_vertex: attach,
            };
            let g = decorate(&spec)?;
            let manifest = RunManifest::new("decorate")
                .param("attach", attach)
                .input(&base)?
                .input(&dec)?;
            emit(&(g.to_json_string() + "\n"), &out, manifest)
        }
        Command::Lift {
            graph,
            signs,
            seed,
            out,
        } => {
            let g = load_graph(&graph)?;
            let signing = match signs {
                Some(s) => {
                    let parsed: Vec<i8> = s
                        .chars()
                        .map(|c| match c {
                            '+' => Ok(1),
                            '-' => Ok(-1),
                            other => bail!("sign characters must be + or -, got {other:?}"),
                        })
                        .collect::<Result<_>>()?;
                    Signing::new(parsed)?
                }
                None => {
                    let seed = seed.or_else(env_seed).unwrap_or(0);
                    let mut rng = SplitMix64::new(seed);
                    Signing::from_bitmask(g.edge_count(), rng.next_u64())
                }
            };
            let lift = two_lift(&g, &signing)?;
            let connected = lift.connected;
            if !connected {
                eprintln!("warning: lift is disconnected (two components)");
            }
            #[derive(serde::Serialize)]
            struct LiftFile {
                vertices: usize,
                edges: Vec<(usize, usize)>,
                lengths: Vec<f64>,
                connected: bool,
            }
            let payload = serde_json::to_string(&LiftFile {
                vertices: lift.vertex_count,
                edges: lift.edges,
                lengths: lift.lengths,
                connected,
            })? + "\n";
            let manifest = RunManifest::new("lift")
                .param("connected", connected)
                .param(
                    "signs",
                    signing
                        .signs()
                        .iter()
                        .map(|&s| if s > 0 { '+' } else { '-' })
                        .collect::<String>(),
                )
                .input(&graph)?;
            emit(&payload, &out, manifest)
        }
        Command::Pipeline { config, out, jobs } => pipeline::run(&config, &out, jobs),
    }
}
