//! Family pipelines: generate a graph family, run the spectral stack on every
//! member, and collect a summary CSV.
//!
//! Members are evaluated concurrently (bounded by `--jobs`); each member's
//! computation is pure and writes only inside its own directory, so ordering
//! never affects output content.  Summary rows are written in family order
//! and all numerical payloads are byte-deterministic for a fixed config.

use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use serde::Deserialize;

use gapforge::construct::{generate, GraphKind};
use gapforge::eig::{spectrum_of, DEFAULT_GROUPING_TOL};
use gapforge::manifold::BlocksConfig;
use gapforge::metric::find_gaps;
use gapforge::regimes::{classify_alpha_beta, margin};
use gapforge::{Graph, ManifoldModel};

use crate::fmt::{csv_string, fmt_sig, json_string};
use crate::manifest::RunManifest;

#[derive(Debug, Deserialize)]
struct FamilyConfig {
    kind: String,
    #[serde(default)]
    k: Option<usize>,
    nu: Vec<usize>,
    #[serde(default)]
    seed: u64,
}

#[derive(Debug, Deserialize)]
struct PipelineConfig {
    /// Form degree for the lower bound.
    p: usize,
    #[serde(default)]
    alpha: Option<f64>,
    #[serde(default)]
    epsilon: Option<f64>,
    #[serde(default)]
    beta: Option<f64>,
    #[serde(default)]
    length: Option<f64>,
    #[serde(default = "default_window")]
    window: f64,
    family: FamilyConfig,
    blocks: BlocksConfig,
}

fn default_window() -> f64 {
    10.0
}

struct MemberSpec {
    index: usize,
    nu: usize,
    seed: u64,
    epsilon: f64,
    length: f64,
    dir: PathBuf,
}

struct MemberOk {
    gamma: f64,
    is_ramanujan: bool,
    metric_gap_upper: f64,
    mcgowan_bound: f64,
    mcgowan_index: usize,
}

struct MemberRow {
    index: usize,
    nu: usize,
    seed: u64,
    outcome: std::result::Result<MemberOk, String>,
}

fn family_kind(cfg: &FamilyConfig, nu: usize) -> Result<GraphKind> {
    Ok(match cfg.kind.as_str() {
        "complete" => GraphKind::Complete { n: nu },
        "cycle" => GraphKind::Cycle { n: nu },
        "path" => GraphKind::Path { n: nu },
        "tree" | "tree_random" => GraphKind::TreeRandom { n: nu },
        "regular" | "regular_random" => GraphKind::RegularRandom {
            n: nu,
            k: cfg
                .k
                .ok_or_else(|| anyhow::anyhow!("family.k is required for regular families"))?,
        },
        other => bail!("unknown family kind {other:?}"),
    })
}

fn run_member(spec: &MemberSpec, cfg: &PipelineConfig) -> Result<MemberOk> {
    std::fs::create_dir_all(&spec.dir)?;
    let kind = family_kind(&cfg.family, spec.nu)?;
    let unit = generate(kind, spec.seed)?;
    let graph = Graph::with_lengths(
        unit.vertex_count(),
        unit.edges().to_vec(),
        vec![spec.length; unit.edge_count()],
    )?;
    std::fs::write(spec.dir.join("graph.json"), graph.to_json_string() + "\n")?;

    // discrete side: spectrum against unit lengths (the normalised Laplacian
    // the metric correspondence consumes), gap length, Ramanujan report
    let spectrum = spectrum_of(&unit.laplacian0(), DEFAULT_GROUPING_TOL)?;
    std::fs::write(
        spec.dir.join("spectrum.csv"),
        crate::spectrum_csv_payload(&spectrum),
    )?;
    let gamma = gapforge::spectral_gap_length(&unit)?;
    let ramanujan = gapforge::ramanujan_check(&unit)?;
    std::fs::write(spec.dir.join("ramanujan.json"), json_string(&ramanujan)?)?;

    // metric side
    let metric = gapforge::metric_spectrum(&spectrum, spec.length, cfg.window)?;
    std::fs::write(spec.dir.join("metric.csv"), crate::metric_csv(&metric))?;
    let gaps = find_gaps(&metric, 0.0);
    std::fs::write(spec.dir.join("gaps.csv"), crate::gaps_csv(&gaps))?;
    let metric_gap_upper = gaps.first().map(|g| g.upper).unwrap_or(0.0);

    // manifold side
    let blocks = cfg
        .blocks
        .resolve(graph.vertex_count(), graph.edge_count())?;
    let model = ManifoldModel::new(graph, blocks, spec.epsilon)?;
    let bound = model.mcgowan_bound(cfg.p)?;
    std::fs::write(spec.dir.join("mcgowan.json"), json_string(&bound)?)?;

    Ok(MemberOk {
        gamma,
        is_ramanujan: ramanujan.is_ramanujan,
        metric_gap_upper,
        mcgowan_bound: bound.lower_bound,
        mcgowan_index: bound.index_n,
    })
}

fn evaluate_members(
    specs: &[MemberSpec],
    cfg: &PipelineConfig,
    jobs: Option<usize>,
) -> Vec<MemberRow> {
    let eval = |spec: &MemberSpec| MemberRow {
        index: spec.index,
        nu: spec.nu,
        seed: spec.seed,
        outcome: run_member(spec, cfg).map_err(|e| format!("{e:#}").replace(',', ";")),
    };
    #[cfg(feature = "parallel")]
    {
        match jobs {
            Some(j) if j > 0 => rayon::ThreadPoolBuilder::new()
                .num_threads(j)
                .build()
                .expect("worker pool")
                .install(|| gapforge::batch::map(specs, eval)),
            _ => gapforge::batch::map(specs, eval),
        }
    }
    #[cfg(not(feature = "parallel"))]
    {
        let _ = jobs;
        gapforge::batch::map_seq(specs, eval)
    }
}

pub fn run(config_path: &Path, out_dir: &Path, jobs: Option<usize>) -> Result<()> {
    let text = std::fs::read_to_string(config_path)
        .with_context(|| format!("reading pipeline config {}", config_path.display()))?;
    let cfg: PipelineConfig =
        toml::from_str(&text).with_context(|| format!("parsing {}", config_path.display()))?;

    let alpha = match (cfg.alpha, cfg.epsilon) {
        (Some(a), None) if a > 0.0 && a.is_finite() => Some(a),
        (Some(_), None) => bail!("alpha must be positive"),
        (None, Some(_)) => None,
        _ => bail!("specify exactly one of alpha or epsilon"),
    };
    let beta = match (cfg.beta, cfg.length) {
        (Some(b), None) if b.is_finite() => Some(b),
        (Some(_), None) => bail!("beta must be a number"),
        (None, Some(_)) => None,
        _ => bail!("specify exactly one of beta or length"),
    };
    if cfg.blocks.dimension < 2 {
        bail!("blocks.dimension must be at least 2");
    }

    std::fs::create_dir_all(out_dir)?;
    let specs: Vec<MemberSpec> = cfg
        .family
        .nu
        .iter()
        .enumerate()
        .map(|(index, &nu)| {
            let nuf = nu as f64;
            MemberSpec {
                index,
                nu,
                seed: cfg.family.seed + index as u64,
                epsilon: match alpha {
                    Some(a) => nuf.powf(-a),
                    None => cfg.epsilon.unwrap(),
                },
                length: match beta {
                    Some(b) => nuf.powf(-b),
                    None => cfg.length.unwrap(),
                },
                dir: out_dir.join(format!("member_{index:03}")),
            }
        })
        .collect();

    let rows = evaluate_members(&specs, &cfg, jobs);

    // family-level regime prediction (meaningful only in (alpha, beta) mode)
    let n = cfg.blocks.dimension;
    let exponents = match (alpha, beta) {
        (Some(a), Some(b)) => {
            let report = classify_alpha_beta(a, b, n);
            std::fs::write(out_dir.join("regime.json"), json_string(&report)?)?;
            let function = if margin::function_tracking(a, b) >= 0.0 {
                2.0 * b
            } else {
                -a / 2.0
            };
            let volume = if a >= b {
                -((n as f64) - 1.0) * a - b + 1.0
            } else {
                -(n as f64) * a + 1.0
            };
            Some((margin::form_exponent(a, b), function, volume))
        }
        _ => None,
    };

    let summary_rows = rows.iter().map(|row| {
        let (status, fields) = match &row.outcome {
            Ok(ok) => (
                "ok".to_string(),
                [
                    fmt_sig(ok.gamma),
                    ok.is_ramanujan.to_string(),
                    fmt_sig(ok.metric_gap_upper),
                    fmt_sig(ok.mcgowan_bound),
                    ok.mcgowan_index.to_string(),
                ]
                .join(","),
            ),
            Err(message) => (format!("error: {message}"), ",,,,".to_string()),
        };
        let exponent_fields = match exponents {
            Some((form, function, volume)) => {
                format!(
                    "{},{},{}",
                    fmt_sig(form),
                    fmt_sig(function),
                    fmt_sig(volume)
                )
            }
            None => ",,".to_string(),
        };
        format!(
            "{},{},{},{status},{fields},{exponent_fields}",
            row.index, row.nu, row.seed
        )
    });
    let summary = csv_string(
        "index,nu,seed,status,gamma,ramanujan,metric_gap_upper,mcgowan_bound,mcgowan_index,form_exponent,function_exponent,volume_exponent",
        summary_rows,
    );
    std::fs::write(out_dir.join("summary.csv"), &summary)?;

    let mut manifest = RunManifest::new("pipeline").input(config_path)?;
    manifest = manifest.seed(cfg.family.seed).param(
        "jobs",
        jobs.map(|j| j.to_string()).unwrap_or_else(|| "auto".into()),
    );
    manifest.write_into_dir(out_dir)?;

    let failed = rows.iter().filter(|r| r.outcome.is_err()).count();
    if failed > 0 {
        bail!(
            "{failed} of {} members failed (see summary.csv)",
            rows.len()
        );
    }
    Ok(())
}
