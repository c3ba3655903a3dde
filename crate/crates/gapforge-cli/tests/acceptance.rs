//! Acceptance suite: one test per criterion, each printing a pass/fail line.
//!
//! Run with `cargo test -p gapforge-cli --test acceptance -- --nocapture` to
//! see the verdict lines.

use std::path::Path;
use std::process::Command;

use gapforge::construct::{
    decorate, random_connected_multigraph, standard, DecorationSpec, SplitMix64,
};
use gapforge::eig::{spectrum_of, DEFAULT_GROUPING_TOL};
use gapforge::manifold::{BuildingBlocks, EdgeBlock, ManifoldModel, VertexBlock};
use gapforge::metric::{find_gaps, ScaleLengths};
use gapforge::regimes::{classify_alpha_beta, classify_gamma};
use gapforge::{
    metric_spectrum, ramanujan_metric_gap, supersymmetry_check, surface_genus, Graph, Spectrum,
};
use std::collections::BTreeMap;

fn verdict(id: u32, name: &str, pass: bool) {
    println!(
        "criterion {id:02} [{name}]: {}",
        if pass { "PASS" } else { "FAIL" }
    );
    assert!(pass, "criterion {id:02} [{name}] failed");
}

fn laplacian_spectrum(g: &Graph) -> Spectrum {
    spectrum_of(&g.laplacian0(), DEFAULT_GROUPING_TOL).unwrap()
}

#[test]
fn criterion_01_oracle_spectra() {
    let k4 = laplacian_spectrum(&standard::complete(4).unwrap());
    let mut ok = k4.multiplicities == vec![1, 3]
        && k4.values[0].abs() <= 1e-9
        && (k4.values[1] - 4.0 / 3.0).abs() <= 1e-9;

    let petersen = spectrum_of(
        &standard::petersen().adjacency_matrix().unwrap(),
        DEFAULT_GROUPING_TOL,
    )
    .unwrap();
    ok = ok
        && petersen.multiplicities == vec![4, 5, 1]
        && (petersen.values[0] + 2.0).abs() <= 1e-9
        && (petersen.values[1] - 1.0).abs() <= 1e-9
        && (petersen.values[2] - 3.0).abs() <= 1e-9;
    verdict(1, "oracle spectra", ok);
}

#[test]
fn criterion_02_supersymmetry_suite() {
    let mut rng = SplitMix64::new(20260811);
    let mut ok = true;
    for _ in 0..100 {
        let n = 2 + rng.next_below(11); // |V| <= 12
        let extra = rng.next_below(8); // loops and multi-edges allowed
        let g = random_connected_multigraph(n, extra, rng.next_u64()).unwrap();
        let report = supersymmetry_check(&g, 1e-8);
        if !report.ok {
            eprintln!(
                "supersymmetry failed on |V|={} |E|={}: mismatch={} kernel={} expected={}",
                g.vertex_count(),
                g.edge_count(),
                report.max_mismatch,
                report.kernel_dim,
                report.expected_kernel_dim
            );
            ok = false;
        }
    }
    verdict(2, "supersymmetry suite", ok);
}

#[test]
fn criterion_03_metric_spectrum_oracle_c5() {
    let spectrum = laplacian_spectrum(&standard::cycle(5).unwrap());
    let window = 50.0;
    let report = metric_spectrum(&spectrum, 1.0, window).unwrap();

    // circle of circumference 5: eigenvalues (2πm/5)², multiplicity 2, with
    // multiples of 5 (the μ = 0 branch) landing in Σ
    let mut expected = Vec::new();
    let mut m = 1usize;
    loop {
        let lambda = (2.0 * std::f64::consts::PI * m as f64 / 5.0).powi(2);
        if lambda > window {
            break;
        }
        if !m.is_multiple_of(5) {
            expected.push((lambda, 2usize));
        }
        m += 1;
    }
    let mut ok = report.eigenvalues.len() == expected.len();
    if ok {
        for (got, (lambda, mult)) in report.eigenvalues.iter().zip(expected.iter()) {
            if (got.lambda - lambda).abs() > 1e-8 || got.multiplicity != *mult {
                ok = false;
            }
        }
    }
    verdict(3, "metric spectrum oracle (C5)", ok);
}

#[test]
fn criterion_04_ramanujan_gap_disjointness() {
    // The gap constant used here is h_3 = arccos²(2√2/3) ≈ 0.114905: the
    // arccos argument must be 1 − (Laplacian gap bound), since the
    // correspondence reads cos(ℓ₀√λ) = 1 − μ.  Applying arccos to the gap
    // bound itself (≈ 2.290928) would put Petersen's first metric eigenvalue
    // arccos²(1/3) ≈ 1.515261 inside the claimed gap.
    let h3 = (2.0 * 2.0_f64.sqrt() / 3.0).acos().powi(2);
    let mut ok = true;
    for g in [standard::complete(4).unwrap(), standard::petersen()] {
        let spectrum = laplacian_spectrum(&g);
        for length in [0.5, 1.0, 2.0] {
            let gap = ramanujan_metric_gap(3, length).unwrap();
            if (gap.upper - h3 / (length * length)).abs() > 1e-12 {
                ok = false;
            }
            let report = metric_spectrum(&spectrum, length, 60.0).unwrap();
            for e in &report.eigenvalues {
                if e.lambda < gap.upper - 1e-8 {
                    eprintln!("eigenvalue {} inside gap (0, {})", e.lambda, gap.upper);
                    ok = false;
                }
            }
            for s in &report.exceptional_points {
                if *s < gap.upper - 1e-8 {
                    ok = false;
                }
            }
        }
    }
    verdict(4, "ramanujan metric gap disjoint (corrected constant)", ok);
}

fn unit_blocks(n: usize, vertex_count: usize, edge_count: usize) -> BuildingBlocks {
    let mut ev = BTreeMap::new();
    for p in 1..n {
        ev.insert(p, 1.0);
    }
    let vertex = VertexBlock {
        exact_eigenvalues: ev.clone(),
        betti: vec![1],
        volume: 1.0,
    };
    let mut betti = vec![0usize; n];
    betti[0] = 1;
    betti[n - 1] = 1;
    let edge = EdgeBlock {
        exact_eigenvalues: ev.clone(),
        overlap_eigenvalues: ev,
        betti,
        volume: 1.0,
    };
    BuildingBlocks::uniform(n, vertex, edge, vertex_count, edge_count)
}

#[test]
fn criterion_05_mcgowan_toy_bound() {
    let g = standard::path(2).unwrap();
    let mut blocks = unit_blocks(3, 2, 1);
    blocks.drho_override = Some(1.0);

    let at = |eps: f64| {
        ManifoldModel::new(g.clone(), blocks.clone(), eps)
            .unwrap()
            .mcgowan_bound(2)
            .unwrap()
    };
    let toy = at(0.1);
    let mut ok = (toy.c_p - 20.0).abs() <= 1e-12 && (toy.lower_bound - 0.625).abs() <= 1e-12;

    let ratio = at(1e-4).lower_bound / at(1e-3).lower_bound;
    ok = ok && (ratio / 100.0 - 1.0).abs() <= 0.005;
    verdict(5, "mcgowan toy bound and eps^-2 law", ok);
}

#[test]
fn criterion_06_higher_index_torus_transversal() {
    let g = standard::complete(4).unwrap();
    let mut blocks = unit_blocks(3, 4, 6);
    for edge in &mut blocks.edges {
        edge.betti = vec![1, 2, 1]; // flat torus transversal: b1 = 2
    }
    let model = ManifoldModel::new(g, blocks, 0.1).unwrap();
    let report = model.mcgowan_bound(2).unwrap();
    verdict(6, "higher-index bound N = 25", report.index_n == 25);
}

#[test]
fn criterion_07_rescaled_divergence_regions_disjoint() {
    let res = 200usize;
    let mut overlap = 0usize;
    for iy in 0..res {
        for ix in 0..res {
            let alpha = 3.0 * (ix as f64 + 0.5) / res as f64;
            let beta = -1.0 + 3.0 * (iy as f64 + 0.5) / res as f64;
            let r = classify_alpha_beta(alpha, beta, 3);
            if r.rescaled_function_diverges && r.rescaled_form_diverges {
                overlap += 1;
            }
        }
    }
    verdict(
        7,
        "rescaled divergence regions disjoint on 200x200 grid",
        overlap == 0,
    );
}

#[test]
fn criterion_08_branch_continuity() {
    let mut rng = SplitMix64::new(777);
    let mut ok = true;
    for _ in 0..1000 {
        let alpha = 0.001 + 3.0 * ((rng.next_u64() >> 11) as f64 / (1u64 << 53) as f64);
        let beta = alpha;
        let lhs = 2.0 * alpha - 1.0;
        let rhs = 4.0 * alpha - 2.0 * beta - 1.0;
        if (lhs - rhs).abs() != 0.0 {
            ok = false;
        }
    }
    for n in 2..6 {
        let r = classify_gamma(1.0, n);
        if r.volume.len() != 2 || r.volume[0].exponent != r.volume[1].exponent {
            ok = false;
        }
    }
    verdict(8, "branch continuity at alpha=beta and gamma=1", ok);
}

#[test]
fn criterion_09_scaling_laws() {
    let spectrum = laplacian_spectrum(&standard::cycle(5).unwrap());

    // dyadic factors compose bit-exactly
    let base = metric_spectrum(&spectrum, 1.0, 40.0).unwrap();
    let composed = base.scale_lengths(2.0).unwrap().scale_lengths(4.0).unwrap();
    let direct = base.scale_lengths(8.0).unwrap();
    let mut ok = composed.eigenvalues.len() == direct.eigenvalues.len()
        && composed
            .eigenvalues
            .iter()
            .zip(direct.eigenvalues.iter())
            .all(|(a, b)| a.lambda == b.lambda);

    // doubling ℓ₀ quarters the spectrum: recompute directly in the scaled
    // window and compare against the scaled report
    let scaled = base.scale_lengths(2.0).unwrap(); // window 40/4 = 10
    let direct2 = metric_spectrum(&spectrum, 2.0, 10.0).unwrap();
    ok = ok && scaled.eigenvalues.len() == direct2.eigenvalues.len();
    if ok {
        for (a, b) in scaled.eigenvalues.iter().zip(direct2.eigenvalues.iter()) {
            if (a.lambda - b.lambda).abs() > 1e-9
                || a.multiplicity != b.multiplicity
                || (a.source_mu - b.source_mu).abs() > 1e-9
            {
                ok = false;
            }
        }
    }
    verdict(9, "length scaling laws", ok);
}

#[test]
fn criterion_10_genus_and_cohomology() {
    let mut ok = surface_genus(&standard::petersen()) == 6;
    let model =
        ManifoldModel::new(standard::complete(4).unwrap(), unit_blocks(3, 4, 6), 0.1).unwrap();
    let dims = model.cohomology_dims().unwrap();
    ok = ok && dims == vec![1, 3, 3, 1];
    for k in 0..dims.len() {
        ok = ok && dims[k] == dims[dims.len() - 1 - k];
    }
    verdict(10, "genus and cohomology dimensions", ok);
}

#[test]
fn criterion_11_decoration_experiment_non_gating() {
    // decorate C6 with a 2-path at every vertex and look for a gap of width
    // >= 0.1 in [0, 40] that covers eigenvalues of the undecorated spectrum
    let base = standard::cycle(6).unwrap();
    let decorated = decorate(&DecorationSpec {
        base: base.clone(),
        decoration: standard::path(2).unwrap(),
        attach_vertex: 0,
    })
    .unwrap();

    let window = 40.0;
    let before = metric_spectrum(&laplacian_spectrum(&base), 1.0, window).unwrap();
    let after = metric_spectrum(&laplacian_spectrum(&decorated), 1.0, window).unwrap();
    let new_gap = find_gaps(&after, 0.1)
        .into_iter()
        .find(|gap| before.eigenvalues.iter().any(|e| gap.contains(e.lambda)));

    match new_gap {
        Some(gap) => {
            println!(
                "criterion 11 [decoration opens a gap]: PASS (gap ({:.6}, {:.6}) covers undecorated spectrum)",
                gap.lower, gap.upper
            );
        }
        None => {
            // exploratory: the gap-opening mechanism is cited, not asserted
            println!("criterion 11 [decoration opens a gap]: WARN (no new gap found; non-gating)");
        }
    }
}

#[test]
fn criterion_12_pipeline_determinism() {
    let dir = tempfile::tempdir().unwrap();
    let config_path = dir.path().join("pipe.toml");
    std::fs::write(
        &config_path,
        r#"
p = 2
alpha = 1.0
beta = 0.0
window = 10.0

[family]
kind = "regular_random"
k = 3
nu = [10, 16, 20]
seed = 9

[blocks]
dimension = 3

[blocks.defaults.vertex]
lambda = { "1" = 1.0, "2" = 1.0 }
betti = [1]

[blocks.defaults.edge]
lambda = { "2" = 1.0 }
overlap = { "1" = 1.0 }
betti = [1, 0, 1]
"#,
    )
    .unwrap();

    let run_pipeline = |out: &Path, jobs: &str| {
        let status = Command::new(env!("CARGO_BIN_EXE_gapforge"))
            .args([
                "pipeline",
                config_path.to_str().unwrap(),
                "--out",
                out.to_str().unwrap(),
                "--jobs",
                jobs,
            ])
            .status()
            .unwrap();
        assert!(status.success());
    };
    let out_a = dir.path().join("a");
    let out_b = dir.path().join("b");
    run_pipeline(&out_a, "2");
    run_pipeline(&out_b, "1"); // worker count must not affect payload bytes

    let mut files_a: Vec<_> = walk(&out_a);
    files_a.sort();
    let mut files_b: Vec<_> = walk(&out_b);
    files_b.sort();
    let names = |files: &[std::path::PathBuf], root: &Path| -> Vec<String> {
        files
            .iter()
            .map(|p| p.strip_prefix(root).unwrap().display().to_string())
            .collect()
    };
    let mut ok = names(&files_a, &out_a) == names(&files_b, &out_b);
    if ok {
        for (a, b) in files_a.iter().zip(files_b.iter()) {
            if a.file_name().is_some_and(|n| n == "manifest.json") {
                continue; // the manifest carries the timestamp
            }
            if std::fs::read(a).unwrap() != std::fs::read(b).unwrap() {
                eprintln!("payload differs: {}", a.display());
                ok = false;
            }
        }
    }
    verdict(12, "pipeline reruns are byte-identical", ok);
}

fn walk(dir: &Path) -> Vec<std::path::PathBuf> {
    let mut out = Vec::new();
    for entry in std::fs::read_dir(dir).unwrap() {
        let path = entry.unwrap().path();
        if path.is_dir() {
            out.extend(walk(&path));
        } else {
            out.push(path);
        }
    }
    out
}
