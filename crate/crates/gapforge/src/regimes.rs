//! Classification of shrinking-parameter regimes for graph-like manifolds.
//!
//! Two parameterisations are covered:
//!
//! * a single manifold with edge length ℓ = ε^γ coupled to the radius
//!   ([`classify_gamma`]);
//! * a family over graphs G^i with ν_i = |V(G^i)| → ∞, radius ε_i = ν_i^{−α}
//!   and edge length ℓ_i = ν_i^{−β} ([`classify_alpha_beta`]).
//!
//! Hidden constants in the ≍/≲/≳ relations are never estimated; every output
//! is an exponent plus the branch condition it came from, and boundary points
//! report both adjacent branches rather than smoothing across.

use serde::Serialize;

use crate::{Error, Result};

/// Kind of asymptotic relation a branch states.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum BoundKind {
    /// Two-sided comparison (≍).
    TwoSided,
    /// Upper bound only (≲).
    UpperBound,
    /// Lower bound only (≳).
    LowerBound,
}

/// One branch of a piecewise exponent law: the exponent together with the
/// condition selecting the branch and the strength of the relation.
#[derive(Debug, Clone, Serialize)]
pub struct Branch {
    pub condition: String,
    pub kind: BoundKind,
    pub exponent: f64,
}

impl Branch {
    fn new(condition: &str, kind: BoundKind, exponent: f64) -> Self {
        Branch {
            condition: condition.to_string(),
            kind,
            exponent,
        }
    }
}

/// Regime report for a single manifold with ℓ = ε^γ.
#[derive(Debug, Clone, Serialize)]
pub struct GammaRegimeReport {
    pub gamma: f64,
    pub dimension: usize,
    /// Behaviour of the function (0-form) eigenvalues in powers of ε:
    /// two-sided ε^{−2γ} for −1/4 < γ < 1/2, otherwise only the ε^{1/2}
    /// upper bound survives.
    pub function: Vec<Branch>,
    /// The eigenvalue closeness between manifold and graph needs γ < 1/2.
    pub closeness_holds: bool,
    /// Divergence rate of the first exact p-form eigenvalue (2 ≤ p ≤ n−1):
    /// lower bound ε^{−2} for γ ≤ 1, ε^{−4+2γ} for 1 ≤ γ < 2; empty for
    /// γ ≥ 2 where no divergence is guaranteed.
    pub form: Vec<Branch>,
    /// Form divergence is guaranteed only for γ < 2.
    pub form_divergence_guaranteed: bool,
    /// Volume exponent: n−1+γ for γ ≤ 1 (edge term dominates), n for γ ≥ 1.
    pub volume: Vec<Branch>,
}

/// Classify the ℓ = ε^γ regime in dimension n ≥ 2.
pub fn classify_gamma(gamma: f64, n: usize) -> GammaRegimeReport {
    assert!(n >= 2, "dimension must be at least 2");

    let mut function = Vec::new();
    if gamma > -0.25 && gamma < 0.5 {
        function.push(Branch::new(
            "-1/4 < gamma < 1/2",
            BoundKind::TwoSided,
            -2.0 * gamma,
        ));
    }
    if gamma <= -0.25 || gamma >= 0.5 {
        function.push(Branch::new(
            "gamma <= -1/4 or gamma >= 1/2 (error term dominates)",
            BoundKind::UpperBound,
            0.5,
        ));
    }
    if gamma == -0.25 {
        function.insert(
            0,
            Branch::new("gamma = -1/4 boundary", BoundKind::TwoSided, -2.0 * gamma),
        );
    }

    let mut form = Vec::new();
    if gamma <= 1.0 {
        form.push(Branch::new("gamma <= 1", BoundKind::LowerBound, -2.0));
    }
    if (1.0..2.0).contains(&gamma) {
        form.push(Branch::new(
            "1 <= gamma < 2",
            BoundKind::LowerBound,
            -4.0 + 2.0 * gamma,
        ));
    }

    let mut volume = Vec::new();
    if gamma <= 1.0 {
        volume.push(Branch::new(
            "gamma <= 1 (edge term dominates)",
            BoundKind::TwoSided,
            n as f64 - 1.0 + gamma,
        ));
    }
    if gamma >= 1.0 {
        volume.push(Branch::new(
            "gamma >= 1 (vertex term dominates)",
            BoundKind::TwoSided,
            n as f64,
        ));
    }

    GammaRegimeReport {
        gamma,
        dimension: n,
        function,
        closeness_holds: gamma < 0.5,
        form,
        form_divergence_guaranteed: gamma < 2.0,
        volume,
    }
}

/// Regime report for a family with ε_i = ν_i^{−α}, ℓ_i = ν_i^{−β}.
#[derive(Debug, Clone, Serialize)]
pub struct AlphaBetaRegimeReport {
    pub alpha: f64,
    pub beta: f64,
    pub dimension: usize,
    /// 0-form eigenvalue convergence to the rescaled metric graph needs
    /// max{β, 0} < α/2.
    pub function_converges: bool,
    /// Function eigenvalue exponent in powers of ν: two-sided 2β on the
    /// tracking branch, upper bound −α/2 otherwise; both at the boundary.
    pub function: Vec<Branch>,
    /// Form eigenvalue lower-bound exponent: 2α−1 for α ≥ β, 4α−2β−1 for
    /// α ≤ β.
    pub form: Vec<Branch>,
    /// Whether the form lower-bound exponent is positive.
    pub form_diverges: bool,
    /// Volume exponent: −(n−1)α−β+1 for α ≥ β, −nα+1 for α ≤ β.
    pub volume: Vec<Branch>,
    /// Rescaled-to-unit-volume function exponent 2/n − 2(1−1/n)(α−β).
    pub rescaled_function: Vec<Branch>,
    /// Positive rescaled function exponent inside the admissible region.
    pub rescaled_function_diverges: bool,
    /// Rescaled form exponent 2(α−β+1)/n − 1 on its α ≥ β branch (empty
    /// otherwise).
    pub rescaled_form: Vec<Branch>,
    pub rescaled_form_diverges: bool,
    /// Dark-grey region of the parameter diagram: α > 1/2, β ≥ 0, β < α/2
    /// (with Ramanujan input the whole Hodge spectrum opens a growing gap).
    pub all_eigenvalues_diverge: bool,
    /// Light-grey region: forms diverge while function eigenvalues tend to 0.
    pub forms_diverge_functions_vanish: bool,
    /// For surfaces (n = 2) the genus of the graph-like surface grows
    /// linearly in ν.
    pub genus_grows_linearly: bool,
}

/// Branch membership helpers shared by the classifier, the diagram and the
/// leak tests.  Each margin is continuous and positive exactly on the open
/// region of its predicate.
pub mod margin {
    /// Positive iff the 0-form convergence condition max{β,0} < α/2 holds.
    pub fn function_converges(alpha: f64, beta: f64) -> f64 {
        alpha / 2.0 - beta.max(0.0)
    }

    /// Form lower-bound exponent (continuous across the α = β seam).
    pub fn form_exponent(alpha: f64, beta: f64) -> f64 {
        if alpha >= beta {
            2.0 * alpha - 1.0
        } else {
            4.0 * alpha - 2.0 * beta - 1.0
        }
    }

    /// Positive iff the function eigenvalue tracks ν^{2β} (strict interior).
    pub fn function_tracking(alpha: f64, beta: f64) -> f64 {
        if beta >= 0.0 {
            beta + alpha / 2.0 // β ≥ −α/2 holds with margin α/2 + β
        } else {
            beta + alpha / 4.0 // β > −α/4 branch
        }
    }

    /// Rescaled 0-form exponent 2/n − 2(1−1/n)(α−β).
    pub fn rescaled_function_exponent(alpha: f64, beta: f64, n: usize) -> f64 {
        let nf = n as f64;
        2.0 / nf - 2.0 * (1.0 - 1.0 / nf) * (alpha - beta)
    }

    /// Rescaled form exponent 2(α−β+1)/n − 1, meaningful for α ≥ β.
    pub fn rescaled_form_exponent(alpha: f64, beta: f64, n: usize) -> f64 {
        2.0 * (alpha - beta + 1.0) / n as f64 - 1.0
    }

    /// Positive inside the rescaled-function divergence region.
    pub fn rescaled_function_diverges(alpha: f64, beta: f64, n: usize) -> f64 {
        function_converges(alpha, beta)
            .min(function_tracking(alpha, beta))
            .min(rescaled_function_exponent(alpha, beta, n))
    }

    /// Positive inside the rescaled-form divergence region.
    pub fn rescaled_form_diverges(alpha: f64, beta: f64, n: usize) -> f64 {
        (alpha - beta).min(rescaled_form_exponent(alpha, beta, n))
    }
}

/// Classify the (α, β) regime of a uniform graph family in dimension n ≥ 2;
/// requires α > 0.
pub fn classify_alpha_beta(alpha: f64, beta: f64, n: usize) -> AlphaBetaRegimeReport {
    assert!(n >= 2, "dimension must be at least 2");
    assert!(alpha > 0.0, "alpha must be positive");
    let nf = n as f64;

    let tracking = margin::function_tracking(alpha, beta);
    let mut function = Vec::new();
    if tracking >= 0.0 {
        function.push(Branch::new(
            "(beta >= -alpha/2, beta >= 0) or (beta >= -alpha/4, beta <= 0)",
            BoundKind::TwoSided,
            2.0 * beta,
        ));
    }
    if tracking <= 0.0 {
        function.push(Branch::new(
            "outside the tracking region",
            BoundKind::UpperBound,
            -alpha / 2.0,
        ));
    }

    let mut form = Vec::new();
    if alpha >= beta {
        form.push(Branch::new(
            "alpha >= beta",
            BoundKind::LowerBound,
            2.0 * alpha - 1.0,
        ));
    }
    if alpha <= beta {
        form.push(Branch::new(
            "alpha <= beta",
            BoundKind::LowerBound,
            4.0 * alpha - 2.0 * beta - 1.0,
        ));
    }
    let form_diverges = margin::form_exponent(alpha, beta) > 0.0;

    let mut volume = Vec::new();
    if alpha >= beta {
        volume.push(Branch::new(
            "alpha >= beta (edge term dominates)",
            BoundKind::TwoSided,
            -(nf - 1.0) * alpha - beta + 1.0,
        ));
    }
    if alpha <= beta {
        volume.push(Branch::new(
            "alpha <= beta (vertex term dominates)",
            BoundKind::TwoSided,
            -nf * alpha + 1.0,
        ));
    }

    let rescaled_function = vec![Branch::new(
        "rescaled to unit volume",
        BoundKind::TwoSided,
        margin::rescaled_function_exponent(alpha, beta, n),
    )];
    let mut rescaled_form = Vec::new();
    if alpha >= beta {
        rescaled_form.push(Branch::new(
            "alpha >= beta",
            BoundKind::LowerBound,
            margin::rescaled_form_exponent(alpha, beta, n),
        ));
    }

    let function_converges = margin::function_converges(alpha, beta) > 0.0;
    let functions_vanish = beta < 0.0;

    AlphaBetaRegimeReport {
        alpha,
        beta,
        dimension: n,
        function_converges,
        function,
        form,
        form_diverges,
        volume,
        rescaled_function,
        rescaled_function_diverges: margin::rescaled_function_diverges(alpha, beta, n) > 0.0,
        rescaled_form,
        rescaled_form_diverges: margin::rescaled_form_diverges(alpha, beta, n) > 0.0,
        all_eigenvalues_diverge: alpha > 0.5 && beta >= 0.0 && beta < alpha / 2.0,
        forms_diverge_functions_vanish: form_diverges && functions_vanish,
        genus_grows_linearly: n == 2,
    }
}

// ---------------------------------------------------------------------------
// Regime diagram
// ---------------------------------------------------------------------------

/// Window of the parameter diagram: α ∈ (0, 3), β ∈ (−1, 2).
pub const DIAGRAM_ALPHA_RANGE: (f64, f64) = (0.0, 3.0);
pub const DIAGRAM_BETA_RANGE: (f64, f64) = (-1.0, 2.0);

/// Flags evaluated at one raster cell.
#[derive(Debug, Clone, Copy, Default, Serialize)]
pub struct CellFlags {
    pub function_converges: bool,
    pub form_diverges: bool,
    pub all_eigenvalues_diverge: bool,
    pub forms_diverge_functions_vanish: bool,
    pub rescaled_function_diverges: bool,
    pub rescaled_form_diverges: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum LineStyle {
    Solid,
    Dashed,
    Dotted,
}

/// Analytic boundary polyline of the diagram (exact line equations; the
/// raster is only for region fill).
#[derive(Debug, Clone, Serialize)]
pub struct BoundaryLine {
    pub name: String,
    pub style: LineStyle,
    pub points: Vec<(f64, f64)>,
}

#[derive(Debug, Clone, Serialize)]
pub struct RegimeDiagram {
    pub dimension: usize,
    pub resolution: usize,
    pub alpha_range: (f64, f64),
    pub beta_range: (f64, f64),
    /// Row-major raster, index = iy·resolution + ix, cell centres.
    pub cells: Vec<CellFlags>,
    pub boundaries: Vec<BoundaryLine>,
}

impl RegimeDiagram {
    pub fn cell_center(&self, ix: usize, iy: usize) -> (f64, f64) {
        let (a0, a1) = self.alpha_range;
        let (b0, b1) = self.beta_range;
        let res = self.resolution as f64;
        (
            a0 + (ix as f64 + 0.5) * (a1 - a0) / res,
            b0 + (iy as f64 + 0.5) * (b1 - b0) / res,
        )
    }

    pub fn cell(&self, ix: usize, iy: usize) -> CellFlags {
        self.cells[iy * self.resolution + ix]
    }
}

/// Exact clipped segment of the affine line β = slope·α + intercept inside
/// the given window; empty when the line misses it.
fn affine_segment(
    slope: f64,
    intercept: f64,
    alpha_range: (f64, f64),
    beta_range: (f64, f64),
) -> Vec<(f64, f64)> {
    let (mut lo, mut hi) = alpha_range;
    if slope == 0.0 {
        if intercept < beta_range.0 || intercept > beta_range.1 {
            return Vec::new();
        }
    } else {
        let at_b0 = (beta_range.0 - intercept) / slope;
        let at_b1 = (beta_range.1 - intercept) / slope;
        lo = lo.max(at_b0.min(at_b1));
        hi = hi.min(at_b0.max(at_b1));
    }
    if lo >= hi {
        return Vec::new();
    }
    vec![(lo, slope * lo + intercept), (hi, slope * hi + intercept)]
}

/// Evaluate all regime flags over a raster and emit the analytic boundary
/// lines of the diagram for dimension n.
pub fn regime_diagram(n: usize, resolution: usize) -> RegimeDiagram {
    assert!(n >= 2, "dimension must be at least 2");
    assert!(resolution >= 2, "resolution must be at least 2");
    let alpha_range = DIAGRAM_ALPHA_RANGE;
    let beta_range = DIAGRAM_BETA_RANGE;

    let rows: Vec<usize> = (0..resolution).collect();
    let cell_rows = crate::batch::map(&rows, |&iy| {
        let mut row = Vec::with_capacity(resolution);
        for ix in 0..resolution {
            let a = alpha_range.0
                + (ix as f64 + 0.5) * (alpha_range.1 - alpha_range.0) / resolution as f64;
            let b = beta_range.0
                + (iy as f64 + 0.5) * (beta_range.1 - beta_range.0) / resolution as f64;
            let r = classify_alpha_beta(a, b, n);
            row.push(CellFlags {
                function_converges: r.function_converges,
                form_diverges: r.form_diverges,
                all_eigenvalues_diverge: r.all_eigenvalues_diverge,
                forms_diverge_functions_vanish: r.forms_diverge_functions_vanish,
                rescaled_function_diverges: r.rescaled_function_diverges,
                rescaled_form_diverges: r.rescaled_form_diverges,
            });
        }
        row
    });
    let cells: Vec<CellFlags> = cell_rows.into_iter().flatten().collect();

    let nf = n as f64;
    let boundaries = vec![
        BoundaryLine {
            name: "function convergence: beta = alpha/2 (beta >= 0)".into(),
            style: LineStyle::Solid,
            points: affine_segment(0.5, 0.0, alpha_range, (0.0, beta_range.1)),
        },
        BoundaryLine {
            name: "form divergence: alpha = 1/2 (alpha >= beta)".into(),
            style: LineStyle::Solid,
            points: vec![(0.5, beta_range.0), (0.5, 0.5)],
        },
        BoundaryLine {
            // the branch constraint beta >= alpha starts this piece at (1/2, 1/2)
            name: "form divergence: 4*alpha - 2*beta - 1 = 0 (alpha <= beta)".into(),
            style: LineStyle::Solid,
            points: affine_segment(2.0, -0.5, (0.5, alpha_range.1), beta_range),
        },
        BoundaryLine {
            name: format!("rescaled function divergence: beta = alpha - 1/{}", n - 1),
            style: LineStyle::Dashed,
            points: affine_segment(1.0, -1.0 / (nf - 1.0), alpha_range, beta_range),
        },
        BoundaryLine {
            name: format!("constant volume: beta = 1 - {}*alpha", n - 1),
            style: LineStyle::Dotted,
            points: affine_segment(-(nf - 1.0), 1.0, alpha_range, beta_range),
        },
        BoundaryLine {
            name: format!("rescaled form divergence: beta = alpha - ({n}/2 - 1)"),
            style: LineStyle::Dashed,
            points: affine_segment(1.0, -(nf / 2.0 - 1.0), alpha_range, beta_range),
        },
    ];

    RegimeDiagram {
        dimension: n,
        resolution,
        alpha_range,
        beta_range,
        cells,
        boundaries,
    }
}

/// Render the diagram as a standalone SVG: raster fill per region flag,
/// analytic boundary polylines, and a legend.
pub fn render_regime_svg(diagram: &RegimeDiagram) -> String {
    let width = 720.0;
    let height = 560.0;
    let margin = 50.0;
    let legend_height = 110.0;
    let plot_w = width - 2.0 * margin;
    let plot_h = height - 2.0 * margin - legend_height;
    let (a0, a1) = diagram.alpha_range;
    let (b0, b1) = diagram.beta_range;
    let to_x = |a: f64| margin + (a - a0) / (a1 - a0) * plot_w;
    let to_y = |b: f64| margin + (b1 - b) / (b1 - b0) * plot_h;

    let mut svg = String::new();
    svg.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{width}\" height=\"{height}\" viewBox=\"0 0 {width} {height}\">\n"
    ));
    svg.push_str("<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n");

    let res = diagram.resolution;
    let cw = plot_w / res as f64;
    let ch = plot_h / res as f64;
    let colour_of = |flags: CellFlags| {
        if flags.all_eigenvalues_diverge {
            Some("#555555")
        } else if flags.forms_diverge_functions_vanish {
            Some("#bbbbbb")
        } else if flags.rescaled_function_diverges {
            Some("#d8c8ee")
        } else if flags.rescaled_form_diverges {
            Some("#c8e6d0")
        } else {
            None
        }
    };
    // merge horizontal runs of equal colour into single rects
    for iy in 0..res {
        let mut ix = 0;
        while ix < res {
            let Some(fill) = colour_of(diagram.cell(ix, iy)) else {
                ix += 1;
                continue;
            };
            let start = ix;
            while ix < res && colour_of(diagram.cell(ix, iy)) == Some(fill) {
                ix += 1;
            }
            let (a, b) = diagram.cell_center(start, iy);
            let x = to_x(a) - cw / 2.0;
            let y = to_y(b) - ch / 2.0;
            let w = cw * (ix - start) as f64;
            svg.push_str(&format!(
                "<rect x=\"{x:.2}\" y=\"{y:.2}\" width=\"{w:.2}\" height=\"{ch:.2}\" fill=\"{fill}\"/>\n"
            ));
        }
    }

    for line in &diagram.boundaries {
        if line.points.len() < 2 {
            continue;
        }
        let dash = match line.style {
            LineStyle::Solid => "",
            LineStyle::Dashed => " stroke-dasharray=\"8,4\"",
            LineStyle::Dotted => " stroke-dasharray=\"2,4\"",
        };
        let pts: Vec<String> = line
            .points
            .iter()
            .map(|&(a, b)| format!("{:.2},{:.2}", to_x(a), to_y(b)))
            .collect();
        svg.push_str(&format!(
            "<polyline points=\"{}\" fill=\"none\" stroke=\"black\" stroke-width=\"1.5\"{}/>\n",
            pts.join(" "),
            dash
        ));
    }

    // axes
    svg.push_str(&format!(
        "<rect x=\"{margin}\" y=\"{margin}\" width=\"{plot_w:.2}\" height=\"{plot_h:.2}\" fill=\"none\" stroke=\"black\"/>\n"
    ));
    svg.push_str(&format!(
        "<text x=\"{:.2}\" y=\"{:.2}\" font-size=\"14\">alpha</text>\n",
        margin + plot_w / 2.0,
        margin + plot_h + 30.0
    ));
    svg.push_str(&format!(
        "<text x=\"12\" y=\"{:.2}\" font-size=\"14\">beta</text>\n",
        margin + plot_h / 2.0
    ));

    // legend
    let legend = [
        ("#555555", "all eigenvalues diverge (Ramanujan input)"),
        (
            "#bbbbbb",
            "form eigenvalues diverge, function eigenvalues vanish",
        ),
        ("#d8c8ee", "rescaled function eigenvalue diverges"),
        ("#c8e6d0", "rescaled form eigenvalue diverges"),
    ];
    let ly0 = margin + plot_h + 40.0;
    for (i, (colour, label)) in legend.iter().enumerate() {
        let y = ly0 + 18.0 * i as f64;
        svg.push_str(&format!(
            "<rect x=\"{margin}\" y=\"{:.2}\" width=\"14\" height=\"12\" fill=\"{colour}\" stroke=\"black\"/>\n",
            y - 10.0
        ));
        svg.push_str(&format!(
            "<text x=\"{:.2}\" y=\"{y:.2}\" font-size=\"12\">{label} (n={})</text>\n",
            margin + 20.0,
            diagram.dimension
        ));
    }
    svg.push_str("</svg>\n");
    svg
}

// ---------------------------------------------------------------------------
// Divergence certificates
// ---------------------------------------------------------------------------

/// Which divergence statement to certify.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum CertificateKind {
    /// Growing common spectral gap for Ramanujan families (dark-grey region).
    RamanujanGap,
    /// Divergence of the rescaled (unit-volume) function eigenvalue.
    RescaledFunctionDivergence,
    /// Divergence of the rescaled exact p-form eigenvalue.
    RescaledFormDivergence,
}

#[derive(Debug, Clone, Serialize)]
pub struct CertificateParams {
    pub alpha: f64,
    pub beta: f64,
    pub n: usize,
    /// Regularity degree of the Ramanujan family, where required.
    pub degree_k: Option<usize>,
}

#[derive(Debug, Clone, Serialize)]
pub struct HypothesisCheck {
    pub name: String,
    pub satisfied: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct DivergenceCertificate {
    pub kind: CertificateKind,
    pub params: CertificateParams,
    pub checks: Vec<HypothesisCheck>,
    /// Growth exponent of the common gap, min{2β, 2α−1} (RamanujanGap).
    pub gap_exponent: Option<f64>,
    /// Volume exponent −(n−1)α−β+1 (RamanujanGap).
    pub volume_exponent: Option<f64>,
    /// Rescaled function exponent 2/n − 2(1−1/n)(α−β).
    pub rescaled_function_exponent: Option<f64>,
    /// Rescaled form exponent 2(α−β+1)/n − 1.
    pub rescaled_form_exponent: Option<f64>,
    /// For form certificates: the rescaled function eigenvalue decays to 0.
    pub function_decays: Option<bool>,
    /// For β = 0 the Ramanujan gap is a fixed interval rather than growing.
    pub constant_gap: Option<bool>,
}

fn run_checks(checks: Vec<(String, bool)>) -> Result<Vec<HypothesisCheck>> {
    let failed: Vec<String> = checks
        .iter()
        .filter(|(_, ok)| !ok)
        .map(|(name, _)| name.clone())
        .collect();
    if !failed.is_empty() {
        return Err(Error::HypothesisFailed { failed });
    }
    Ok(checks
        .into_iter()
        .map(|(name, satisfied)| HypothesisCheck { name, satisfied })
        .collect())
}

/// Certify one of the divergence statements; refuses with the list of failed
/// inequalities when hypotheses are violated.
pub fn divergence_certificate(
    kind: CertificateKind,
    params: CertificateParams,
) -> Result<DivergenceCertificate> {
    let (alpha, beta, n) = (params.alpha, params.beta, params.n);
    if n < 2 {
        return Err(Error::BadParameter(format!(
            "dimension must be >= 2, got {n}"
        )));
    }
    let nf = n as f64;
    match kind {
        CertificateKind::RamanujanGap => {
            let k_ok = params.degree_k.map(|k| k >= 3).unwrap_or(false);
            let checks = run_checks(vec![
                ("degree k >= 3 (Ramanujan family)".into(), k_ok),
                ("alpha > 1/2".into(), alpha > 0.5),
                ("beta >= 0".into(), beta >= 0.0),
                ("beta < alpha/2".into(), beta < alpha / 2.0),
            ])?;
            Ok(DivergenceCertificate {
                kind,
                checks,
                gap_exponent: Some((2.0 * beta).min(2.0 * alpha - 1.0)),
                volume_exponent: Some(-(nf - 1.0) * alpha - beta + 1.0),
                rescaled_function_exponent: None,
                rescaled_form_exponent: None,
                function_decays: None,
                constant_gap: Some(beta == 0.0),
                params,
            })
        }
        CertificateKind::RescaledFunctionDivergence => {
            // the admissible triangle is taken closed on the convergence and
            // tracking sides; only the exponent inequality is strict
            let tracking = if beta < 0.0 {
                beta >= -alpha / 4.0
            } else {
                true
            };
            let checks = run_checks(vec![
                ("alpha > 0".into(), alpha > 0.0),
                (
                    "max{beta,0} <= alpha/2 (eigenvalue convergence)".into(),
                    beta.max(0.0) <= alpha / 2.0,
                ),
                ("function eigenvalue tracks nu^(2 beta)".into(), tracking),
                (
                    format!("beta > alpha - 1/{} (positive exponent)", n - 1),
                    beta > alpha - 1.0 / (nf - 1.0),
                ),
            ])?;
            Ok(DivergenceCertificate {
                kind,
                checks,
                gap_exponent: None,
                volume_exponent: None,
                rescaled_function_exponent: Some(margin::rescaled_function_exponent(
                    alpha, beta, n,
                )),
                rescaled_form_exponent: None,
                function_decays: Some(false),
                constant_gap: None,
                params,
            })
        }
        CertificateKind::RescaledFormDivergence => {
            let checks = run_checks(vec![
                ("alpha > 0".into(), alpha > 0.0),
                ("n >= 3 (forms of degree 2..n-1 exist)".into(), n >= 3),
                ("alpha >= beta".into(), alpha >= beta),
                (
                    format!("beta < alpha - ({n}/2 - 1) (positive exponent)"),
                    beta < alpha - (nf / 2.0 - 1.0),
                ),
            ])?;
            Ok(DivergenceCertificate {
                kind,
                checks,
                gap_exponent: None,
                volume_exponent: None,
                rescaled_function_exponent: Some(margin::rescaled_function_exponent(
                    alpha, beta, n,
                )),
                rescaled_form_exponent: Some(margin::rescaled_form_exponent(alpha, beta, n)),
                function_decays: Some(true),
                constant_gap: None,
                params,
            })
        }
    }
}
