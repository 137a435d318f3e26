use std::f64::consts::PI;

use clap::Args;
use serde::Serialize;
use twenty_vertex::arctic::{branch, uniform_curve_residual, BranchKind, CurveBranch};
use twenty_vertex::weights::Regime;
use twenty_vertex::WeightParams;

use crate::angle::AngleArgs;
use crate::{output, svg, Format, Outcome, OutArgs};

/// Every emitted point must lie on its own tangent line to this accuracy.
pub const TANGENCY_GATE: f64 = 1e-8;
/// Distance gate for the degree-10 curve at the uniform point.
pub const UNIFORM_GATE: f64 = 1e-6;

#[derive(Args)]
pub struct CurveArgs {
    #[command(flatten)]
    pub angles: AngleArgs,
    /// Points per branch, endpoints included.
    #[arg(long, default_value_t = 201)]
    pub num_points: usize,
    #[arg(long, value_enum, default_value = "csv")]
    pub format: Format,
    #[command(flatten)]
    pub out: OutArgs,
}

#[derive(Serialize)]
struct Point {
    xi: f64,
    #[serde(rename = "X")]
    x: f64,
    #[serde(rename = "Y")]
    y: f64,
    #[serde(rename = "A")]
    a: Option<f64>,
    kappa: Option<f64>,
}

#[derive(Serialize)]
struct BranchOut {
    branch: &'static str,
    #[serde(rename = "xiRange")]
    xi_range: (f64, f64),
    #[serde(rename = "maxTangencyResidual")]
    max_tangency: f64,
    points: Vec<Point>,
}

#[derive(Serialize)]
struct Params {
    eta: f64,
    lambda: f64,
    mu: f64,
    regime: &'static str,
}

#[derive(Serialize)]
struct Report {
    status: &'static str,
    params: Params,
    /// Gaps between branch ends that should meet: NE/SE at ξ = 0 and NE/NW at the far end.
    joins: [(&'static str, f64); 2],
    #[serde(rename = "uniformResidual", skip_serializing_if = "Option::is_none")]
    uniform_residual: Option<f64>,
    branches: Vec<BranchOut>,
}

pub fn is_uniform_point(p: &WeightParams) -> bool {
    (p.eta - PI / 8.0).abs() < 1e-12 && (p.lambda - 5.0 * PI / 8.0).abs() < 1e-12 && p.mu.abs() < 1e-12
}

pub fn run(a: &CurveArgs) -> anyhow::Result<Outcome> {
    let p = a.angles.params()?;
    let regime = match p.regime()? {
        Regime::Disordered => "disordered",
        Regime::FreeFermionGauge => "free-fermion",
    };
    let branches: Vec<CurveBranch> =
        BranchKind::ALL.iter().map(|&k| branch(&p, k, a.num_points)).collect::<Result<_, _>>()?;
    let [ne, se, nw] = [&branches[0], &branches[1], &branches[2]];
    let gap = |u: &CurveBranch, i: usize, v: &CurveBranch, j: usize| {
        let (s, t) = (&u.points[i], &v.points[j]);
        (s.x - t.x).hypot(s.y - t.y)
    };
    let last = ne.points.len() - 1;
    let joins = [("NE-SE", gap(ne, 0, se, se.points.len() - 1)), ("NE-NW", gap(ne, last, nw, nw.points.len() - 1))];
    let uniform_residual = is_uniform_point(&p)
        .then(|| ne.points.iter().map(|q| uniform_curve_residual(q.x, q.y).abs()).fold(0.0, f64::max));
    let tangency = branches.iter().map(CurveBranch::max_tangency_residual).fold(0.0, f64::max);
    let mut failures = Vec::new();
    if !(tangency <= TANGENCY_GATE) {
        failures.push(serde_json::json!({ "identity": "tangency", "maxResidual": tangency, "gate": TANGENCY_GATE }));
    }
    if let Some(r) = uniform_residual.filter(|r| !(*r <= UNIFORM_GATE)) {
        failures.push(serde_json::json!({ "identity": "uniform degree-10 curve", "maxResidual": r, "gate": UNIFORM_GATE }));
    }
    let passed = failures.is_empty();
    let report = Report {
        status: if passed { "pass" } else { "fail" },
        params: Params { eta: p.eta, lambda: p.lambda, mu: p.mu, regime },
        joins,
        uniform_residual,
        branches: branches
            .iter()
            .map(|b| BranchOut {
                branch: b.kind.name(),
                xi_range: b.xi_range,
                max_tangency: b.max_tangency_residual(),
                points: b
                    .points
                    .iter()
                    .map(|q| Point { xi: q.xi, x: q.x, y: q.y, a: q.slope, kappa: q.kappa })
                    .collect(),
            })
            .collect(),
    };
    let body = match a.format {
        Format::Json => output::json(&report)?,
        Format::Csv => output::csv(
            &["branch", "xi", "X", "Y", "A", "kappa"],
            branches.iter().flat_map(|b| {
                b.points.iter().map(|q| {
                    vec![
                        b.kind.name().to_string(),
                        q.xi.to_string(),
                        q.x.to_string(),
                        q.y.to_string(),
                        q.slope.map(|s| s.to_string()).unwrap_or_default(),
                        q.kappa.map(|k| k.to_string()).unwrap_or_default(),
                    ]
                })
            }),
        )?,
        Format::Svg => svg::curve(&branches),
    };
    if a.format != Format::Json {
        if let Some(r) = uniform_residual {
            eprintln!("{}", serde_json::json!({ "uniformResidual": r, "gate": UNIFORM_GATE }));
        }
    }
    let failure = (!passed).then(|| serde_json::json!({ "status": "fail", "failures": failures }));
    Ok(Outcome { body, passed, failure })
}
