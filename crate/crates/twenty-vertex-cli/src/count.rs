use std::collections::BTreeMap;

use anyhow::bail;
use clap::Args;
use num_bigint::BigUint;
use serde::Serialize;
use twenty_vertex::enumerate::{count_brute, count_transfer, RefinedSplit};
use twenty_vertex::exact6v::refined_from_6v;
use twenty_vertex::{BoundaryKind, Caps, TriangleDomain};

use crate::{output, Format, Outcome, OutArgs};

#[derive(Args)]
pub struct CountArgs {
    #[arg(long)]
    pub m: usize,
    /// dwbc1, dwbc2 or dwbc3.
    #[arg(long, default_value = "dwbc3", value_parser = crate::parse_bc)]
    pub bc: BoundaryKind,
    #[arg(long, value_enum, default_value = "json")]
    pub format: Format,
    #[command(flatten)]
    pub out: OutArgs,
}

#[derive(Serialize)]
struct Report {
    status: &'static str,
    m: usize,
    bc: BoundaryKind,
    total: String,
    refined: Vec<String>,
    #[serde(rename = "refinedSplit", skip_serializing_if = "Option::is_none")]
    refined_split: Option<Split>,
    /// Refined counts per route that ran.
    routes: BTreeMap<&'static str, Vec<String>>,
}

#[derive(Serialize)]
struct Split {
    #[serde(rename = "H")]
    horizontal: Vec<String>,
    #[serde(rename = "D")]
    diagonal: Vec<String>,
}

fn dec<T: ToString>(v: &[T]) -> Vec<String> {
    v.iter().map(ToString::to_string).collect()
}

pub fn run(a: &CountArgs, caps: &Caps) -> anyhow::Result<Outcome> {
    if a.format == Format::Svg {
        bail!("count writes csv or json");
    }
    let d = TriangleDomain::new(a.m, a.bc)?;
    let padded = |mut v: Vec<BigUint>| {
        v.resize(a.m, BigUint::ZERO);
        v
    };
    let mut routes: BTreeMap<&'static str, Vec<BigUint>> = BTreeMap::new();
    let mut split: Option<RefinedSplit> = None;
    if a.m <= caps.det {
        routes.insert("determinant", padded(refined_from_6v(a.m, a.bc, caps)?.coeffs().to_vec()));
    }
    if a.m <= caps.transfer {
        let r = count_transfer(&d, caps)?;
        routes.insert("transfer", padded(r.refined));
        split = Some(r.refined_split);
    }
    if a.m <= caps.brute {
        let r = count_brute(&d, caps)?;
        routes.insert("brute", padded(r.refined));
        split.get_or_insert(r.refined_split);
    }
    // determinant first, it is the fastest
    let Some(first) = ["determinant", "transfer", "brute"].iter().find_map(|k| routes.get(k)) else {
        bail!("m = {} exceeds every route cap ({caps:?})", a.m);
    };
    let agree = routes.values().all(|r| r == first);
    let total: BigUint = first.iter().sum();
    let refined = dec(first);
    let routes = routes.into_iter().map(|(k, v)| (k, dec(&v))).collect();
    let report = Report {
        status: if agree { "pass" } else { "fail" },
        m: a.m,
        bc: a.bc,
        total: total.to_string(),
        refined: refined.clone(),
        refined_split: split.map(|s| Split { horizontal: dec(&s.horizontal), diagonal: dec(&s.diagonal) }),
        routes,
    };
    let body = match a.format {
        Format::Json => output::json(&report)?,
        _ => output::csv(
            &["k", "count", "H", "D"],
            (0..a.m).map(|i| {
                let (h, d) = report
                    .refined_split
                    .as_ref()
                    .map(|s| (s.horizontal[i].clone(), s.diagonal[i].clone()))
                    .unwrap_or_default();
                vec![(i + 1).to_string(), refined[i].clone(), h, d]
            }),
        )?,
    };
    let failure = (!agree).then(|| serde_json::json!({ "status": "fail", "identity": "route agreement", "routes": report.routes }));
    Ok(Outcome { body, passed: agree, failure })
}
