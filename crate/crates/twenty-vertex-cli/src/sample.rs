use anyhow::bail;
use clap::Args;
use serde::Serialize;
use twenty_vertex::enumerate::{count_transfer, Sampler};
use twenty_vertex::lattice::Channel;
use twenty_vertex::{BoundaryKind, Caps, PathConfig, TriangleDomain};

use crate::{output, svg, Format, Outcome, OutArgs};

/// Largest allowed |z| of a histogram bin.
pub const SIGMA_GATE: f64 = 3.0;

#[derive(Args)]
pub struct SampleArgs {
    #[arg(long)]
    pub m: usize,
    #[arg(long, default_value = "dwbc3", value_parser = crate::parse_bc)]
    pub bc: BoundaryKind,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Number of samples.
    #[arg(long, short, default_value_t = 1)]
    pub n: usize,
    /// Compare the refined statistic of the samples with its exact distribution.
    #[arg(long)]
    pub histogram: bool,
    /// Shade frozen windows in the SVG.
    #[arg(long)]
    pub phases: bool,
    /// Side of the phase windows, in lattice steps.
    #[arg(long, default_value_t = 2)]
    pub window: usize,
    #[arg(long, value_enum, default_value = "svg")]
    pub format: Format,
    #[command(flatten)]
    pub out: OutArgs,
}

#[derive(Serialize)]
struct Bin {
    k: usize,
    observed: usize,
    expected: f64,
    z: f64,
}

#[derive(Serialize)]
struct Histogram {
    status: &'static str,
    m: usize,
    bc: BoundaryKind,
    seed: u64,
    samples: usize,
    #[serde(rename = "maxAbsZ")]
    max_abs_z: f64,
    bins: Vec<Bin>,
}

#[derive(Serialize)]
struct Drawn<'a> {
    k: usize,
    channel: Channel,
    config: &'a PathConfig,
}

fn statistic(c: &PathConfig, bc: BoundaryKind) -> anyhow::Result<(usize, Channel)> {
    c.refined_statistic(bc).ok_or_else(|| anyhow::anyhow!("sample has no refined statistic"))
}

pub fn run(a: &SampleArgs, caps: &Caps) -> anyhow::Result<Outcome> {
    if a.n == 0 {
        bail!("--n must be positive");
    }
    let d = TriangleDomain::new(a.m, a.bc)?;
    let sampler = Sampler::uniform(&d, caps)?;
    let samples = sampler.sample_many(a.seed, a.n);
    if a.histogram {
        return histogram(a, caps, &d, &samples);
    }
    let body = match a.format {
        Format::Svg => {
            if a.n != 1 {
                bail!("SVG output shows one configuration; use --n 1 or another format");
            }
            svg::lattice(&samples[0], a.phases.then_some(a.window))
        }
        Format::Json => {
            let drawn = samples
                .iter()
                .map(|c| statistic(c, a.bc).map(|(k, channel)| Drawn { k, channel, config: c }))
                .collect::<anyhow::Result<Vec<_>>>()?;
            output::json(&drawn)?
        }
        Format::Csv => {
            let rows = samples
                .iter()
                .enumerate()
                .map(|(i, c)| {
                    let (k, ch) = statistic(c, a.bc)?;
                    Ok(vec![i.to_string(), k.to_string(), format!("{ch:?}")])
                })
                .collect::<anyhow::Result<Vec<_>>>()?;
            output::csv(&["sample", "k", "channel"], rows)?
        }
    };
    Ok(Outcome::ok(body))
}

fn histogram(a: &SampleArgs, caps: &Caps, d: &TriangleDomain, samples: &[PathConfig]) -> anyhow::Result<Outcome> {
    let exact = count_transfer(d, caps)?;
    let total = exact.total.to_string().parse::<f64>()?;
    let mut observed = vec![0usize; a.m];
    for c in samples {
        observed[statistic(c, a.bc)?.0 - 1] += 1;
    }
    let n = samples.len() as f64;
    let bins: Vec<Bin> = exact
        .refined
        .iter()
        .zip(&observed)
        .enumerate()
        .map(|(i, (z, &o))| {
            let p = z.to_string().parse::<f64>().unwrap_or(0.0) / total;
            let expected = n * p;
            let sd = (n * p * (1.0 - p)).sqrt();
            let z = if sd > 0.0 { (o as f64 - expected) / sd } else if o as f64 == expected { 0.0 } else { f64::INFINITY };
            Bin { k: i + 1, observed: o, expected, z }
        })
        .collect();
    let max_abs_z = bins.iter().map(|b| b.z.abs()).fold(0.0, f64::max);
    let passed = max_abs_z <= SIGMA_GATE;
    let h = Histogram {
        status: if passed { "pass" } else { "fail" },
        m: a.m,
        bc: a.bc,
        seed: a.seed,
        samples: samples.len(),
        max_abs_z,
        bins,
    };
    let body = match a.format {
        Format::Csv => output::csv(
            &["k", "observed", "expected", "z"],
            h.bins.iter().map(|b| vec![b.k.to_string(), b.observed.to_string(), b.expected.to_string(), b.z.to_string()]),
        )?,
        _ => output::json(&h)?,
    };
    let failure = (!passed).then(|| serde_json::json!({ "status": "fail", "identity": "sampler histogram", "maxAbsZ": max_abs_z, "gate": SIGMA_GATE }));
    Ok(Outcome { body, passed, failure })
}
