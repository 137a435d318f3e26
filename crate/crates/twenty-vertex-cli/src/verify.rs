use std::collections::BTreeSet;
use std::f64::consts::{FRAC_PI_4, PI};

use clap::{Args, ValueEnum};
use num_bigint::BigUint;
use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use twenty_vertex::arctic::{branch, branch_point, saddle_solve, slope_a, uniform_curve_residual, BranchKind};
use twenty_vertex::enumerate::{count_brute, count_transfer, for_each_config, verify_inhom_relation, InhomSpectral, INHOM_MAX_M};
use twenty_vertex::exact6v::{counts_from_6v, refined_from_6v};
use twenty_vertex::poly::RefinedPoly;
use twenty_vertex::weights::{sigma_xi, tau_xi, twenty_v_weights, PI_BAR, PI_BAR_HAT, PI_HAT};
use twenty_vertex::{BoundaryKind, Caps, TriangleDomain, WeightParams};

use crate::{output, Format, Outcome, OutArgs};

/// Published totals for m = 1..10.
const SEQUENCE: [u64; 10] = [1, 2, 6, 24, 184, 1472, 27712, 443392, 20177920, 645693440];

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Identity {
    All,
    /// Totals by every route against the published sequence.
    Counts,
    /// Refined counts by enumeration and by the determinant route; DWBC1 equals DWBC2.
    Refined,
    /// Z_2n = 2^n Z_2n-1, and its refined form.
    Evenodd,
    /// The top refined coefficient equals Z_(m-2).
    Top,
    /// DWBC2 refined counts are the DWBC3 ones reversed.
    Reversal,
    /// The boundary maps are bijections sending k to m+1-k.
    Bijection,
    /// The inhomogeneous 20V/6V relation.
    Inhom,
    /// hat, bar and star permute the seven weights.
    Symmetry,
    /// tau and sigma at the combinatorial point.
    Combinatorial,
    /// Saddle-point exit ratio against the slope of the tangent line.
    Saddle,
    /// The uniform NE branch lies on its degree-10 curve.
    Uniform,
    /// Branches join with matching tangents at eta = pi/4.
    Freefermion,
}

const ALL: [Identity; 12] = [
    Identity::Counts,
    Identity::Refined,
    Identity::Evenodd,
    Identity::Top,
    Identity::Reversal,
    Identity::Bijection,
    Identity::Inhom,
    Identity::Symmetry,
    Identity::Combinatorial,
    Identity::Saddle,
    Identity::Uniform,
    Identity::Freefermion,
];

#[derive(Args)]
pub struct VerifyArgs {
    #[arg(long, value_enum, default_value = "all")]
    pub identity: Identity,
    /// Largest size for the size-dependent identities; `inhom` stops at 4.
    #[arg(long)]
    pub m: Option<usize>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, value_enum, default_value = "json")]
    pub format: Format,
    #[command(flatten)]
    pub out: OutArgs,
}

#[derive(Serialize)]
pub struct Record {
    identity: String,
    pass: bool,
    /// Exact (integer) identities carry no residual.
    exact: bool,
    #[serde(rename = "maxResidual", skip_serializing_if = "Option::is_none")]
    max_residual: Option<f64>,
    detail: String,
}

#[derive(Serialize)]
struct Report {
    status: &'static str,
    identities: Vec<Record>,
}

type Check = Result<String, String>;

fn exact(name: &str, r: Check) -> Record {
    let pass = r.is_ok();
    Record { identity: name.into(), pass, exact: true, max_residual: None, detail: r.unwrap_or_else(|e| e) }
}

fn numeric(name: &str, r: Result<(f64, f64, String), String>) -> Record {
    match r {
        Ok((worst, gate, detail)) => Record {
            identity: name.into(),
            pass: worst <= gate,
            exact: false,
            max_residual: Some(worst),
            detail: format!("{detail}; gate {gate:e}"),
        },
        Err(e) => Record { identity: name.into(), pass: false, exact: false, max_residual: None, detail: e },
    }
}

fn s<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn dom(m: usize, bc: BoundaryKind) -> Result<TriangleDomain, String> {
    TriangleDomain::new(m, bc).map_err(s)
}

fn want(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn counts(max: usize, caps: &Caps) -> Check {
    let max = max.min(SEQUENCE.len());
    for m in 1..=max {
        let expected = BigUint::from(SEQUENCE[m - 1]);
        if m <= caps.brute {
            let b = count_brute(&dom(m, BoundaryKind::Dwbc3)?, caps).map_err(s)?.total;
            want(b == expected, || format!("brute m={m}: {b}"))?;
        }
        if m <= caps.transfer {
            let t = count_transfer(&dom(m, BoundaryKind::Dwbc3)?, caps).map_err(s)?.total;
            want(t == expected, || format!("transfer m={m}: {t}"))?;
        }
        if m <= caps.det {
            let d = counts_from_6v(m, caps).map_err(s)?;
            want(d == expected, || format!("determinant m={m}: {d}"))?;
        }
    }
    Ok(format!("m <= {max} on every route within the caps"))
}

fn refined_transfer(m: usize, bc: BoundaryKind, caps: &Caps) -> Result<RefinedPoly<BigUint>, String> {
    count_transfer(&dom(m, bc)?, caps).map(|r| r.refined_poly()).map_err(s)
}

fn refined(max: usize, caps: &Caps) -> Check {
    let max = max.min(caps.transfer).min(caps.det);
    for m in 1..=max {
        let two = refined_transfer(m, BoundaryKind::Dwbc2, caps)?;
        for bc in [BoundaryKind::Dwbc3, BoundaryKind::Dwbc2, BoundaryKind::Dwbc1] {
            let t = refined_transfer(m, bc, caps)?;
            let d = refined_from_6v(m, bc, caps).map_err(s)?;
            want(t == d, || format!("{bc} m={m}: transfer {t} vs determinant {d}"))?;
            if bc == BoundaryKind::Dwbc1 {
                want(t == two, || format!("DWBC1 differs from DWBC2 at m={m}"))?;
            }
        }
    }
    Ok(format!("three boundaries, m <= {max}"))
}

fn evenodd(max: usize, caps: &Caps) -> Check {
    let nmax = (max / 2).min(5);
    for n in 1..=nmax {
        let (e, o) = (counts_from_6v(2 * n, caps).map_err(s)?, counts_from_6v(2 * n - 1, caps).map_err(s)?);
        want(e == o.clone() << n, || format!("totals fail at n={n}"))?;
    }
    let rmax = nmax.min(4);
    for n in 1..=rmax {
        let lhs = refined_transfer(2 * n, BoundaryKind::Dwbc3, caps)?;
        let rhs = refined_transfer(2 * n - 1, BoundaryKind::Dwbc3, caps)?
            .mul(&RefinedPoly::one_plus_tau_pow(1))
            .scale(&(BigUint::from(1u32) << (n - 1)));
        want(lhs == rhs, || format!("refined relation fails at n={n}"))?;
    }
    Ok(format!("totals n <= {nmax}, refined n <= {rmax}"))
}

fn top(max: usize, caps: &Caps) -> Check {
    for m in 3..=max.min(caps.transfer) {
        let t = refined_transfer(m, BoundaryKind::Dwbc3, caps)?.coeff(m - 1);
        let below = counts_from_6v(m - 2, caps).map_err(s)?;
        want(t == below, || format!("m={m}: {t} != {below}"))?;
    }
    Ok(format!("m <= {}", max.min(caps.transfer)))
}

fn reversal(max: usize, caps: &Caps) -> Check {
    for m in 1..=max.min(caps.transfer) {
        let three = refined_transfer(m, BoundaryKind::Dwbc3, caps)?;
        let two = refined_transfer(m, BoundaryKind::Dwbc2, caps)?;
        want(two == three.reversed(m), || format!("m={m}"))?;
    }
    Ok(format!("m <= {}", max.min(caps.transfer)))
}

fn bijection(max: usize, caps: &Caps) -> Check {
    let max = max.min(caps.brute);
    for m in 1..=max {
        let mut seen2 = BTreeSet::new();
        let mut seen1 = BTreeSet::new();
        let mut bad: Option<String> = None;
        let mut total = 0usize;
        for_each_config(&dom(m, BoundaryKind::Dwbc3)?, |c| {
            if bad.is_some() {
                return;
            }
            total += 1;
            let mut step = || -> Result<(), String> {
                let (k, _) = c.refined_statistic(BoundaryKind::Dwbc3).ok_or("no statistic")?;
                let two = c.sr_vf().map_err(s)?;
                let one = two.rstar().map_err(s)?;
                let k2 = two.refined_statistic(BoundaryKind::Dwbc2).map(|x| x.0);
                let k1 = one.refined_statistic(BoundaryKind::Dwbc1).map(|x| x.0);
                want(k2 == Some(m + 1 - k) && k1 == Some(m + 1 - k), || format!("m={m}: k={k} goes to {k2:?}/{k1:?}"))?;
                seen2.insert(serde_json::to_string(&two).map_err(s)?);
                seen1.insert(serde_json::to_string(&one).map_err(s)?);
                Ok(())
            };
            if let Err(e) = step() {
                bad = Some(e);
            }
        });
        if let Some(e) = bad {
            return Err(e);
        }
        want(seen2.len() == total && seen1.len() == total, || format!("not injective at m={m}"))?;
    }
    Ok(format!("m <= {max}"))
}

fn inhom(m: Option<usize>, seed: u64) -> Result<(f64, f64, String), String> {
    // one cofactor expansion per weight assignment, so the sizes stop at the cap
    let sizes: Vec<usize> = (2..=m.unwrap_or(INHOM_MAX_M).min(INHOM_MAX_M)).collect();
    let draws = 20;
    let mut worst = 0.0f64;
    for &m in &sizes {
        for d in 0..draws {
            let sp = InhomSpectral::random(m, seed.wrapping_add(1000 * m as u64 + d));
            worst = worst.max(verify_inhom_relation(m, &sp).map_err(s)?);
        }
    }
    Ok((worst, 1e-10, format!("m in {sizes:?}, {draws} draw(s) each, relative residual")))
}

fn random_disordered(rng: &mut ChaCha8Rng) -> WeightParams {
    loop {
        let eta = rng.random::<f64>() * PI / 2.0;
        let lambda = eta + rng.random::<f64>() * (PI - 2.0 * eta);
        let mu = (2.0 * rng.random::<f64>() - 1.0) * (lambda - eta);
        let p = WeightParams::new(eta, lambda, mu);
        if p.is_disordered() {
            return p;
        }
    }
}

fn symmetry(seed: u64) -> Result<(f64, f64, String), String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst = 0.0f64;
    for _ in 0..10_000 {
        let p = random_disordered(&mut rng);
        let w = twenty_v_weights(&p);
        for (q, perm) in [(p.hat(), PI_HAT), (p.bar(), PI_BAR_HAT), (p.star(), PI_BAR)] {
            let (l, r) = (twenty_v_weights(&q), w.permuted(&perm));
            for i in 0..7 {
                worst = worst.max((l.omega[i] - r.omega[i]).abs() / p.nu);
            }
        }
    }
    Ok((worst, 1e-12, "10^4 disordered triples, deviation relative to nu".into()))
}

fn combinatorial() -> Result<(f64, f64, String), String> {
    let p = WeightParams::combinatorial();
    let mut worst = 0.0f64;
    for i in 0..=50 {
        let xi = -0.7 + 1.4 * i as f64 / 50.0;
        let (tau, sigma) = (tau_xi(&p, xi).map_err(s)?, sigma_xi(&p, xi).map_err(s)?);
        let t = (xi + FRAC_PI_4).tan();
        worst = worst.max((tau - t).abs() / t.abs().max(1.0)).max((sigma - (tau + 1.0) / 2.0).abs());
    }
    Ok((worst, 1e-12, "tau = tan(xi + pi/4), sigma = (tau + 1)/2 on a 51-point grid".into()))
}

fn saddle(seed: u64) -> Result<(f64, f64, String), String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst = 0.0f64;
    for _ in 0..20 {
        let p = random_disordered(&mut rng);
        let (_, end) = BranchKind::NE.xi_range(&p);
        for i in 0..20 {
            let xi = end * (i as f64 + 0.5) / 20.0;
            let st = saddle_solve(&p, xi, None).map_err(|e| format!("{p:?} xi={xi}: {e}"))?;
            worst = worst.max((st.s * slope_a(&p, xi).map_err(s)? - 1.0).abs());
        }
    }
    Ok((worst, 1e-8, "|s A - 1| over 20 triples x 20 points".into()))
}

fn uniform() -> Result<(f64, f64, String), String> {
    let p = WeightParams::new(PI / 8.0, 5.0 * PI / 8.0, 0.0);
    let ne = branch(&p, BranchKind::NE, 201).map_err(s)?;
    let worst = ne.points.iter().map(|q| uniform_curve_residual(q.x, q.y).abs()).fold(0.0, f64::max);
    Ok((worst, 1e-6, "201 NE points, value over gradient norm".into()))
}

fn freefermion() -> Result<(f64, f64, String), String> {
    let mut worst = 0.0f64;
    for (lambda, mu) in [(PI / 8.0, 0.0), (0.0, 0.0), (PI / 8.0, PI / 16.0), (-PI / 8.0, 0.0), (0.1, -0.3)] {
        let p = WeightParams::new(FRAC_PI_4, lambda, mu);
        let (_, end) = BranchKind::NE.xi_range(&p);
        let bp = |k, xi| branch_point(&p, k, xi).map_err(s);
        for (a, b) in [(bp(BranchKind::NE, 0.0)?, bp(BranchKind::SE, 0.0)?), (bp(BranchKind::NE, end)?, bp(BranchKind::NW, 0.0)?)] {
            let (da, db) = (a.line.direction(), b.line.direction());
            let turn = (da.0 * db.1 - da.1 * db.0).abs();
            worst = worst.max((a.x - b.x).hypot(a.y - b.y)).max(turn);
        }
    }
    Ok((worst, 1e-6, "position and direction gaps at the two joins, five triples".into()))
}

pub fn run_identity(id: Identity, m: Option<usize>, seed: u64, caps: &Caps) -> Record {
    let name = format!("{id:?}").to_lowercase();
    match id {
        Identity::All => unreachable!(),
        Identity::Counts => exact(&name, counts(m.unwrap_or(10), caps)),
        Identity::Refined => exact(&name, refined(m.unwrap_or(8), caps)),
        Identity::Evenodd => exact(&name, evenodd(m.unwrap_or(10), caps)),
        Identity::Top => exact(&name, top(m.unwrap_or(8), caps)),
        Identity::Reversal => exact(&name, reversal(m.unwrap_or(8), caps)),
        Identity::Bijection => exact(&name, bijection(m.unwrap_or(6), caps)),
        Identity::Inhom => numeric(&name, inhom(m, seed)),
        Identity::Symmetry => numeric(&name, symmetry(seed)),
        Identity::Combinatorial => numeric(&name, combinatorial()),
        Identity::Saddle => numeric(&name, saddle(seed)),
        Identity::Uniform => numeric(&name, uniform()),
        Identity::Freefermion => numeric(&name, freefermion()),
    }
}

pub fn run(a: &VerifyArgs, caps: &Caps) -> anyhow::Result<Outcome> {
    if a.format == Format::Svg {
        anyhow::bail!("verify writes csv or json");
    }
    let ids: Vec<Identity> = if a.identity == Identity::All { ALL.to_vec() } else { vec![a.identity] };
    let records: Vec<Record> = ids.into_iter().map(|id| run_identity(id, a.m, a.seed, caps)).collect();
    let passed = records.iter().all(|r| r.pass);
    let failed: Vec<&Record> = records.iter().filter(|r| !r.pass).collect();
    let failure = (!passed).then(|| serde_json::json!({ "status": "fail", "failures": failed }));
    let report = Report { status: if passed { "pass" } else { "fail" }, identities: records };
    let body = match a.format {
        Format::Csv => output::csv(
            &["identity", "pass", "exact", "max_residual", "detail"],
            report.identities.iter().map(|r| {
                vec![
                    r.identity.clone(),
                    r.pass.to_string(),
                    r.exact.to_string(),
                    r.max_residual.map(|x| format!("{x:e}")).unwrap_or_default(),
                    r.detail.clone(),
                ]
            }),
        )?,
        _ => output::json(&report)?,
    };
    Ok(Outcome { body, passed, failure })
}
