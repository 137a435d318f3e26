use std::f64::consts::PI;

use anyhow::{bail, Context};
use clap::Args;
use num_rational::Ratio;
use twenty_vertex::WeightParams;

/// The parameter triple. Values are rational multiples of π (`1/8`, `-1/4`, `0`) unless
/// `--radians` is given.
#[derive(Args, Clone, Debug)]
pub struct AngleArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub eta: String,
    #[arg(long, allow_hyphen_values = true)]
    pub lambda: String,
    #[arg(long, allow_hyphen_values = true, default_value = "0")]
    pub mu: String,
    /// Read the angles as plain radians.
    #[arg(long)]
    pub radians: bool,
}

impl AngleArgs {
    pub fn params(&self) -> anyhow::Result<WeightParams> {
        let get = |name: &str, s: &str| parse_angle(s, self.radians).with_context(|| format!("--{name} {s}"));
        Ok(WeightParams::new(get("eta", &self.eta)?, get("lambda", &self.lambda)?, get("mu", &self.mu)?))
    }
}

pub fn parse_angle(s: &str, radians: bool) -> anyhow::Result<f64> {
    let s = s.trim();
    if radians {
        let v: f64 = s.parse()?;
        if !v.is_finite() {
            bail!("angle must be finite");
        }
        return Ok(v);
    }
    let s = s.strip_suffix("pi").map(str::trim).unwrap_or(s);
    let r: Ratio<i64> = s.parse().map_err(|_| anyhow::anyhow!("expected a fraction like 3/8 (units of pi)"))?;
    Ok(*r.numer() as f64 / *r.denom() as f64 * PI)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fractions_of_pi() {
        assert_eq!(parse_angle("1/8", false).unwrap(), PI / 8.0);
        assert_eq!(parse_angle("-1/4", false).unwrap(), -PI / 4.0);
        assert_eq!(parse_angle("0", false).unwrap(), 0.0);
        assert_eq!(parse_angle("5/8pi", false).unwrap(), 5.0 * PI / 8.0);
        assert_eq!(parse_angle("0.25", true).unwrap(), 0.25);
        assert!(parse_angle("0.25", false).is_err());
        assert!(parse_angle("1/0", false).is_err());
    }
}
