//! Size limits for the exponential-cost routes.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Caps {
    pub brute: usize,
    pub transfer: usize,
    pub det: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps { brute: 7, transfer: 12, det: 12 }
    }
}

impl Caps {
    /// Overrides from a string like `brute=8,transfer=13,det=20`; unknown keys are rejected.
    pub fn with_overrides(mut self, spec: &str) -> std::result::Result<Self, String> {
        for part in spec.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let (k, v) = part.split_once('=').ok_or_else(|| format!("expected key=value, got `{part}`"))?;
            let v: usize = v.trim().parse().map_err(|e| format!("bad cap `{part}`: {e}"))?;
            match k.trim() {
                "brute" => self.brute = v,
                "transfer" => self.transfer = v,
                "det" => self.det = v,
                other => return Err(format!("unknown cap `{other}`")),
            }
        }
        Ok(self)
    }

    pub(crate) fn check(route: &'static str, m: usize, cap: usize) -> Result<()> {
        if m > cap {
            Err(Error::SizeCapExceeded { route, m, cap })
        } else {
            Ok(())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn overrides() {
        let c = Caps::default().with_overrides("brute=8, det=20").unwrap();
        assert_eq!(c, Caps { brute: 8, transfer: 12, det: 20 });
        assert!(Caps::default().with_overrides("speed=1").is_err());
        assert!(Caps::default().with_overrides("brute").is_err());
    }
}
