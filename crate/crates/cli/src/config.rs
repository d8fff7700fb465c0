use std::path::Path;

use anyhow::Context;
use serde::{Deserialize, Serialize};

/// Numerical defaults shared by every subcommand; flags override them.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct Defaults {
    pub tol: f64,
    pub k_cap: usize,
    pub quad: usize,
    pub radius: f64,
    pub seed: u64,
}

impl Default for Defaults {
    fn default() -> Self {
        Self {
            tol: 1e-10,
            k_cap: 6,
            quad: 256,
            radius: 0.5,
            seed: 42,
        }
    }
}

impl Defaults {
    /// Reads a JSON object; missing keys keep their defaults.
    pub fn load(path: Option<&Path>) -> anyhow::Result<Self> {
        let Some(path) = path else { return Ok(Self::default()) };
        let text = std::fs::read_to_string(path).with_context(|| format!("reading config {}", path.display()))?;
        serde_json::from_str(&text).with_context(|| format!("parsing config {}", path.display()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn partial_config_keeps_defaults() {
        let d: Defaults = serde_json::from_str(r#"{"tol": 1e-8}"#).unwrap();
        assert_eq!(d.tol, 1e-8);
        assert_eq!(d.k_cap, 6);
        assert_eq!(d.quad, 256);
    }
}
