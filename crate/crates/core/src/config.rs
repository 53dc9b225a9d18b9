//! Flat `key = value` text configuration.

use std::collections::BTreeMap;

use crate::error::{IaError, Result};
use crate::scenario::ScenarioSpec;

/// Parses `key = value` lines; `#` starts a comment, blank lines are skipped.
pub fn parse_key_values(text: &str) -> Result<BTreeMap<String, String>> {
    let mut out = BTreeMap::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| IaError::Parse(format!("line {}: expected `key = value`", lineno + 1)))?;
        let key = key.trim();
        if key.is_empty() {
            return Err(IaError::Parse(format!("line {}: empty key", lineno + 1)));
        }
        out.insert(key.to_string(), value.trim().to_string());
    }
    Ok(out)
}

/// A symmetric scenario together with its channel seed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScenarioConfig {
    pub scenario: ScenarioSpec,
    pub seed: u64,
}

impl ScenarioConfig {
    pub fn to_text(&self) -> Result<String> {
        let (m, n, d) = self.scenario.as_symmetric().ok_or_else(|| {
            IaError::InvalidScenario("only symmetric scenarios serialize to K/M/N/d".into())
        })?;
        Ok(format!(
            "K = {}\nM = {m}\nN = {n}\nd = {d}\nseed = {}\n",
            self.scenario.users(),
            self.seed
        ))
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let kv = parse_key_values(text)?;
        let get = |key: &str| -> Result<u64> {
            let raw = kv
                .get(key)
                .ok_or_else(|| IaError::Parse(format!("missing key `{key}`")))?;
            raw.parse()
                .map_err(|_| IaError::Parse(format!("`{key}` is not a non-negative integer: {raw:?}")))
        };
        let scenario = ScenarioSpec::symmetric(
            get("K")? as usize,
            get("M")? as usize,
            get("N")? as usize,
            get("d")? as usize,
        )?;
        Ok(Self { scenario, seed: get("seed")? })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let cfg = ScenarioConfig {
            scenario: ScenarioSpec::symmetric(7, 5, 5, 2).unwrap(),
            seed: 42,
        };
        let text = cfg.to_text().unwrap();
        assert_eq!(ScenarioConfig::from_text(&text).unwrap(), cfg);
    }

    #[test]
    fn comments_and_spacing() {
        let text = "# header\nK=3\n  M = 2  # tx\nN = 2\n\nd = 1\nseed = 0\n";
        let cfg = ScenarioConfig::from_text(text).unwrap();
        assert_eq!(cfg.scenario, ScenarioSpec::symmetric(3, 2, 2, 1).unwrap());
    }

    #[test]
    fn errors() {
        assert!(parse_key_values("K 3").is_err());
        assert!(parse_key_values(" = 3").is_err());
        assert!(ScenarioConfig::from_text("K = 3\nM = 2\nN = 2\nd = 1\n").is_err());
        assert!(ScenarioConfig::from_text("K = 3\nM = 2\nN = 2\nd = 3\nseed = 1").is_err());
        assert!(ScenarioConfig::from_text("K = x\nM = 2\nN = 2\nd = 1\nseed = 1").is_err());
    }
}
