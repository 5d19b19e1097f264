//! Resource caps, read from `key = value` lines. `#` starts a comment.

use crate::attrs::RhoFormula;
use crate::error::{Error, Result};
use crate::finposet::DEFAULT_STREAM_CAP;
use crate::ordinal::{CnfOrdinal, DEFAULT_MAX_DEPTH};
use crate::sampler::SamplerConfig;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Config {
    pub max_depth: usize,
    pub stream_cap: usize,
    pub sampler: SamplerConfig,
    pub rho_formula: RhoFormula,
    /// Literal condensation iterations before giving up.
    pub condense_iterations: usize,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            max_depth: DEFAULT_MAX_DEPTH,
            stream_cap: DEFAULT_STREAM_CAP,
            sampler: SamplerConfig::default(),
            rho_formula: RhoFormula::default(),
            condense_iterations: 16,
        }
    }
}

impl Config {
    pub fn parse(text: &str) -> Result<Config> {
        let mut cfg = Config::default();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let err = |m: &str| Error::Config(format!("line {}: {m}", lineno + 1));
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| err("expected `key = value`"))?;
            let (key, value) = (key.trim(), value.trim());
            let num = || {
                value
                    .parse::<usize>()
                    .map_err(|_| err(&format!("`{value}` is not a count")))
            };
            match key {
                "max_depth" => cfg.max_depth = num()?,
                "stream_cap" => cfg.stream_cap = num()?,
                "sample_width" => cfg.sampler.width = num()? as u64,
                "sample_max_path" => cfg.sampler.max_path = num()?,
                "sample_attempts" => cfg.sampler.attempts_per_element = num()?.max(1),
                "condense_iterations" => cfg.condense_iterations = num()?,
                "kappa" => {
                    let k: CnfOrdinal = value.parse().map_err(|e: Error| err(&e.to_string()))?;
                    if k.is_finite() {
                        return Err(err("kappa must be instantiated by an infinite ordinal"));
                    }
                    cfg.sampler.kappa = k;
                }
                "rho_formula" => {
                    cfg.rho_formula = match value {
                        "structural" => RhoFormula::Structural,
                        "width" => RhoFormula::Width,
                        _ => return Err(err("rho_formula is `structural` or `width`")),
                    }
                }
                _ => return Err(err(&format!("unknown key `{key}`"))),
            }
        }
        Ok(cfg)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reads_keys() {
        let c = Config::parse("# caps\nmax_depth = 4\nkappa = w^3\nrho_formula = width\n").unwrap();
        assert_eq!(c.max_depth, 4);
        assert_eq!(c.sampler.kappa.to_string(), "w^3");
        assert_eq!(c.rho_formula, RhoFormula::Width);
        assert!(Config::parse("kappa = 5").is_err());
        assert!(Config::parse("bogus = 1").is_err());
        assert!(Config::parse("max_depth").is_err());
    }
}
