//! Run configuration: command-line flags override `U21_*` environment
//! variables, which override an optional `key=value` file.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::padic::PrecisionContext;

pub const ENV_PREFIX: &str = "U21_";

/// Everything that determines the body of a report.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RunConfig {
    pub p: u64,
    pub precision: u32,
    pub terms: usize,
    pub seed: u64,
    pub samples: usize,
    pub out_dir: PathBuf,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            p: 3,
            precision: PrecisionContext::DEFAULT_PRECISION,
            terms: 24,
            seed: 0,
            samples: 100,
            out_dir: PathBuf::from("reports"),
        }
    }
}

/// Values given explicitly at one configuration layer.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ConfigLayer {
    pub p: Option<u64>,
    pub precision: Option<u32>,
    pub terms: Option<usize>,
    pub seed: Option<u64>,
    pub samples: Option<usize>,
    pub out_dir: Option<PathBuf>,
}

fn parse_value<T: std::str::FromStr>(key: &str, v: &str, source: &str) -> Result<T> {
    v.trim()
        .parse()
        .map_err(|_| Error::InvalidParams(format!("{source}: bad value {v:?} for {key}")))
}

impl ConfigLayer {
    fn set(&mut self, key: &str, value: &str, source: &str) -> Result<()> {
        match key {
            "p" => self.p = Some(parse_value(key, value, source)?),
            "precision" => self.precision = Some(parse_value(key, value, source)?),
            "terms" => self.terms = Some(parse_value(key, value, source)?),
            "seed" => self.seed = Some(parse_value(key, value, source)?),
            "samples" => self.samples = Some(parse_value(key, value, source)?),
            "out" | "out_dir" => self.out_dir = Some(PathBuf::from(value.trim())),
            _ => return Err(Error::InvalidParams(format!("{source}: unknown key {key:?}"))),
        }
        Ok(())
    }

    /// Parses `key = value` lines; blank lines and `#` comments are skipped.
    pub fn from_file_contents(text: &str, source: &str) -> Result<Self> {
        let mut layer = Self::default();
        for (n, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| Error::InvalidParams(format!("{source}:{}: expected key=value", n + 1)))?;
            layer.set(k.trim(), v, &format!("{source}:{}", n + 1))?;
        }
        Ok(layer)
    }

    pub fn from_file(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path)
            .map_err(|e| Error::InvalidParams(format!("cannot read {}: {e}", path.display())))?;
        Self::from_file_contents(&text, &path.display().to_string())
    }

    /// Reads `U21_P`, `U21_PRECISION`, `U21_TERMS`, `U21_SEED`, `U21_SAMPLES`, `U21_OUT`.
    pub fn from_env(vars: &BTreeMap<String, String>) -> Result<Self> {
        let mut layer = Self::default();
        for (name, key) in [
            ("P", "p"),
            ("PRECISION", "precision"),
            ("TERMS", "terms"),
            ("SEED", "seed"),
            ("SAMPLES", "samples"),
            ("OUT", "out"),
        ] {
            let var = format!("{ENV_PREFIX}{name}");
            if let Some(v) = vars.get(&var) {
                layer.set(key, v, &var)?;
            }
        }
        Ok(layer)
    }

    fn apply(&self, cfg: &mut RunConfig) {
        if let Some(v) = self.p {
            cfg.p = v;
        }
        if let Some(v) = self.precision {
            cfg.precision = v;
        }
        if let Some(v) = self.terms {
            cfg.terms = v;
        }
        if let Some(v) = self.seed {
            cfg.seed = v;
        }
        if let Some(v) = self.samples {
            cfg.samples = v;
        }
        if let Some(v) = &self.out_dir {
            cfg.out_dir = v.clone();
        }
    }
}

impl RunConfig {
    /// Applies the layers from lowest to highest priority over the defaults and validates.
    pub fn resolve(file: &ConfigLayer, env: &ConfigLayer, flags: &ConfigLayer) -> Result<Self> {
        let mut cfg = Self::default();
        for layer in [file, env, flags] {
            layer.apply(&mut cfg);
        }
        cfg.context()?;
        Ok(cfg)
    }

    pub fn context(&self) -> Result<PrecisionContext> {
        PrecisionContext::new(self.p, self.precision)
    }
}

/// The `U21_*` variables of the current process environment.
pub fn process_env() -> BTreeMap<String, String> {
    std::env::vars().filter(|(k, _)| k.starts_with(ENV_PREFIX)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn precedence() {
        let file = ConfigLayer::from_file_contents("p = 7\nseed=3 # comment\nterms=10\n", "cfg").unwrap();
        let env = ConfigLayer::from_env(&BTreeMap::from([
            ("U21_P".to_string(), "5".to_string()),
            ("U21_SEED".to_string(), "4".to_string()),
        ]))
        .unwrap();
        let flags = ConfigLayer { p: Some(3), ..Default::default() };
        let cfg = RunConfig::resolve(&file, &env, &flags).unwrap();
        assert_eq!((cfg.p, cfg.seed, cfg.terms, cfg.precision), (3, 4, 10, 24));
        let cfg = RunConfig::resolve(&file, &env, &ConfigLayer::default()).unwrap();
        assert_eq!(cfg.p, 5);
        let cfg = RunConfig::resolve(&ConfigLayer::default(), &ConfigLayer::default(), &ConfigLayer::default()).unwrap();
        assert_eq!(cfg, RunConfig::default());
    }

    #[test]
    fn rejects_bad_input() {
        assert!(ConfigLayer::from_file_contents("p 3", "cfg").is_err());
        assert!(ConfigLayer::from_file_contents("colour=red", "cfg").is_err());
        let flags = ConfigLayer { p: Some(4), ..Default::default() };
        assert!(RunConfig::resolve(&ConfigLayer::default(), &ConfigLayer::default(), &flags).is_err());
    }
}
