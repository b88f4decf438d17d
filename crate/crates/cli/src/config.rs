//! Line-oriented `key = value` run configuration.

use std::collections::BTreeMap;
use std::fmt;
use std::path::{Path, PathBuf};

use fkpp_core::oracle::SolverConfig;
use fkpp_core::{ModelParams, SpaceTimeGrid};
use sha2::{Digest, Sha256};

use crate::claims;

/// A configuration problem, located by line and key when possible.
#[derive(Debug, Clone, PartialEq)]
pub struct ConfigError {
    pub line: Option<usize>,
    pub key: Option<String>,
    pub message: String,
}

impl ConfigError {
    fn new(line: Option<usize>, key: Option<&str>, message: impl Into<String>) -> Self {
        Self { line, key: key.map(str::to_owned), message: message.into() }
    }
}

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(line) = self.line {
            write!(f, "line {line}: ")?;
        }
        if let Some(key) = &self.key {
            write!(f, "key `{key}`: ")?;
        }
        f.write_str(&self.message)
    }
}

impl std::error::Error for ConfigError {}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub d: f64,
    pub b: f64,
    pub r: f64,
    pub x_min: f64,
    pub x_max: f64,
    pub nx: usize,
    pub t_max: f64,
    pub nt: usize,
    pub ic_sigma: f64,
    pub stability_factor: f64,
    pub max_n: usize,
    pub probe_times: Vec<f64>,
    pub out_dir: PathBuf,
    /// Per-claim tolerance overrides keyed by claim id.
    pub tolerances: BTreeMap<String, f64>,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            d: 1.0,
            b: 1.0,
            r: 0.1,
            x_min: -3.0,
            x_max: 3.0,
            nx: 1024,
            t_max: 2.0,
            nt: 512,
            ic_sigma: 0.05,
            stability_factor: 0.25,
            max_n: 6,
            probe_times: fkpp_core::successive::DEFAULT_PROBE_TIMES.to_vec(),
            out_dir: PathBuf::from("out"),
            tolerances: BTreeMap::new(),
        }
    }
}

fn parse_f64(line: usize, key: &str, raw: &str) -> Result<f64, ConfigError> {
    let v: f64 =
        raw.parse().map_err(|_| ConfigError::new(Some(line), Some(key), format!("expected a number, got `{raw}`")))?;
    if !v.is_finite() {
        return Err(ConfigError::new(Some(line), Some(key), format!("value must be finite, got `{raw}`")));
    }
    Ok(v)
}

fn parse_usize(line: usize, key: &str, raw: &str) -> Result<usize, ConfigError> {
    raw.parse()
        .map_err(|_| ConfigError::new(Some(line), Some(key), format!("expected a nonnegative integer, got `{raw}`")))
}

/// Loads and validates a configuration file.
pub fn load_config(path: &Path) -> Result<RunConfig, ConfigError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| ConfigError::new(None, None, format!("cannot read {}: {e}", path.display())))?;
    RunConfig::parse(&text)
}

impl RunConfig {
    /// Parses configuration text; omitted keys keep their defaults.
    pub fn parse(text: &str) -> Result<Self, ConfigError> {
        let mut cfg = RunConfig::default();
        let mut seen: BTreeMap<String, usize> = BTreeMap::new();
        for (i, raw_line) in text.lines().enumerate() {
            let line = i + 1;
            let content = raw_line.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let (key, value) = content.split_once('=').ok_or_else(|| {
                ConfigError::new(Some(line), None, format!("expected `key = value`, got `{content}`"))
            })?;
            let key = key.trim().to_ascii_lowercase();
            let value = value.trim();
            if let Some(first) = seen.insert(key.clone(), line) {
                return Err(ConfigError::new(
                    Some(line),
                    Some(&key),
                    format!("duplicate key (first set on line {first})"),
                ));
            }
            match key.as_str() {
                "d" => cfg.d = parse_f64(line, &key, value)?,
                "b" => cfg.b = parse_f64(line, &key, value)?,
                "r" => cfg.r = parse_f64(line, &key, value)?,
                "x_min" => cfg.x_min = parse_f64(line, &key, value)?,
                "x_max" => cfg.x_max = parse_f64(line, &key, value)?,
                "nx" => cfg.nx = parse_usize(line, &key, value)?,
                "t_max" => cfg.t_max = parse_f64(line, &key, value)?,
                "nt" => cfg.nt = parse_usize(line, &key, value)?,
                "ic_sigma" => cfg.ic_sigma = parse_f64(line, &key, value)?,
                "stability_factor" => cfg.stability_factor = parse_f64(line, &key, value)?,
                "max_n" => cfg.max_n = parse_usize(line, &key, value)?,
                "probe_times" => {
                    cfg.probe_times =
                        value.split(',').map(|p| parse_f64(line, &key, p.trim())).collect::<Result<_, _>>()?;
                }
                "out_dir" => {
                    if value.is_empty() {
                        return Err(ConfigError::new(Some(line), Some(&key), "empty path"));
                    }
                    cfg.out_dir = PathBuf::from(value);
                }
                other => match other.strip_prefix("tol_") {
                    Some(id) if claims::is_claim(id) => {
                        let tol = parse_f64(line, &key, value)?;
                        if tol < 0.0 {
                            return Err(ConfigError::new(Some(line), Some(&key), "tolerance must be >= 0"));
                        }
                        cfg.tolerances.insert(id.to_owned(), tol);
                    }
                    Some(id) => {
                        return Err(ConfigError::new(Some(line), Some(&key), format!("no claim named `{id}`")));
                    }
                    None => return Err(ConfigError::new(Some(line), Some(&key), "unknown key")),
                },
            }
        }
        cfg.validate(&seen)?;
        Ok(cfg)
    }

    fn validate(&self, seen: &BTreeMap<String, usize>) -> Result<(), ConfigError> {
        let locate = |keys: &[&str], message: String| {
            let key = keys.iter().find(|k| seen.contains_key(**k)).unwrap_or(&keys[0]);
            ConfigError::new(seen.get(*key).copied(), Some(key), message)
        };
        ModelParams::new(self.d, self.b, self.r).map_err(|e| {
            let key = match &e {
                fkpp_core::Error::InvalidParameter { name, .. } => name.to_ascii_lowercase(),
                _ => "d".to_owned(),
            };
            locate(&[key.as_str()], e.to_string())
        })?;
        let grid = self.grid().map_err(|e| locate(&["nx", "x_min", "x_max", "nt", "t_max"], e.to_string()))?;
        SolverConfig::new(grid, self.ic_sigma, self.stability_factor)
            .map_err(|e| locate(&["ic_sigma", "stability_factor"], e.to_string()))?;
        if self.max_n < 2 {
            return Err(locate(&["max_n"], format!("max_n must be >= 2, got {}", self.max_n)));
        }
        if self.probe_times.is_empty() {
            return Err(locate(&["probe_times"], "at least one probe time is required".to_owned()));
        }
        if let Some(t) = self.probe_times.iter().find(|t| !(0.0..=self.t_max).contains(*t)) {
            return Err(locate(&["probe_times"], format!("probe time {t} outside [0, {}]", self.t_max)));
        }
        Ok(())
    }

    pub fn params(&self) -> ModelParams {
        ModelParams::new(self.d, self.b, self.r).expect("validated at load")
    }

    pub fn grid(&self) -> fkpp_core::Result<SpaceTimeGrid> {
        SpaceTimeGrid::new(self.x_min, self.x_max, self.nx, 0.0, self.t_max, self.nt)
    }

    pub fn solver(&self) -> SolverConfig {
        let grid = self.grid().expect("validated at load");
        SolverConfig::new(grid, self.ic_sigma, self.stability_factor).expect("validated at load")
    }

    pub fn tolerance(&self, claim_id: &str, default: f64) -> f64 {
        self.tolerances.get(claim_id).copied().unwrap_or(default)
    }

    /// Fully resolved configuration, one `key = value` per line in a fixed
    /// order, floats in round-trip form.
    pub fn canonical(&self) -> String {
        let probes: Vec<String> = self.probe_times.iter().map(|t| format!("{t:?}")).collect();
        let mut s = String::new();
        for (k, v) in [
            ("d", format!("{:?}", self.d)),
            ("b", format!("{:?}", self.b)),
            ("r", format!("{:?}", self.r)),
            ("x_min", format!("{:?}", self.x_min)),
            ("x_max", format!("{:?}", self.x_max)),
            ("nx", self.nx.to_string()),
            ("t_max", format!("{:?}", self.t_max)),
            ("nt", self.nt.to_string()),
            ("ic_sigma", format!("{:?}", self.ic_sigma)),
            ("stability_factor", format!("{:?}", self.stability_factor)),
            ("max_n", self.max_n.to_string()),
            ("probe_times", probes.join(",")),
        ] {
            s.push_str(&format!("{k} = {v}\n"));
        }
        for (id, tol) in &self.tolerances {
            s.push_str(&format!("tol_{id} = {tol:?}\n"));
        }
        s
    }

    /// SHA-256 of [`canonical`](Self::canonical), hex encoded. The output
    /// directory is not part of the hash.
    pub fn hash(&self) -> String {
        Sha256::digest(self.canonical().as_bytes()).iter().map(|b| format!("{b:02x}")).collect()
    }
}
