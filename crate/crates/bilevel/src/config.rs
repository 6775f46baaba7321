//! Experiment configuration: `key = value` lines, `#` comments.
//!
//! ```text
//! algorithm = cluster        # cluster | tree | tour
//! family = gg-mst            # gs | gg-mst | gg-tsp | random | file
//! m = 8, 16, 32              # one value or a list (not used by `file`)
//! sizes = 3,2,4              # random only; overrides m and cluster_size
//! cluster_size = 3           # random only, default 3
//! max_cost = 100             # random only, default 100
//! instance_seed = 5          # random only, default base_seed
//! instance = path/to/file    # file only
//! trials = 100
//! budget = 10000
//! base_seed = 1
//! timing = false
//! ```

use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use thiserror::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Algorithm {
    Cluster,
    Tree,
    Tour,
}

impl Algorithm {
    /// Tour-based runs solve GTSP; the others GMSTP.
    pub fn solves_tsp(self) -> bool {
        self == Algorithm::Tour
    }
}

impl FromStr for Algorithm {
    type Err = ConfigError;

    fn from_str(s: &str) -> Result<Self, ConfigError> {
        match s {
            "cluster" => Ok(Algorithm::Cluster),
            "tree" => Ok(Algorithm::Tree),
            "tour" => Ok(Algorithm::Tour),
            _ => Err(ConfigError::BadValue { key: "algorithm".into(), value: s.into() }),
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Algorithm::Cluster => "cluster",
            Algorithm::Tree => "tree",
            Algorithm::Tour => "tour",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    Gs,
    GgMst,
    GgTsp,
    Random,
    File,
}

impl FromStr for Family {
    type Err = ConfigError;

    fn from_str(s: &str) -> Result<Self, ConfigError> {
        match s {
            "gs" => Ok(Family::Gs),
            "gg-mst" => Ok(Family::GgMst),
            "gg-tsp" => Ok(Family::GgTsp),
            "random" => Ok(Family::Random),
            "file" => Ok(Family::File),
            _ => Err(ConfigError::BadValue { key: "family".into(), value: s.into() }),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::Gs => "gs",
            Family::GgMst => "gg-mst",
            Family::GgTsp => "gg-tsp",
            Family::Random => "random",
            Family::File => "file",
        })
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ConfigError {
    #[error("line {0}: expected `key = value`")]
    Syntax(usize),
    #[error("unknown key `{0}`")]
    UnknownKey(String),
    #[error("missing key `{0}`")]
    Missing(&'static str),
    #[error("bad value `{value}` for `{key}`")]
    BadValue { key: String, value: String },
    #[error("algorithm `{0}` cannot run on family `{1}`")]
    Incompatible(Algorithm, Family),
    #[error("`{0}` must be at least 1")]
    Zero(&'static str),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExperimentConfig {
    pub algorithm: Algorithm,
    pub family: Family,
    pub m_values: Vec<usize>,
    pub sizes: Option<Vec<usize>>,
    pub cluster_size: usize,
    pub max_cost: u64,
    pub instance_seed: Option<u64>,
    pub instance: Option<PathBuf>,
    pub trials: u64,
    pub budget: u64,
    pub base_seed: u64,
    pub timing: bool,
}

impl ExperimentConfig {
    pub fn new(algorithm: Algorithm, family: Family, m_values: Vec<usize>, trials: u64, budget: u64, base_seed: u64) -> Self {
        ExperimentConfig {
            algorithm,
            family,
            m_values,
            sizes: None,
            cluster_size: 3,
            max_cost: 100,
            instance_seed: None,
            instance: None,
            trials,
            budget,
            base_seed,
            timing: false,
        }
    }

    /// Checks representation/family compatibility and positive counts.
    pub fn validate(&self) -> Result<(), ConfigError> {
        let compatible = match self.family {
            Family::Gs | Family::GgMst => !self.algorithm.solves_tsp(),
            Family::GgTsp => self.algorithm.solves_tsp(),
            Family::Random | Family::File => true,
        };
        if !compatible {
            return Err(ConfigError::Incompatible(self.algorithm, self.family));
        }
        if self.trials == 0 {
            return Err(ConfigError::Zero("trials"));
        }
        if self.budget == 0 {
            return Err(ConfigError::Zero("budget"));
        }
        match self.family {
            Family::File if self.instance.is_none() => Err(ConfigError::Missing("instance")),
            Family::Random if self.sizes.is_none() && self.m_values.is_empty() => Err(ConfigError::Missing("m")),
            Family::Gs | Family::GgMst | Family::GgTsp if self.m_values.is_empty() => Err(ConfigError::Missing("m")),
            _ => Ok(()),
        }
    }
}

fn list<T: FromStr>(key: &str, value: &str) -> Result<Vec<T>, ConfigError> {
    value
        .split(',')
        .map(|t| t.trim().parse().map_err(|_| ConfigError::BadValue { key: key.into(), value: value.into() }))
        .collect()
}

fn one<T: FromStr>(key: &str, value: &str) -> Result<T, ConfigError> {
    value.parse().map_err(|_| ConfigError::BadValue { key: key.into(), value: value.into() })
}

impl FromStr for ExperimentConfig {
    type Err = ConfigError;

    fn from_str(text: &str) -> Result<Self, ConfigError> {
        let mut algorithm = None;
        let mut family = None;
        let mut trials = None;
        let mut budget = None;
        let mut cfg = ExperimentConfig::new(Algorithm::Cluster, Family::Gs, Vec::new(), 0, 0, 0);
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or(ConfigError::Syntax(i + 1))?;
            let (key, value) = (key.trim(), value.trim());
            match key {
                "algorithm" => algorithm = Some(value.parse()?),
                "family" => family = Some(value.parse()?),
                "m" => cfg.m_values = list(key, value)?,
                "sizes" => cfg.sizes = Some(list(key, value)?),
                "cluster_size" => cfg.cluster_size = one(key, value)?,
                "max_cost" => cfg.max_cost = one(key, value)?,
                "instance_seed" => cfg.instance_seed = Some(one(key, value)?),
                "instance" => cfg.instance = Some(PathBuf::from(value)),
                "trials" => trials = Some(one(key, value)?),
                "budget" => budget = Some(one(key, value)?),
                "base_seed" => cfg.base_seed = one(key, value)?,
                "timing" => cfg.timing = one(key, value)?,
                _ => return Err(ConfigError::UnknownKey(key.into())),
            }
        }
        cfg.algorithm = algorithm.ok_or(ConfigError::Missing("algorithm"))?;
        cfg.family = family.ok_or(ConfigError::Missing("family"))?;
        cfg.trials = trials.ok_or(ConfigError::Missing("trials"))?;
        cfg.budget = budget.ok_or(ConfigError::Missing("budget"))?;
        cfg.validate()?;
        Ok(cfg)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_full_config() {
        let text = "# sweep\nalgorithm = cluster\nfamily = gg-mst\nm = 8, 16\ntrials = 10\nbudget = 800\nbase_seed = 3 # seed\n";
        let cfg: ExperimentConfig = text.parse().unwrap();
        assert_eq!(cfg.m_values, vec![8, 16]);
        assert_eq!(cfg.base_seed, 3);
        assert!(!cfg.timing);
    }

    #[test]
    fn rejects_incompatible_pairs() {
        let text = "algorithm = tour\nfamily = gs\nm = 4\ntrials = 1\nbudget = 1\n";
        assert_eq!(
            text.parse::<ExperimentConfig>(),
            Err(ConfigError::Incompatible(Algorithm::Tour, Family::Gs))
        );
        let text = "algorithm = tree\nfamily = gg-tsp\nm = 4\ntrials = 1\nbudget = 1\n";
        assert!(matches!(text.parse::<ExperimentConfig>(), Err(ConfigError::Incompatible(..))));
    }

    #[test]
    fn rejects_zero_budget_and_bad_keys() {
        let text = "algorithm = tree\nfamily = gs\nm = 4\ntrials = 1\nbudget = 0\n";
        assert_eq!(text.parse::<ExperimentConfig>(), Err(ConfigError::Zero("budget")));
        assert!(matches!("colour = red\n".parse::<ExperimentConfig>(), Err(ConfigError::UnknownKey(_))));
        assert_eq!("algorithm tree\n".parse::<ExperimentConfig>(), Err(ConfigError::Syntax(1)));
        let text = "algorithm = tree\nfamily = file\ntrials = 1\nbudget = 1\n";
        assert_eq!(text.parse::<ExperimentConfig>(), Err(ConfigError::Missing("instance")));
    }
}
