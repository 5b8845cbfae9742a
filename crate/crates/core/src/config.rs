//! Run configuration shared by the CLI and the bindings.
//!
//! Values are layered: built-in defaults, then an optional TOML file, then
//! the `ENTHOM_ZERO_EPS` environment variable, then explicit overrides.

use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::filtration::ComplexKind;
use crate::monotones::{MonotoneKind, MonotoneSettings};
use crate::semimetric::DistanceKind;
use crate::statevec::{named_state, parse_state, PureState};

pub const ZERO_EPS_ENV: &str = "ENTHOM_ZERO_EPS";

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum StateSource {
    Named(String),
    File(PathBuf),
}

impl StateSource {
    pub fn load(&self) -> Result<PureState> {
        match self {
            StateSource::Named(name) => named_state(name),
            StateSource::File(path) => {
                let text = std::fs::read_to_string(path).map_err(|e| {
                    Error::MalformedState(format!("cannot read {}: {e}", path.display()))
                })?;
                parse_state(&text)
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    #[default]
    Json,
    Ascii,
    Svg,
}

impl FromStr for OutputFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "json" => Ok(OutputFormat::Json),
            "ascii" => Ok(OutputFormat::Ascii),
            "svg" => Ok(OutputFormat::Svg),
            other => Err(Error::Config(format!("unknown output format `{other}`"))),
        }
    }
}

impl fmt::Display for OutputFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            OutputFormat::Json => "json",
            OutputFormat::Ascii => "ascii",
            OutputFormat::Svg => "svg",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunConfig {
    pub state: Option<StateSource>,
    pub distance: DistanceKind,
    pub monotone: MonotoneSettings,
    pub complex: ComplexKind,
    pub max_dim: usize,
    pub output: OutputFormat,
    pub seed: u64,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            state: None,
            distance: DistanceKind::D,
            monotone: MonotoneSettings::default(),
            complex: ComplexKind::Rips,
            max_dim: 2,
            output: OutputFormat::Json,
            seed: 0,
        }
    }
}

/// On-disk layout; every key is optional.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct FileConfig {
    distance: Option<String>,
    complex: Option<String>,
    max_dim: Option<usize>,
    output: Option<String>,
    seed: Option<u64>,
    #[serde(default)]
    monotone: FileMonotone,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct FileMonotone {
    kind: Option<String>,
    zero_eps: Option<f64>,
}

/// Explicit overrides, typically from command-line flags.
#[derive(Debug, Clone, Default)]
pub struct Overrides {
    pub state: Option<StateSource>,
    pub distance: Option<DistanceKind>,
    pub monotone: Option<MonotoneKind>,
    pub complex: Option<ComplexKind>,
    pub max_dim: Option<usize>,
    pub zero_eps: Option<f64>,
    pub output: Option<OutputFormat>,
    pub seed: Option<u64>,
}

impl RunConfig {
    pub fn from_toml(text: &str) -> Result<Self> {
        let mut cfg = Self::default();
        cfg.apply_toml(text)?;
        Ok(cfg)
    }

    fn apply_toml(&mut self, text: &str) -> Result<()> {
        let file: FileConfig =
            toml::from_str(text).map_err(|e| Error::Config(e.message().to_string()))?;
        if let Some(d) = file.distance {
            self.distance = d.parse()?;
        }
        if let Some(c) = file.complex {
            self.complex = c.parse()?;
        }
        if let Some(m) = file.max_dim {
            self.max_dim = m;
        }
        if let Some(o) = file.output {
            self.output = o.parse()?;
        }
        if let Some(s) = file.seed {
            self.seed = s;
        }
        if let Some(k) = file.monotone.kind {
            self.monotone.kind = k.parse()?;
        }
        if let Some(eps) = file.monotone.zero_eps {
            self.monotone = MonotoneSettings::new(self.monotone.kind, eps)?;
        }
        Ok(())
    }

    /// Resolves the full precedence chain. `env_eps` is the raw value of
    /// [`ZERO_EPS_ENV`], passed in so callers control the environment.
    pub fn resolve(
        file: Option<&Path>,
        env_eps: Option<&str>,
        overrides: Overrides,
    ) -> Result<Self> {
        let mut cfg = Self::default();
        if let Some(path) = file {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Error::Config(format!("cannot read {}: {e}", path.display())))?;
            cfg.apply_toml(&text)?;
        }
        if let Some(raw) = env_eps {
            let eps: f64 = raw
                .trim()
                .parse()
                .map_err(|_| Error::Config(format!("{ZERO_EPS_ENV}=`{raw}` is not a number")))?;
            cfg.monotone = MonotoneSettings::new(cfg.monotone.kind, eps)?;
        }
        if let Some(s) = overrides.state {
            cfg.state = Some(s);
        }
        if let Some(d) = overrides.distance {
            cfg.distance = d;
        }
        if let Some(k) = overrides.monotone {
            cfg.monotone.kind = k;
        }
        if let Some(c) = overrides.complex {
            cfg.complex = c;
        }
        if let Some(m) = overrides.max_dim {
            cfg.max_dim = m;
        }
        if let Some(eps) = overrides.zero_eps {
            cfg.monotone = MonotoneSettings::new(cfg.monotone.kind, eps)?;
        }
        if let Some(o) = overrides.output {
            cfg.output = o;
        }
        if let Some(s) = overrides.seed {
            cfg.seed = s;
        }
        Ok(cfg)
    }

    /// Reads the environment and resolves.
    pub fn from_env(file: Option<&Path>, overrides: Overrides) -> Result<Self> {
        let env = std::env::var(ZERO_EPS_ENV).ok();
        Self::resolve(file, env.as_deref(), overrides)
    }

    pub fn load_state(&self) -> Result<PureState> {
        self.state
            .as_ref()
            .ok_or_else(|| Error::Config("no state given (use --state or --state-file)".into()))?
            .load()
    }

    pub fn zero_eps(&self) -> f64 {
        self.monotone.zero_eps
    }
}
