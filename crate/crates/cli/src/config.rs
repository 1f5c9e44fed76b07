//! Run configuration files (TOML).
//!
//! ```toml
//! model = "bi_quadratic"          # bi_quadratic | bi_cubic | unidirectional
//! n_modes = 64
//!
//! [params]
//! delta = 0.5
//! beta = 0.0
//! epsilon = 1.0                   # optional
//!
//! [initial]
//! f  = { preset = "single_mode", k = 1, amplitude = 1e-3 }
//! ft = { preset = "single_mode", k = 1, amplitude = 1e-3 }   # optional, default zero
//! # u = { ... }                   # unidirectional model instead of f/ft
//!
//! [stepping]
//! dt = 0.01                       # optional, see StepConfig::default_dt
//! scheme = "etd_rk2"              # etd1 | etd_rk2
//! t_final = 20.0
//! guard = true
//!
//! [output]
//! directory = "runs/example"      # optional, default runs/<config stem>
//! cadence = 10
//! snapshot_every = 200            # optional
//! formats = ["csv", "binary", "text"]
//! ```

use std::fmt;
use std::path::{Path, PathBuf};

use dampwave_core::integrator::{ObserveConfig, Scheme, State, StepConfig};
use dampwave_core::models::{make_initial, BiState, InitialPreset, ModelKind};
use dampwave_core::{CoreError, Grid, ModelParams, SpectralField};
use serde::{Deserialize, Serialize};

/// A configuration problem, anchored to a line of the file where possible.
#[derive(Debug, Clone, PartialEq)]
pub struct ConfigError {
    pub path: PathBuf,
    pub line: Option<usize>,
    pub message: String,
}

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.line {
            Some(line) => write!(f, "{}:{line}: {}", self.path.display(), self.message),
            None => write!(f, "{}: {}", self.path.display(), self.message),
        }
    }
}

impl std::error::Error for ConfigError {}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Format {
    Csv,
    Binary,
    Text,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InitialSection {
    #[serde(default)]
    pub f: Option<InitialPreset>,
    #[serde(default)]
    pub ft: Option<InitialPreset>,
    #[serde(default)]
    pub u: Option<InitialPreset>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SteppingSection {
    #[serde(default)]
    pub dt: Option<f64>,
    #[serde(default = "default_scheme")]
    pub scheme: Scheme,
    pub t_final: f64,
    #[serde(default = "default_true")]
    pub guard: bool,
    #[serde(default)]
    pub linear_only: bool,
}

fn default_scheme() -> Scheme {
    Scheme::EtdRk2
}

fn default_true() -> bool {
    true
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputSection {
    #[serde(default)]
    pub directory: Option<PathBuf>,
    #[serde(default = "default_cadence")]
    pub cadence: usize,
    #[serde(default)]
    pub snapshot_every: Option<usize>,
    #[serde(default = "default_formats")]
    pub formats: Vec<Format>,
}

impl Default for OutputSection {
    fn default() -> Self {
        Self {
            directory: None,
            cadence: default_cadence(),
            snapshot_every: None,
            formats: default_formats(),
        }
    }
}

fn default_cadence() -> usize {
    1
}

fn default_formats() -> Vec<Format> {
    vec![Format::Csv, Format::Binary]
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub model: ModelKind,
    pub n_modes: usize,
    pub params: ModelParams,
    pub initial: InitialSection,
    pub stepping: SteppingSection,
    #[serde(default)]
    pub output: OutputSection,
}

/// Everything needed to start a run, built from a validated config.
#[derive(Debug, Clone)]
pub struct Prepared {
    pub config: RunConfig,
    pub source: String,
    pub path: PathBuf,
    pub initial: State,
    pub step: StepConfig,
    pub observe: ObserveConfig,
    pub directory: PathBuf,
}

/// 1-based line of `key = ...` inside `[section]` (top level when `section` is empty).
pub fn locate(source: &str, section: &str, key: &str) -> Option<usize> {
    let mut current = String::new();
    let mut section_line = None;
    for (i, raw) in source.lines().enumerate() {
        let line = raw.trim();
        if let Some(name) = line.strip_prefix('[').and_then(|l| l.strip_suffix(']')) {
            current = name.trim().to_string();
            if current == section {
                section_line = Some(i + 1);
            }
            continue;
        }
        if current != section || key.is_empty() {
            continue;
        }
        if let Some((lhs, _)) = line.split_once('=') {
            if lhs.trim() == key {
                return Some(i + 1);
            }
        }
    }
    if key.is_empty() {
        section_line
    } else {
        None
    }
}

fn line_of_offset(source: &str, offset: usize) -> usize {
    source[..offset.min(source.len())].matches('\n').count() + 1
}

impl RunConfig {
    pub fn parse(source: &str, path: &Path) -> Result<Self, ConfigError> {
        toml::from_str(source).map_err(|e| ConfigError {
            path: path.to_path_buf(),
            line: e.span().map(|s| line_of_offset(source, s.start)),
            message: e.message().trim().to_string(),
        })
    }

    pub fn load(path: &Path) -> Result<(Self, String), ConfigError> {
        let source = std::fs::read_to_string(path).map_err(|e| ConfigError {
            path: path.to_path_buf(),
            line: None,
            message: format!("cannot read config: {e}"),
        })?;
        Ok((Self::parse(&source, path)?, source))
    }
}

/// Reads, parses and validates a config; `output_root` prefixes relative
/// output directories.
pub fn prepare(path: &Path, output_root: Option<&Path>) -> Result<Prepared, ConfigError> {
    let (config, source) = RunConfig::load(path)?;
    prepare_parsed(config, source, path, output_root)
}

pub fn prepare_parsed(
    config: RunConfig,
    source: String,
    path: &Path,
    output_root: Option<&Path>,
) -> Result<Prepared, ConfigError> {
    let err = |section: &str, key: &str, message: String| ConfigError {
        path: path.to_path_buf(),
        line: locate(&source, section, key).or_else(|| locate(&source, section, "")),
        message,
    };
    let describe = |e: CoreError| e.to_string();

    let p = config.params;
    for (key, value, ok) in [
        ("delta", p.delta, p.delta.is_finite() && p.delta > 0.0),
        ("beta", p.beta, p.beta.is_finite() && p.beta >= 0.0),
        ("epsilon", p.epsilon, p.epsilon.is_finite() && p.epsilon > 0.0),
    ] {
        if !ok {
            let need = if key == "beta" { ">= 0" } else { "> 0" };
            return Err(err("params", key, format!("{key} must be finite and {need}, got {value}")));
        }
    }
    let grid = Grid::new(config.n_modes).map_err(|e| err("", "n_modes", describe(e)))?;

    let build = |key: &str, preset: &Option<InitialPreset>| -> Result<Option<SpectralField>, ConfigError> {
        preset
            .as_ref()
            .map(|pr| make_initial(pr, &grid).map_err(|e| err("initial", key, describe(e))))
            .transpose()
    };
    let initial = if config.model.is_bidirectional() {
        if config.initial.u.is_some() {
            return Err(err("initial", "u", format!("'u' is only used by the unidirectional model, not {}", config.model)));
        }
        let f = build("f", &config.initial.f)?
            .ok_or_else(|| err("initial", "", "bidirectional models need initial.f".into()))?;
        let ft = build("ft", &config.initial.ft)?.unwrap_or_else(|| SpectralField::zeros(&grid));
        State::Bi(BiState::new(f, ft).map_err(|e| err("initial", "", describe(e)))?)
    } else {
        if config.initial.f.is_some() || config.initial.ft.is_some() {
            let key = if config.initial.f.is_some() { "f" } else { "ft" };
            return Err(err("initial", key, "the unidirectional model takes initial.u, not f/ft".into()));
        }
        State::Uni(
            build("u", &config.initial.u)?
                .ok_or_else(|| err("initial", "", "the unidirectional model needs initial.u".into()))?,
        )
    };

    let s = &config.stepping;
    let dt = s.dt.unwrap_or_else(|| StepConfig::default_dt(&p, &grid));
    let step = StepConfig {
        dt,
        scheme: s.scheme,
        t_final: s.t_final,
        guard: s.guard,
        linear_only: s.linear_only,
    };
    if !(dt.is_finite() && dt > 0.0) {
        return Err(err("stepping", "dt", format!("dt must be positive, got {dt}")));
    }
    if !(s.t_final.is_finite() && s.t_final >= 0.0) {
        return Err(err("stepping", "t_final", format!("t_final must be >= 0, got {}", s.t_final)));
    }

    let o = &config.output;
    if o.cadence == 0 {
        return Err(err("output", "cadence", "cadence must be >= 1".into()));
    }
    if o.snapshot_every == Some(0) {
        return Err(err("output", "snapshot_every", "snapshot_every must be >= 1".into()));
    }
    let observe = ObserveConfig {
        cadence: o.cadence,
        snapshot_every: o.snapshot_every,
        energy: true,
    };
    let relative = o.directory.clone().unwrap_or_else(|| {
        let stem = path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_else(|| "run".into());
        PathBuf::from("runs").join(stem)
    });
    let directory = match output_root {
        Some(root) if relative.is_relative() => root.join(relative),
        _ => relative,
    };

    Ok(Prepared {
        config,
        source,
        path: path.to_path_buf(),
        initial,
        step,
        observe,
        directory,
    })
}
