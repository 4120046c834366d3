//! Layered run configuration: command-line flags beat `HELSTROM_*`
//! environment variables, which beat an optional `key=value` config file,
//! which beats built-in defaults.

use std::path::Path;

use serde::Serialize;

use crate::error::CliError;

/// How the Fock truncation is chosen for a run.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum DimMode {
    /// Use exactly this many Fock states.
    Fixed(usize),
    /// Size the truncation so every component's norm deficit stays below
    /// the tolerance (never below the default of 50 states).
    Auto(f64),
}

/// Fully resolved run settings.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Settings {
    pub dim_mode: DimMode,
    pub eig_tol: f64,
    pub jobs: usize,
}

/// Values taken from command-line flags; `None` falls through to the next
/// layer.
#[derive(Debug, Clone, Copy, Default)]
pub struct Overrides {
    pub dim: Option<usize>,
    pub auto_dim: Option<f64>,
    pub eig_tol: Option<f64>,
    pub jobs: Option<usize>,
}

pub const ENV_DIM: &str = "HELSTROM_DIM";
pub const ENV_JOBS: &str = "HELSTROM_JOBS";
pub const ENV_EIG_TOL: &str = "HELSTROM_EIG_TOL";
/// Points at an alternative config file; `./helstrom.conf` is read otherwise.
pub const ENV_CONFIG: &str = "HELSTROM_CONFIG";
pub const CONFIG_FILE: &str = "helstrom.conf";

/// Key=value pairs understood in the config file.
#[derive(Debug, Clone, Copy, Default)]
pub struct FileConfig {
    pub dim: Option<usize>,
    pub jobs: Option<usize>,
    pub eig_tol: Option<f64>,
}

/// Parses `key=value` lines; `#` starts a comment, unknown keys are ignored.
pub fn parse_config_text(text: &str) -> Result<FileConfig, CliError> {
    let mut cfg = FileConfig::default();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line.split_once('=').ok_or_else(|| {
            CliError::Usage(format!(
                "config line {}: expected key=value, got {raw:?}",
                lineno + 1
            ))
        })?;
        let key = key.trim();
        let value = value.trim();
        let bad = |what: &str| {
            CliError::Usage(format!(
                "config line {}: invalid {what} value {value:?}",
                lineno + 1
            ))
        };
        match key {
            "dim" => cfg.dim = Some(value.parse().map_err(|_| bad("dim"))?),
            "jobs" => cfg.jobs = Some(value.parse().map_err(|_| bad("jobs"))?),
            "eig_tol" => cfg.eig_tol = Some(value.parse().map_err(|_| bad("eig_tol"))?),
            _ => {}
        }
    }
    Ok(cfg)
}

/// Loads the config file named by `HELSTROM_CONFIG`, or `./helstrom.conf`
/// when present; absence is not an error.
pub fn load_file_config(
    env: &impl Fn(&str) -> Option<String>,
) -> Result<FileConfig, CliError> {
    let path = match env(ENV_CONFIG) {
        Some(p) => p,
        None => {
            if Path::new(CONFIG_FILE).exists() {
                CONFIG_FILE.to_string()
            } else {
                return Ok(FileConfig::default());
            }
        }
    };
    let text = std::fs::read_to_string(&path).map_err(CliError::io(&path))?;
    parse_config_text(&text)
}

/// Resolves the effective settings from all four layers.
///
/// `env` is injected so tests can exercise the layering without touching
/// process state.
pub fn resolve(
    flags: &Overrides,
    env: impl Fn(&str) -> Option<String>,
    file: &FileConfig,
) -> Result<Settings, CliError> {
    let env_usize = |name: &str| -> Result<Option<usize>, CliError> {
        env(name)
            .map(|v| {
                v.parse()
                    .map_err(|_| CliError::Usage(format!("{name}: invalid value {v:?}")))
            })
            .transpose()
    };
    let env_f64 = |name: &str| -> Result<Option<f64>, CliError> {
        env(name)
            .map(|v| {
                v.parse()
                    .map_err(|_| CliError::Usage(format!("{name}: invalid value {v:?}")))
            })
            .transpose()
    };

    let dim_mode = if let Some(tol) = flags.auto_dim {
        DimMode::Auto(tol)
    } else if let Some(dim) = flags.dim {
        DimMode::Fixed(dim)
    } else if let Some(dim) = env_usize(ENV_DIM)? {
        DimMode::Fixed(dim)
    } else if let Some(dim) = file.dim {
        DimMode::Fixed(dim)
    } else {
        DimMode::Fixed(helstrom::DEFAULT_DIM)
    };

    let eig_tol = flags
        .eig_tol
        .or(env_f64(ENV_EIG_TOL)?)
        .or(file.eig_tol)
        .unwrap_or(helstrom::DEFAULT_EIG_TOL);

    let jobs = flags
        .jobs
        .or(env_usize(ENV_JOBS)?)
        .or(file.jobs)
        .unwrap_or_else(default_jobs);

    validate(dim_mode, eig_tol, jobs)?;
    Ok(Settings {
        dim_mode,
        eig_tol,
        jobs,
    })
}

fn default_jobs() -> usize {
    std::thread::available_parallelism()
        .map(|n| n.get())
        .unwrap_or(1)
}

fn validate(dim_mode: DimMode, eig_tol: f64, jobs: usize) -> Result<(), CliError> {
    match dim_mode {
        DimMode::Fixed(0) => {
            return Err(CliError::Usage("--dim must be at least 1".into()));
        }
        DimMode::Auto(tol) if !(tol > 0.0 && tol < 1.0) => {
            return Err(CliError::Usage(format!(
                "--auto-dim tolerance {tol} must lie in (0, 1)"
            )));
        }
        _ => {}
    }
    if !eig_tol.is_finite() || eig_tol <= 0.0 {
        return Err(CliError::Usage(format!(
            "--eig-tol {eig_tol} must be a positive finite number"
        )));
    }
    if jobs == 0 {
        return Err(CliError::Usage("--jobs must be at least 1".into()));
    }
    Ok(())
}
