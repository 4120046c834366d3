//! Information-gain sweeps over a rectangular `(x, p)` grid.
//!
//! Cells are independent and evaluated in parallel up to the configured job
//! count; rows are assembled in row-major order with `p` varying fastest,
//! so the emitted files are byte-identical whatever the parallelism. The
//! data file never contains timestamps; those live only in the sidecar
//! manifest.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use helstrom::{cell_ensembles, information_gain, suggest_dim, GainRecord};
use serde::Serialize;

use crate::config::{DimMode, Settings};
use crate::error::CliError;
use crate::format::sig17;
use crate::TOOL_VERSION;

/// Exact header of emitted CSV grid files.
pub const CSV_HEADER: &str = "x,p,pe_pure,pe_mixed,i_pure,i_mixed,i_gain";

/// Rectangular sweep definition.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GridSpec {
    pub x_min: f64,
    pub x_max: f64,
    pub p_min: f64,
    pub p_max: f64,
    pub x_steps: usize,
    pub p_steps: usize,
    pub dim_mode: DimMode,
    pub eig_tol: f64,
}

impl GridSpec {
    /// The default surface: the positive quadrant `[0, 3] x [0, 3]` at
    /// 61 x 61 cells and a fixed 50-state truncation. Sign flips of either
    /// quadrature leave the surface unchanged, so the quadrant is enough.
    pub fn default_surface() -> Self {
        Self {
            x_min: 0.0,
            x_max: 3.0,
            p_min: 0.0,
            p_max: 3.0,
            x_steps: 61,
            p_steps: 61,
            dim_mode: DimMode::Fixed(helstrom::DEFAULT_DIM),
            eig_tol: helstrom::DEFAULT_EIG_TOL,
        }
    }

    pub fn with_settings(mut self, settings: &Settings) -> Self {
        self.dim_mode = settings.dim_mode;
        self.eig_tol = settings.eig_tol;
        self
    }

    pub fn validate(&self) -> Result<(), CliError> {
        let coords = [self.x_min, self.x_max, self.p_min, self.p_max];
        if coords.iter().any(|v| !v.is_finite()) {
            return Err(CliError::Usage("grid bounds must be finite".into()));
        }
        if self.x_min > self.x_max || self.p_min > self.p_max {
            return Err(CliError::Usage(format!(
                "grid bounds must be ordered: x {}..{}, p {}..{}",
                self.x_min, self.x_max, self.p_min, self.p_max
            )));
        }
        if self.x_steps == 0 || self.p_steps == 0 {
            return Err(CliError::Usage("grid steps must be at least 1".into()));
        }
        if !self.eig_tol.is_finite() || self.eig_tol <= 0.0 {
            return Err(CliError::Usage(format!(
                "eigensolver tolerance {} must be positive",
                self.eig_tol
            )));
        }
        if let DimMode::Fixed(0) = self.dim_mode {
            return Err(CliError::Usage("dim must be at least 1".into()));
        }
        if let DimMode::Auto(tol) = self.dim_mode {
            if !(tol > 0.0 && tol < 1.0) {
                return Err(CliError::Usage(format!(
                    "auto-dim tolerance {tol} must lie in (0, 1)"
                )));
            }
        }
        Ok(())
    }

    pub fn cell_count(&self) -> usize {
        self.x_steps * self.p_steps
    }

    /// `i`-th x coordinate; endpoints land exactly on the bounds.
    pub fn x_at(&self, i: usize) -> f64 {
        coordinate(self.x_min, self.x_max, i, self.x_steps)
    }

    pub fn p_at(&self, j: usize) -> f64 {
        coordinate(self.p_min, self.p_max, j, self.p_steps)
    }

    /// Truncation dimension for the whole run.
    ///
    /// In auto mode the outermost corner of the grid dominates every other
    /// cell's truncation requirement, so one dimension serves the run.
    pub fn resolve_dim(&self) -> Result<usize, CliError> {
        match self.dim_mode {
            DimMode::Fixed(dim) => Ok(dim),
            DimMode::Auto(tail_tol) => {
                let x = self.x_min.abs().max(self.x_max.abs());
                let p = self.p_min.abs().max(self.p_max.abs());
                let ensembles = cell_ensembles(x, p).map_err(CliError::from)?;
                let refs: Vec<_> = ensembles.iter().collect();
                suggest_dim(&refs, tail_tol).map_err(CliError::from)
            }
        }
    }
}

fn coordinate(min: f64, max: f64, index: usize, steps: usize) -> f64 {
    if steps <= 1 {
        min
    } else {
        min + (max - min) * index as f64 / (steps - 1) as f64
    }
}

/// One output row; field order is the column order.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GridRow {
    pub x: f64,
    pub p: f64,
    pub pe_pure: f64,
    pub pe_mixed: f64,
    pub i_pure: f64,
    pub i_mixed: f64,
    pub i_gain: f64,
}

impl From<GainRecord<f64>> for GridRow {
    fn from(r: GainRecord<f64>) -> Self {
        Self {
            x: r.x,
            p: r.p,
            pe_pure: r.pe_pure,
            pe_mixed: r.pe_mixed,
            i_pure: r.i_pure,
            i_mixed: r.i_mixed,
            i_gain: r.i_gain,
        }
    }
}

/// Provenance record for a sweep. Timestamps are optional so the copy
/// embedded in JSON data files can omit them; the sidecar always has them.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunManifest {
    pub spec: GridSpec,
    pub dim_used: usize,
    pub tool_version: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub started_at: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub finished_at: Option<String>,
    pub cell_count: usize,
}

impl RunManifest {
    pub fn new(spec: GridSpec, dim_used: usize) -> Self {
        Self {
            spec,
            dim_used,
            tool_version: TOOL_VERSION.to_string(),
            started_at: None,
            finished_at: None,
            cell_count: spec.cell_count(),
        }
    }

    /// Copy with timestamps stripped, for embedding in data files.
    pub fn without_timestamps(&self) -> Self {
        Self {
            started_at: None,
            finished_at: None,
            ..self.clone()
        }
    }
}

/// Runs the sweep and returns rows in row-major order (`p` fastest).
///
/// Any failing cell aborts the run, naming the offending `(x, p)`.
pub fn run_grid(spec: &GridSpec, jobs: usize) -> Result<(Vec<GridRow>, RunManifest), CliError> {
    spec.validate()?;
    if jobs == 0 {
        return Err(CliError::Usage("--jobs must be at least 1".into()));
    }
    let dim = spec.resolve_dim()?;

    let cells: Vec<(usize, usize)> = (0..spec.x_steps)
        .flat_map(|i| (0..spec.p_steps).map(move |j| (i, j)))
        .collect();

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| CliError::Numerical(format!("thread pool: {e}")))?;

    let results: Vec<Result<GridRow, (f64, f64, helstrom::Error)>> = pool.install(|| {
        use rayon::prelude::*;
        cells
            .par_iter()
            .map(|&(i, j)| {
                let x = spec.x_at(i);
                let p = spec.p_at(j);
                information_gain(x, p, dim, spec.eig_tol)
                    .map(GridRow::from)
                    .map_err(|e| (x, p, e))
            })
            .collect()
    });

    let mut rows = Vec::with_capacity(results.len());
    for result in results {
        match result {
            Ok(row) => rows.push(row),
            Err((x, p, e)) => {
                return Err(CliError::Numerical(format!(
                    "grid cell (x={x}, p={p}): {e}"
                )));
            }
        }
    }

    Ok((rows, RunManifest::new(*spec, dim)))
}

/// Sidecar path: `<out>.manifest.json`.
pub fn manifest_path(out: &Path) -> PathBuf {
    let mut name = out.as_os_str().to_os_string();
    name.push(".manifest.json");
    PathBuf::from(name)
}

pub fn write_grid_csv(path: &Path, rows: &[GridRow]) -> Result<(), CliError> {
    let file = File::create(path).map_err(CliError::io(path))?;
    let mut w = BufWriter::new(file);
    let res = (|| -> std::io::Result<()> {
        w.write_all(CSV_HEADER.as_bytes())?;
        w.write_all(b"\n")?;
        for r in rows {
            writeln!(
                w,
                "{},{},{},{},{},{},{}",
                sig17(r.x),
                sig17(r.p),
                sig17(r.pe_pure),
                sig17(r.pe_mixed),
                sig17(r.i_pure),
                sig17(r.i_mixed),
                sig17(r.i_gain),
            )?;
        }
        w.flush()
    })();
    res.map_err(CliError::io(path))
}

#[derive(Serialize)]
struct GridDocument<'a> {
    manifest: RunManifest,
    rows: &'a [GridRow],
}

pub fn write_grid_json(
    path: &Path,
    rows: &[GridRow],
    manifest: &RunManifest,
) -> Result<(), CliError> {
    let doc = GridDocument {
        manifest: manifest.without_timestamps(),
        rows,
    };
    let mut text = serde_json::to_string_pretty(&doc)
        .map_err(|e| CliError::Numerical(format!("json encode: {e}")))?;
    text.push('\n');
    std::fs::write(path, text).map_err(CliError::io(path))
}

pub fn write_manifest(path: &Path, manifest: &RunManifest) -> Result<(), CliError> {
    let mut text = serde_json::to_string_pretty(manifest)
        .map_err(|e| CliError::Numerical(format!("json encode: {e}")))?;
    text.push('\n');
    std::fs::write(path, text).map_err(CliError::io(path))
}
