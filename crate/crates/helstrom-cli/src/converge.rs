//! Truncation-convergence reports: PE as a function of the Fock dimension,
//! with deltas against the analytic and Gram oracles.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

use helstrom::{
    cell_ensembles, gram_subspace_pe, probability_of_error, pure_pe_analytic, Displacement,
};
use serde::Serialize;

use crate::error::CliError;
use crate::format::sig17;

pub const CSV_HEADER: &str = "dim,pe_pure,pe_mixed,delta_pure_analytic,delta_mixed_gram";

#[derive(Debug, Clone, Copy, Serialize)]
pub struct ConvergeRow {
    pub dim: usize,
    pub pe_pure: f64,
    pub pe_mixed: f64,
    /// Truncated pure PE minus the closed-form value.
    pub delta_pure_analytic: f64,
    /// Truncated mixed PE minus the exact Gram-subspace value.
    pub delta_mixed_gram: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct ConvergeReport {
    pub x: f64,
    pub p: f64,
    pub eig_tol: f64,
    pub rows: Vec<ConvergeRow>,
}

/// Evaluates both pairs at each requested dimension. Dimensions must be
/// ascending and non-empty.
pub fn run_converge(
    x: f64,
    p: f64,
    dims: &[usize],
    eig_tol: f64,
) -> Result<ConvergeReport, CliError> {
    if dims.is_empty() {
        return Err(CliError::Usage("--dims requires at least one value".into()));
    }
    if dims.windows(2).any(|w| w[0] >= w[1]) {
        return Err(CliError::Usage(
            "--dims values must be strictly ascending".into(),
        ));
    }

    Displacement::new(x, p).map_err(CliError::from)?;
    let [pure0, pure1, mixed0, mixed1] = cell_ensembles(x, p).map_err(CliError::from)?;
    let analytic = pure_pe_analytic(
        Displacement::new(x.abs(), p.abs()).map_err(CliError::from)?,
        Displacement::new(-x.abs(), p.abs()).map_err(CliError::from)?,
    );
    let gram = gram_subspace_pe(&mixed0, &mixed1)?;

    let mut rows = Vec::with_capacity(dims.len());
    for &dim in dims {
        let pure = probability_of_error(&pure0, &pure1, dim, eig_tol)?;
        let mixed = probability_of_error(&mixed0, &mixed1, dim, eig_tol)?;
        rows.push(ConvergeRow {
            dim,
            pe_pure: pure.pe,
            pe_mixed: mixed.pe,
            delta_pure_analytic: pure.pe - analytic,
            delta_mixed_gram: mixed.pe - gram,
        });
    }

    Ok(ConvergeReport {
        x,
        p,
        eig_tol,
        rows,
    })
}

pub fn render_human(report: &ConvergeReport) -> String {
    let mut out = format!(
        "convergence at (x={}, p={})\n{:>6}  {:>24}  {:>24}  {:>13}  {:>13}\n",
        report.x, report.p, "dim", "pe_pure", "pe_mixed", "d_analytic", "d_gram"
    );
    for r in &report.rows {
        out.push_str(&format!(
            "{:>6}  {:>24}  {:>24}  {:>13.3e}  {:>13.3e}\n",
            r.dim,
            sig17(r.pe_pure),
            sig17(r.pe_mixed),
            r.delta_pure_analytic,
            r.delta_mixed_gram,
        ));
    }
    out
}

pub fn write_csv(path: &Path, report: &ConvergeReport) -> Result<(), CliError> {
    let file = File::create(path).map_err(CliError::io(path))?;
    let mut w = BufWriter::new(file);
    let res = (|| -> std::io::Result<()> {
        w.write_all(CSV_HEADER.as_bytes())?;
        w.write_all(b"\n")?;
        for r in &report.rows {
            writeln!(
                w,
                "{},{},{},{},{}",
                r.dim,
                sig17(r.pe_pure),
                sig17(r.pe_mixed),
                sig17(r.delta_pure_analytic),
                sig17(r.delta_mixed_gram),
            )?;
        }
        w.flush()
    })();
    res.map_err(CliError::io(path))
}

pub fn write_json(path: &Path, report: &ConvergeReport) -> Result<(), CliError> {
    let mut text = serde_json::to_string_pretty(report)
        .map_err(|e| CliError::Numerical(format!("json encode: {e}")))?;
    text.push('\n');
    std::fs::write(path, text).map_err(CliError::io(path))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn stabilizes_by_fifty_states_near_the_origin_region() {
        let report = run_converge(1.0, 1.0, &[10, 20, 30, 40, 50], 1e-12).unwrap();
        let last = report.rows.last().unwrap();
        assert!(last.delta_mixed_gram.abs() < 1e-8);
        assert!(last.delta_pure_analytic.abs() < 1e-8);
    }

    #[test]
    fn far_corner_is_converged_at_the_default_depth() {
        let report = run_converge(3.0, 3.0, &[50, 100], 1e-12).unwrap();
        let d_pure = report.rows[1].pe_pure - report.rows[0].pe_pure;
        let d_mixed = report.rows[1].pe_mixed - report.rows[0].pe_mixed;
        assert!(d_pure.abs() < 1e-9, "{d_pure}");
        assert!(d_mixed.abs() < 1e-9, "{d_mixed}");
    }

    #[test]
    fn vacuum_point_is_flat_at_half() {
        let report = run_converge(0.0, 0.0, &[5, 10, 20], 1e-12).unwrap();
        for r in &report.rows {
            assert_eq!(r.pe_pure, 0.5);
            assert_eq!(r.pe_mixed, 0.5);
        }
    }

    #[test]
    fn dims_must_ascend() {
        assert!(run_converge(1.0, 1.0, &[20, 10], 1e-12).is_err());
        assert!(run_converge(1.0, 1.0, &[10, 10], 1e-12).is_err());
        assert!(run_converge(1.0, 1.0, &[], 1e-12).is_err());
    }

    #[test]
    fn human_table_mentions_every_dim() {
        let report = run_converge(0.5, 0.5, &[10, 25], 1e-12).unwrap();
        let text = render_human(&report);
        assert!(text.contains("10"));
        assert!(text.contains("25"));
    }
}
