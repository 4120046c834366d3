//! Single-point evaluation: both pairs at one `(x, p)`, with optional
//! oracle cross-checks.

use helstrom::{
    cell_ensembles, gram_subspace_pe, probability_of_error, pure_pe_analytic, suggest_dim,
    CoherentEnsemble, Displacement,
};
use serde::Serialize;

use crate::config::{DimMode, Settings};
use crate::error::CliError;
use crate::format::sig17;

/// One side (pure or mixed pair) of a point report.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct SideReport {
    pub pe: f64,
    pub trace_distance_sum: f64,
    pub shannon_bits: f64,
    pub max_norm_deficit: f64,
}

/// Oracle values alongside the truncated results.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct OracleReport {
    pub pure_analytic_pe: f64,
    pub gram_pure_pe: f64,
    pub gram_mixed_pe: f64,
    pub pure_deviation: f64,
    pub mixed_deviation: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct PointReport {
    pub x: f64,
    pub p: f64,
    pub dim_used: usize,
    pub eig_tol: f64,
    pub pure: SideReport,
    pub mixed: SideReport,
    pub i_gain: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle: Option<OracleReport>,
}

pub fn run_point(
    x: f64,
    p: f64,
    settings: &Settings,
    with_oracle: bool,
) -> Result<PointReport, CliError> {
    // Validate early so a NaN flag is reported as a usage error.
    Displacement::new(x, p).map_err(CliError::from)?;

    let [pure0, pure1, mixed0, mixed1] = cell_ensembles(x, p).map_err(CliError::from)?;
    let dim = match settings.dim_mode {
        DimMode::Fixed(dim) => dim,
        DimMode::Auto(tail_tol) => {
            let refs: [&CoherentEnsemble<f64>; 4] = [&pure0, &pure1, &mixed0, &mixed1];
            suggest_dim(&refs, tail_tol).map_err(CliError::from)?
        }
    };

    let pure = probability_of_error(&pure0, &pure1, dim, settings.eig_tol)?;
    let mixed = probability_of_error(&mixed0, &mixed1, dim, settings.eig_tol)?;

    let oracle = if with_oracle {
        let analytic = pure_pe_analytic(
            Displacement::new(x.abs(), p.abs()).map_err(CliError::from)?,
            Displacement::new(-x.abs(), p.abs()).map_err(CliError::from)?,
        );
        let gram_pure = gram_subspace_pe(&pure0, &pure1)?;
        let gram_mixed = gram_subspace_pe(&mixed0, &mixed1)?;
        Some(OracleReport {
            pure_analytic_pe: analytic,
            gram_pure_pe: gram_pure,
            gram_mixed_pe: gram_mixed,
            pure_deviation: pure.pe - analytic,
            mixed_deviation: mixed.pe - gram_mixed,
        })
    } else {
        None
    };

    Ok(PointReport {
        x,
        p,
        dim_used: dim,
        eig_tol: settings.eig_tol,
        pure: SideReport {
            pe: pure.pe,
            trace_distance_sum: pure.trace_distance_sum,
            shannon_bits: pure.shannon_bits,
            max_norm_deficit: pure.max_norm_deficit,
        },
        mixed: SideReport {
            pe: mixed.pe,
            trace_distance_sum: mixed.trace_distance_sum,
            shannon_bits: mixed.shannon_bits,
            max_norm_deficit: mixed.max_norm_deficit,
        },
        i_gain: pure.shannon_bits - mixed.shannon_bits,
        oracle,
    })
}

pub fn render_human(r: &PointReport) -> String {
    let mut out = String::new();
    let mut line = |s: String| {
        out.push_str(&s);
        out.push('\n');
    };
    line(format!("x        : {}", sig17(r.x)));
    line(format!("p        : {}", sig17(r.p)));
    line(format!("dim      : {}", r.dim_used));
    line(format!("eig_tol  : {:e}", r.eig_tol));
    line(format!("pe_pure  : {}", sig17(r.pure.pe)));
    line(format!("pe_mixed : {}", sig17(r.mixed.pe)));
    line(format!("i_pure   : {}", sig17(r.pure.shannon_bits)));
    line(format!("i_mixed  : {}", sig17(r.mixed.shannon_bits)));
    line(format!("i_gain   : {}", sig17(r.i_gain)));
    line(format!(
        "max_norm_deficit : {}",
        sig17(r.pure.max_norm_deficit.max(r.mixed.max_norm_deficit))
    ));
    if let Some(o) = &r.oracle {
        line(format!("pure_analytic_pe : {}", sig17(o.pure_analytic_pe)));
        line(format!("gram_pure_pe     : {}", sig17(o.gram_pure_pe)));
        line(format!("gram_mixed_pe    : {}", sig17(o.gram_mixed_pe)));
        line(format!("pure_deviation   : {}", sig17(o.pure_deviation)));
        line(format!("mixed_deviation  : {}", sig17(o.mixed_deviation)));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn settings(dim: usize) -> Settings {
        Settings {
            dim_mode: DimMode::Fixed(dim),
            eig_tol: 1e-12,
            jobs: 1,
        }
    }

    #[test]
    fn degenerate_point_reports_half() {
        let r = run_point(0.0, 1.0, &settings(30), false).unwrap();
        assert_eq!(r.pure.pe, 0.5);
        assert_eq!(r.mixed.pe, 0.5);
        assert_eq!(r.i_gain, 0.0);
        assert!(r.oracle.is_none());
    }

    #[test]
    fn oracle_values_agree_with_truncated_path() {
        let r = run_point(1.0, 1.0, &settings(50), true).unwrap();
        let o = r.oracle.unwrap();
        assert!(o.pure_deviation.abs() < 1e-8);
        assert!(o.mixed_deviation.abs() < 1e-8);
    }

    #[test]
    fn auto_dim_uses_suggestion() {
        let s = Settings {
            dim_mode: DimMode::Auto(1e-12),
            eig_tol: 1e-12,
            jobs: 1,
        };
        let r = run_point(3.0, 3.0, &s, false).unwrap();
        assert!(r.dim_used > 50);
    }

    #[test]
    fn nan_coordinates_are_usage_errors() {
        let err = run_point(f64::NAN, 0.0, &settings(30), false).unwrap_err();
        assert_eq!(err.exit_code(), 2);
    }

    #[test]
    fn human_rendering_lists_all_quantities() {
        let r = run_point(1.0, 0.0, &settings(50), true).unwrap();
        let text = render_human(&r);
        for key in [
            "pe_pure",
            "pe_mixed",
            "i_pure",
            "i_mixed",
            "i_gain",
            "max_norm_deficit",
            "pure_analytic_pe",
        ] {
            assert!(text.contains(key), "missing {key} in:\n{text}");
        }
    }
}
