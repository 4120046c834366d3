//! Number formatting for emitted data files.

/// Formats with 17 significant digits, enough to reproduce any `f64`
/// exactly on re-parse.
pub fn sig17(v: f64) -> String {
    format!("{v:.16e}")
}
