//! Verdict-carrying result records. Raw numbers are always retained next
//! to the references they were compared against.

use serde::Serialize;

/// One reference value a numeric quantity was measured against.
#[derive(Clone, Debug, Serialize)]
pub struct RefComparison {
    pub source: String,
    pub value: f64,
    pub rel_err: f64,
    pub within_tolerance: bool,
}

impl RefComparison {
    pub fn new(source: impl Into<String>, numeric: f64, reference: f64, tol: f64) -> Self {
        let rel_err = relative_error(numeric, reference);
        RefComparison {
            source: source.into(),
            value: reference,
            rel_err,
            within_tolerance: rel_err <= tol,
        }
    }
}

/// Relative error against a reference, falling back to absolute error for
/// vanishing references.
pub fn relative_error(numeric: f64, reference: f64) -> f64 {
    let diff = (numeric - reference).abs();
    if reference.abs() > 1e-9 {
        diff / reference.abs()
    } else {
        diff
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct OracleRow {
    pub label: String,
    pub numeric: f64,
    pub tolerance: f64,
    pub comparisons: Vec<RefComparison>,
}

#[derive(Clone, Debug, Serialize)]
pub struct OracleResult {
    pub quantity: String,
    pub grid: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub step: Option<f64>,
    pub richardson: bool,
    pub rows: Vec<OracleRow>,
}

impl OracleResult {
    /// True when every row stayed within tolerance of at least one
    /// reference (an adjudication succeeds when exactly one family wins;
    /// a plain check succeeds when its single reference matches).
    pub fn all_rows_matched_some_reference(&self) -> bool {
        self.rows
            .iter()
            .all(|r| r.comparisons.iter().any(|c| c.within_tolerance))
    }
}
