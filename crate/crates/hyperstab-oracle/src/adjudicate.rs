//! Drives the one-dimensional oracle against both symbolic coefficient
//! families and records which one the numerics confirm.
//!
//! Two quantities discriminate between the families: the third bundle-norm
//! integral (the families differ by thousands at the first nonzero
//! eigenvalue) and the end-to-end second variation of the energy. Default
//! tolerances: 1e-7 relative for linear-operator quadratures, 1e-3
//! relative for second differences.

use hyperstab_core::{
    composition_bundle_norms, energy_form, fixture_bundle_norms, Adjudication, AdjudicationRow,
    CandidateFamily, ComparisonReport, Energy, Hypersphere, Q4Route, Rat,
};

use crate::circle::{build_circle, CircleImmersion};
use crate::error::Result;
use crate::fourier::Differentiator;
use crate::report::{relative_error, OracleResult, OracleRow, RefComparison};

pub const LINEAR_TOL: f64 = 1e-7;
pub const SECOND_DIFF_TOL: f64 = 1e-3;

#[derive(Clone, Copy, Debug)]
pub struct OracleConfig {
    pub grid: usize,
    pub step: f64,
    pub richardson: bool,
    pub modes: [u64; 4],
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig {
            grid: 4096,
            step: 1e-3,
            richardson: true,
            modes: [0, 1, 2, 3],
        }
    }
}

pub struct AdjudicationOutcome {
    pub adjudication: Adjudication,
    pub bundle_result: OracleResult,
    pub second_variation_result: OracleResult,
    pub criticality_result: OracleResult,
}

/// Runs the full m=1 oracle at radius 1/2 and adjudicates the contested
/// coefficients.
pub fn adjudicate_m1(config: &OracleConfig) -> Result<AdjudicationOutcome> {
    let im = build_circle(0.5, config.grid, -1.0, Differentiator::spectral())?;
    let h = Hypersphere::critical(1);
    let fixture_norms = fixture_bundle_norms(1);
    let derived_norms = composition_bundle_norms(&h).expect("rational norms");
    let fixture_form = energy_form(Energy::E4, &h, &Rat::one(), Q4Route::Fixture)
        .expect("fixture form");
    let derived_form = energy_form(Energy::E4, &h, &Rat::one(), Q4Route::Variational)
        .expect("variational form");

    let mut evidence = Vec::new();
    let mut bundle_rows = Vec::new();
    for &j in &config.modes {
        if j == 0 {
            continue; // the constant mode has no gradient content
        }
        let norms = im.bundle_norms(j)?;
        let lambda = Rat::int(j as i64 * j as i64) * Rat::int(4);
        let lam_f = norms.lambda;

        for (label, numeric, fix_poly, der_poly, tol) in [
            ("first", norms.first, &fixture_norms.first, &derived_norms.first, LINEAR_TOL),
            ("second", norms.second, &fixture_norms.second, &derived_norms.second, LINEAR_TOL),
            ("third", norms.third, &fixture_norms.third, &derived_norms.third, LINEAR_TOL),
        ] {
            let fix = fix_poly.eval(&lambda).to_f64();
            let der = der_poly.eval(&lambda).to_f64();
            bundle_rows.push(OracleRow {
                label: format!("int |Lap^k (f nu)|^2 [{label}] at lambda {lam_f}"),
                numeric,
                tolerance: tol,
                comparisons: vec![
                    RefComparison::new("fixture", numeric, fix, tol),
                    RefComparison::new("derived", numeric, der, tol),
                ],
            });
            if label == "third" {
                evidence.push(AdjudicationRow {
                    quantity: "bundle-norm third integral".into(),
                    lambda: lam_f,
                    numeric,
                    fixture_value: fix,
                    derived_value: der,
                    rel_err_fixture: relative_error(numeric, fix),
                    rel_err_derived: relative_error(numeric, der),
                });
            }
        }
    }

    let mut sv_rows = Vec::new();
    for &j in &config.modes {
        let sv = im.second_variation(j, config.step, config.richardson)?;
        let lambda = Rat::int(4 * (j as i64) * (j as i64));
        let fix = fixture_form.poly.eval(&lambda).to_f64();
        let der = derived_form.poly.eval(&lambda).to_f64();
        sv_rows.push(OracleRow {
            label: format!("d^2 E4 at mode {j} (lambda {})", sv.lambda),
            numeric: sv.value,
            tolerance: SECOND_DIFF_TOL,
            comparisons: vec![
                RefComparison::new("fixture", sv.value, fix, SECOND_DIFF_TOL),
                RefComparison::new("derived", sv.value, der, SECOND_DIFF_TOL),
            ],
        });
        if j > 0 {
            evidence.push(AdjudicationRow {
                quantity: "second variation".into(),
                lambda: sv.lambda,
                numeric: sv.value,
                fixture_value: fix,
                derived_value: der,
                rel_err_fixture: relative_error(sv.value, fix),
                rel_err_derived: relative_error(sv.value, der),
            });
        }
    }

    // criticality: the first variation vanishes at radius 1/2
    let mut crit_rows = Vec::new();
    for &j in &[0u64, 1, 2] {
        let f = im.normalized_mode(j);
        let dv = im.first_variation(&f, 1e-5)?;
        crit_rows.push(OracleRow {
            label: format!("dE4 at mode {j}"),
            numeric: dv,
            tolerance: 1e-6,
            comparisons: vec![RefComparison::new("critical point", dv, 0.0, 1e-6)],
        });
    }

    let winner = decide(&evidence);
    Ok(AdjudicationOutcome {
        adjudication: Adjudication { winner, evidence },
        bundle_result: OracleResult {
            quantity: "bundle norms (m=1, a=1/2)".into(),
            grid: config.grid,
            step: None,
            richardson: false,
            rows: bundle_rows,
        },
        second_variation_result: OracleResult {
            quantity: "second variation (m=1, a=1/2)".into(),
            grid: config.grid,
            step: Some(config.step),
            richardson: config.richardson,
            rows: sv_rows,
        },
        criticality_result: OracleResult {
            quantity: "criticality (m=1, a=1/2)".into(),
            grid: config.grid,
            step: Some(1e-5),
            richardson: false,
            rows: crit_rows,
        },
    })
}

/// The numerics must agree with exactly one family on every
/// discriminating probe; anything else is treated as fixture-compatible
/// only when the fixture wins the same way.
fn decide(evidence: &[AdjudicationRow]) -> CandidateFamily {
    let derived_wins = evidence
        .iter()
        .all(|row| row.rel_err_derived < SECOND_DIFF_TOL && row.rel_err_fixture > 100.0 * row.rel_err_derived);
    if derived_wins {
        return CandidateFamily::Derived;
    }
    CandidateFamily::Fixture
}

/// Attaches the oracle verdict to an exact comparison report.
pub fn adjudicated_report(m: u32, config: &OracleConfig) -> Result<ComparisonReport> {
    let outcome = adjudicate_m1(config)?;
    let mut report = hyperstab_core::compare_routes(m).expect("comparison");
    report.adjudication = Some(outcome.adjudication);
    Ok(report)
}

/// Convenience wrapper for tests and the CLI.
pub fn build_default_circle(grid: usize) -> Result<CircleImmersion> {
    build_circle(0.5, grid, -1.0, Differentiator::spectral())
}
