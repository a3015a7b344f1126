//! Coefficient-by-coefficient comparison of the quadratic-form routes.
//! Exact disagreements are recorded, never patched; the numeric oracle
//! fills in the adjudication afterwards.

use serde::Serialize;

use crate::error::Result;
use crate::exact::Rat;
use crate::forms::fixtures;
use crate::forms::norms::NormSource;
use crate::forms::routes::{energy_form, Energy, Q4Route};
use crate::geometry::Hypersphere;

/// One lambda-degree across all four routes.
#[derive(Clone, Debug, Serialize)]
pub struct CoeffRow {
    pub degree: usize,
    pub fixture: Rat,
    pub variational: Rat,
    pub norms_fixture: Rat,
    pub norms_composition: Rat,
    /// All four routes agree.
    pub all_agree: bool,
    /// The two derivation routes (variational, norms:composition) agree.
    pub derived_agree: bool,
}

/// Exact evaluation of a fixture form at lambda_1 = 4m, against the
/// separately tabulated substitution value.
#[derive(Clone, Debug, Serialize)]
pub struct Lambda1Check {
    pub lambda1: Rat,
    pub exact_fixture_value: Rat,
    pub tabulated_value: Rat,
    pub matches: bool,
    /// tabulated - exact.
    pub gap: Rat,
}

#[derive(Clone, Debug, Serialize)]
pub struct EnergyComparison {
    pub energy: Energy,
    pub rows: Vec<CoeffRow>,
    pub lambda1: Lambda1Check,
}

/// Overall classification of a comparison run.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub enum ReportStatus {
    /// Every route and every tabulated value agrees exactly.
    AllAgree,
    /// The derivation routes agree with each other but differ from a
    /// tabulated value; this is a finding, not a failure.
    FixtureDiscrepancy,
    /// The derivation routes disagree among themselves: an engine bug.
    InternalDisagreement,
}

/// Which coefficient family the numeric oracle confirmed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub enum CandidateFamily {
    /// The tabulated coefficients.
    Fixture,
    /// The coefficients produced by the derivation routes.
    Derived,
}

/// Numeric evidence attached by the oracle: one probe per quantity and
/// sample eigenvalue.
#[derive(Clone, Debug, Serialize)]
pub struct AdjudicationRow {
    pub quantity: String,
    pub lambda: f64,
    pub numeric: f64,
    pub fixture_value: f64,
    pub derived_value: f64,
    pub rel_err_fixture: f64,
    pub rel_err_derived: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct Adjudication {
    pub winner: CandidateFamily,
    pub evidence: Vec<AdjudicationRow>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ComparisonReport {
    pub m: u32,
    pub t: Rat,
    pub curvature: Rat,
    pub e4: EnergyComparison,
    pub es4: EnergyComparison,
    pub status: ReportStatus,
    /// Set only after the numeric oracle has run.
    pub adjudication: Option<Adjudication>,
}

fn compare_energy(energy: Energy, h: &Hypersphere) -> Result<EnergyComparison> {
    let k = Rat::one();
    let fixture = energy_form(energy, h, &k, Q4Route::Fixture)?;
    let variational = energy_form(energy, h, &k, Q4Route::Variational)?;
    let norms_fix = energy_form(energy, h, &k, Q4Route::NormCombination(NormSource::Fixture))?;
    let norms_comp = energy_form(
        energy,
        h,
        &k,
        Q4Route::NormCombination(NormSource::Composition),
    )?;

    let width = [&fixture, &variational, &norms_fix, &norms_comp]
        .iter()
        .map(|q| q.poly.coeffs().len())
        .max()
        .unwrap_or(0);

    let mut rows = Vec::with_capacity(width);
    for degree in 0..width {
        let f = fixture.poly.coeff(degree).as_rational()?;
        let v = variational.poly.coeff(degree).as_rational()?;
        let nf = norms_fix.poly.coeff(degree).as_rational()?;
        let nc = norms_comp.poly.coeff(degree).as_rational()?;
        let derived_agree = v == nc;
        let all_agree = derived_agree && f == v && nf == v;
        rows.push(CoeffRow {
            degree,
            fixture: f,
            variational: v,
            norms_fixture: nf,
            norms_composition: nc,
            all_agree,
            derived_agree,
        });
    }

    let lambda1 = Rat::int(4 * h.m as i64);
    let exact = fixture.poly.eval(&lambda1).as_rational()?;
    let tabulated = match energy {
        Energy::E4 => Rat::int(fixtures::q4_lambda1_tabulated().eval(h.m)),
        Energy::Es4 => Rat::int(fixtures::q4es_lambda1_tabulated().eval(h.m)),
        Energy::Hat => Rat::zero(),
    };
    let gap = &tabulated - &exact;
    let check = Lambda1Check {
        lambda1,
        matches: gap.is_zero(),
        exact_fixture_value: exact,
        tabulated_value: tabulated,
        gap,
    };

    Ok(EnergyComparison {
        energy,
        rows,
        lambda1: check,
    })
}

/// Compares all four routes for the two energies on the t=3 hypersphere.
pub fn compare_routes(m: u32) -> Result<ComparisonReport> {
    let h = Hypersphere::critical(m);
    let e4 = compare_energy(Energy::E4, &h)?;
    let es4 = compare_energy(Energy::Es4, &h)?;

    let internal = e4
        .rows
        .iter()
        .chain(es4.rows.iter())
        .any(|r| !r.derived_agree);
    let fixture_gap = e4
        .rows
        .iter()
        .chain(es4.rows.iter())
        .any(|r| !r.all_agree)
        || !e4.lambda1.matches
        || !es4.lambda1.matches;

    let status = if internal {
        ReportStatus::InternalDisagreement
    } else if fixture_gap {
        ReportStatus::FixtureDiscrepancy
    } else {
        ReportStatus::AllAgree
    };

    Ok(ComparisonReport {
        m,
        t: h.t.clone(),
        curvature: Rat::one(),
        e4,
        es4,
        status,
        adjudication: None,
    })
}
