//! Symbolic second-variation engine: eigenfunction sections, bundle-norm
//! integrals, quadratic-form assembly along independent routes, and the
//! exact route comparison.

mod compare;
mod fixtures;
mod norms;
mod routes;
mod section;

pub use compare::{
    compare_routes, Adjudication, AdjudicationRow, CandidateFamily, CoeffRow, ComparisonReport,
    EnergyComparison, Lambda1Check, ReportStatus,
};
pub use fixtures::{
    bundle_first, bundle_second, bundle_third, q4_fixture, q4_lambda1_tabulated, q4es_fixture,
    q4es_lambda1_tabulated, qhat_fixture,
};
pub use norms::{
    composition_bundle_norms, fixture_bundle_norms, second_norm_via_pairing, BundleNorms,
    NormSource,
};
pub use routes::{
    energy_form, q4_form, q4_norm_combination, q4_variational, q4es_form, qhat_form, Energy,
    Q4Route, QuadraticFormPoly, Source,
};
pub use section::NormalSection;
