//! Exact-arithmetic engine for the normal stability of small CMC
//! hyperspheres in round spheres under two fourth-order energies.
//!
//! The crate computes, with big-rational arithmetic in Q(sqrt(t)):
//! the geometric data of S^m(a) inside S^{m+1}, the fourth-order tension
//! field and its critical radius, the Laplace spectrum, the stability
//! quadratic forms as polynomials in the eigenvalue (assembled through
//! several independent routes that are compared coefficient by
//! coefficient), and the resulting normal index.
//!
//! Floating point never enters this crate; the companion oracle crate
//! holds all numerics.

pub mod error;
pub mod exact;
pub mod forms;
pub mod geometry;
pub mod index;
pub mod spectrum;

pub use error::{Error, Result};
pub use exact::{
    cauchy_root_bound, interpolate_m, quadext_arith, ArithOp, DimPoly, LambdaPoly, MCoeffPoly,
    QuadExt, Rat, DEFAULT_M_DEGREE,
};
pub use forms::{
    compare_routes, composition_bundle_norms, energy_form, fixture_bundle_norms, q4_fixture,
    q4_form, q4_lambda1_tabulated, q4_norm_combination, q4_variational, q4es_fixture, q4es_form,
    q4es_lambda1_tabulated, qhat_fixture, qhat_form, Adjudication, AdjudicationRow, BundleNorms,
    CandidateFamily, ComparisonReport, Energy, NormSource, NormalSection, Q4Route,
    QuadraticFormPoly, ReportStatus, Source,
};
pub use geometry::{
    solve_proper_radius, tau4_coefficient, tau_hat4_terms, tension_ladder, Hypersphere,
    RadiusSpec, Sign, SpaceForm, TauHatTerms, TensionLadder,
};
pub use index::{
    evaluate_on_spectrum, index_sweep, normal_index, normal_index_on_small_sphere, IndexReport,
    LevelValue,
};
pub use spectrum::{eigenvalue, multiplicity, spectrum_iter, SpectrumLevel};
